// Copyright 2026 The lightspan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lightspan/cli.hpp"

#include <glob.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "lightspan/io.hpp"

namespace lightspan {

namespace {

struct RunConfig {
  std::string input;
  std::string output;
  std::string trace;
  std::string tree;
  std::string scheme;
  std::string spanner;
  std::string reduced;
  std::string original;
  std::string lifted;
  std::string report;
  std::string csv;
  std::string glob_pattern;
  std::string value;
  std::string mode = "lightest";
  std::string weights = "uniform";
  double eps = 0.5;
  int width = 1;
  int bags = 1;
  int max_weight = 10;
  int depth = 1;
  double density = 0.5;
  std::uint64_t seed = 0;
  bool no_force = false;
  bool measure = false;
  bool require_tree = false;
};

void emit(const std::string& path, const Json& j, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << dump(j);
  } else {
    write_json_file(path, j);
  }
}

// Graph and decomposition, both validated.
Instance load_instance(const std::string& path, bool need_decomposition) {
  Instance inst = instance_from_json(read_json_file(path));
  if (auto report = validate(inst.graph); !report.valid) throw InputError("graph invalid: " + report.problems.front());
  if (!inst.decomposition) {
    if (need_decomposition) throw InputError("decomposition invalid: " + path + " has no decomposition");
    return inst;
  }
  if (auto report = validate_decomposition(inst.graph, *inst.decomposition); !report.valid) {
    throw InputError("decomposition invalid: " + report.problems.front());
  }
  return inst;
}

TreeMode parse_mode(const std::string& mode) {
  return mode == "recursive" || mode == "lemma2" ? TreeMode::kRecursive : TreeMode::kLightest;
}

std::string default_trace_path(const std::string& output) {
  std::filesystem::path p(output);
  return (p.parent_path() / p.stem()).string() + ".trace.json";
}

int cmd_gen(const RunConfig& c, std::ostream& out) {
  GenSpec spec;
  spec.width = c.width;
  spec.bags = c.bags;
  spec.seed = c.seed;
  spec.weights = parse_weight_mode(c.weights);
  spec.max_weight = c.max_weight;
  spec.density = c.density;
  const auto inst = gen_random(spec);
  Json j = to_json(inst.graph, inst.decomposition);
  j["forced_edges"] = inst.forced_edges;
  emit(c.output, j, out);
  return kExitOk;
}

int cmd_lowerbound(const RunConfig& c, std::ostream& out) {
  if (!c.output.empty()) write_json_file(c.output, to_json(gen_lowerbound(c.depth)));
  if (c.measure) {
    out << "depth,n,tree_weight,mst,ratio\n";
    for (int d = 1; d <= c.depth; ++d) {
      const auto inst = gen_lowerbound(d);
      const auto m = measure_lowerbound_detailed(inst);
      out << d << ',' << inst.graph.num_vertices() << ',' << m.tree_weight << ',' << m.mst << ',' << m.ratio << '\n';
    }
  } else if (c.output.empty()) {
    out << dump(to_json(gen_lowerbound(c.depth)));
  }
  return kExitOk;
}

int cmd_reduce(const RunConfig& c, std::ostream& out) {
  const Instance inst = load_instance(c.input, true);
  const auto nice = make_nice(inst.graph, *inst.decomposition);
  const auto degree = bound_degree(inst.graph, nice);
  auto completion = complete(degree.graph, degree.decomposition);
  const auto trace = combine(degree.trace, completion.trace);
  emit(c.output, to_json(completion.graph, degree.decomposition), out);
  const std::string trace_path = !c.trace.empty() ? c.trace : (c.output.empty() ? "" : default_trace_path(c.output));
  if (!trace_path.empty()) write_json_file(trace_path, to_json(trace));
  return kExitOk;
}

int cmd_tree(const RunConfig& c, std::ostream& out) {
  const Instance inst = load_instance(c.input, true);
  const auto iv = to_intervals(*inst.decomposition, inst.graph.num_vertices());
  const RootedTree t = parse_mode(c.mode) == TreeMode::kLightest ? lightest_monotone_tree(inst.graph, *inst.decomposition)
                                                                  : monotone_tree_recursive(inst.graph, iv);
  if (!is_monotone(t, iv)) throw CertificationError("tree", "spanning tree is not monotone");
  emit(c.output, to_json(t), out);
  return kExitOk;
}

int cmd_scheme(const RunConfig& c, std::ostream& out) {
  const Instance inst = load_instance(c.input, true);
  const RootedTree t = tree_from_json(read_json_file(c.tree), inst.graph);
  const auto iv = to_intervals(*inst.decomposition, inst.graph.num_vertices());
  BuiltScheme built;
  try {
    built = build_scheme(inst.graph, t, iv);
  } catch (const std::logic_error& err) {
    throw CertificationError("scheme", err.what());
  }
  emit(c.output, to_json(built.scheme), out);
  if (!c.report.empty()) write_json_file(c.report, to_json(built.report));
  if (!built.report.passed()) throw CertificationError("scheme", built.report.violations.front());
  return kExitOk;
}

int cmd_lift_into(const EdgeSubgraph& spanner, const RunConfig& c, double eps, std::ostream& out) {
  const Instance original = load_instance(c.original, false);
  const ReductionTrace trace = trace_from_json(read_json_file(c.trace));
  const EdgeSubgraph lifted = lift_spanner(spanner, trace, original.graph);
  if (!leq_tol(lifted.weight(), spanner.weight())) throw CertificationError("lift", "lifted spanner is heavier");
  if (eps > 0.0) {
    if (const double s = verify_stretch(original.graph, lifted); !within_stretch(s, eps)) {
      throw CertificationError("stretch", "lifted spanner stretch " + std::to_string(s));
    }
  }
  emit(c.lifted, to_json(lifted), out);
  return kExitOk;
}

int cmd_spanner(const RunConfig& c, std::ostream& out) {
  const Instance inst = load_instance(c.input, false);
  if (!(c.eps > 0.0)) throw InputError("eps must be positive");
  EdgeSubgraph h;
  if (c.no_force) {
    h = greedy_spanner_unforced(inst.graph, c.eps);
  } else {
    if (c.tree.empty()) throw InputError("--tree is required unless --no-force is given");
    h = greedy_spanner(inst.graph, tree_from_json(read_json_file(c.tree), inst.graph), c.eps);
  }
  if (const double s = verify_stretch(inst.graph, h); !within_stretch(s, c.eps)) {
    throw CertificationError("stretch", "spanner stretch " + std::to_string(s));
  }
  emit(c.output, to_json(h), out);
  if (!c.trace.empty() && !c.original.empty()) return cmd_lift_into(h, c, c.eps, out);
  return kExitOk;
}

int cmd_lift(const RunConfig& c, std::ostream& out) {
  const Instance reduced = load_instance(c.reduced, false);
  const EdgeSubgraph h = subgraph_from_json(read_json_file(c.input), reduced.graph);
  RunConfig routed = c;
  routed.lifted = c.output;
  return cmd_lift_into(h, routed, c.eps, out);
}

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t found{};
  std::vector<std::string> paths;
  if (::glob(pattern.c_str(), 0, nullptr, &found) == 0) {
    for (std::size_t i = 0; i < found.gl_pathc; ++i) paths.emplace_back(found.gl_pathv[i]);
  }
  globfree(&found);
  std::sort(paths.begin(), paths.end());
  return paths;
}

int cmd_pipeline(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::vector<std::string> inputs;
  if (!c.glob_pattern.empty()) {
    inputs = expand_glob(c.glob_pattern);
    if (inputs.empty()) throw InputError("no files match " + c.glob_pattern);
  } else {
    if (c.input.empty()) throw InputError("pipeline needs --input or --glob");
    inputs.push_back(c.input);
  }
  const bool batch = !c.glob_pattern.empty();
  PipelineOptions options;
  options.tree_mode = parse_mode(c.mode);
  options.force_tree = !c.no_force;

  std::ostringstream rows;
  int code = kExitOk;
  for (const auto& path : inputs) {
    try {
      const Instance inst = load_instance(path, true);
      const SpannerResult r = pipeline(inst.graph, *inst.decomposition, c.eps, options);
      rows << csv_row(path, inst.decomposition->width(), r) << '\n';
      if (!batch && (!c.output.empty() || c.csv.empty())) emit(c.output, to_json(r), out);
    } catch (const InputError& e) {
      err << "error: " << path << ": " << e.what() << '\n';
      code = std::max(code, kExitInput);
    } catch (const CertificationError& e) {
      err << "certification failed: " << path << ": " << e.what() << '\n';
      code = std::max(code, kExitCertification);
    }
  }
  if (!c.csv.empty()) {
    const bool fresh = !std::filesystem::exists(c.csv) || std::filesystem::file_size(c.csv) == 0;
    std::ofstream file(c.csv, std::ios::app);
    if (!file) throw InputError("cannot write " + c.csv);
    if (fresh) file << csv_header() << '\n';
    file << rows.str();
  } else if (batch) {
    out << csv_header() << '\n' << rows.str();
  }
  return code;
}

Json check(bool ok, const std::vector<std::string>& problems = {}) {
  return Json{{"verdict", ok ? "pass" : "fail"}, {"problems", problems}};
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const Instance inst = instance_from_json(read_json_file(c.input));
  Json checks = Json::object();
  bool all = true;
  auto record = [&](const std::string& name, Json verdict) {
    all = all && verdict.value("verdict", "fail") == "pass";
    checks[name] = std::move(verdict);
  };

  const auto graph_report = validate(inst.graph);
  record("graph", check(graph_report.valid, graph_report.problems));
  std::optional<IntervalRepresentation> iv;
  if (inst.decomposition) {
    const auto report = validate_decomposition(inst.graph, *inst.decomposition);
    Json verdict = check(report.valid, report.problems);
    verdict["width"] = report.width;
    record("decomposition", verdict);
    if (report.valid) iv = to_intervals(*inst.decomposition, inst.graph.num_vertices());
  }

  std::optional<RootedTree> tree;
  if (!c.tree.empty()) {
    const Json tj = read_json_file(c.tree);
    try {
      tree = tree_from_json(tj, inst.graph);
      Json verdict = check(true);
      if (iv) {
        const bool monotone = is_monotone(*tree, *iv);
        verdict = check(monotone, monotone ? std::vector<std::string>{} : std::vector<std::string>{"tree is not monotone"});
      }
      verdict["weight"] = tree->weight;
      record("tree", verdict);
    } catch (const InputError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      record("tree", check(false, {e.what()}));
    }
  }

  if (!c.scheme.empty()) {
    if (!tree) throw InputError("--scheme needs a valid --tree");
    const ChargingScheme s = scheme_from_json(read_json_file(c.scheme));
    Rational v = 0;
    if (!c.value.empty()) {
      try {
        v = Rational(c.value);
      } catch (const std::exception&) {
        throw InputError("cannot parse value '" + c.value + "'");
      }
    } else {
      v = verify_scheme(inst.graph, *tree, s, 0, true).min_v;
    }
    const SchemeReport report = verify_scheme(inst.graph, *tree, s, v, true);
    Json verdict = to_json(report);
    verdict["verdict"] = report.passed() ? "pass" : "fail";
    record("scheme", verdict);
  }

  if (!c.spanner.empty()) {
    const EdgeSubgraph h = subgraph_from_json(read_json_file(c.spanner), inst.graph);
    if (!h.is_spanning_connected()) {
      record("spanner", check(false, {"spanner does not span the graph"}));
    } else {
      Json verdict = check(true);
      verdict["weight"] = h.weight();
      if (c.eps > 0.0) {
        const double s = verify_stretch(inst.graph, h);
        verdict = check(within_stretch(s, c.eps), within_stretch(s, c.eps) ? std::vector<std::string>{}
                                                                             : std::vector<std::string>{"stretch exceeds 1+eps"});
        verdict["max_stretch"] = s;
        verdict["weight"] = h.weight();
      }
      record("spanner", verdict);
    }
    if (c.require_tree) {
      if (!tree) throw InputError("--require-tree needs a valid --tree");
      std::vector<std::string> missing;
      for (EdgeId e : tree->edge_ids()) {
        if (!h.contains(e)) {
          const auto& edge = inst.graph.edge(e);
          missing.push_back("tree edge {" + std::to_string(edge.u) + "," + std::to_string(edge.v) + "} missing");
        }
      }
      record("contains_tree", check(missing.empty(), missing));
    }
  }

  emit(c.output, Json{{"checks", checks}, {"passed", all}}, out);
  return all ? kExitOk : kExitCertification;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Light spanners for bounded-pathwidth graphs", "lightspan"};
  app.require_subcommand(1);
  RunConfig c;

  auto* gen = app.add_subcommand("gen", "Generate a random bounded-pathwidth instance");
  gen->add_option("-k,--width", c.width, "Pathwidth")->required()->check(CLI::Range(1, 64));
  gen->add_option("-m,--bags", c.bags, "Number of full bags")->required()->check(CLI::Range(1, 1 << 20));
  gen->add_option("--seed", c.seed, "RNG seed");
  gen->add_option("--weights", c.weights, "uniform | int | unit")->check(CLI::IsMember({"uniform", "int", "unit"}));
  gen->add_option("--max-weight", c.max_weight, "Largest integer weight")->check(CLI::PositiveNumber);
  gen->add_option("--density", c.density, "Edge probability within a bag")->check(CLI::Range(0.0, 1.0));
  gen->add_option("-o,--output", c.output, "Output JSON (stdout if omitted)");

  auto* lb = app.add_subcommand("lowerbound", "Build the heavy-monotone-tree family");
  lb->add_option("--depth", c.depth, "Bag tree depth")->required()->check(CLI::Range(1, 20));
  lb->add_option("-o,--output", c.output, "Output JSON");
  lb->add_flag("--measure", c.measure, "Print the ratio table for depths 1..depth");

  auto* reduce = app.add_subcommand("reduce", "Make nice, bound the degree and complete");
  reduce->add_option("-i,--input", c.input, "Instance JSON")->required();
  reduce->add_option("-o,--output", c.output, "Reduced instance JSON");
  reduce->add_option("--trace", c.trace, "Trace JSON (default: <output stem>.trace.json)");

  auto* tree = app.add_subcommand("tree", "Build a monotone spanning tree");
  tree->add_option("-i,--input", c.input, "Reduced instance JSON")->required();
  tree->add_option("--mode", c.mode, "lightest | recursive")->check(CLI::IsMember({"lightest", "recursive", "lemma2"}));
  tree->add_option("-o,--output", c.output, "Tree JSON");

  auto* scheme = app.add_subcommand("scheme", "Build and certify an acyclic charging scheme");
  scheme->add_option("-i,--input", c.input, "Reduced instance JSON")->required();
  scheme->add_option("--tree", c.tree, "Tree JSON")->required();
  scheme->add_option("-o,--output", c.output, "Scheme JSON");
  scheme->add_option("--report", c.report, "Verifier report JSON");

  auto* spanner = app.add_subcommand("spanner", "Run the greedy spanner");
  spanner->add_option("-i,--input", c.input, "Instance JSON")->required();
  spanner->add_option("--tree", c.tree, "Tree JSON forced into the spanner");
  spanner->add_option("--eps", c.eps, "Stretch slack")->check(CLI::PositiveNumber);
  spanner->add_flag("--no-force", c.no_force, "Plain greedy without the tree");
  spanner->add_option("-o,--output", c.output, "Spanner JSON");
  spanner->add_option("--trace", c.trace, "Trace JSON for lifting");
  spanner->add_option("--original", c.original, "Original instance JSON for lifting");
  spanner->add_option("--lifted", c.lifted, "Lifted spanner JSON");

  auto* lift = app.add_subcommand("lift", "Map a reduced spanner back to the original graph");
  lift->add_option("-i,--input", c.input, "Spanner JSON")->required();
  lift->add_option("--reduced", c.reduced, "Reduced instance JSON")->required();
  lift->add_option("--trace", c.trace, "Trace JSON")->required();
  lift->add_option("--original", c.original, "Original instance JSON")->required();
  lift->add_option("--eps", c.eps, "Check the lifted stretch against 1+eps")->check(CLI::PositiveNumber);
  lift->add_option("-o,--output", c.output, "Lifted spanner JSON");

  auto* run = app.add_subcommand("pipeline", "Run and certify the whole pipeline");
  run->add_option("-i,--input", c.input, "Instance JSON");
  run->add_option("--glob", c.glob_pattern, "Batch over matching instance files");
  run->add_option("--eps", c.eps, "Stretch slack")->check(CLI::PositiveNumber);
  run->add_option("--mode", c.mode, "lightest | recursive")->check(CLI::IsMember({"lightest", "recursive", "lemma2"}));
  run->add_flag("--no-force", c.no_force, "Plain greedy without the tree");
  run->add_option("-o,--output", c.output, "Result JSON");
  run->add_option("--csv", c.csv, "Append stats rows to this CSV");

  auto* verify = app.add_subcommand("verify", "Check artifacts and print a JSON verdict");
  verify->add_option("-i,--input", c.input, "Instance JSON")->required();
  verify->add_option("--tree", c.tree, "Tree JSON");
  verify->add_option("--scheme", c.scheme, "Scheme JSON (needs --tree)");
  verify->add_option("--value", c.value, "Scheme value v, e.g. 3 or 7/2 (default: the minimum)");
  verify->add_option("--spanner", c.spanner, "Spanner JSON");
  verify->add_option("--eps", c.eps, "Check spanner stretch against 1+eps")->check(CLI::PositiveNumber);
  verify->add_flag("--require-tree", c.require_tree, "Spanner must contain every tree edge");
  verify->add_option("-o,--output", c.output, "Report JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (gen->parsed()) return cmd_gen(c, out);
    if (lb->parsed()) return cmd_lowerbound(c, out);
    if (reduce->parsed()) return cmd_reduce(c, out);
    if (tree->parsed()) return cmd_tree(c, out);
    if (scheme->parsed()) return cmd_scheme(c, out);
    if (spanner->parsed()) return cmd_spanner(c, out);
    if (lift->parsed()) return cmd_lift(c, out);
    if (run->parsed()) return cmd_pipeline(c, out, err);
    if (verify->parsed()) {
      if (verify->count("--eps") == 0) c.eps = 0.0;
      return cmd_verify(c, out);
    }
  } catch (const CertificationError& e) {
    err << "certification failed: " << e.what() << '\n';
    return kExitCertification;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "certification failed: " << e.what() << '\n';
    return kExitCertification;
  }
  return kExitInput;
}

}  // namespace lightspan
