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

#include "lightspan/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace lightspan {

namespace {

template <typename F>
auto guarded(const char* what, F&& body) {
  try {
    return body();
  } catch (const Json::exception& err) {
    throw InputError(std::string(what) + ": " + err.what());
  } catch (const std::invalid_argument& err) {
    throw InputError(std::string(what) + ": " + err.what());
  }
}

Json edge_list(const WeightedGraph& g, const std::vector<EdgeId>& ids) {
  Json edges = Json::array();
  for (EdgeId id : ids) {
    const auto& e = g.edge(id);
    edges.push_back({{"u", e.u}, {"v", e.v}, {"w", e.w}});
  }
  return edges;
}

Json pair_json(VertexPair p) { return Json::array({p.first, p.second}); }

VertexPair pair_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw InputError("expected a vertex pair [u, v]");
  return make_pair_key(j[0].get<Vertex>(), j[1].get<Vertex>());
}

Json integer_json(const boost::multiprecision::cpp_int& x) {
  if (x <= std::numeric_limits<std::int64_t>::max() && x >= std::numeric_limits<std::int64_t>::min()) {
    return x.convert_to<std::int64_t>();
  }
  return x.str();
}

boost::multiprecision::cpp_int integer_from(const Json& j) {
  if (j.is_number_integer()) return boost::multiprecision::cpp_int(j.get<std::int64_t>());
  if (j.is_string()) return boost::multiprecision::cpp_int(j.get<std::string>());
  throw InputError("expected an integer");
}

const char* verdict(bool ok) { return ok ? "pass" : "fail"; }

}  // namespace

Json to_json(const WeightedGraph& g) {
  std::vector<EdgeId> all(static_cast<std::size_t>(g.num_edges()));
  for (EdgeId e = 0; e < g.num_edges(); ++e) all[static_cast<std::size_t>(e)] = e;
  return Json{{"n", g.num_vertices()}, {"edges", edge_list(g, all)}};
}

Json to_json(const WeightedGraph& g, const PathDecomposition& pd) {
  Json j = to_json(g);
  j["decomposition"] = {{"bags", pd.bags}};
  return j;
}

Instance instance_from_json(const Json& j) {
  return guarded("graph", [&] {
    const int n = j.at("n").get<int>();
    if (n < 0) throw InputError("graph: negative vertex count");
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) edges.push_back({e.at("u").get<Vertex>(), e.at("v").get<Vertex>(), e.at("w").get<double>()});
    Instance inst{WeightedGraph(n, std::move(edges)), std::nullopt};
    if (j.contains("decomposition")) {
      PathDecomposition pd;
      for (const auto& b : j.at("decomposition").at("bags")) {
        Bag bag = b.get<Bag>();
        std::sort(bag.begin(), bag.end());
        pd.bags.push_back(std::move(bag));
      }
      inst.decomposition = std::move(pd);
    }
    return inst;
  });
}

Json to_json(const ReductionTrace& trace) {
  Json copies = Json::array();
  for (const auto& [copy, root] : trace.copy_map) copies.push_back(Json::array({copy, root}));
  Json zero = Json::array();
  for (const auto& p : trace.zero_edges) zero.push_back(pair_json(p));
  Json completion = Json::array();
  for (const auto& c : trace.completion_edges) completion.push_back({{"u", c.u}, {"v", c.v}, {"w", c.w}, {"path", c.path}});
  return Json{{"original_vertices", trace.original_vertices},
              {"reduced_vertices", trace.reduced_vertices},
              {"copy_map", copies},
              {"zero_edges", zero},
              {"completion_edges", completion}};
}

ReductionTrace trace_from_json(const Json& j) {
  return guarded("trace", [&] {
    ReductionTrace t;
    t.original_vertices = j.at("original_vertices").get<int>();
    t.reduced_vertices = j.at("reduced_vertices").get<int>();
    for (const auto& c : j.at("copy_map")) t.copy_map[c.at(0).get<Vertex>()] = c.at(1).get<Vertex>();
    for (const auto& z : j.at("zero_edges")) t.zero_edges.push_back({z.at(0).get<Vertex>(), z.at(1).get<Vertex>()});
    for (const auto& c : j.at("completion_edges")) {
      t.completion_edges.push_back(
          {c.at("u").get<Vertex>(), c.at("v").get<Vertex>(), c.at("w").get<double>(), c.at("path").get<std::vector<Vertex>>()});
    }
    std::sort(t.completion_edges.begin(), t.completion_edges.end(),
              [](const CompletionEdge& a, const CompletionEdge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
    return t;
  });
}

Json to_json(const RootedTree& t) { return Json{{"root", t.root}, {"parent", t.parent}, {"weight", t.weight}}; }

RootedTree tree_from_json(const Json& j, const WeightedGraph& g) {
  const auto [root, parent] = guarded("tree", [&] {
    return std::pair(j.at("root").get<Vertex>(), j.at("parent").get<std::vector<Vertex>>());
  });
  return make_rooted_tree(g, root, parent);
}

Json to_json(const Rational& r) {
  return Json{{"num", integer_json(boost::multiprecision::numerator(r))},
              {"den", integer_json(boost::multiprecision::denominator(r))}};
}

Rational rational_from_json(const Json& j) {
  return guarded("rational", [&] {
    const auto den = integer_from(j.at("den"));
    if (den == 0) throw InputError("rational: zero denominator");
    return Rational(integer_from(j.at("num")), den);
  });
}

Json to_json(const ChargingScheme& s) {
  Json moves = Json::array();
  for (const auto& [d, x] : s.moves) moves.push_back({{"edge", pair_json(d.edge())}, {"path", d.path}, {"value", to_json(x)}});
  Json order = Json::array();
  for (const auto& p : s.edge_order) order.push_back(pair_json(p));
  return Json{{"moves", moves}, {"edge_order", order}};
}

ChargingScheme scheme_from_json(const Json& j) {
  return guarded("scheme", [&] {
    ChargingScheme s;
    for (const auto& m : j.at("moves")) {
      const auto e = pair_from(m.at("edge"));
      auto path = m.at("path").get<std::vector<Vertex>>();
      const Rational x = rational_from_json(m.at("value"));
      if (x < 0) throw InputError("scheme: negative move value");
      s.add(make_detour(e.first, e.second, std::move(path)), x);
    }
    if (j.contains("edge_order")) {
      for (const auto& p : j.at("edge_order")) s.edge_order.push_back(pair_from(p));
    }
    return s;
  });
}

Json to_json(const SchemeReport& report) {
  Json conditions{{"1", verdict(report.out_at_least_one)},
                  {"2", verdict(report.net_nonpositive_off_tree)},
                  {"3", verdict(report.net_within_value_on_tree)}};
  conditions["4"] = report.acyclic_checked ? verdict(report.charges_only_off_tree) : "skipped";
  conditions["5"] = report.acyclic_checked ? verdict(report.has_edge_order) : "skipped";
  return Json{{"conditions", conditions},
              {"passed", report.passed()},
              {"value", to_json(report.value)},
              {"min_v", to_json(report.min_v)},
              {"violations", report.violations}};
}

Json to_json(const EdgeSubgraph& h) {
  return Json{{"edges", edge_list(h.host(), h.edge_ids())}, {"weight", h.weight()}};
}

EdgeSubgraph subgraph_from_json(const Json& j, const WeightedGraph& host) {
  return guarded("subgraph", [&] {
    std::vector<EdgeId> ids;
    for (const auto& e : j.at("edges")) {
      const Vertex u = e.at("u").get<Vertex>();
      const Vertex v = e.at("v").get<Vertex>();
      const auto id = host.find_edge(u, v);
      if (!id) throw InputError("subgraph: edge {" + std::to_string(u) + "," + std::to_string(v) + "} is not in the graph");
      if (e.contains("w") && !eq_tol(e.at("w").get<double>(), host.edge(*id).w)) {
        throw InputError("subgraph: weight of {" + std::to_string(u) + "," + std::to_string(v) + "} differs from the graph");
      }
      ids.push_back(*id);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return EdgeSubgraph(host, std::move(ids));
  });
}

Json to_json(const SpannerResult& r) {
  return Json{{"n", r.original->num_vertices()},
              {"reduced_n", r.reduced->num_vertices()},
              {"epsilon", r.epsilon},
              {"tree", to_json(r.tree)},
              {"scheme_value", to_json(r.scheme_value)},
              {"tree_weight", r.tree_weight},
              {"spanner_weight", r.spanner_weight},
              {"lifted_weight", r.lifted_weight},
              {"mst", r.mst},
              {"reduced_mst", r.reduced_mst},
              {"tree_ratio", r.tree_ratio()},
              {"spanner_ratio", r.spanner_ratio()},
              {"max_stretch", r.max_stretch},
              {"spanner", to_json(r.spanner)},
              {"lifted", to_json(r.lifted)}};
}

Json to_json(const LowerBoundInstance& inst) {
  Json j = to_json(inst.graph);
  const auto& td = inst.decomposition;
  Json nodes = Json::array();
  Json bags = Json::object();
  for (std::size_t b = 0; b < td.bags.size(); ++b) {
    nodes.push_back(b);
    bags[std::to_string(b)] = td.bags[b];
  }
  Json edges = Json::array();
  for (const auto& [p, c] : td.edges) edges.push_back(Json::array({p, c}));
  j["tree_decomposition"] = {{"nodes", nodes}, {"edges", edges}, {"bags", bags}, {"root", td.root}};
  j["depth"] = inst.depth;
  j["spine"] = inst.spine;
  j["spine_weight"] = inst.spine_weight;
  return j;
}

std::string csv_header() { return "instance,n,k,eps,tree_ratio,scheme_v,spanner_ratio,max_stretch,runtime_ms"; }

std::string csv_row(const std::string& instance, int width, const SpannerResult& r) {
  std::ostringstream out;
  out.precision(12);
  out << instance << ',' << r.original->num_vertices() << ',' << width << ',' << r.epsilon << ',' << r.tree_ratio() << ','
      << r.scheme_value.convert_to<double>() << ',' << r.spanner_ratio() << ',' << r.max_stretch << ',' << r.runtime_ms;
  return out.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& err) {
    throw InputError(path + ": " + err.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << dump(j);
}

}  // namespace lightspan
