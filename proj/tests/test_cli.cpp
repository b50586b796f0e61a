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


#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lightspan/cli.hpp"
#include "lightspan/io.hpp"

using namespace lightspan;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("lightspan_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run_cli(args, out_, err_);
  }

  Json out_json() const { return Json::parse(out_.str()); }

  fs::path dir_;
  std::ostringstream out_, err_;
};

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_F(Cli, GeneratedFilePassesVerify) {
  ASSERT_EQ(run({"gen", "-k", "3", "-m", "40", "--seed", "1", "-o", path("g.json")}), kExitOk);
  ASSERT_EQ(run({"verify", "-i", path("g.json")}), kExitOk) << err_.str();
  const auto report = out_json();
  EXPECT_TRUE(report["passed"].get<bool>());
  EXPECT_EQ(report["checks"]["graph"]["verdict"], "pass");
  EXPECT_EQ(report["checks"]["decomposition"]["verdict"], "pass");
  EXPECT_EQ(report["checks"]["decomposition"]["width"], 3);
}

TEST_F(Cli, GenZeroWidthIsUsageError) {
  EXPECT_EQ(run({"gen", "-k", "0", "-m", "5"}), kExitInput);
  EXPECT_FALSE(err_.str().empty());
}

TEST_F(Cli, UnknownCommandIsUsageError) {
  EXPECT_EQ(run({"frobnicate"}), kExitInput);
  EXPECT_EQ(run({}), kExitInput);
}

TEST_F(Cli, GenIsDeterministic) {
  ASSERT_EQ(run({"gen", "-k", "2", "-m", "15", "--seed", "9", "-o", path("a.json")}), kExitOk);
  ASSERT_EQ(run({"gen", "-k", "2", "-m", "15", "--seed", "9", "-o", path("b.json")}), kExitOk);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
}

TEST_F(Cli, LowerboundMeasureRatiosIncrease) {
  ASSERT_EQ(run({"lowerbound", "--depth", "4", "--measure"}), kExitOk);
  std::istringstream table(out_.str());
  std::string line;
  std::getline(table, line);
  EXPECT_EQ(line, "depth,n,tree_weight,mst,ratio");
  std::vector<double> ratios;
  while (std::getline(table, line)) ratios.push_back(std::stod(line.substr(line.rfind(',') + 1)));
  ASSERT_EQ(ratios.size(), 4u);
  for (std::size_t i = 1; i < ratios.size(); ++i) EXPECT_GT(ratios[i], ratios[i - 1]);
}

TEST_F(Cli, LowerboundWritesTreeDecomposition) {
  ASSERT_EQ(run({"lowerbound", "--depth", "2", "-o", path("lb.json")}), kExitOk);
  const auto j = read_json_file(path("lb.json"));
  EXPECT_EQ(j["tree_decomposition"]["nodes"].size(), 7u);
  EXPECT_EQ(j["tree_decomposition"]["edges"].size(), 6u);
  EXPECT_TRUE(j["tree_decomposition"]["bags"].is_object());
}

TEST_F(Cli, PipelineOnTreeHasRatioOne) {
  const WeightedGraph g(4, {{0, 1, 1}, {1, 2, 2}, {1, 3, 4}});
  write_json_file(path("t.json"), to_json(g, {{{0, 1}, {1, 2}, {1, 3}}}));
  for (const char* eps : {"0.1", "3"}) {
    ASSERT_EQ(run({"pipeline", "-i", path("t.json"), "--eps", eps}), kExitOk) << err_.str();
    EXPECT_DOUBLE_EQ(out_json()["spanner_ratio"].get<double>(), 1.0);
  }
}

TEST_F(Cli, CorruptedDecompositionExitsTwo) {
  ASSERT_EQ(run({"gen", "-k", "2", "-m", "10", "--seed", "3", "-o", path("g.json")}), kExitOk);
  auto j = read_json_file(path("g.json"));
  j["decomposition"]["bags"][3] = Json::array();
  write_json_file(path("bad.json"), j);
  EXPECT_EQ(run({"pipeline", "-i", path("bad.json")}), kExitInput);
  EXPECT_NE(err_.str().find("decomposition invalid"), std::string::npos);
}

TEST_F(Cli, MalformedJsonExitsTwo) {
  std::ofstream(path("junk.json")) << "{ not json";
  EXPECT_EQ(run({"verify", "-i", path("junk.json")}), kExitInput);
  EXPECT_EQ(run({"pipeline", "-i", path("missing.json")}), kExitInput);
}

TEST_F(Cli, GlobBatchWritesOneRowPerInstance) {
  for (int s = 0; s < 4; ++s) {
    ASSERT_EQ(run({"gen", "-k", "2", "-m", "12", "--seed", std::to_string(s), "-o", path("c" + std::to_string(s) + ".json")}),
              kExitOk);
  }
  ASSERT_EQ(run({"pipeline", "--glob", path("c*.json"), "--eps", "0.5", "--csv", path("stats.csv")}), kExitOk);
  std::istringstream csv(slurp(path("stats.csv")));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "instance,n,k,eps,tree_ratio,scheme_v,spanner_ratio,max_stretch,runtime_ms");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 8);
  }
  EXPECT_EQ(rows, 4);
}

TEST_F(Cli, StagesComposeAndVerify) {
  ASSERT_EQ(run({"gen", "-k", "3", "-m", "15", "--seed", "5", "-o", path("g.json")}), kExitOk);
  ASSERT_EQ(run({"reduce", "-i", path("g.json"), "-o", path("r.json")}), kExitOk) << err_.str();
  ASSERT_TRUE(fs::exists(path("r.trace.json")));
  ASSERT_EQ(run({"tree", "-i", path("r.json"), "--mode", "recursive", "-o", path("t.json")}), kExitOk) << err_.str();
  ASSERT_EQ(run({"scheme", "-i", path("r.json"), "--tree", path("t.json"), "-o", path("s.json"), "--report", path("rep.json")}),
            kExitOk)
      << err_.str();
  EXPECT_TRUE(read_json_file(path("rep.json"))["passed"].get<bool>());
  ASSERT_EQ(run({"spanner", "-i", path("r.json"), "--tree", path("t.json"), "--eps", "0.5", "-o", path("sp.json")}), kExitOk)
      << err_.str();
  ASSERT_EQ(run({"lift", "-i", path("sp.json"), "--reduced", path("r.json"), "--trace", path("r.trace.json"), "--original",
                 path("g.json"), "--eps", "0.5", "-o", path("lifted.json")}),
            kExitOk)
      << err_.str();
  ASSERT_EQ(run({"verify", "-i", path("g.json"), "--spanner", path("lifted.json"), "--eps", "0.5"}), kExitOk) << out_.str();
  ASSERT_EQ(run({"verify", "-i", path("r.json"), "--tree", path("t.json"), "--scheme", path("s.json"), "--spanner",
                 path("sp.json"), "--eps", "0.5", "--require-tree"}),
            kExitOk)
      << out_.str();
  const auto report = out_json();
  for (const char* check : {"graph", "decomposition", "tree", "scheme", "spanner", "contains_tree"}) {
    EXPECT_EQ(report["checks"][check]["verdict"], "pass") << check;
  }
}

TEST_F(Cli, LoweredSchemeValueFlagsConditionOne) {
  ASSERT_EQ(run({"gen", "-k", "2", "-m", "10", "--seed", "2", "-o", path("g.json")}), kExitOk);
  ASSERT_EQ(run({"reduce", "-i", path("g.json"), "-o", path("r.json")}), kExitOk);
  ASSERT_EQ(run({"tree", "-i", path("r.json"), "-o", path("t.json")}), kExitOk);
  ASSERT_EQ(run({"scheme", "-i", path("r.json"), "--tree", path("t.json"), "-o", path("s.json")}), kExitOk);
  auto s = read_json_file(path("s.json"));
  ASSERT_FALSE(s["moves"].empty());
  s["moves"][0]["value"] = {{"num", 1}, {"den", 2}};
  write_json_file(path("s_bad.json"), s);
  EXPECT_EQ(run({"verify", "-i", path("r.json"), "--tree", path("t.json"), "--scheme", path("s_bad.json")}), kExitCertification);
  const auto report = out_json();
  EXPECT_EQ(report["checks"]["scheme"]["conditions"]["1"], "fail");
}

TEST_F(Cli, SpannerMissingTreeEdgeFlagged) {
  ASSERT_EQ(run({"gen", "-k", "2", "-m", "10", "--seed", "2", "-o", path("g.json")}), kExitOk);
  ASSERT_EQ(run({"reduce", "-i", path("g.json"), "-o", path("r.json")}), kExitOk);
  ASSERT_EQ(run({"tree", "-i", path("r.json"), "-o", path("t.json")}), kExitOk);
  ASSERT_EQ(run({"spanner", "-i", path("r.json"), "--tree", path("t.json"), "--eps", "0.5", "-o", path("sp.json")}), kExitOk);
  const auto reduced = instance_from_json(read_json_file(path("r.json")));
  const auto tree = tree_from_json(read_json_file(path("t.json")), reduced.graph);
  auto sp = read_json_file(path("sp.json"));
  const auto& victim = reduced.graph.edge(tree.edge_ids().front());
  auto& edges = sp["edges"];
  for (auto it = edges.begin(); it != edges.end(); ++it) {
    if ((*it)["u"] == victim.u && (*it)["v"] == victim.v) {
      edges.erase(it);
      break;
    }
  }
  write_json_file(path("sp_bad.json"), sp);
  EXPECT_EQ(run({"verify", "-i", path("r.json"), "--tree", path("t.json"), "--spanner", path("sp_bad.json"), "--require-tree"}),
            kExitCertification);
  EXPECT_EQ(out_json()["checks"]["contains_tree"]["verdict"], "fail");
}

TEST_F(Cli, PipelineOutputIsDeterministic) {
  ASSERT_EQ(run({"gen", "-k", "3", "-m", "20", "--seed", "11", "-o", path("g.json")}), kExitOk);
  ASSERT_EQ(run({"pipeline", "-i", path("g.json"), "--eps", "0.5", "-o", path("r1.json")}), kExitOk);
  ASSERT_EQ(run({"pipeline", "-i", path("g.json"), "--eps", "0.5", "-o", path("r2.json")}), kExitOk);
  EXPECT_EQ(slurp(path("r1.json")), slurp(path("r2.json")));
}

TEST(Io, RoundTrips) {
  const WeightedGraph g(3, {{0, 1, 0.1}, {1, 2, 1.0 / 3.0}, {0, 2, 0.7}});
  const PathDecomposition pd{{{0, 1, 2}}};
  const auto back = instance_from_json(Json::parse(dump(to_json(g, pd))));
  EXPECT_EQ(back.graph, g);
  ASSERT_TRUE(back.decomposition.has_value());
  EXPECT_EQ(*back.decomposition, pd);

  const auto comp = complete(WeightedGraph(3, {{0, 1, 1}, {1, 2, 1}}), pd);
  ReductionTrace trace = comp.trace;
  trace.original_vertices = trace.reduced_vertices = 3;
  trace.copy_map[2] = 1;
  trace.zero_edges.push_back({1, 2});
  EXPECT_EQ(trace_from_json(Json::parse(dump(to_json(trace)))), trace);

  ChargingScheme s;
  s.add(make_detour(0, 2, {0, 1, 2}), Rational(3, 7));
  const auto s2 = scheme_from_json(to_json(s));
  EXPECT_EQ(s2.moves, s.moves);

  const auto t = make_rooted_tree(g, 0, {-1, 0, 1});
  const auto t2 = tree_from_json(to_json(t), g);
  EXPECT_EQ(t2.parent, t.parent);
  EXPECT_EQ(t2.weight, t.weight);

  const EdgeSubgraph h(g, {0, 2});
  EXPECT_EQ(subgraph_from_json(to_json(h), g).edge_ids(), h.edge_ids());
  EXPECT_THROW(subgraph_from_json(Json{{"edges", {{{"u", 0}, {"v", 5}}}}}, g), InputError);
  EXPECT_THROW(instance_from_json(Json{{"n", 2}}), InputError);
  EXPECT_THROW(rational_from_json(Json{{"num", 1}, {"den", 0}}), InputError);
}
