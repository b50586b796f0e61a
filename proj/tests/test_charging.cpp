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

#include <map>
#include <random>

#include "corpus.hpp"
#include "lightspan/charging.hpp"
#include "lightspan/generators.hpp"

using namespace lightspan;

namespace {

const Vertex a = 0, b = 1, c = 2, d = 3;

struct Fixture {
  WeightedGraph g;
  RootedTree t;
};

Fixture triangle() {
  WeightedGraph g(3, {{a, b, 1}, {b, c, 1}, {a, c, 1}});
  auto t = make_rooted_tree(g, a, {-1, a, b});
  return {std::move(g), std::move(t)};
}

struct Reduced {
  WeightedGraph graph;
  PathDecomposition decomposition;
};

Reduced reduce(const GeneratedInstance& inst) {
  const auto nice = make_nice(inst.graph, inst.decomposition);
  auto deg = bound_degree(inst.graph, nice);
  auto comp = complete(deg.graph, deg.decomposition);
  return {std::move(comp.graph), std::move(deg.decomposition)};
}

}  // namespace

TEST(VerifyScheme, SingleTriangleMove) {
  auto [g, t] = triangle();
  ChargingScheme s;
  s.add(make_detour(a, c, {a, b, c}), 1);
  const auto report = verify_scheme(g, t, s, 1, true);
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.min_v, 1);
  EXPECT_EQ(report.edge_order.size(), 3u);
}

TEST(VerifyScheme, HalfValueViolatesOutCondition) {
  auto [g, t] = triangle();
  ChargingScheme s;
  s.add(make_detour(a, c, {a, b, c}), Rational(1, 2));
  const auto report = verify_scheme(g, t, s, 1, true);
  EXPECT_FALSE(report.passed());
  EXPECT_FALSE(report.out_at_least_one);
  ASSERT_FALSE(report.violations.empty());
  EXPECT_EQ(report.violations.front(), "(1) Out{0,2} = 1/2 < 1");
}

TEST(VerifyScheme, ValueBelowNetViolatesTreeCondition) {
  auto [g, t] = triangle();
  ChargingScheme s;
  s.add(make_detour(a, c, {a, b, c}), 1);
  const auto report = verify_scheme(g, t, s, Rational(1, 2), true);
  EXPECT_FALSE(report.net_within_value_on_tree);
  EXPECT_EQ(report.min_v, 1);
}

TEST(VerifyScheme, TreeEdgeChargingFlaggedOnlyWhenAcyclic) {
  WeightedGraph g(4, {{a, b, 1}, {b, c, 1}, {a, c, 1}, {c, d, 1}, {b, d, 1}});
  const auto t = make_rooted_tree(g, a, {-1, a, b, c});
  ChargingScheme s;
  s.add(make_detour(a, c, {a, b, c}), 1);
  s.add(make_detour(b, d, {b, c, d}), 1);
  s.add(make_detour(b, c, {b, d, c}), 1);  // a tree edge charging
  EXPECT_FALSE(verify_scheme(g, t, s, 5, true).charges_only_off_tree);
  EXPECT_TRUE(verify_scheme(g, t, s, 5, false).passed());
}

TEST(VerifyScheme, ChargeCycleViolatesOrderCondition) {
  // Two off-tree edges of a 4-cycle with chords charging each other.
  WeightedGraph g(4, {{a, b, 1}, {b, c, 1}, {c, d, 1}, {a, c, 1}, {b, d, 1}, {a, d, 1}});
  const auto t = make_rooted_tree(g, a, {-1, a, b, c});
  ChargingScheme s;
  s.add(make_detour(a, c, {a, d, b, c}), 1);
  s.add(make_detour(b, d, {b, a, c, d}), 1);
  s.add(make_detour(a, d, {a, b, c, d}), 1);
  const auto report = verify_scheme(g, t, s, 10, true);
  EXPECT_FALSE(report.has_edge_order);
  EXPECT_TRUE(report.edge_order.empty());
}

TEST(Detour, NormalisationAndChecks) {
  const auto x = make_detour(c, a, {c, b, a});
  EXPECT_EQ(x.u, a);
  EXPECT_EQ(x.path, (std::vector<Vertex>{a, b, c}));
  EXPECT_THROW(make_detour(a, c, {a, c}), std::invalid_argument);
  EXPECT_THROW(make_detour(a, c, {a, b, b, c}), std::invalid_argument);
  EXPECT_THROW(make_detour(a, c, {a, b, d}), std::invalid_argument);
  auto [g, t] = triangle();
  EXPECT_THROW(check_detour(g, make_detour(a, c, {a, d, c})), std::invalid_argument);
}

TEST(Shortcut, DisjointSplice) {
  const auto merged = shortcut(make_detour(a, c, {a, b, c}), make_detour(a, b, {a, d, b}));
  EXPECT_EQ(merged, make_detour(a, c, {a, d, b, c}));
}

TEST(Shortcut, RepeatedSegmentIsExcised) {
  // Splicing 1-3-0-2 in place of {1,2} revisits 0.
  const auto merged = shortcut(make_detour(0, 4, {0, 1, 2, 4}), make_detour(1, 2, {1, 3, 0, 2}));
  EXPECT_EQ(merged.path, (std::vector<Vertex>{0, 2, 4}));
}

TEST(Shortcut, RandomSplicesAreSimple) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 500; ++round) {
    std::vector<Vertex> pool(10);
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng);
    const std::size_t len1 = 3 + rng() % 5;
    std::vector<Vertex> p1(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(len1));
    const std::size_t at = rng() % (len1 - 1);
    const Vertex x = p1[at], y = p1[at + 1];
    // Second path x ... y through random other vertices, possibly hitting p1.
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < 10; ++v) {
      if (v != x && v != y) rest.push_back(v);
    }
    std::shuffle(rest.begin(), rest.end(), rng);
    std::vector<Vertex> p2{x};
    const std::size_t mid = 1 + rng() % 3;
    p2.insert(p2.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(mid));
    p2.push_back(y);
    const auto d1 = make_detour(p1.front(), p1.back(), p1);
    const auto d2 = make_detour(x, y, p2);
    if (d2.path_contains(d1.edge())) continue;
    const auto merged = shortcut(d1, d2);
    std::vector<Vertex> sorted = merged.path;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
    EXPECT_EQ(merged.edge(), d1.edge());
    // Every step of the result is a step of one of the inputs.
    for (const auto& step : merged.path_edges()) EXPECT_TRUE(d1.path_contains(step) || d2.path_contains(step));
  }
}

TEST(Shortcut, ChainOfTriangleMovesGivesTreePath) {
  // 0-1-2-3-4-5 is the tree; {0,k} charged 0-(k-1)-k, shortcut down the chain.
  Detour acc = make_detour(0, 5, {0, 4, 5});
  acc = shortcut(acc, make_detour(0, 4, {0, 3, 4}));
  acc = shortcut(acc, make_detour(0, 3, {0, 2, 3}));
  acc = shortcut(acc, make_detour(0, 2, {0, 1, 2}));
  EXPECT_EQ(acc, make_detour(0, 5, {0, 1, 2, 3, 4, 5}));
}

TEST(Shortcut, RejectsMisuse) {
  EXPECT_THROW(shortcut(make_detour(a, c, {a, b, c}), make_detour(b, d, {b, a, d})), std::invalid_argument);
  EXPECT_THROW(shortcut(make_detour(a, c, {a, b, c}), make_detour(a, b, {a, c, b})), std::invalid_argument);
}

TEST(RemoveEdge, NothingChargesIntoEdge) {
  auto [g, t] = triangle();
  ChargingScheme s;
  s.add(make_detour(a, c, {a, b, c}), 1);
  const auto out = remove_edge(s, {a, c}, g, t);
  EXPECT_TRUE(out.moves.empty());
}

TEST(RemoveEdge, FourCycleWithChord) {
  const WeightedGraph g(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}, {0, 2, 1}});
  const auto t = make_rooted_tree(g, 0, {-1, 0, 1, 2});
  ChargingScheme s;
  s.add(make_detour(0, 3, {0, 2, 3}), 1);
  s.add(make_detour(0, 2, {0, 1, 2}), 1);
  const auto before = verify_scheme(g, t, s, 1, true);
  ASSERT_TRUE(before.passed());
  const auto out = remove_edge(s, {0, 2}, g, t);
  ASSERT_EQ(out.moves.size(), 1u);
  EXPECT_EQ(out.moves.begin()->first, make_detour(0, 3, {0, 1, 2, 3}));
  const auto g2 = g.without_edge(g.edge_id(0, 2));
  const auto t2 = make_rooted_tree(g2, 0, t.parent);
  EXPECT_TRUE(verify_scheme(g2, t2, out, 1, true).passed());
}

TEST(RemoveEdge, RejectsTreeEdge) {
  auto [g, t] = triangle();
  EXPECT_THROW(remove_edge(ChargingScheme{}, {a, b}, g, t), std::invalid_argument);
}

TEST(RemoveEdge, RemovingEveryOffTreeEdgeLeavesEmptyScheme) {
  GenSpec spec;
  spec.width = 3;
  spec.bags = 8;
  spec.seed = 21;
  const auto red = reduce(gen_random(spec));
  const auto t = lightest_monotone_tree(red.graph, red.decomposition);
  const auto iv = to_intervals(red.decomposition, red.graph.num_vertices());
  auto built = build_scheme(red.graph, t, iv);
  WeightedGraph g = red.graph;
  ChargingScheme s = built.scheme;
  for (;;) {
    std::optional<EdgeId> off;
    for (EdgeId e = 0; e < g.num_edges() && !off; ++e) {
      if (!t.is_tree_edge(g.edge(e).u, g.edge(e).v)) off = e;
    }
    if (!off) break;
    const auto tree_here = make_rooted_tree(g, t.root, t.parent);
    s = remove_edge(s, {g.edge(*off).u, g.edge(*off).v}, g, tree_here);
    g = g.without_edge(*off);
    const auto tree_after = make_rooted_tree(g, t.root, t.parent);
    ASSERT_TRUE(verify_scheme(g, tree_after, s, built.value, true).passed());
  }
  EXPECT_TRUE(s.moves.empty());
  EXPECT_EQ(g.num_edges(), red.graph.num_vertices() - 1);
}

TEST(RemoveEdge, RandomDeletionsKeepValue) {
  std::mt19937_64 rng(50);
  int done = 0;
  for (const auto& entry : corpus::make(30, 40, 4)) {
    const auto red = reduce(gen_random(entry.spec));
    const auto t = lightest_monotone_tree(red.graph, red.decomposition);
    const auto built = build_scheme(red.graph, t, to_intervals(red.decomposition, red.graph.num_vertices()));
    std::vector<EdgeId> off;
    for (EdgeId e = 0; e < red.graph.num_edges(); ++e) {
      if (!t.is_tree_edge(red.graph.edge(e).u, red.graph.edge(e).v)) off.push_back(e);
    }
    if (off.empty()) continue;
    const EdgeId e = off[rng() % off.size()];
    const auto out = remove_edge(built.scheme, {red.graph.edge(e).u, red.graph.edge(e).v}, red.graph, t);
    const auto g2 = red.graph.without_edge(e);
    const auto t2 = make_rooted_tree(g2, t.root, t.parent);
    const auto report = verify_scheme(g2, t2, out, built.value, true);
    EXPECT_TRUE(report.passed()) << entry.name << ": " << (report.violations.empty() ? "" : report.violations.front());
    ++done;
  }
  EXPECT_GE(done, 20);
}

TEST(T2, TriangleChildHangsOffTreeEdge) {
  auto [g, t] = triangle();
  const auto iv = to_intervals({{{a, b, c}}}, 3);
  const auto f = build_t2(g, t, iv);
  const EdgeId ab = g.edge_id(a, b), ac = g.edge_id(a, c), bc = g.edge_id(b, c);
  EXPECT_EQ(f.parent[ac], ab);
  EXPECT_EQ(f.parent[ab], -1);
  EXPECT_EQ(f.parent[bc], -1);
  EXPECT_EQ(f.roots, (std::vector<EdgeId>{ab, bc}));
}

TEST(T2, TreeOnlyGivesIsolatedRoots) {
  const WeightedGraph g(3, {{a, b, 1}, {b, c, 1}});
  const auto t = make_rooted_tree(g, a, {-1, a, b});
  const auto f = build_t2(g, t, to_intervals({{{a, b}, {b, c}}}, 3));
  EXPECT_EQ(f.roots.size(), 2u);
  EXPECT_TRUE(euler_paths(f).empty());
}

TEST(T2, EachComponentHoldsOneTreeEdge) {
  // Five staggered intervals, completed, with the monotone path as the tree.
  const PathDecomposition pd{{{0, 1, 2}, {1, 2, 3}, {2, 3, 4}}};
  std::vector<Edge> edges;
  for (Vertex x = 0; x < 5; ++x) {
    for (Vertex y = x + 1; y < 5 && y <= x + 2; ++y) edges.push_back({x, y, static_cast<double>(y - x)});
  }
  const WeightedGraph g(5, edges);
  const auto t = make_rooted_tree(g, 0, {-1, 0, 1, 2, 3});
  const auto f = build_t2(g, t, to_intervals(pd, 5));
  for (EdgeId e = 0; e < f.size(); ++e) {
    EdgeId top = e;
    while (f.parent[top] >= 0) top = f.parent[top];
    EXPECT_TRUE(t.is_tree_edge(g.edge(top).u, g.edge(top).v));
    EXPECT_EQ(f.parent[e] < 0, t.is_tree_edge(g.edge(e).u, g.edge(e).v));
  }
}

TEST(EulerPaths, SingleRootHasNoPaths) {
  EXPECT_TRUE(euler_paths(make_t2_forest({-1}, {0})).empty());
}

TEST(EulerPaths, StarGivesOnePathPerChild) {
  const auto f = make_t2_forest({-1, 0, 0}, {0, 1, 2});
  const auto paths = euler_paths(f);
  ASSERT_EQ(paths.size(), 2u);
  EXPECT_EQ(paths[0], (std::vector<EdgeId>{1, 0}));
  EXPECT_EQ(paths[1], (std::vector<EdgeId>{2, 0}));
}

TEST(EulerPaths, RandomForestTours) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 100; ++round) {
    const int n = 1 + static_cast<int>(rng() % 25);
    std::vector<EdgeId> parent(n);
    std::vector<std::int64_t> key(n);
    for (int x = 0; x < n; ++x) {
      key[x] = x;
      parent[x] = (x == 0 || rng() % 4 == 0) ? -1 : static_cast<EdgeId>(rng() % x);
    }
    const auto f = make_t2_forest(parent, key);
    std::map<std::pair<EdgeId, EdgeId>, int> traversals;
    std::vector<int> out_deg(n, 0), in_deg(n, 0);
    int total = 0;
    for (const auto& path : euler_paths(f)) {
      // Prefix the root so the path closes into a tour.
      std::vector<EdgeId> tour{path.back()};
      tour.insert(tour.end(), path.begin(), path.end());
      for (std::size_t i = 1; i < tour.size(); ++i) {
        const EdgeId x = tour[i - 1], y = tour[i];
        ASSERT_TRUE(f.parent[x] == y || f.parent[y] == x);
        ++traversals[std::minmax(x, y)];
        ++total;
        ++out_deg[x];
        ++in_deg[y];
      }
    }
    int links = 0;
    for (int x = 0; x < n; ++x) links += parent[x] >= 0;
    EXPECT_EQ(total, 2 * links);
    for (const auto& [link, count] : traversals) EXPECT_EQ(count, 2);
    for (int x = 0; x < n; ++x) EXPECT_EQ(out_deg[x], in_deg[x]);
  }
}

TEST(BuildScheme, TriangleGivesSingleMove) {
  auto [g, t] = triangle();
  const auto built = build_scheme(g, t, to_intervals({{{a, b, c}}}, 3));
  ASSERT_EQ(built.scheme.moves.size(), 1u);
  EXPECT_EQ(built.scheme.moves.begin()->first, make_detour(a, c, {a, b, c}));
  EXPECT_EQ(built.scheme.moves.begin()->second, 1);
  EXPECT_EQ(built.value, 1);
}

TEST(BuildScheme, TreeGraphGivesEmptyScheme) {
  const WeightedGraph g(3, {{a, b, 1}, {b, c, 1}});
  const auto t = make_rooted_tree(g, a, {-1, a, b});
  const auto built = build_scheme(g, t, to_intervals({{{a, b}, {b, c}}}, 3));
  EXPECT_TRUE(built.scheme.moves.empty());
  EXPECT_EQ(built.value, 0);
}

TEST(BuildScheme, CorpusPassesAllConditions) {
  for (const auto& entry : corpus::make(50, 50, 4)) {
    const auto red = reduce(gen_random(entry.spec));
    const auto iv = to_intervals(red.decomposition, red.graph.num_vertices());
    for (const auto& t : {lightest_monotone_tree(red.graph, red.decomposition), monotone_tree_recursive(red.graph, iv)}) {
      const auto built = build_scheme(red.graph, t, iv);
      const auto report = verify_scheme(red.graph, t, built.scheme, built.value, true);
      EXPECT_TRUE(report.passed()) << entry.name;
      EXPECT_LE(built.value, 2 * red.graph.max_degree()) << entry.name;
      for (const auto& [detour, x] : built.scheme.moves) EXPECT_EQ(x, 1);
    }
  }
}

TEST(Rational, Formatting) {
  EXPECT_EQ(to_string(Rational(3)), "3");
  EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
}
