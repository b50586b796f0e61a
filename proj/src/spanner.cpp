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

#include "lightspan/spanner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>

namespace lightspan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Adjacency that grows as the greedy accepts edges.
class GrowingGraph {
 public:
  explicit GrowingGraph(int n) : adj_(static_cast<std::size_t>(n)) {}

  void add(const Edge& e) {
    adj_[static_cast<std::size_t>(e.u)].push_back({e.v, e.w});
    adj_[static_cast<std::size_t>(e.v)].push_back({e.u, e.w});
  }

  // Distance from s to t, or any value > cap once it is known to exceed cap.
  double distance(Vertex s, Vertex t, double cap) const {
    std::vector<double> dist(adj_.size(), kInf);
    using Item = std::pair<double, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[static_cast<std::size_t>(s)] = 0.0;
    heap.push({0.0, s});
    while (!heap.empty()) {
      auto [d, x] = heap.top();
      heap.pop();
      if (d > dist[static_cast<std::size_t>(x)]) continue;
      if (d > cap) return d;
      if (x == t) return d;
      for (const auto& [y, w] : adj_[static_cast<std::size_t>(x)]) {
        const double cand = d + w;
        if (cand < dist[static_cast<std::size_t>(y)]) {
          dist[static_cast<std::size_t>(y)] = cand;
          heap.push({cand, y});
        }
      }
    }
    return kInf;
  }

 private:
  std::vector<std::vector<std::pair<Vertex, double>>> adj_;
};

std::vector<EdgeId> scan_order(const WeightedGraph& g) {
  std::vector<EdgeId> order(static_cast<std::size_t>(g.num_edges()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) { return g.edge(a).w < g.edge(b).w; });
  return order;
}

EdgeSubgraph run_greedy(const WeightedGraph& g, const std::vector<char>& forced, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("greedy_spanner: eps must be positive");
  GrowingGraph current(g.num_vertices());
  std::vector<EdgeId> kept;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (forced[static_cast<std::size_t>(e)]) {
      current.add(g.edge(e));
      kept.push_back(e);
    }
  }
  for (EdgeId e : scan_order(g)) {
    if (forced[static_cast<std::size_t>(e)]) continue;
    const auto& edge = g.edge(e);
    const double target = (1.0 + eps) * edge.w;
    if (target < current.distance(edge.u, edge.v, target)) {
      current.add(edge);
      kept.push_back(e);
    }
  }
  return EdgeSubgraph(g, std::move(kept));
}

double pair_ratio(double dh, double dg) {
  if (dg == 0.0) return dh == 0.0 ? 1.0 : kInf;
  return dh / dg;
}

}  // namespace

EdgeSubgraph greedy_spanner(const WeightedGraph& g, const RootedTree& t, double eps) {
  if (t.size() != g.num_vertices()) throw std::invalid_argument("greedy_spanner: tree does not span the graph");
  std::vector<char> forced(static_cast<std::size_t>(g.num_edges()), 0);
  for (EdgeId e : t.edge_ids()) forced[static_cast<std::size_t>(e)] = 1;
  if (!EdgeSubgraph(g, t.edge_ids()).is_spanning_connected() ||
      static_cast<int>(t.edge_ids().size()) != std::max(0, g.num_vertices() - 1)) {
    throw std::invalid_argument("greedy_spanner: tree does not span the graph");
  }
  return run_greedy(g, forced, eps);
}

EdgeSubgraph greedy_spanner_unforced(const WeightedGraph& g, double eps) {
  return run_greedy(g, std::vector<char>(static_cast<std::size_t>(g.num_edges()), 0), eps);
}

double verify_stretch(const WeightedGraph& g, const EdgeSubgraph& h) {
  if (!h.is_spanning_connected()) throw std::invalid_argument("verify_stretch: subgraph does not span");
  const auto dg = apsp(g);
  const auto dh = apsp(h.as_graph());
  double worst = 1.0;
  for (Vertex a = 0; a < g.num_vertices(); ++a) {
    for (Vertex b = a + 1; b < g.num_vertices(); ++b) worst = std::max(worst, pair_ratio(dh(a, b), dg(a, b)));
  }
  return worst;
}

double edge_stretch(const WeightedGraph& g, const EdgeSubgraph& h) {
  if (!h.is_spanning_connected()) throw std::invalid_argument("edge_stretch: subgraph does not span");
  const auto dg = apsp(g);
  const auto dh = apsp(h.as_graph());
  double worst = 1.0;
  for (const auto& e : g.edges()) worst = std::max(worst, pair_ratio(dh(e.u, e.v), dg(e.u, e.v)));
  return worst;
}

bool within_stretch(double max_stretch, double eps) { return max_stretch <= (1.0 + eps) * (1.0 + kRelTol); }

SpannerResult pipeline(const WeightedGraph& g, const PathDecomposition& pd, double eps, const PipelineOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InputError("eps must be positive");
  if (auto report = validate(g); !report.valid) throw InputError("graph invalid: " + report.problems.front());
  if (auto report = validate_decomposition(g, pd); !report.valid) {
    throw InputError("decomposition invalid: " + report.problems.front());
  }

  SpannerResult result;
  result.epsilon = eps;
  auto original = std::make_shared<const WeightedGraph>(g);
  result.original = original;

  const PathDecomposition nice = make_nice(g, pd);
  DegreeReduction degree = bound_degree(g, nice);
  Completion completion = complete(degree.graph, degree.decomposition);
  auto reduced = std::make_shared<const WeightedGraph>(std::move(completion.graph));
  result.reduced = reduced;
  result.reduced_decomposition = degree.decomposition;
  result.trace = combine(degree.trace, completion.trace);
  const auto iv = to_intervals(result.reduced_decomposition, reduced->num_vertices());

  result.tree = options.tree_mode == TreeMode::kLightest ? lightest_monotone_tree(*reduced, result.reduced_decomposition)
                                                         : monotone_tree_recursive(*reduced, iv);
  if (!is_monotone(result.tree, iv)) throw CertificationError("tree", "spanning tree is not monotone");
  result.tree_weight = result.tree.weight;

  BuiltScheme built;
  try {
    built = build_scheme(*reduced, result.tree, iv);
  } catch (const std::logic_error& err) {
    throw CertificationError("scheme", err.what());
  }
  const SchemeReport check = verify_scheme(*reduced, result.tree, built.scheme, built.value, true);
  if (!check.passed()) throw CertificationError("scheme", check.violations.front());
  result.scheme = std::move(built.scheme);
  result.scheme_value = built.value;

  result.spanner = options.force_tree ? greedy_spanner(*reduced, result.tree, eps) : greedy_spanner_unforced(*reduced, eps);
  result.spanner_weight = result.spanner.weight();
  if (const double s = verify_stretch(*reduced, result.spanner); !within_stretch(s, eps)) {
    throw CertificationError("stretch", "reduced spanner stretch " + std::to_string(s));
  }
  if (options.force_tree) {
    // eps * w(G' - T) <= v * w(T)
    const double v = result.scheme_value.convert_to<double>();
    const double off_tree = result.spanner_weight - result.tree_weight;
    if (!leq_tol(eps * off_tree, v * result.tree_weight)) {
      throw CertificationError("weight_bound", "eps*w(G'-T) = " + std::to_string(eps * off_tree) +
                                                   " exceeds v*w(T) = " + std::to_string(v * result.tree_weight));
    }
  }

  result.lifted = lift_spanner(result.spanner, result.trace, *original);
  result.lifted_weight = result.lifted.weight();
  if (!leq_tol(result.lifted_weight, result.spanner_weight)) {
    throw CertificationError("lift", "lifted spanner is heavier than the reduced one");
  }
  result.max_stretch = verify_stretch(*original, result.lifted);
  if (!within_stretch(result.max_stretch, eps)) {
    throw CertificationError("stretch", "lifted spanner stretch " + std::to_string(result.max_stretch));
  }
  result.mst = mst_weight(*original);
  result.reduced_mst = mst_weight(*reduced);
  result.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace lightspan
