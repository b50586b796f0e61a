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

#include "lightspan/decomposition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace lightspan {

int PathDecomposition::width() const {
  std::size_t widest = 0;
  for (const auto& b : bags) widest = std::max(widest, b.size());
  return static_cast<int>(widest) - 1;
}

namespace {

std::string vertex_name(Vertex v) { return std::to_string(v); }

// Bag indices in which each vertex occurs, ascending and deduplicated.
std::vector<std::vector<int>> occurrences(const PathDecomposition& pd, int n) {
  std::vector<std::vector<int>> occ(static_cast<std::size_t>(n));
  for (int i = 0; i < static_cast<int>(pd.bags.size()); ++i) {
    for (Vertex v : pd.bags[static_cast<std::size_t>(i)]) {
      if (v < 0 || v >= n) continue;
      auto& list = occ[static_cast<std::size_t>(v)];
      if (list.empty() || list.back() != i) list.push_back(i);
    }
  }
  return occ;
}

bool share_index(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j]) ++i;
    else ++j;
  }
  return false;
}

void require_valid(const WeightedGraph& g, const PathDecomposition& pd) {
  auto report = validate_decomposition(g, pd);
  if (!report.valid) throw std::invalid_argument("decomposition invalid: " + report.problems.front());
}

Bag without(const Bag& bag, Vertex v) {
  Bag out;
  out.reserve(bag.size());
  for (Vertex x : bag) {
    if (x != v) out.push_back(x);
  }
  return out;
}

Bag with(Bag bag, Vertex v) {
  bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
  return bag;
}

}  // namespace

DecompositionReport validate_decomposition(const WeightedGraph& g, const PathDecomposition& pd) {
  DecompositionReport report;
  const int n = g.num_vertices();
  report.width = pd.width();
  for (std::size_t i = 0; i < pd.bags.size(); ++i) {
    const auto& bag = pd.bags[i];
    for (std::size_t j = 0; j < bag.size(); ++j) {
      if (bag[j] < 0 || bag[j] >= n) report.fail("bag " + std::to_string(i) + " holds unknown vertex " + vertex_name(bag[j]));
      if (j > 0 && bag[j - 1] >= bag[j]) report.fail("bag " + std::to_string(i) + " is not a sorted set");
    }
  }
  auto occ = occurrences(pd, n);
  for (Vertex v = 0; v < n; ++v) {
    const auto& list = occ[static_cast<std::size_t>(v)];
    if (list.empty()) {
      report.fail("vertex " + vertex_name(v) + " is in no bag");
    } else if (list.back() - list.front() + 1 != static_cast<int>(list.size())) {
      report.fail("bags of vertex " + vertex_name(v) + " are not contiguous");
    }
  }
  for (const auto& e : g.edges()) {
    if (e.u == e.v) continue;
    if (!share_index(occ[static_cast<std::size_t>(e.u)], occ[static_cast<std::size_t>(e.v)])) {
      report.fail("edge {" + vertex_name(e.u) + "," + vertex_name(e.v) + "} is in no bag");
    }
  }
  return report;
}

bool is_nice(const PathDecomposition& pd) {
  for (std::size_t i = 1; i < pd.bags.size(); ++i) {
    Bag diff;
    std::set_symmetric_difference(pd.bags[i - 1].begin(), pd.bags[i - 1].end(), pd.bags[i].begin(),
                                  pd.bags[i].end(), std::back_inserter(diff));
    if (diff.size() != 1) return false;
  }
  return true;
}

IntervalRepresentation::IntervalRepresentation(const PathDecomposition& pd, int num_vertices)
    : denom_(2 * (static_cast<std::int64_t>(num_vertices) + 1)),
      first_(static_cast<std::size_t>(num_vertices)),
      last_(static_cast<std::size_t>(num_vertices)),
      left_(static_cast<std::size_t>(num_vertices)),
      right_(static_cast<std::size_t>(num_vertices)) {
  auto occ = occurrences(pd, num_vertices);
  for (Vertex v = 0; v < num_vertices; ++v) {
    const auto& list = occ[static_cast<std::size_t>(v)];
    if (list.empty()) throw std::invalid_argument("vertex " + vertex_name(v) + " is in no bag");
    if (list.back() - list.front() + 1 != static_cast<int>(list.size())) {
      throw std::invalid_argument("bags of vertex " + vertex_name(v) + " are not contiguous");
    }
    const auto idx = static_cast<std::size_t>(v);
    first_[idx] = list.front();
    last_[idx] = list.back();
    const std::int64_t rank = v + 1;
    left_[idx] = first_[idx] * denom_ + rank;
    right_[idx] = (last_[idx] + 1) * denom_ - rank;
  }
}

bool IntervalRepresentation::overlaps(Vertex a, Vertex b) const {
  return left_key(a) <= right_key(b) && left_key(b) <= right_key(a);
}

bool IntervalRepresentation::contains(Vertex v, std::int64_t key) const {
  return left_key(v) <= key && key <= right_key(v);
}

std::vector<Vertex> IntervalRepresentation::by_left() const {
  std::vector<Vertex> order(first_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return left_key(a) < left_key(b); });
  return order;
}

int IntervalRepresentation::max_overlap() const {
  std::vector<std::pair<std::int64_t, int>> events;
  for (Vertex v = 0; v < num_vertices(); ++v) {
    events.push_back({left_key(v), +1});
    events.push_back({right_key(v), -1});
  }
  // Closed intervals: at equal keys, openings count before closings.
  std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  });
  int live = 0, best = 0;
  for (const auto& [key, delta] : events) {
    live += delta;
    best = std::max(best, live);
  }
  return best;
}

IntervalRepresentation to_intervals(const PathDecomposition& pd, int num_vertices) {
  return IntervalRepresentation(pd, num_vertices);
}

IntervalRepresentation to_intervals(const PathDecomposition& pd) {
  Vertex top = -1;
  for (const auto& bag : pd.bags) {
    for (Vertex v : bag) top = std::max(top, v);
  }
  return IntervalRepresentation(pd, top + 1);
}

Vertex ReductionTrace::original_of(Vertex x) const {
  auto it = copy_map.find(x);
  return it == copy_map.end() ? x : it->second;
}

const CompletionEdge* ReductionTrace::find_completion(Vertex a, Vertex b) const {
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(completion_edges.begin(), completion_edges.end(), std::make_pair(a, b),
                             [](const CompletionEdge& c, const std::pair<Vertex, Vertex>& key) {
                               return std::tie(c.u, c.v) < std::tie(key.first, key.second);
                             });
  if (it == completion_edges.end() || it->u != a || it->v != b) return nullptr;
  return &*it;
}

bool operator==(const ReductionTrace& a, const ReductionTrace& b) {
  if (a.original_vertices != b.original_vertices || a.reduced_vertices != b.reduced_vertices ||
      a.copy_map != b.copy_map || a.zero_edges != b.zero_edges ||
      a.completion_edges.size() != b.completion_edges.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.completion_edges.size(); ++i) {
    const auto& x = a.completion_edges[i];
    const auto& y = b.completion_edges[i];
    if (x.u != y.u || x.v != y.v || x.w != y.w || x.path != y.path) return false;
  }
  return true;
}

ReductionTrace combine(const ReductionTrace& degree, const ReductionTrace& completion) {
  ReductionTrace out;
  out.original_vertices = degree.original_vertices;
  out.reduced_vertices = completion.reduced_vertices;
  out.copy_map = degree.copy_map;
  out.zero_edges = degree.zero_edges;
  out.completion_edges = completion.completion_edges;
  return out;
}

PathDecomposition make_nice(const WeightedGraph& g, const PathDecomposition& pd) {
  require_valid(g, pd);
  PathDecomposition out;
  for (const auto& next : pd.bags) {
    if (out.bags.empty()) {
      out.bags.push_back(next);
      continue;
    }
    Bag current = out.bags.back();
    Bag gone, fresh;
    std::set_difference(current.begin(), current.end(), next.begin(), next.end(), std::back_inserter(gone));
    std::set_difference(next.begin(), next.end(), current.begin(), current.end(), std::back_inserter(fresh));
    for (Vertex v : gone) {
      current = without(current, v);
      out.bags.push_back(current);
    }
    for (Vertex v : fresh) {
      current = with(current, v);
      out.bags.push_back(current);
    }
  }
  return out;
}

DegreeReduction bound_degree(const WeightedGraph& g, const PathDecomposition& pd) {
  require_valid(g, pd);
  if (!is_nice(pd)) throw std::invalid_argument("bound_degree: decomposition is not nice");

  const int n = g.num_vertices();
  const int m = static_cast<int>(pd.bags.size());
  const int group = std::max(1, pd.width());

  // Each original edge is realised once, at the first bag holding both ends.
  std::vector<std::vector<EdgeId>> edges_at(static_cast<std::size_t>(m));
  {
    auto occ = occurrences(pd, n);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const auto& a = occ[static_cast<std::size_t>(g.edge(e).u)];
      const auto& b = occ[static_cast<std::size_t>(g.edge(e).v)];
      const int first = std::max(a.front(), b.front());
      edges_at[static_cast<std::size_t>(first)].push_back(e);
    }
  }

  DegreeReduction out;
  out.trace.original_vertices = n;
  std::vector<Vertex> current(static_cast<std::size_t>(n));
  std::iota(current.begin(), current.end(), 0);
  std::vector<Edge> edges;
  Vertex next_id = n;
  auto rename = [&](const Bag& bag) {
    Bag renamed;
    for (Vertex v : bag) renamed.push_back(current[static_cast<std::size_t>(v)]);
    std::sort(renamed.begin(), renamed.end());
    return renamed;
  };

  for (int t = 0; t < m; ++t) {
    const Bag& original = pd.bags[static_cast<std::size_t>(t)];
    Bag working = rename(original);
    out.decomposition.bags.push_back(working);
    for (EdgeId e : edges_at[static_cast<std::size_t>(t)]) {
      const auto& edge = g.edge(e);
      edges.push_back({current[static_cast<std::size_t>(edge.u)], current[static_cast<std::size_t>(edge.v)], edge.w});
    }
    if ((t + 1) % group != 0 || t + 1 == m) continue;

    Bag closing = working;
    std::sort(closing.begin(), closing.end(),
              [&](Vertex x, Vertex y) { return out.trace.original_of(x) < out.trace.original_of(y); });
    for (Vertex v : closing) {
      const Vertex copy = next_id++;
      const Vertex root = out.trace.original_of(v);
      out.trace.copy_map[copy] = root;
      out.trace.zero_edges.push_back({v, copy});
      edges.push_back({v, copy, 0.0});
      working = with(working, copy);
      out.decomposition.bags.push_back(working);
      working = without(working, v);
      out.decomposition.bags.push_back(working);
      current[static_cast<std::size_t>(root)] = copy;
    }
  }
  out.graph = WeightedGraph(next_id, std::move(edges));
  out.trace.reduced_vertices = next_id;
  return out;
}

namespace {

struct HopDistances {
  std::vector<double> dist;
  std::vector<int> hops;
};

// Dijkstra from `target` on the lexicographic key (distance, hop count).
HopDistances hop_dijkstra(const WeightedGraph& g, Vertex target) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  HopDistances out{std::vector<double>(n, std::numeric_limits<double>::infinity()),
                   std::vector<int>(n, std::numeric_limits<int>::max())};
  using Key = std::tuple<double, int, Vertex>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;
  std::vector<char> done(n, 0);
  out.dist[static_cast<std::size_t>(target)] = 0.0;
  out.hops[static_cast<std::size_t>(target)] = 0;
  heap.push({0.0, 0, target});
  while (!heap.empty()) {
    auto [d, h, x] = heap.top();
    heap.pop();
    if (done[static_cast<std::size_t>(x)]) continue;
    done[static_cast<std::size_t>(x)] = 1;
    for (const auto& nb : g.neighbors(x)) {
      const double nd = d + g.edge(nb.edge).w;
      const int nh = h + 1;
      const auto y = static_cast<std::size_t>(nb.to);
      if (std::tie(nd, nh) < std::tie(out.dist[y], out.hops[y])) {
        out.dist[y] = nd;
        out.hops[y] = nh;
        heap.push({nd, nh, nb.to});
      }
    }
  }
  return out;
}

// Least-hop shortest path from `from` to the target of `toward`, choosing the
// smallest vertex id at every step.
std::vector<Vertex> witness_path(const WeightedGraph& g, const HopDistances& toward, Vertex from) {
  std::vector<Vertex> path{from};
  Vertex x = from;
  while (toward.hops[static_cast<std::size_t>(x)] > 0) {
    const auto hx = toward.hops[static_cast<std::size_t>(x)];
    const auto dx = toward.dist[static_cast<std::size_t>(x)];
    Vertex best = -1;
    for (const auto& nb : g.neighbors(x)) {
      const auto y = static_cast<std::size_t>(nb.to);
      if (toward.hops[y] != hx - 1) continue;
      if (!eq_tol(toward.dist[y] + g.edge(nb.edge).w, dx)) continue;
      if (best < 0 || nb.to < best) best = nb.to;
    }
    if (best < 0) throw std::logic_error("witness_path: no tight step");
    path.push_back(best);
    x = best;
  }
  return path;
}

}  // namespace

Completion complete(const WeightedGraph& g, const PathDecomposition& pd) {
  require_valid(g, pd);
  const int n = g.num_vertices();
  std::vector<char> together(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (const auto& bag : pd.bags) {
    for (std::size_t i = 0; i < bag.size(); ++i) {
      for (std::size_t j = i + 1; j < bag.size(); ++j) {
        together[static_cast<std::size_t>(bag[i]) * static_cast<std::size_t>(n) + static_cast<std::size_t>(bag[j])] = 1;
      }
    }
  }

  Completion out;
  out.trace.original_vertices = n;
  out.trace.reduced_vertices = n;
  std::vector<Edge> edges = g.edges();
  std::map<Vertex, HopDistances> cache;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (!together[static_cast<std::size_t>(u) * static_cast<std::size_t>(n) + static_cast<std::size_t>(v)]) continue;
      if (g.has_edge(u, v)) continue;
      auto it = cache.find(v);
      if (it == cache.end()) it = cache.emplace(v, hop_dijkstra(g, v)).first;
      if (it->second.hops[static_cast<std::size_t>(u)] == std::numeric_limits<int>::max()) {
        throw std::invalid_argument("complete: vertices " + vertex_name(u) + " and " + vertex_name(v) +
                                   " share a bag but are disconnected");
      }
      CompletionEdge added{u, v, 0.0, witness_path(g, it->second, u)};
      for (std::size_t i = 1; i < added.path.size(); ++i) {
        added.w += g.edge(g.edge_id(added.path[i - 1], added.path[i])).w;
      }
      edges.push_back({u, v, added.w});
      out.trace.completion_edges.push_back(std::move(added));
    }
  }
  out.graph = WeightedGraph(n, std::move(edges));
  return out;
}

EdgeSubgraph lift_spanner(const EdgeSubgraph& spanner, const ReductionTrace& trace, const WeightedGraph& original) {
  if (trace.original_vertices != original.num_vertices()) {
    throw std::invalid_argument("lift_spanner: trace was recorded for a graph with " +
                                std::to_string(trace.original_vertices) + " vertices");
  }
  if (trace.reduced_vertices != spanner.host().num_vertices()) {
    throw std::invalid_argument("lift_spanner: spanner host does not match the reduced graph of the trace");
  }
  std::vector<EdgeId> lifted;
  auto add_step = [&](Vertex a, Vertex b) {
    const Vertex x = trace.original_of(a);
    const Vertex y = trace.original_of(b);
    if (x >= original.num_vertices() || y >= original.num_vertices()) {
      throw std::invalid_argument("lift_spanner: vertex without an original in the trace");
    }
    if (x == y) return;  // an edge of S, contracted away
    auto e = original.find_edge(x, y);
    if (!e) {
      throw std::invalid_argument("lift_spanner: edge {" + vertex_name(x) + "," + vertex_name(y) +
                                  "} is not in the original graph");
    }
    lifted.push_back(*e);
  };
  for (EdgeId e : spanner.edge_ids()) {
    const auto& edge = spanner.host().edge(e);
    if (const auto* c = trace.find_completion(edge.u, edge.v)) {
      for (std::size_t i = 1; i < c->path.size(); ++i) add_step(c->path[i - 1], c->path[i]);
    } else {
      add_step(edge.u, edge.v);
    }
  }
  return EdgeSubgraph(original, std::move(lifted));
}

}  // namespace lightspan
