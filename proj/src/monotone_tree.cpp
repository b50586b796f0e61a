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

#include "lightspan/monotone_tree.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace lightspan {

std::vector<EdgeId> RootedTree::edge_ids() const {
  std::vector<EdgeId> ids;
  for (EdgeId e : parent_edge) {
    if (e >= 0) ids.push_back(e);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

RootedTree make_rooted_tree(const WeightedGraph& g, Vertex root, std::vector<Vertex> parent) {
  const int n = g.num_vertices();
  if (static_cast<int>(parent.size()) != n) throw std::invalid_argument("tree: parent array has wrong length");
  if (root < 0 || root >= n) throw std::invalid_argument("tree: root out of range");
  if (parent[static_cast<std::size_t>(root)] != -1) throw std::invalid_argument("tree: root has a parent");
  RootedTree t;
  t.root = root;
  t.parent = std::move(parent);
  t.parent_edge.assign(static_cast<std::size_t>(n), -1);
  for (Vertex v = 0; v < n; ++v) {
    if (v == root) continue;
    const Vertex p = t.parent[static_cast<std::size_t>(v)];
    if (p < 0 || p >= n) throw std::invalid_argument("tree: vertex " + std::to_string(v) + " has no parent");
    auto e = g.find_edge(v, p);
    if (!e) {
      throw std::invalid_argument("tree: parent link {" + std::to_string(v) + "," + std::to_string(p) +
                                  "} is not an edge");
    }
    t.parent_edge[static_cast<std::size_t>(v)] = *e;
    t.weight += g.edge(*e).w;
  }
  // Every parent chain must reach the root.
  std::vector<char> state(static_cast<std::size_t>(n), 0);  // 0 new, 1 on stack, 2 reaches root
  state[static_cast<std::size_t>(root)] = 2;
  for (Vertex v = 0; v < n; ++v) {
    std::vector<Vertex> chain;
    Vertex x = v;
    while (state[static_cast<std::size_t>(x)] == 0) {
      state[static_cast<std::size_t>(x)] = 1;
      chain.push_back(x);
      x = t.parent[static_cast<std::size_t>(x)];
    }
    if (state[static_cast<std::size_t>(x)] == 1) throw std::invalid_argument("tree: parent links contain a cycle");
    for (Vertex c : chain) state[static_cast<std::size_t>(c)] = 2;
  }
  return t;
}

bool is_monotone(const RootedTree& t, const IntervalRepresentation& iv) {
  if (t.size() != iv.num_vertices()) return false;
  for (Vertex v = 0; v < t.size(); ++v) {
    const Vertex p = t.parent[static_cast<std::size_t>(v)];
    if (v == t.root) {
      if (p != -1) return false;
      continue;
    }
    if (p < 0 || iv.left_key(p) >= iv.left_key(v)) return false;
  }
  return true;
}

namespace {

class RecursiveBuilder {
 public:
  RecursiveBuilder(const WeightedGraph& g, const IntervalRepresentation& iv)
      : g_(g), iv_(iv), parent_(static_cast<std::size_t>(g.num_vertices()), -1) {}

  RecursiveTreeResult run() {
    std::vector<Vertex> all(static_cast<std::size_t>(g_.num_vertices()));
    for (Vertex v = 0; v < g_.num_vertices(); ++v) all[static_cast<std::size_t>(v)] = v;
    if (!is_connected(g_)) throw std::invalid_argument("monotone_tree_recursive: graph is disconnected");
    build(std::move(all), 1);
    const Vertex root = iv_.by_left().front();
    return {make_rooted_tree(g_, root, parent_), shortest_, depth_};
  }

 private:
  void build(std::vector<Vertex> part, int level) {
    depth_ = std::max(depth_, level);
    if (part.size() <= 1) return;
    std::sort(part.begin(), part.end(), [&](Vertex a, Vertex b) { return iv_.left_key(a) < iv_.left_key(b); });
    // Local index i stands for part[i]; local order is left order.
    const WeightedGraph sub = g_.induced(part);
    if (!is_connected(sub)) throw std::invalid_argument("monotone_tree_recursive: induced part is disconnected");
    const int size = sub.num_vertices();

    int rightmost = 0;
    for (int i = 1; i < size; ++i) {
      if (iv_.right_key(part[static_cast<std::size_t>(i)]) > iv_.right_key(part[static_cast<std::size_t>(rightmost)])) {
        rightmost = i;
      }
    }

    // Shortest path from local 0 to `rightmost` that only steps rightwards.
    std::vector<double> dist(static_cast<std::size_t>(size), std::numeric_limits<double>::infinity());
    std::vector<int> pred(static_cast<std::size_t>(size), -1);
    dist[0] = 0.0;
    for (int i = 0; i < size; ++i) {
      if (dist[static_cast<std::size_t>(i)] == std::numeric_limits<double>::infinity()) continue;
      for (const auto& nb : sub.neighbors(i)) {
        if (nb.to <= i) continue;
        const double cand = dist[static_cast<std::size_t>(i)] + sub.edge(nb.edge).w;
        if (cand < dist[static_cast<std::size_t>(nb.to)]) {
          dist[static_cast<std::size_t>(nb.to)] = cand;
          pred[static_cast<std::size_t>(nb.to)] = i;
        }
      }
    }
    const double spine_length = dist[static_cast<std::size_t>(rightmost)];
    if (spine_length == std::numeric_limits<double>::infinity()) {
      throw std::invalid_argument("monotone_tree_recursive: no monotone path (graph not completed?)");
    }
    if (!eq_tol(spine_length, dijkstra(sub, 0).dist[static_cast<std::size_t>(rightmost)])) shortest_ = false;

    std::vector<char> on_spine(static_cast<std::size_t>(size), 0);
    std::vector<int> spine;
    for (int x = rightmost; x >= 0; x = pred[static_cast<std::size_t>(x)]) {
      on_spine[static_cast<std::size_t>(x)] = 1;
      spine.push_back(x);
      if (pred[static_cast<std::size_t>(x)] >= 0) {
        parent_[static_cast<std::size_t>(part[static_cast<std::size_t>(x)])] =
            part[static_cast<std::size_t>(pred[static_cast<std::size_t>(x)])];
      }
    }

    // Components of MST(sub) once the spine vertices are deleted.
    const EdgeSubgraph tree = mst(sub);
    std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(size));
    for (EdgeId e : tree.edge_ids()) {
      const auto& edge = sub.edge(e);
      if (on_spine[static_cast<std::size_t>(edge.u)] || on_spine[static_cast<std::size_t>(edge.v)]) continue;
      adjacency[static_cast<std::size_t>(edge.u)].push_back(edge.v);
      adjacency[static_cast<std::size_t>(edge.v)].push_back(edge.u);
    }
    std::vector<char> seen(on_spine);
    for (int start = 0; start < size; ++start) {
      if (seen[static_cast<std::size_t>(start)]) continue;
      std::vector<int> component{start};
      seen[static_cast<std::size_t>(start)] = 1;
      for (std::size_t k = 0; k < component.size(); ++k) {
        for (int y : adjacency[static_cast<std::size_t>(component[k])]) {
          if (!seen[static_cast<std::size_t>(y)]) {
            seen[static_cast<std::size_t>(y)] = 1;
            component.push_back(y);
          }
        }
      }
      // `start` is the component's smallest local index, hence its leftmost vertex.
      hang(sub, part, spine, start);
      std::vector<Vertex> members;
      for (int c : component) members.push_back(part[static_cast<std::size_t>(c)]);
      build(std::move(members), level + 1);
    }
  }

  void hang(const WeightedGraph& sub, const std::vector<Vertex>& part, const std::vector<int>& spine, int x) {
    const Vertex gx = part[static_cast<std::size_t>(x)];
    const auto point = iv_.left_key(gx);
    int best = -1;
    double best_w = 0.0;
    for (int s : spine) {
      const Vertex gs = part[static_cast<std::size_t>(s)];
      if (!iv_.contains(gs, point)) continue;
      auto e = sub.find_edge(x, s);
      if (!e) continue;
      const double w = sub.edge(*e).w;
      if (best < 0 || w < best_w || (w == best_w && gs < part[static_cast<std::size_t>(best)])) {
        best = s;
        best_w = w;
      }
    }
    if (best < 0) {
      throw std::invalid_argument("monotone_tree_recursive: vertex " + std::to_string(gx) +
                                  " has no edge to the spine (graph not completed?)");
    }
    parent_[static_cast<std::size_t>(gx)] = part[static_cast<std::size_t>(best)];
  }

  const WeightedGraph& g_;
  const IntervalRepresentation& iv_;
  std::vector<Vertex> parent_;
  bool shortest_ = true;
  int depth_ = 0;
};

}  // namespace

RecursiveTreeResult monotone_tree_recursive_detailed(const WeightedGraph& g, const IntervalRepresentation& iv) {
  if (iv.num_vertices() != g.num_vertices()) throw std::invalid_argument("interval layout does not match graph");
  return RecursiveBuilder(g, iv).run();
}

RootedTree monotone_tree_recursive(const WeightedGraph& g, const IntervalRepresentation& iv) {
  return monotone_tree_recursive_detailed(g, iv).tree;
}

RootedTree lightest_monotone_tree(const WeightedGraph& g, const PathDecomposition& pd) {
  const int n = g.num_vertices();
  if (auto report = validate_decomposition(g, pd); !report.valid) {
    throw std::invalid_argument("lightest_monotone_tree: decomposition invalid: " + report.problems.front());
  }
  std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
  Vertex root = -1;
  for (const auto& bag : pd.bags) {
    // Bags are sorted, and vertices introduced together are ordered by id on the line.
    for (Vertex v : bag) {
      if (in_tree[static_cast<std::size_t>(v)]) continue;
      if (root < 0) {
        root = v;
        in_tree[static_cast<std::size_t>(v)] = 1;
        continue;
      }
      Vertex best = -1;
      double best_w = 0.0;
      for (Vertex u : bag) {
        if (!in_tree[static_cast<std::size_t>(u)]) continue;
        auto e = g.find_edge(u, v);
        if (!e) continue;
        const double w = g.edge(*e).w;
        if (best < 0 || w < best_w) {
          best = u;
          best_w = w;
        }
      }
      if (best < 0) {
        throw std::invalid_argument("lightest_monotone_tree: vertex " + std::to_string(v) +
                                    " has no earlier neighbour in its bag (graph not completed?)");
      }
      parent[static_cast<std::size_t>(v)] = best;
      in_tree[static_cast<std::size_t>(v)] = 1;
    }
  }
  if (root < 0) throw std::invalid_argument("lightest_monotone_tree: empty decomposition");
  return make_rooted_tree(g, root, std::move(parent));
}

}  // namespace lightspan
