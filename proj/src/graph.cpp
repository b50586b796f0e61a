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

#include "lightspan/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <tuple>

namespace lightspan {

bool leq_tol(double a, double b, double rel) {
  if (a <= b) return true;
  return a - b <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

bool eq_tol(double a, double b, double rel) { return leq_tol(a, b, rel) && leq_tol(b, a, rel); }

namespace {

bool edge_less(const Edge& a, const Edge& b) {
  return std::tie(a.u, a.v) < std::tie(b.u, b.v);
}

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  for (auto& e : edges_) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw std::invalid_argument("edge endpoint out of range: {" + std::to_string(e.u) + "," +
                                  std::to_string(e.v) + "}");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::stable_sort(edges_.begin(), edges_.end(), edge_less);
  adj_.assign(static_cast<std::size_t>(n), {});
  for (EdgeId i = 0; i < num_edges(); ++i) {
    const auto& e = edges_[static_cast<std::size_t>(i)];
    adj_[static_cast<std::size_t>(e.u)].push_back({e.v, i});
    if (e.u != e.v) adj_[static_cast<std::size_t>(e.v)].push_back({e.u, i});
  }
}

int WeightedGraph::max_degree() const {
  int best = 0;
  for (const auto& a : adj_) best = std::max(best, static_cast<int>(a.size()));
  return best;
}

std::optional<EdgeId> WeightedGraph::find_edge(Vertex a, Vertex b) const {
  if (a > b) std::swap(a, b);
  Edge key{a, b, 0.0};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key, edge_less);
  if (it == edges_.end() || it->u != a || it->v != b) return std::nullopt;
  return static_cast<EdgeId>(it - edges_.begin());
}

EdgeId WeightedGraph::edge_id(Vertex a, Vertex b) const {
  auto e = find_edge(a, b);
  if (!e) {
    throw std::invalid_argument("no edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
  }
  return *e;
}

double WeightedGraph::total_weight() const {
  double total = 0.0;
  for (const auto& e : edges_) total += e.w;
  return total;
}

WeightedGraph WeightedGraph::without_edge(EdgeId e) const {
  std::vector<Edge> kept;
  kept.reserve(edges_.size());
  for (EdgeId i = 0; i < num_edges(); ++i) {
    if (i != e) kept.push_back(edges_[static_cast<std::size_t>(i)]);
  }
  return WeightedGraph(n_, std::move(kept));
}

WeightedGraph WeightedGraph::induced(std::span<const Vertex> vertices) const {
  std::vector<int> local(static_cast<std::size_t>(n_), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    local[static_cast<std::size_t>(vertices[i])] = static_cast<int>(i);
  }
  std::vector<Edge> kept;
  for (const auto& e : edges_) {
    int a = local[static_cast<std::size_t>(e.u)];
    int b = local[static_cast<std::size_t>(e.v)];
    if (a >= 0 && b >= 0) kept.push_back({a, b, e.w});
  }
  return WeightedGraph(static_cast<int>(vertices.size()), std::move(kept));
}

bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
  if (a.n_ != b.n_ || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const auto& x = a.edges_[i];
    const auto& y = b.edges_[i];
    if (x.u != y.u || x.v != y.v || x.w != y.w) return false;
  }
  return true;
}

std::vector<int> component_labels(const WeightedGraph& g) {
  std::vector<int> label(static_cast<std::size_t>(g.num_vertices()), -1);
  int next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    if (label[static_cast<std::size_t>(s)] >= 0) continue;
    label[static_cast<std::size_t>(s)] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (const auto& nb : g.neighbors(x)) {
        if (label[static_cast<std::size_t>(nb.to)] < 0) {
          label[static_cast<std::size_t>(nb.to)] = next;
          stack.push_back(nb.to);
        }
      }
    }
    ++next;
  }
  return label;
}

bool is_connected(const WeightedGraph& g) {
  if (g.num_vertices() <= 1) return true;
  auto labels = component_labels(g);
  return std::all_of(labels.begin(), labels.end(), [](int l) { return l == 0; });
}

ValidationReport validate(const WeightedGraph& g) {
  ValidationReport report;
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    std::string name = "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
    if (e.u == e.v) report.fail("self-loop at " + std::to_string(e.u));
    if (i > 0 && edges[i - 1].u == e.u && edges[i - 1].v == e.v) report.fail("parallel edge " + name);
    if (!std::isfinite(e.w)) report.fail("non-finite weight on " + name);
    else if (e.w < 0) report.fail("negative weight on " + name);
  }
  report.connected = is_connected(g);
  if (!report.connected) report.fail("disconnected");
  return report;
}

EdgeSubgraph::EdgeSubgraph(const WeightedGraph& host, std::vector<EdgeId> edges)
    : host_(&host), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (EdgeId e : edges_) {
    if (e < 0 || e >= host.num_edges()) throw std::invalid_argument("edge id not in host graph");
  }
}

bool EdgeSubgraph::contains(EdgeId e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

double EdgeSubgraph::weight() const {
  double total = 0.0;
  for (EdgeId e : edges_) total += host_->edge(e).w;
  return total;
}

WeightedGraph EdgeSubgraph::as_graph() const {
  std::vector<Edge> kept;
  kept.reserve(edges_.size());
  for (EdgeId e : edges_) kept.push_back(host_->edge(e));
  return WeightedGraph(host_->num_vertices(), std::move(kept));
}

bool EdgeSubgraph::is_spanning_connected() const { return is_connected(as_graph()); }

EdgeSubgraph mst(const WeightedGraph& g) {
  if (!is_connected(g)) throw std::invalid_argument("mst: graph is disconnected");
  std::vector<EdgeId> order(static_cast<std::size_t>(g.num_edges()));
  std::iota(order.begin(), order.end(), 0);
  // Edge ids already follow (u, v), so a stable sort on weight gives (w, u, v).
  std::stable_sort(order.begin(), order.end(),
                   [&](EdgeId a, EdgeId b) { return g.edge(a).w < g.edge(b).w; });
  DisjointSets sets(g.num_vertices());
  std::vector<EdgeId> chosen;
  for (EdgeId e : order) {
    if (sets.unite(g.edge(e).u, g.edge(e).v)) chosen.push_back(e);
  }
  return EdgeSubgraph(g, std::move(chosen));
}

double mst_weight(const WeightedGraph& g) { return mst(g).weight(); }

DistanceMatrix::DistanceMatrix(int n)
    : n_(n),
      d_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), std::numeric_limits<double>::infinity()) {
  for (int i = 0; i < n; ++i) at(i, i) = 0.0;
}

DistanceMatrix apsp(const WeightedGraph& g) {
  const int n = g.num_vertices();
  DistanceMatrix d(n);
  for (const auto& e : g.edges()) {
    if (e.u == e.v) continue;
    if (e.w < d(e.u, e.v)) {
      d.at(e.u, e.v) = e.w;
      d.at(e.v, e.u) = e.w;
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      const double dik = d(i, k);
      if (dik == std::numeric_limits<double>::infinity()) continue;
      for (int j = 0; j < n; ++j) {
        const double via = dik + d(k, j);
        if (via < d(i, j)) d.at(i, j) = via;
      }
    }
  }
  return d;
}

ShortestPaths dijkstra(const WeightedGraph& g, Vertex source, double cap) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  ShortestPaths sp{std::vector<double>(n, std::numeric_limits<double>::infinity()), std::vector<Vertex>(n, -1)};
  std::vector<char> done(n, 0);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  sp.dist[static_cast<std::size_t>(source)] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [dist, x] = heap.top();
    heap.pop();
    if (done[static_cast<std::size_t>(x)]) continue;
    if (dist >= cap) break;
    done[static_cast<std::size_t>(x)] = 1;
    for (const auto& nb : g.neighbors(x)) {
      const double cand = dist + g.edge(nb.edge).w;
      auto& cur = sp.dist[static_cast<std::size_t>(nb.to)];
      if (cand < cur) {
        cur = cand;
        sp.pred[static_cast<std::size_t>(nb.to)] = x;
        heap.push({cand, nb.to});
      }
    }
  }
  return sp;
}

}  // namespace lightspan
