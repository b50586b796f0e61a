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

// graph.hpp - weighted undirected graphs, spanning subgraphs, MST and APSP.
//
// Vertices are dense ids 0..n-1. Edges are stored normalized (u < v) and
// sorted by (u, v); an edge's index is its rank in that order, so "lowest
// index" and "lexicographically smallest (u, v)" coincide everywhere.

#ifndef LIGHTSPAN_GRAPH_HPP_
#define LIGHTSPAN_GRAPH_HPP_

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lightspan {

using Vertex = int;
using EdgeId = int;
using Weight = double;

inline constexpr double kRelTol = 1e-9;

// True when a <= b up to the relative slack used by every verifier.
bool leq_tol(double a, double b, double rel = kRelTol);
bool eq_tol(double a, double b, double rel = kRelTol);

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Weight w = 0.0;
};

struct Neighbor {
  Vertex to;
  EdgeId edge;
};

struct ValidationReport {
  bool valid = true;
  bool connected = true;
  std::vector<std::string> problems;

  void fail(std::string message) {
    valid = false;
    problems.push_back(std::move(message));
  }
};

class WeightedGraph {
 public:
  WeightedGraph() = default;
  // Throws std::invalid_argument for endpoints outside 0..n-1. Self-loops,
  // parallel edges and bad weights are kept so validate() can report them.
  WeightedGraph(int n, std::vector<Edge> edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
  std::span<const Neighbor> neighbors(Vertex v) const { return adj_.at(static_cast<std::size_t>(v)); }
  int degree(Vertex v) const { return static_cast<int>(adj_.at(static_cast<std::size_t>(v)).size()); }
  int max_degree() const;

  std::optional<EdgeId> find_edge(Vertex a, Vertex b) const;
  bool has_edge(Vertex a, Vertex b) const { return find_edge(a, b).has_value(); }
  EdgeId edge_id(Vertex a, Vertex b) const;  // throws if absent

  double total_weight() const;

  // Copy without edge e; remaining edges keep their relative order.
  WeightedGraph without_edge(EdgeId e) const;
  // Induced subgraph on `vertices` (relabelled 0..|vertices|-1 in the given order).
  WeightedGraph induced(std::span<const Vertex> vertices) const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b);

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adj_;
};

ValidationReport validate(const WeightedGraph& g);
bool is_connected(const WeightedGraph& g);

// Non-owning view of a subset of a host graph's edges. The host must outlive it.
class EdgeSubgraph {
 public:
  EdgeSubgraph() = default;  // empty, no host
  EdgeSubgraph(const WeightedGraph& host, std::vector<EdgeId> edges);

  const WeightedGraph& host() const { return *host_; }
  const std::vector<EdgeId>& edge_ids() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool contains(EdgeId e) const;
  double weight() const;
  // Same vertex set as the host, only the member edges.
  WeightedGraph as_graph() const;
  bool is_spanning_connected() const;

 private:
  const WeightedGraph* host_ = nullptr;
  std::vector<EdgeId> edges_;  // sorted, unique
};

// Kruskal over edges ordered by (w, u, v). Throws std::invalid_argument if
// g is disconnected.
EdgeSubgraph mst(const WeightedGraph& g);
double mst_weight(const WeightedGraph& g);

class DistanceMatrix {
 public:
  explicit DistanceMatrix(int n);
  int size() const { return n_; }
  double operator()(Vertex a, Vertex b) const { return d_[index(a, b)]; }
  double& at(Vertex a, Vertex b) { return d_[index(a, b)]; }

 private:
  std::size_t index(Vertex a, Vertex b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b);
  }
  int n_;
  std::vector<double> d_;
};

// Floyd-Warshall. Unreachable pairs are +infinity.
DistanceMatrix apsp(const WeightedGraph& g);

struct ShortestPaths {
  std::vector<double> dist;
  std::vector<Vertex> pred;  // -1 for the source and unreachable vertices
};

// Dijkstra from `source`. Stops once the frontier reaches `cap` (vertices at
// distance >= cap are left at +infinity or a tentative value >= cap).
ShortestPaths dijkstra(const WeightedGraph& g, Vertex source,
                       double cap = std::numeric_limits<double>::infinity());

// Connected components as a label per vertex, labels 0..c-1 in order of
// smallest member.
std::vector<int> component_labels(const WeightedGraph& g);

}  // namespace lightspan

#endif  // LIGHTSPAN_GRAPH_HPP_
