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

// decomposition.hpp - path decompositions, their interval layout, and the
// reductions that turn an arbitrary bounded-pathwidth instance into a nice,
// bounded-degree, completed interval graph (plus the trace to undo them).

#ifndef LIGHTSPAN_DECOMPOSITION_HPP_
#define LIGHTSPAN_DECOMPOSITION_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lightspan/graph.hpp"

namespace lightspan {

using Bag = std::vector<Vertex>;  // sorted, no duplicates

struct PathDecomposition {
  std::vector<Bag> bags;

  int width() const;
  friend bool operator==(const PathDecomposition&, const PathDecomposition&) = default;
};

struct DecompositionReport {
  bool valid = true;
  int width = -1;
  std::vector<std::string> problems;

  void fail(std::string message) {
    valid = false;
    problems.push_back(std::move(message));
  }
};

// Checks vertex coverage, edge coverage and contiguous occurrence of every
// vertex of g. Bags that are unsorted or hold duplicates are also reported.
DecompositionReport validate_decomposition(const WeightedGraph& g, const PathDecomposition& pd);

// Consecutive bags differ by exactly one vertex.
bool is_nice(const PathDecomposition& pd);

// Closed intervals on a rational grid with common denominator 2(n+1). A vertex
// that occupies bags i..j gets left = i + r/D and right = j + 1 - r/D with
// r = id + 1, so all 2n endpoints are distinct and two intervals meet iff the
// vertices share a bag.
class IntervalRepresentation {
 public:
  IntervalRepresentation() = default;
  IntervalRepresentation(const PathDecomposition& pd, int num_vertices);

  int num_vertices() const { return static_cast<int>(first_.size()); }
  std::int64_t denominator() const { return denom_; }
  std::int64_t left_key(Vertex v) const { return left_[static_cast<std::size_t>(v)]; }
  std::int64_t right_key(Vertex v) const { return right_[static_cast<std::size_t>(v)]; }
  double left(Vertex v) const { return static_cast<double>(left_key(v)) / static_cast<double>(denom_); }
  double right(Vertex v) const { return static_cast<double>(right_key(v)) / static_cast<double>(denom_); }
  int first_bag(Vertex v) const { return first_[static_cast<std::size_t>(v)]; }
  int last_bag(Vertex v) const { return last_[static_cast<std::size_t>(v)]; }

  bool overlaps(Vertex a, Vertex b) const;
  // True when `key` (a numerator over denominator()) lies inside I_v.
  bool contains(Vertex v, std::int64_t key) const;
  // Vertices sorted by left endpoint.
  std::vector<Vertex> by_left() const;
  // Largest number of intervals sharing a point.
  int max_overlap() const;

 private:
  std::int64_t denom_ = 1;
  std::vector<int> first_, last_;
  std::vector<std::int64_t> left_, right_;
};

// Throws std::invalid_argument if some vertex 0..n-1 is missing or occurs
// non-contiguously.
IntervalRepresentation to_intervals(const PathDecomposition& pd, int num_vertices);
IntervalRepresentation to_intervals(const PathDecomposition& pd);

struct CompletionEdge {
  Vertex u = 0;
  Vertex v = 0;
  Weight w = 0.0;
  std::vector<Vertex> path;  // u ... v in the pre-completion graph
};

struct ReductionTrace {
  int original_vertices = 0;  // vertex count before bound_degree
  int reduced_vertices = 0;   // vertex count after the last reduction
  std::map<Vertex, Vertex> copy_map;                 // copy -> original vertex
  std::vector<std::pair<Vertex, Vertex>> zero_edges;  // the weight-0 edges S
  std::vector<CompletionEdge> completion_edges;      // sorted by (u, v)

  bool empty() const { return copy_map.empty() && zero_edges.empty() && completion_edges.empty(); }
  Vertex original_of(Vertex x) const;
  const CompletionEdge* find_completion(Vertex a, Vertex b) const;

  friend bool operator==(const ReductionTrace&, const ReductionTrace&);
};

// Copy-map and S from `degree`, completion edges from `completion`.
ReductionTrace combine(const ReductionTrace& degree, const ReductionTrace& completion);

// Splits every step between consecutive bags into single removals (ascending
// id) followed by single insertions (ascending id); repeated bags collapse.
PathDecomposition make_nice(const WeightedGraph& g, const PathDecomposition& pd);

struct DegreeReduction {
  WeightedGraph graph;
  PathDecomposition decomposition;
  ReductionTrace trace;
};

// After every group of max(1, width) original bags (except at the very end),
// each vertex v of the closing bag is swapped for a fresh copy v' through the
// two bags B + v' and B + v' - v, with a zero-weight edge {v, v'}.
DegreeReduction bound_degree(const WeightedGraph& g, const PathDecomposition& pd);

struct Completion {
  WeightedGraph graph;
  ReductionTrace trace;
};

// Adds every missing pair that shares a bag, weighted by the length of a
// witnessing shortest path (least hop count, then lexicographically least).
Completion complete(const WeightedGraph& g, const PathDecomposition& pd);

// Maps a spanner of the reduced graph back to `original`: completion edges
// expand to their paths, copies collapse through copy_map and S disappears.
EdgeSubgraph lift_spanner(const EdgeSubgraph& spanner, const ReductionTrace& trace, const WeightedGraph& original);

}  // namespace lightspan

#endif  // LIGHTSPAN_DECOMPOSITION_HPP_
