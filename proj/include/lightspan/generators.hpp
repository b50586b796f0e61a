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

// generators.hpp - seeded random bounded-pathwidth instances, and a family of
// bounded-treewidth graphs on which every monotone tree is heavy.

#ifndef LIGHTSPAN_GENERATORS_HPP_
#define LIGHTSPAN_GENERATORS_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lightspan/decomposition.hpp"
#include "lightspan/graph.hpp"
#include "lightspan/monotone_tree.hpp"

namespace lightspan {

enum class WeightMode { kUniform, kInteger, kUnit };

WeightMode parse_weight_mode(const std::string& name);
std::string to_string(WeightMode mode);

struct GenSpec {
  int width = 1;
  int bags = 1;  // full bags; the decomposition also has one removal bag between each pair
  std::uint64_t seed = 0;
  WeightMode weights = WeightMode::kUniform;
  int max_weight = 10;  // for kInteger: weights in 1..max_weight
  double density = 0.5;
};

struct GeneratedInstance {
  WeightedGraph graph;
  PathDecomposition decomposition;
  int forced_edges = 0;  // spine edges the density sample missed
};

// Sliding window: the first bag is {0..width}; each later full bag drops a
// random vertex other than the newest and admits the next id, through an
// intermediate bag, so the decomposition is nice. Every pair in a full bag
// becomes an edge with probability `density`; the spine 0-1-...-(n-1) is
// always present. Throws std::invalid_argument for width < 1, bags < 1 or
// density outside (0, 1].
GeneratedInstance gen_random(const GenSpec& spec);

struct TreeDecomposition {
  std::vector<Bag> bags;  // vertex lists; order within a bag is meaningful for ranking
  std::vector<std::pair<int, int>> edges;  // (parent, child)
  int root = 0;

  int width() const;
};

DecompositionReport validate_tree_decomposition(const WeightedGraph& g, const TreeDecomposition& td);

struct LowerBoundInstance {
  WeightedGraph graph;
  TreeDecomposition decomposition;
  std::vector<Vertex> spine;  // the path P, which is vertex order 0..n-1
  int depth = 0;
  double spine_weight = 0.0;
};

// Balanced binary bag tree of the given depth. Internal bag X owns three
// spine vertices (left, bottom, right), a leaf bag owns two joined by a
// weight-1 spine edge, and the spine threads X as
//   left, <left subtree>, bottom, <right subtree>, right.
// Each non-root bag also holds the two parent vertices adjacent to it on the
// spine. All pairs sharing a bag are edges weighted by their spine distance.
LowerBoundInstance gen_lowerbound(int depth);

// Minimum monotone spanning tree with respect to a rooted tree
// decomposition: v's parent must lie in v's highest bag and rank before v,
// where the rank is (depth of highest bag, position in that bag).
RootedTree lightest_td_monotone_tree(const WeightedGraph& g, const TreeDecomposition& td);

struct LowerBoundMeasure {
  int depth = 0;
  double tree_weight = 0.0;
  double mst = 0.0;
  double ratio = 0.0;
};

LowerBoundMeasure measure_lowerbound_detailed(const LowerBoundInstance& inst);
double measure_lowerbound(const LowerBoundInstance& inst);

}  // namespace lightspan

#endif  // LIGHTSPAN_GENERATORS_HPP_
