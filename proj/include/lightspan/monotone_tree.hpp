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

// monotone_tree.hpp - rooted spanning trees whose parent intervals always
// start left of their children's.

#ifndef LIGHTSPAN_MONOTONE_TREE_HPP_
#define LIGHTSPAN_MONOTONE_TREE_HPP_

#include <vector>

#include "lightspan/decomposition.hpp"
#include "lightspan/graph.hpp"

namespace lightspan {

struct RootedTree {
  Vertex root = 0;
  std::vector<Vertex> parent;       // -1 at the root
  std::vector<EdgeId> parent_edge;  // edge to the parent in the host graph, -1 at the root
  double weight = 0.0;              // summed in vertex order

  int size() const { return static_cast<int>(parent.size()); }
  std::vector<EdgeId> edge_ids() const;
  bool is_tree_edge(Vertex a, Vertex b) const {
    return parent[static_cast<std::size_t>(a)] == b || parent[static_cast<std::size_t>(b)] == a;
  }
};

// Builds the tree from a parent array over g. Throws std::invalid_argument if
// a parent link is not an edge of g or the links do not form a spanning tree
// rooted at `root`.
RootedTree make_rooted_tree(const WeightedGraph& g, Vertex root, std::vector<Vertex> parent);

bool is_monotone(const RootedTree& t, const IntervalRepresentation& iv);

struct RecursiveTreeResult {
  RootedTree tree;
  bool spines_shortest = true;  // every spine matched the unconstrained distance
  int depth = 0;                // recursion levels used
};

// Spine-and-hang construction: a shortest monotone path from the leftmost to
// the rightmost interval, then every component of MST - spine hangs from its
// leftmost vertex by the lightest edge into a spine interval containing that
// point, and is itself solved recursively on its induced subgraph.
// g must be completed with respect to iv and connected.
RecursiveTreeResult monotone_tree_recursive_detailed(const WeightedGraph& g, const IntervalRepresentation& iv);
RootedTree monotone_tree_recursive(const WeightedGraph& g, const IntervalRepresentation& iv);

// Left-to-right bag scan: every newly introduced vertex attaches to its
// nearest neighbour among the bag's earlier vertices. On a completed graph
// this is the minimum-weight monotone spanning tree.
RootedTree lightest_monotone_tree(const WeightedGraph& g, const PathDecomposition& pd);

}  // namespace lightspan

#endif  // LIGHTSPAN_MONOTONE_TREE_HPP_
