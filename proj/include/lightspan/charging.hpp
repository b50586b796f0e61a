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

// charging.hpp - charging schemes from a graph to a spanning tree.
//
// A move (e, P) takes x units of charge from edge e and puts x units on every
// edge of the path P, where e + P is a simple cycle. A scheme of value v
// satisfies, with Out/In/Net the removed/added/net charge per edge:
//   (1) Out(e) >= 1 off the tree   (2) Net(e) <= 0 off the tree
//   (3) Net(e) <= v on the tree
// and is acyclic when additionally
//   (4) only non-tree edges charge  (5) "e1 charges a path through e2" is a
//       partial order.
// Values are exact rationals; nothing here uses a tolerance.

#ifndef LIGHTSPAN_CHARGING_HPP_
#define LIGHTSPAN_CHARGING_HPP_

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lightspan/decomposition.hpp"
#include "lightspan/graph.hpp"
#include "lightspan/monotone_tree.hpp"

namespace lightspan {

using Rational = boost::multiprecision::cpp_rational;
using VertexPair = std::pair<Vertex, Vertex>;  // always first < second

VertexPair make_pair_key(Vertex a, Vertex b);

struct Detour {
  Vertex u = 0;  // edge {u, v}, u < v
  Vertex v = 0;
  std::vector<Vertex> path;  // u ... v

  VertexPair edge() const { return {u, v}; }
  std::vector<VertexPair> path_edges() const;
  bool path_contains(VertexPair e) const;

  friend auto operator<=>(const Detour&, const Detour&) = default;
  friend bool operator==(const Detour&, const Detour&) = default;
};

// Orients `path` (which runs between a and b in either direction) so it
// starts at min(a, b). Throws std::invalid_argument unless e + path is a
// simple cycle.
Detour make_detour(Vertex a, Vertex b, std::vector<Vertex> path);

// Same check against a concrete graph: every step must be an edge of g.
void check_detour(const WeightedGraph& g, const Detour& d);

struct ChargingScheme {
  std::map<Detour, Rational> moves;   // only positive values are kept
  std::vector<VertexPair> edge_order;  // advisory; the verifier recomputes it

  void add(const Detour& d, const Rational& x);
  // Lowers a move by x, erasing it at zero. Throws if it would go negative.
  void reduce(const Detour& d, const Rational& x);
  Rational value(const Detour& d) const;
  std::map<VertexPair, Rational> out_charge() const;
  std::map<VertexPair, Rational> in_charge() const;
};

struct SchemeReport {
  bool out_at_least_one = true;       // (1)
  bool net_nonpositive_off_tree = true;  // (2)
  bool net_within_value_on_tree = true;  // (3)
  bool charges_only_off_tree = true;  // (4)
  bool has_edge_order = true;         // (5)
  bool acyclic_checked = false;
  Rational value;  // the v the scheme was checked against
  Rational min_v;  // smallest v for which (3) holds (never negative)
  std::vector<VertexPair> edge_order;  // topological order found for (5)
  std::vector<std::string> violations;

  bool passed() const {
    return out_at_least_one && net_nonpositive_off_tree && net_within_value_on_tree &&
           (!acyclic_checked || (charges_only_off_tree && has_edge_order));
  }
};

// Throws std::invalid_argument for a move that is not a detour of g.
SchemeReport verify_scheme(const WeightedGraph& g, const RootedTree& t, const ChargingScheme& s,
                           const Rational& v, bool acyclic);

// (e1, P1) with e2 on P1 and (e2, P2) with e1 off P2 give (e1, P'), where P'
// is P1 with e2 replaced by P2, loop-erased into a simple path.
Detour shortcut(const Detour& d1, const Detour& d2);

// Deletes the non-tree edge e from an acyclic scheme by repeatedly
// shortcutting a move through e with a move out of e, then dropping e's
// remaining moves. The result is a scheme on g - e with no larger value.
ChargingScheme remove_edge(const ChargingScheme& s, VertexPair e, const WeightedGraph& g, const RootedTree& t);

// Forest on the edges of g. A non-tree edge {j,k} with left(j) < left(k)
// hangs below {i,j}, where i is k's tree parent; tree edges are the roots.
struct T2Forest {
  std::vector<EdgeId> parent;                  // -1 for tree edges
  std::vector<std::vector<EdgeId>> children;   // ordered by left(I_jk), then id
  std::vector<EdgeId> roots;                   // ascending edge id
  std::vector<std::int64_t> left_key;          // left endpoint of I_j ∩ I_k

  int size() const { return static_cast<int>(parent.size()); }
};

T2Forest build_t2(const WeightedGraph& g, const RootedTree& t, const IntervalRepresentation& iv);

// Assembles a forest from a parent array, ordering children by `left_key`
// then id. Parent links must point to strictly smaller keys.
T2Forest make_t2_forest(std::vector<EdgeId> parent, std::vector<std::int64_t> left_key);

// Euler tour of every component with the tour steps out of the root removed.
// Each path lists forest vertices and ends at its component's root.
std::vector<std::vector<EdgeId>> euler_paths(const T2Forest& f);

struct BuiltScheme {
  ChargingScheme scheme;
  Rational value;
  SchemeReport report;
};

// Triangle moves along the Euler paths of T2, with every repeated
// appearance on a path shortcut away (rightmost first). The result is
// verified as an acyclic scheme before it is returned; a failed verification
// throws std::logic_error.
BuiltScheme build_scheme(const WeightedGraph& g, const RootedTree& t, const IntervalRepresentation& iv);

std::string to_string(const Rational& r);

}  // namespace lightspan

#endif  // LIGHTSPAN_CHARGING_HPP_
