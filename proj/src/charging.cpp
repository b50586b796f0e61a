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

#include "lightspan/charging.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace lightspan {

namespace {

std::string pair_name(VertexPair e) {
  return "{" + std::to_string(e.first) + "," + std::to_string(e.second) + "}";
}

}  // namespace

std::string to_string(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

VertexPair make_pair_key(Vertex a, Vertex b) { return a < b ? VertexPair{a, b} : VertexPair{b, a}; }

std::vector<VertexPair> Detour::path_edges() const {
  std::vector<VertexPair> edges;
  for (std::size_t i = 1; i < path.size(); ++i) edges.push_back(make_pair_key(path[i - 1], path[i]));
  return edges;
}

bool Detour::path_contains(VertexPair e) const {
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (make_pair_key(path[i - 1], path[i]) == e) return true;
  }
  return false;
}

Detour make_detour(Vertex a, Vertex b, std::vector<Vertex> path) {
  if (a > b) std::swap(a, b);
  if (path.size() < 3) throw std::invalid_argument("detour for " + pair_name({a, b}) + " needs a path of two or more edges");
  if (path.front() == b && path.back() == a) std::reverse(path.begin(), path.end());
  if (path.front() != a || path.back() != b) {
    throw std::invalid_argument("detour path does not join the endpoints of " + pair_name({a, b}));
  }
  std::vector<Vertex> sorted = path;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("detour path for " + pair_name({a, b}) + " repeats a vertex");
  }
  return Detour{a, b, std::move(path)};
}

void check_detour(const WeightedGraph& g, const Detour& d) {
  const Detour normal = make_detour(d.u, d.v, d.path);
  if (normal != d) throw std::invalid_argument("detour for " + pair_name(d.edge()) + " is not normalised");
  if (!g.has_edge(d.u, d.v)) throw std::invalid_argument("detour edge " + pair_name(d.edge()) + " is not in the graph");
  for (const auto& step : d.path_edges()) {
    if (!g.has_edge(step.first, step.second)) {
      throw std::invalid_argument("detour path step " + pair_name(step) + " is not in the graph");
    }
  }
}

void ChargingScheme::add(const Detour& d, const Rational& x) {
  if (x < 0) throw std::invalid_argument("negative charge");
  if (x == 0) return;
  moves[d] += x;
}

void ChargingScheme::reduce(const Detour& d, const Rational& x) {
  auto it = moves.find(d);
  if (it == moves.end() || it->second < x) throw std::invalid_argument("charge would become negative");
  it->second -= x;
  if (it->second == 0) moves.erase(it);
}

Rational ChargingScheme::value(const Detour& d) const {
  auto it = moves.find(d);
  return it == moves.end() ? Rational(0) : it->second;
}

std::map<VertexPair, Rational> ChargingScheme::out_charge() const {
  std::map<VertexPair, Rational> out;
  for (const auto& [d, x] : moves) out[d.edge()] += x;
  return out;
}

std::map<VertexPair, Rational> ChargingScheme::in_charge() const {
  std::map<VertexPair, Rational> in;
  for (const auto& [d, x] : moves) {
    for (const auto& e : d.path_edges()) in[e] += x;
  }
  return in;
}

SchemeReport verify_scheme(const WeightedGraph& g, const RootedTree& t, const ChargingScheme& s,
                           const Rational& v, bool acyclic) {
  if (t.size() != g.num_vertices()) throw std::invalid_argument("verify_scheme: tree does not span the graph");
  const auto m = static_cast<std::size_t>(g.num_edges());
  std::vector<Rational> out(m), in(m);
  std::vector<std::set<EdgeId>> charges(m);  // e1 -> edges on paths e1 charges
  SchemeReport report;
  report.value = v;
  report.acyclic_checked = acyclic;
  auto is_tree = [&](EdgeId e) { return t.is_tree_edge(g.edge(e).u, g.edge(e).v); };

  for (const auto& [d, x] : s.moves) {
    check_detour(g, d);
    if (x < 0) {
      report.out_at_least_one = false;
      report.violations.push_back("negative value on the move out of " + pair_name(d.edge()));
      continue;
    }
    if (x == 0) continue;
    const EdgeId from = g.edge_id(d.u, d.v);
    out[static_cast<std::size_t>(from)] += x;
    for (const auto& step : d.path_edges()) {
      const EdgeId to = g.edge_id(step.first, step.second);
      in[static_cast<std::size_t>(to)] += x;
      charges[static_cast<std::size_t>(from)].insert(to);
    }
  }

  Rational max_tree_net = 0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto idx = static_cast<std::size_t>(e);
    const Rational net = in[idx] - out[idx];
    const VertexPair key{g.edge(e).u, g.edge(e).v};
    if (is_tree(e)) {
      if (net > max_tree_net) max_tree_net = net;
      if (net > v) {
        report.net_within_value_on_tree = false;
        report.violations.push_back("(3) Net" + pair_name(key) + " = " + to_string(net) + " > " + to_string(v));
      }
      if (acyclic && out[idx] > 0) {
        report.charges_only_off_tree = false;
        report.violations.push_back("(4) tree edge " + pair_name(key) + " charges a path");
      }
    } else {
      if (out[idx] < 1) {
        report.out_at_least_one = false;
        report.violations.push_back("(1) Out" + pair_name(key) + " = " + to_string(out[idx]) + " < 1");
      }
      if (net > 0) {
        report.net_nonpositive_off_tree = false;
        report.violations.push_back("(2) Net" + pair_name(key) + " = " + to_string(net) + " > 0");
      }
    }
  }
  report.min_v = max_tree_net;

  if (acyclic) {
    // Kahn's algorithm over the charge relation, smallest edge id first.
    std::vector<int> indegree(m, 0);
    for (const auto& targets : charges) {
      for (EdgeId to : targets) ++indegree[static_cast<std::size_t>(to)];
    }
    std::priority_queue<EdgeId, std::vector<EdgeId>, std::greater<>> ready;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (indegree[static_cast<std::size_t>(e)] == 0) ready.push(e);
    }
    while (!ready.empty()) {
      const EdgeId e = ready.top();
      ready.pop();
      report.edge_order.push_back({g.edge(e).u, g.edge(e).v});
      for (EdgeId to : charges[static_cast<std::size_t>(e)]) {
        if (--indegree[static_cast<std::size_t>(to)] == 0) ready.push(to);
      }
    }
    if (report.edge_order.size() != m) {
      report.has_edge_order = false;
      report.violations.push_back("(5) the charge relation has a cycle");
      report.edge_order.clear();
    }
  }
  return report;
}

Detour shortcut(const Detour& d1, const Detour& d2) {
  const VertexPair e2 = d2.edge();
  if (!d1.path_contains(e2)) throw std::invalid_argument("shortcut: " + pair_name(e2) + " is not on the first path");
  if (d2.path_contains(d1.edge())) {
    throw std::invalid_argument("shortcut: " + pair_name(d1.edge()) + " lies on the second path");
  }
  std::size_t at = 0;
  while (make_pair_key(d1.path[at], d1.path[at + 1]) != e2) ++at;
  const Vertex a = d1.path[at];
  std::vector<Vertex> middle = d2.path;
  if (middle.front() != a) std::reverse(middle.begin(), middle.end());

  std::vector<Vertex> walk(d1.path.begin(), d1.path.begin() + static_cast<std::ptrdiff_t>(at));
  walk.insert(walk.end(), middle.begin(), middle.end());
  walk.insert(walk.end(), d1.path.begin() + static_cast<std::ptrdiff_t>(at) + 2, d1.path.end());

  // Loop erasure: on revisiting a vertex, cut the walk back to its first visit.
  std::vector<Vertex> simple;
  std::unordered_map<Vertex, std::size_t> position;
  for (Vertex x : walk) {
    auto it = position.find(x);
    if (it != position.end()) {
      for (std::size_t i = it->second + 1; i < simple.size(); ++i) position.erase(simple[i]);
      simple.resize(it->second + 1);
    } else {
      position[x] = simple.size();
      simple.push_back(x);
    }
  }
  return make_detour(d1.u, d1.v, std::move(simple));
}

ChargingScheme remove_edge(const ChargingScheme& s, VertexPair e, const WeightedGraph& g, const RootedTree& t) {
  e = make_pair_key(e.first, e.second);
  if (!g.has_edge(e.first, e.second)) throw std::invalid_argument("remove_edge: " + pair_name(e) + " is not in the graph");
  if (t.is_tree_edge(e.first, e.second)) throw std::invalid_argument("remove_edge: " + pair_name(e) + " is a tree edge");

  ChargingScheme out = s;
  for (;;) {
    auto charger = std::find_if(out.moves.begin(), out.moves.end(),
                                [&](const auto& move) { return move.first.path_contains(e); });
    if (charger == out.moves.end()) break;
    auto outgoing = std::find_if(out.moves.begin(), out.moves.end(),
                                 [&](const auto& move) { return move.first.edge() == e; });
    if (outgoing == out.moves.end()) {
      throw std::invalid_argument("remove_edge: " + pair_name(e) + " receives charge but charges nothing");
    }
    const Detour d1 = charger->first;
    const Detour d2 = outgoing->first;
    const Rational alpha = std::min(charger->second, outgoing->second);
    const Detour merged = shortcut(d1, d2);
    out.reduce(d1, alpha);
    out.reduce(d2, alpha);
    out.add(merged, alpha);
  }
  for (auto it = out.moves.begin(); it != out.moves.end();) {
    if (it->first.edge() == e) it = out.moves.erase(it);
    else ++it;
  }
  std::erase(out.edge_order, e);
  return out;
}

T2Forest make_t2_forest(std::vector<EdgeId> parent, std::vector<std::int64_t> left_key) {
  if (parent.size() != left_key.size()) throw std::invalid_argument("T2 forest: size mismatch");
  T2Forest f;
  f.parent = std::move(parent);
  f.left_key = std::move(left_key);
  f.children.assign(f.parent.size(), {});
  for (EdgeId x = 0; x < f.size(); ++x) {
    const EdgeId p = f.parent[static_cast<std::size_t>(x)];
    if (p < 0) {
      f.roots.push_back(x);
      continue;
    }
    if (p >= f.size()) throw std::invalid_argument("T2 forest: parent out of range");
    if (f.left_key[static_cast<std::size_t>(p)] >= f.left_key[static_cast<std::size_t>(x)]) {
      throw std::invalid_argument("T2 forest: parent link does not move left");
    }
    f.children[static_cast<std::size_t>(p)].push_back(x);
  }
  for (auto& kids : f.children) {
    std::sort(kids.begin(), kids.end(), [&](EdgeId a, EdgeId b) {
      const auto ka = f.left_key[static_cast<std::size_t>(a)];
      const auto kb = f.left_key[static_cast<std::size_t>(b)];
      return ka != kb ? ka < kb : a < b;
    });
  }
  return f;
}

T2Forest build_t2(const WeightedGraph& g, const RootedTree& t, const IntervalRepresentation& iv) {
  if (!is_monotone(t, iv)) throw std::invalid_argument("build_t2: tree is not monotone");
  const auto m = static_cast<std::size_t>(g.num_edges());
  std::vector<EdgeId> parent(m, -1);
  std::vector<std::int64_t> left_key(m);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto& edge = g.edge(e);
    left_key[static_cast<std::size_t>(e)] = std::max(iv.left_key(edge.u), iv.left_key(edge.v));
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto& edge = g.edge(e);
    if (t.is_tree_edge(edge.u, edge.v)) continue;
    Vertex j = edge.u, k = edge.v;
    if (iv.left_key(j) > iv.left_key(k)) std::swap(j, k);
    const Vertex i = t.parent[static_cast<std::size_t>(k)];
    auto up = g.find_edge(i, j);
    if (!up) {
      throw std::invalid_argument("build_t2: triangle {" + std::to_string(i) + "," + std::to_string(j) + "," +
                                  std::to_string(k) + "} is missing an edge (graph not completed?)");
    }
    parent[static_cast<std::size_t>(e)] = *up;
  }
  return make_t2_forest(std::move(parent), std::move(left_key));
}

std::vector<std::vector<EdgeId>> euler_paths(const T2Forest& f) {
  std::vector<std::vector<EdgeId>> paths;
  for (EdgeId root : f.roots) {
    for (EdgeId child : f.children[static_cast<std::size_t>(root)]) {
      std::vector<EdgeId> path{child};
      std::vector<std::pair<EdgeId, std::size_t>> stack{{child, 0}};
      while (!stack.empty()) {
        auto& [x, next] = stack.back();
        const auto& kids = f.children[static_cast<std::size_t>(x)];
        if (next < kids.size()) {
          const EdgeId y = kids[next++];
          path.push_back(y);
          stack.push_back({y, 0});
        } else {
          stack.pop_back();
          if (!stack.empty()) path.push_back(stack.back().first);
        }
      }
      path.push_back(root);
      paths.push_back(std::move(path));
    }
  }
  return paths;
}

namespace {

// The move for one tour step x -> y between adjacent forest vertices: x
// charges the two-edge path through y's edge and the tree edge of their
// triangle.
Detour triangle_move(const WeightedGraph& g, EdgeId x, EdgeId y) {
  const auto& ex = g.edge(x);
  const auto& ey = g.edge(y);
  Vertex common;
  if (ex.u == ey.u || ex.u == ey.v) common = ex.u;
  else if (ex.v == ey.u || ex.v == ey.v) common = ex.v;
  else throw std::logic_error("triangle_move: edges share no vertex");
  const Vertex other_x = ex.u == common ? ex.v : ex.u;
  const Vertex other_y = ey.u == common ? ey.v : ey.u;
  return make_detour(ex.u, ex.v, {common, other_y, other_x});
}

}  // namespace

BuiltScheme build_scheme(const WeightedGraph& g, const RootedTree& t, const IntervalRepresentation& iv) {
  const T2Forest forest = build_t2(g, t, iv);
  BuiltScheme built;
  for (const auto& seq : euler_paths(forest)) {
    const std::size_t steps = seq.size() - 1;
    std::vector<Detour> move(steps);
    std::vector<char> repeat(steps, 0);
    std::set<EdgeId> seen;
    for (std::size_t p = 0; p < steps; ++p) {
      move[p] = triangle_move(g, seq[p], seq[p + 1]);
      repeat[p] = !seen.insert(seq[p]).second;
    }
    std::vector<char> alive(steps, 1);
    for (std::size_t p = steps; p-- > 1;) {
      if (!repeat[p]) continue;
      move[p - 1] = shortcut(move[p - 1], move[p]);
      alive[p] = 0;
    }
    for (std::size_t p = 0; p < steps; ++p) {
      if (alive[p]) built.scheme.add(move[p], 1);
    }
  }
  const SchemeReport probe = verify_scheme(g, t, built.scheme, 0, true);
  built.value = probe.min_v;
  built.report = verify_scheme(g, t, built.scheme, built.value, true);
  if (!built.report.passed()) {
    throw std::logic_error("build_scheme: constructed scheme fails verification: " + built.report.violations.front());
  }
  built.scheme.edge_order = built.report.edge_order;
  return built;
}

}  // namespace lightspan
