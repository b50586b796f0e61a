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

#include "lightspan/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

namespace lightspan {

WeightMode parse_weight_mode(const std::string& name) {
  if (name == "uniform") return WeightMode::kUniform;
  if (name == "int" || name == "integer") return WeightMode::kInteger;
  if (name == "unit") return WeightMode::kUnit;
  throw std::invalid_argument("unknown weight mode '" + name + "'");
}

std::string to_string(WeightMode mode) {
  switch (mode) {
    case WeightMode::kUniform: return "uniform";
    case WeightMode::kInteger: return "int";
    case WeightMode::kUnit: return "unit";
  }
  return "uniform";
}

namespace {

// Library distributions are implementation-defined; these are not.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t index_draw(std::mt19937_64& rng, std::size_t bound) { return static_cast<std::size_t>(rng() % bound); }

}  // namespace

GeneratedInstance gen_random(const GenSpec& spec) {
  if (spec.width < 1) throw std::invalid_argument("gen_random: width must be at least 1");
  if (spec.bags < 1) throw std::invalid_argument("gen_random: bag count must be at least 1");
  if (!(spec.density > 0.0 && spec.density <= 1.0)) throw std::invalid_argument("gen_random: density must lie in (0, 1]");
  if (spec.weights == WeightMode::kInteger && spec.max_weight < 1) {
    throw std::invalid_argument("gen_random: max weight must be at least 1");
  }

  std::mt19937_64 rng(spec.seed);
  const int n = spec.width + spec.bags;
  GeneratedInstance out;
  std::vector<Bag> full;

  Bag current;
  for (Vertex v = 0; v <= spec.width; ++v) current.push_back(v);
  out.decomposition.bags.push_back(current);
  full.push_back(current);
  for (int t = 1; t < spec.bags; ++t) {
    const Vertex newest = spec.width + t - 1;
    Bag candidates;
    for (Vertex v : current) {
      if (v != newest) candidates.push_back(v);
    }
    const Vertex victim = candidates[index_draw(rng, candidates.size())];
    std::erase(current, victim);
    out.decomposition.bags.push_back(current);
    current.push_back(spec.width + t);  // largest id so far, bag stays sorted
    out.decomposition.bags.push_back(current);
    full.push_back(current);
  }

  std::set<std::pair<Vertex, Vertex>> decided, chosen;
  for (const auto& bag : full) {
    for (std::size_t i = 0; i < bag.size(); ++i) {
      for (std::size_t j = i + 1; j < bag.size(); ++j) {
        const std::pair<Vertex, Vertex> key{bag[i], bag[j]};
        if (!decided.insert(key).second) continue;
        if (unit_draw(rng) < spec.density) chosen.insert(key);
      }
    }
  }
  for (Vertex v = 0; v + 1 < n; ++v) {
    if (chosen.insert({v, v + 1}).second) ++out.forced_edges;
  }

  std::vector<Edge> edges;
  for (const auto& [u, v] : chosen) {
    double w = 1.0;
    switch (spec.weights) {
      case WeightMode::kUniform: w = unit_draw(rng); break;
      case WeightMode::kInteger: w = static_cast<double>(1 + index_draw(rng, static_cast<std::size_t>(spec.max_weight))); break;
      case WeightMode::kUnit: break;
    }
    edges.push_back({u, v, w});
  }
  out.graph = WeightedGraph(n, std::move(edges));
  return out;
}

int TreeDecomposition::width() const {
  std::size_t widest = 0;
  for (const auto& b : bags) widest = std::max(widest, b.size());
  return static_cast<int>(widest) - 1;
}

DecompositionReport validate_tree_decomposition(const WeightedGraph& g, const TreeDecomposition& td) {
  DecompositionReport report;
  report.width = td.width();
  const int nodes = static_cast<int>(td.bags.size());
  const int n = g.num_vertices();
  if (nodes == 0) {
    if (n > 0) report.fail("no bags");
    return report;
  }
  if (static_cast<int>(td.edges.size()) != nodes - 1) report.fail("bag tree has the wrong number of edges");
  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(nodes));
  for (const auto& [a, b] : td.edges) {
    if (a < 0 || a >= nodes || b < 0 || b >= nodes) {
      report.fail("bag tree edge out of range");
      return report;
    }
    adjacency[static_cast<std::size_t>(a)].push_back(b);
    adjacency[static_cast<std::size_t>(b)].push_back(a);
  }
  {
    std::vector<char> seen(static_cast<std::size_t>(nodes), 0);
    std::vector<int> stack{td.root};
    seen[static_cast<std::size_t>(td.root)] = 1;
    int reached = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (int y : adjacency[static_cast<std::size_t>(x)]) {
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = 1;
          ++reached;
          stack.push_back(y);
        }
      }
    }
    if (reached != nodes) report.fail("bag tree is disconnected");
  }

  std::vector<std::set<int>> holders(static_cast<std::size_t>(n));
  for (int b = 0; b < nodes; ++b) {
    std::set<Vertex> unique;
    for (Vertex v : td.bags[static_cast<std::size_t>(b)]) {
      if (v < 0 || v >= n) {
        report.fail("bag " + std::to_string(b) + " holds unknown vertex " + std::to_string(v));
        continue;
      }
      if (!unique.insert(v).second) report.fail("bag " + std::to_string(b) + " repeats vertex " + std::to_string(v));
      holders[static_cast<std::size_t>(v)].insert(b);
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    const auto& h = holders[static_cast<std::size_t>(v)];
    if (h.empty()) {
      report.fail("vertex " + std::to_string(v) + " is in no bag");
      continue;
    }
    // A vertex's bags induce a subtree iff they span exactly |bags| - 1 tree edges.
    std::size_t inside = 0;
    for (const auto& [a, b] : td.edges) {
      if (h.count(a) && h.count(b)) ++inside;
    }
    if (inside + 1 != h.size()) report.fail("bags of vertex " + std::to_string(v) + " are not connected");
  }
  for (const auto& e : g.edges()) {
    const auto& a = holders[static_cast<std::size_t>(e.u)];
    const auto& b = holders[static_cast<std::size_t>(e.v)];
    const bool shared = std::any_of(a.begin(), a.end(), [&](int x) { return b.count(x) > 0; });
    if (!shared) report.fail("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} is in no bag");
  }
  return report;
}

LowerBoundInstance gen_lowerbound(int depth) {
  if (depth < 1) throw std::invalid_argument("gen_lowerbound: depth must be at least 1");
  if (depth > 20) throw std::invalid_argument("gen_lowerbound: depth too large");
  const int nodes = (1 << (depth + 1)) - 1;
  const int first_leaf = (1 << depth) - 1;

  LowerBoundInstance inst;
  inst.depth = depth;
  auto& td = inst.decomposition;
  td.bags.assign(static_cast<std::size_t>(nodes), {});
  td.root = 0;

  struct Own {
    Vertex left = -1, bottom = -1, right = -1;
  };
  std::vector<Own> own(static_cast<std::size_t>(nodes));
  std::vector<double> step;  // step[i] = weight of spine edge (i, i+1)
  Vertex next = 0;
  auto fresh = [&](double weight_from_previous) {
    if (next > 0) step.push_back(weight_from_previous);
    return next++;
  };
  std::function<void(int)> thread = [&](int node) {
    auto& o = own[static_cast<std::size_t>(node)];
    if (node >= first_leaf) {
      o.left = fresh(0.0);
      o.right = fresh(1.0);
      return;
    }
    o.left = fresh(0.0);
    thread(2 * node + 1);
    o.bottom = fresh(0.0);
    thread(2 * node + 2);
    o.right = fresh(0.0);
  };
  thread(0);
  const int n = next;

  std::vector<double> position(static_cast<std::size_t>(n), 0.0);
  for (int i = 1; i < n; ++i) {
    position[static_cast<std::size_t>(i)] = position[static_cast<std::size_t>(i - 1)] + step[static_cast<std::size_t>(i - 1)];
  }

  for (int node = 0; node < nodes; ++node) {
    const auto& o = own[static_cast<std::size_t>(node)];
    Bag bag;
    if (node >= first_leaf) {
      bag = {o.left, o.right};
    } else {
      bag = {o.bottom, o.left, o.right};
      td.edges.push_back({node, 2 * node + 1});
      td.edges.push_back({node, 2 * node + 2});
    }
    if (node > 0) {
      const int parent = (node - 1) / 2;
      const auto& p = own[static_cast<std::size_t>(parent)];
      if (node == 2 * parent + 1) {
        bag.push_back(p.left);
        bag.push_back(p.bottom);
      } else {
        bag.push_back(p.bottom);
        bag.push_back(p.right);
      }
    }
    td.bags[static_cast<std::size_t>(node)] = std::move(bag);
  }

  std::set<std::pair<Vertex, Vertex>> pairs;
  for (const auto& bag : td.bags) {
    for (std::size_t i = 0; i < bag.size(); ++i) {
      for (std::size_t j = i + 1; j < bag.size(); ++j) pairs.insert(std::make_pair(std::min(bag[i], bag[j]), std::max(bag[i], bag[j])));
    }
  }
  std::vector<Edge> edges;
  for (const auto& [u, v] : pairs) {
    edges.push_back({u, v, std::fabs(position[static_cast<std::size_t>(v)] - position[static_cast<std::size_t>(u)])});
  }
  inst.graph = WeightedGraph(n, std::move(edges));
  inst.spine.resize(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) inst.spine[static_cast<std::size_t>(v)] = v;
  inst.spine_weight = position.back();
  return inst;
}

RootedTree lightest_td_monotone_tree(const WeightedGraph& g, const TreeDecomposition& td) {
  if (auto report = validate_tree_decomposition(g, td); !report.valid) {
    throw std::invalid_argument("tree decomposition invalid: " + report.problems.front());
  }
  const int nodes = static_cast<int>(td.bags.size());
  const int n = g.num_vertices();
  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(nodes));
  for (const auto& [a, b] : td.edges) {
    adjacency[static_cast<std::size_t>(a)].push_back(b);
    adjacency[static_cast<std::size_t>(b)].push_back(a);
  }
  std::vector<int> node_depth(static_cast<std::size_t>(nodes), -1);
  std::vector<int> queue{td.root};
  node_depth[static_cast<std::size_t>(td.root)] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (int y : adjacency[static_cast<std::size_t>(queue[i])]) {
      if (node_depth[static_cast<std::size_t>(y)] < 0) {
        node_depth[static_cast<std::size_t>(y)] = node_depth[static_cast<std::size_t>(queue[i])] + 1;
        queue.push_back(y);
      }
    }
  }

  // rank = (depth of the highest bag holding v, position of v in that bag)
  std::vector<int> top(static_cast<std::size_t>(n), -1);
  std::vector<std::pair<int, int>> rank(static_cast<std::size_t>(n), {std::numeric_limits<int>::max(), 0});
  for (int b = 0; b < nodes; ++b) {
    const auto& bag = td.bags[static_cast<std::size_t>(b)];
    for (std::size_t i = 0; i < bag.size(); ++i) {
      const auto v = static_cast<std::size_t>(bag[i]);
      const std::pair<int, int> r{node_depth[static_cast<std::size_t>(b)], static_cast<int>(i)};
      if (r < rank[v]) {
        rank[v] = r;
        top[v] = b;
      }
    }
  }
  Vertex root = 0;
  for (Vertex v = 1; v < n; ++v) {
    if (rank[static_cast<std::size_t>(v)] < rank[static_cast<std::size_t>(root)]) root = v;
  }
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
  for (Vertex v = 0; v < n; ++v) {
    if (v == root) continue;
    Vertex best = -1;
    double best_w = 0.0;
    for (Vertex u : td.bags[static_cast<std::size_t>(top[static_cast<std::size_t>(v)])]) {
      if (u == v || !(rank[static_cast<std::size_t>(u)] < rank[static_cast<std::size_t>(v)])) continue;
      auto e = g.find_edge(u, v);
      if (!e) continue;
      const double w = g.edge(*e).w;
      if (best < 0 || w < best_w || (w == best_w && u < best)) {
        best = u;
        best_w = w;
      }
    }
    if (best < 0) throw std::invalid_argument("lightest_td_monotone_tree: vertex " + std::to_string(v) + " has no valid parent");
    parent[static_cast<std::size_t>(v)] = best;
  }
  return make_rooted_tree(g, root, std::move(parent));
}

LowerBoundMeasure measure_lowerbound_detailed(const LowerBoundInstance& inst) {
  LowerBoundMeasure m;
  m.depth = inst.depth;
  m.tree_weight = lightest_td_monotone_tree(inst.graph, inst.decomposition).weight;
  m.mst = mst_weight(inst.graph);
  m.ratio = m.tree_weight / m.mst;
  return m;
}

double measure_lowerbound(const LowerBoundInstance& inst) { return measure_lowerbound_detailed(inst).ratio; }

}  // namespace lightspan
