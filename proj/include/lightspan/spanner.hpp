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

// spanner.hpp - greedy (1+eps)-spanners that keep a given spanning tree, the
// stretch oracle, and the certified end-to-end pipeline.

#ifndef LIGHTSPAN_SPANNER_HPP_
#define LIGHTSPAN_SPANNER_HPP_

#include <memory>
#include <stdexcept>
#include <string>

#include "lightspan/charging.hpp"
#include "lightspan/decomposition.hpp"
#include "lightspan/graph.hpp"
#include "lightspan/monotone_tree.hpp"

namespace lightspan {

// Input that fails validation before any certification runs (exit code 2 in
// the CLI).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computed object failed one of its certificates (exit code 1 in the CLI).
class CertificationError : public std::runtime_error {
 public:
  CertificationError(std::string condition, const std::string& detail)
      : std::runtime_error(condition + ": " + detail), condition_(std::move(condition)) {}
  const std::string& condition() const { return condition_; }

 private:
  std::string condition_;
};

// Starts from the tree edges, then scans the other edges by (w, u, v) and
// keeps e only if (1+eps) w(e) is strictly below the current distance
// between its endpoints.
EdgeSubgraph greedy_spanner(const WeightedGraph& g, const RootedTree& t, double eps);
// Plain greedy over all edges, no forced tree.
EdgeSubgraph greedy_spanner_unforced(const WeightedGraph& g, double eps);

// Max over all vertex pairs of d_H / d_G (0/0 counts as 1). Throws
// std::invalid_argument if h does not span its host.
double verify_stretch(const WeightedGraph& g, const EdgeSubgraph& h);
// Max over the edges of g only; equals verify_stretch on any spanning h.
double edge_stretch(const WeightedGraph& g, const EdgeSubgraph& h);
bool within_stretch(double max_stretch, double eps);

enum class TreeMode { kLightest, kRecursive };

struct PipelineOptions {
  TreeMode tree_mode = TreeMode::kLightest;
  bool force_tree = true;
};

struct SpannerResult {
  std::shared_ptr<const WeightedGraph> original;
  std::shared_ptr<const WeightedGraph> reduced;  // nice, bounded degree, completed
  PathDecomposition reduced_decomposition;
  ReductionTrace trace;
  RootedTree tree;
  ChargingScheme scheme;
  Rational scheme_value;
  EdgeSubgraph spanner;  // in `reduced`
  EdgeSubgraph lifted;   // in `original`
  double epsilon = 0.0;
  double max_stretch = 0.0;  // of `lifted` against `original`
  double spanner_weight = 0.0;
  double lifted_weight = 0.0;
  double tree_weight = 0.0;
  double mst = 0.0;          // MST(original)
  double reduced_mst = 0.0;  // MST(reduced)
  double runtime_ms = 0.0;

  double tree_ratio() const { return reduced_mst > 0 ? tree_weight / reduced_mst : 1.0; }
  double spanner_ratio() const { return mst > 0 ? lifted_weight / mst : 1.0; }
};

// Reduce, build the monotone tree and its scheme, run the greedy, verify and
// lift. Throws InputError for an invalid instance and CertificationError when
// any certificate (scheme, stretch, weight bound, lift) fails.
SpannerResult pipeline(const WeightedGraph& g, const PathDecomposition& pd, double eps,
                       const PipelineOptions& options = {});

}  // namespace lightspan

#endif  // LIGHTSPAN_SPANNER_HPP_
