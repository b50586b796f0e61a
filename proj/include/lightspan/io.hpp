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

// io.hpp - JSON and CSV forms of every pipeline artifact. Malformed input
// raises InputError.

#ifndef LIGHTSPAN_IO_HPP_
#define LIGHTSPAN_IO_HPP_

#include <optional>
#include <string>

#include "json.hpp"
#include "lightspan/charging.hpp"
#include "lightspan/decomposition.hpp"
#include "lightspan/generators.hpp"
#include "lightspan/graph.hpp"
#include "lightspan/monotone_tree.hpp"
#include "lightspan/spanner.hpp"

namespace lightspan {

using Json = nlohmann::json;

struct Instance {
  WeightedGraph graph;
  std::optional<PathDecomposition> decomposition;
};

// {"n", "edges": [{"u","v","w"}], "decomposition": {"bags": [[...]]}}
Json to_json(const WeightedGraph& g);
Json to_json(const WeightedGraph& g, const PathDecomposition& pd);
Instance instance_from_json(const Json& j);

Json to_json(const ReductionTrace& trace);
ReductionTrace trace_from_json(const Json& j);

// {"root", "parent": [...], "weight"}; parent -1 marks the root.
Json to_json(const RootedTree& t);
RootedTree tree_from_json(const Json& j, const WeightedGraph& g);

Json to_json(const Rational& r);  // {"num", "den"}
Rational rational_from_json(const Json& j);

// {"moves": [{"edge": [u,v], "path": [...], "value": {"num","den"}}], "edge_order": [[u,v]]}
Json to_json(const ChargingScheme& s);
ChargingScheme scheme_from_json(const Json& j);

// {"conditions": {"1": "pass", ...}, "min_v", "violations": [...]}
Json to_json(const SchemeReport& report);

// {"edges": [{"u","v","w"}], "weight"}
Json to_json(const EdgeSubgraph& h);
EdgeSubgraph subgraph_from_json(const Json& j, const WeightedGraph& host);

// Everything except the wall-clock runtime, so equal runs give equal bytes.
Json to_json(const SpannerResult& r);

// Graph JSON plus "tree_decomposition": {"nodes", "edges", "bags", "root"}.
Json to_json(const LowerBoundInstance& inst);

std::string csv_header();
std::string csv_row(const std::string& instance, int width, const SpannerResult& r);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);
std::string dump(const Json& j);

}  // namespace lightspan

#endif  // LIGHTSPAN_IO_HPP_
