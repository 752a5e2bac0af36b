#pragma once

#include "lvk/graphs.hpp"
#include "lvk/rational.hpp"

#include <json.hpp>

#include <string>

namespace lvk::io {

using Json = nlohmann::json;

/// Strict reader for {"vertices": [...], "edges": [[u, v], ...],
/// "tails": [{"vertex": v, "number": k}, ...]}. Unknown keys, wrong shapes,
/// duplicate or unknown vertex names raise ParseError naming the offending key.
/// Edge i is oriented from its first listed vertex to its second.
graphs::StableGraph graph_from_json(const Json& j);
Json graph_to_json(const graphs::StableGraph& g);

Json rational_json(const Rational& r);
Rational rational_from_json(const Json& j, const std::string& what);

/// Reads and parses a JSON file, mapping I/O and syntax failures to ParseError.
Json read_json_file(const std::string& path);

}  // namespace lvk::io
