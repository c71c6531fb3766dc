#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "gtomo/gtomo.hpp"

namespace gtomo::cli {

using json = nlohmann::ordered_json;

/// Reads and parses a JSON file; ParseError carries the path and the
/// parser's line/column.
json read_json(const std::filesystem::path& path);

/// Geometry document: {"dim", "kind": hrep|vrep|union, "halfspaces":
/// [[a_1..a_n, b], ...], "vertices": [[..], ...], "pieces": [...]}.
PolyconvexSet parse_geometry(const json& doc);
PolyconvexSet load_geometry(const std::filesystem::path& path);
/// H-representation of every piece; a single piece is written as hrep.
json geometry_to_json(const PolyconvexSet& set);

/// {"dim": n, "subspaces": [{"basis": [[...], ...], "weight": c}, ...]}
/// where each inner list of "basis" is one basis vector.
BLDatum parse_datum(const json& doc);
BLDatum load_datum(const std::filesystem::path& path);
json datum_to_json(const BLDatum& datum);

/// A single {"direction", "positions", "areas"} object, a list of them, or
/// {"samples": [...]}.
std::vector<SliceSamples> parse_samples(const json& doc);
std::vector<SliceSamples> load_samples(const std::filesystem::path& path);
json samples_to_json(const SliceSamples& s);

json to_json(const FisherResult& r);
json to_json(const BoundReport& r);

}  // namespace gtomo::cli
