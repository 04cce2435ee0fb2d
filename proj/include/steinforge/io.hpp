#pragma once

#include <string>

#include "json.hpp"
#include "steinforge/complexes.hpp"
#include "steinforge/groupsv.hpp"
#include "steinforge/steinlocal.hpp"

namespace steinforge::io {

using Json = nlohmann::ordered_json;

Json to_json(const DyadicInterval& i);
Json to_json(const Brick& b);
/// Bricks in canonical order.
Json to_json(const Covering& c);
/// Domain and codomain labeled by piece index, pairs [[i, i], ...].
Json to_json(const DyadicMap& f);
Json to_json(const Merging& u);
Json to_json(const SimplicialComplex& k);
Json to_json(const HomologyReport& h);

DyadicInterval interval_from_json(const Json& j);
Brick brick_from_json(const Json& j, int s);
Covering covering_from_json(const Json& j);
DyadicMap map_from_json(const Json& j);
Merging merging_from_json(const Json& j);

/// Parse text, turning parse and schema errors into InvalidInput.
Json parse(const std::string& text);
Covering read_covering(const std::string& path);
DyadicMap read_map(const std::string& path);
Merging read_merging(const std::string& path);

}  // namespace steinforge::io
