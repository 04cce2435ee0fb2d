#include "steinforge/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "steinforge/error.hpp"

namespace steinforge::io {

namespace {

template <class F>
auto schema(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string(what) + ": " + e.what());
  }
}

Json big_to_json(const BigInt& x) {
  if (x <= std::numeric_limits<std::int64_t>::max() && x >= std::numeric_limits<std::int64_t>::min())
    return x.convert_to<std::int64_t>();
  return x.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

Json to_json(const DyadicInterval& i) { return Json{{"l", i.l}, {"k", i.k}}; }

Json to_json(const Brick& b) {
  Json j;
  j["block"] = b.block;
  if (b.label) j["label"] = *b.label;
  Json edges = Json::array();
  for (const auto& e : b.edges) edges.push_back(to_json(e));
  j["edges"] = std::move(edges);
  return j;
}

Json to_json(const Covering& c) {
  const Covering sorted = canonical(c);
  Json bricks = Json::array();
  for (const auto& b : sorted.bricks) bricks.push_back(to_json(b));
  return Json{{"s", c.s}, {"m", c.m}, {"bricks", std::move(bricks)}};
}

Json to_json(const DyadicMap& f) {
  Json pairs = Json::array();
  for (std::size_t i = 0; i < f.pieces().size(); ++i) pairs.push_back(Json::array({i + 1, i + 1}));
  return Json{{"domain", to_json(f.domain())}, {"codomain", to_json(f.codomain())}, {"pairs", std::move(pairs)}};
}

Json to_json(const Merging& u) {
  Json parts = Json::array();
  for (const auto& p : u.parts()) parts.push_back(Json{{"labels", p.labels}, {"covering", to_json(p.covering)}});
  return Json{{"n", u.n()}, {"s", u.s()}, {"parts", std::move(parts)}};
}

Json to_json(const SimplicialComplex& k) {
  Json simplices = Json::array();
  for (int d = 0; d <= k.dim(); ++d)
    for (const auto& s : k.simplices(d)) simplices.push_back(s);
  return Json{{"vertices", k.vertices()}, {"simplices", std::move(simplices)}};
}

Json to_json(const HomologyReport& h) {
  Json out = Json::array();
  for (const auto& g : h.groups) {
    Json torsion = Json::array();
    for (const auto& t : g.torsion) torsion.push_back(big_to_json(t));
    out.push_back(Json{{"dim", g.dim}, {"betti", g.betti}, {"torsion", std::move(torsion)}});
  }
  return out;
}

DyadicInterval interval_from_json(const Json& j) {
  return schema("interval", [&] {
    DyadicInterval i{j.at("l").get<int>(), j.at("k").get<std::uint64_t>()};
    if (!i.valid()) throw InvalidInput("interval: need l >= 0 and 0 <= k < 2^l");
    return i;
  });
}

Brick brick_from_json(const Json& j, int s) {
  return schema("brick", [&] {
    Brick b;
    b.block = j.at("block").get<int>();
    if (j.contains("label") && !j.at("label").is_null()) b.label = j.at("label").get<int>();
    for (const auto& e : j.at("edges")) b.edges.push_back(interval_from_json(e));
    if (b.dim() != s) throw InvalidInput("brick: expected " + std::to_string(s) + " edges");
    return b;
  });
}

Covering covering_from_json(const Json& j) {
  return schema("covering", [&] {
    Covering c;
    c.s = j.at("s").get<int>();
    c.m = j.at("m").get<int>();
    if (c.s < 1 || c.m < 1) throw InvalidInput("covering: s and m must be positive");
    for (const auto& b : j.at("bricks")) c.bricks.push_back(brick_from_json(b, c.s));
    require_valid(c);
    return c;
  });
}

DyadicMap map_from_json(const Json& j) {
  return schema("map", [&] {
    const Covering domain = covering_from_json(j.at("domain"));
    const Covering codomain = covering_from_json(j.at("codomain"));
    const auto pairs = j.at("pairs").get<std::vector<std::pair<int, int>>>();
    return map_from_pairing(domain, codomain, pairs);
  });
}

Merging merging_from_json(const Json& j) {
  return schema("merging", [&] {
    const int n = j.at("n").get<int>();
    const int s = j.at("s").get<int>();
    std::vector<MergingPart> parts;
    for (const auto& p : j.at("parts")) {
      MergingPart part;
      part.labels = p.at("labels").get<std::vector<int>>();
      const Json& c = p.at("covering");
      part.covering.s = c.at("s").get<int>();
      part.covering.m = c.at("m").get<int>();
      for (const auto& b : c.at("bricks")) part.covering.bricks.push_back(brick_from_json(b, part.covering.s));
      parts.push_back(std::move(part));
    }
    return Merging(s, n, std::move(parts));
  });
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

Covering read_covering(const std::string& path) { return covering_from_json(parse(slurp(path))); }
DyadicMap read_map(const std::string& path) { return map_from_json(parse(slurp(path))); }
Merging read_merging(const std::string& path) { return merging_from_json(parse(slurp(path))); }

}  // namespace steinforge::io
