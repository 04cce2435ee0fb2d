#include "steinforge/steinlocal.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "steinforge/error.hpp"
#include "steinforge/matching.hpp"

namespace steinforge {

// ---------------------------------------------------------------- Merging --

namespace {

Brick unit_brick(int s, std::optional<int> label = std::nullopt) {
  return Brick{1, label, std::vector<DyadicInterval>(s, DyadicInterval::unit())};
}

const Brick& brick_with_label(const Covering& c, int label) {
  for (const auto& b : c.bricks)
    if (b.label == label) return b;
  throw std::logic_error("merging: missing brick label " + std::to_string(label));
}

void append_key(std::string& key, const MergingPart& part) {
  for (int j : part.labels) key += std::to_string(j) + ",";
  key += "[";
  for (int j : part.labels) {
    for (const auto& e : brick_with_label(part.covering, j).edges)
      key += std::to_string(e.l) + "." + std::to_string(e.k) + " ";
    key += ";";
  }
  key += "]";
}

}  // namespace

Merging::Merging(int s, int n, std::vector<MergingPart> parts, bool nontrivial) : s_(s), n_(n), parts_(std::move(parts)) {
  if (s < 1 || n < 1) throw InvalidInput("merging: s and n must be positive");
  std::vector<int> seen;
  for (auto& part : parts_) {
    if (part.labels.empty()) throw InvalidInput("merging: empty part");
    std::sort(part.labels.begin(), part.labels.end());
    seen.insert(seen.end(), part.labels.begin(), part.labels.end());
    if (part.covering.s != s || part.covering.m != 1) throw InvalidInput("merging: part covering must cover one block");
    require_valid(strip_labels(part.covering));
    std::vector<int> labels;
    for (const auto& b : part.covering.bricks) {
      if (!b.label) throw InvalidInput("merging: part covering must be labeled");
      labels.push_back(*b.label);
    }
    std::sort(labels.begin(), labels.end());
    if (labels != part.labels) throw InvalidInput("merging: covering labels differ from the part");
    if (!classify(part.covering).elementary) throw InvalidInput("merging: part covering is not elementary");
    part.covering.sort();
  }
  std::sort(seen.begin(), seen.end());
  std::vector<int> expected(n);
  std::iota(expected.begin(), expected.end(), 1);
  if (seen != expected) throw InvalidInput("merging: parts do not partition 1..n");
  std::sort(parts_.begin(), parts_.end(),
            [](const MergingPart& a, const MergingPart& b) { return a.labels.front() < b.labels.front(); });
  if (nontrivial && std::all_of(parts_.begin(), parts_.end(), [](const auto& p) { return p.labels.size() == 1; }))
    throw InvalidInput("merging: no part merges two bricks");
  for (const auto& part : parts_) {
    append_key(key_, part);
    key_ += "|";
  }
}

bool Merging::very_elementary() const {
  return std::all_of(parts_.begin(), parts_.end(),
                     [](const MergingPart& p) { return classify(p.covering).very_elementary; });
}

std::size_t Merging::part_of(int label) const {
  for (std::size_t i = 0; i < parts_.size(); ++i)
    if (std::binary_search(parts_[i].labels.begin(), parts_[i].labels.end(), label)) return i;
  throw InvalidInput("merging: unknown label " + std::to_string(label));
}

bool merging_le(const Merging& a, const Merging& b) {
  if (a.s() != b.s() || a.n() != b.n()) throw InvalidInput("merging_le: mergings of different shapes");
  const Brick unit = unit_brick(a.s());
  for (const auto& part : a.parts()) {
    std::map<std::size_t, std::vector<int>> groups;
    for (int j : part.labels) groups[b.part_of(j)].push_back(j);
    for (const auto& [bi, labels] : groups) {
      const MergingPart& target = b.parts()[bi];
      if (target.labels != labels) return false;  // the b-part leaves this a-part
      std::vector<Brick> members;
      Dyadic volume;
      for (int j : labels) {
        members.push_back(brick_with_label(part.covering, j));
        volume = volume + members.back().volume();
      }
      const Brick box = bounding_brick(members);
      if (volume != box.volume()) return false;
      for (std::size_t t = 0; t < labels.size(); ++t) {
        const Brick rescaled = transfer(members[t], box, unit);
        if (!rescaled.same_region(brick_with_label(target.covering, labels[t]))) return false;
      }
    }
  }
  return true;
}

DyadicMap merging_map(const Merging& u) {
  std::vector<Piece> pieces;
  for (std::size_t p = 0; p < u.parts().size(); ++p) {
    for (int j : u.parts()[p].labels) {
      Brick source{j, std::nullopt, std::vector<DyadicInterval>(u.s(), DyadicInterval::unit())};
      Brick target = brick_with_label(u.parts()[p].covering, j);
      target.block = static_cast<int>(p) + 1;
      target.label.reset();
      pieces.push_back(Piece{std::move(source), std::move(target)});
    }
  }
  return DyadicMap(u.s(), u.n(), u.blocks(), std::move(pieces));
}

std::string Height::str() const {
  std::ostringstream os;
  os << "((";
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ")," << b << ")";
  return os.str();
}

Height height(const Merging& u) {
  Height h;
  h.c.assign(static_cast<std::size_t>(std::max(0, u.s() - 1)), 0);
  for (const auto& part : u.parts())
    for (const auto& brick : part.covering.bricks) {
      const int i = brick.level_sum();
      if (i >= 2) ++h.c[static_cast<std::size_t>(u.s() - i)];
    }
  h.b = u.blocks();
  return h;
}

std::optional<std::size_t> MergingPoset::find(const Merging& u) const {
  auto it = index.find(u.key());
  if (it == index.end()) return std::nullopt;
  return it->second;
}

// ------------------------------------------------------------ enumeration --

namespace {

// Split a part along a coarsening of its covering: one sub-part per brick.
std::vector<MergingPart> split_part(const MergingPart& part, const Covering& along) {
  const int s = part.covering.s;
  const Brick unit = unit_brick(s);
  std::vector<MergingPart> out;
  for (const auto& box : along.bricks) {
    MergingPart sub{{}, Covering{s, 1, {}}};
    for (const auto& b : part.covering.bricks) {
      if (!box.contains(b)) continue;
      sub.labels.push_back(*b.label);
      Brick r = transfer(b, box, unit);
      r.label = b.label;
      sub.covering.bricks.push_back(std::move(r));
    }
    out.push_back(std::move(sub));
  }
  return out;
}

void set_partitions(int n, std::vector<int>& rgs, int next, int blocks, std::vector<std::vector<std::vector<int>>>& out) {
  if (next == n) {
    std::vector<std::vector<int>> parts(static_cast<std::size_t>(blocks));
    for (int i = 0; i < n; ++i) parts[static_cast<std::size_t>(rgs[static_cast<std::size_t>(i)])].push_back(i + 1);
    out.push_back(std::move(parts));
    return;
  }
  for (int b = 0; b <= blocks; ++b) {
    rgs[static_cast<std::size_t>(next)] = b;
    set_partitions(n, rgs, next + 1, std::max(blocks, b + 1), out);
  }
}

template <class T, class F>
void cartesian(const std::vector<std::vector<T>>& options, F&& visit) {
  std::vector<std::size_t> pick(options.size(), 0);
  for (const auto& o : options)
    if (o.empty()) return;
  while (true) {
    visit(pick);
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
    if (i == pick.size()) return;
  }
}

}  // namespace

MergingPoset enumerate_posets(int s, int n, bool very, const Guards& guards) {
  const int limit = guards.max_merging_n(s);
  if (s < 1 || n < 1) throw InvalidInput("enumerate_posets: s and n must be positive");
  if (limit == 0 || n > limit)
    throw GuardExceeded("enumerate_posets: (s, n) = (" + std::to_string(s) + ", " + std::to_string(n) +
                        ") exceeds the configured bound");
  MergingPoset e;
  e.s = s;
  e.n = n;
  e.very = very;

  const int max_part = very ? 2 : (1 << s);
  std::vector<std::vector<Covering>> shapes(static_cast<std::size_t>(max_part) + 1);
  for (auto& c : enumerate_elementary(s, false, std::nullopt, guards)) {
    const auto k = c.size();
    if (static_cast<int>(k) > max_part) continue;
    if (very && !classify(c).very_elementary) continue;
    shapes[k].push_back(std::move(c));
  }

  std::vector<std::vector<std::vector<int>>> partitions;
  std::vector<int> rgs(static_cast<std::size_t>(n), 0);
  set_partitions(n, rgs, 0, 0, partitions);
  for (const auto& partition : partitions) {
    if (std::all_of(partition.begin(), partition.end(), [](const auto& p) { return p.size() == 1; })) continue;
    std::vector<std::vector<MergingPart>> options;
    bool feasible = true;
    for (const auto& labels : partition) {
      if (static_cast<int>(labels.size()) > max_part) {
        feasible = false;
        break;
      }
      std::vector<MergingPart> part_options;
      for (const auto& shape : shapes[labels.size()]) {
        std::vector<int> perm = labels;
        do {
          Covering c = shape;
          for (std::size_t i = 0; i < perm.size(); ++i) c.bricks[i].label = perm[i];
          part_options.push_back(MergingPart{labels, std::move(c)});
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
      options.push_back(std::move(part_options));
    }
    if (!feasible) continue;
    cartesian(options, [&](const std::vector<std::size_t>& pick) {
      std::vector<MergingPart> parts;
      for (std::size_t i = 0; i < pick.size(); ++i) parts.push_back(options[i][pick[i]]);
      e.elements.emplace_back(s, n, std::move(parts));
    });
  }
  std::sort(e.elements.begin(), e.elements.end(), [](const Merging& a, const Merging& b) {
    return a.blocks() != b.blocks() ? a.blocks() < b.blocks() : a.key() < b.key();
  });
  for (std::size_t i = 0; i < e.elements.size(); ++i) {
    if (!e.index.emplace(e.elements[i].key(), i).second) throw std::logic_error("enumerate_posets: duplicate element");
    e.heights.push_back(height(e.elements[i]));
  }

  // Everything above a: split each part along any coarsening of its covering.
  std::map<std::string, std::vector<std::vector<MergingPart>>> split_cache;
  std::vector<std::vector<std::size_t>> above(e.elements.size());
  for (std::size_t a = 0; a < e.elements.size(); ++a) {
    const Merging& u = e.elements[a];
    std::vector<std::vector<std::vector<MergingPart>>> options;
    for (const auto& part : u.parts()) {
      std::string k;
      append_key(k, part);
      auto it = split_cache.find(k);
      if (it == split_cache.end()) {
        std::vector<std::vector<MergingPart>> splits;
        for (const auto& along : enumerate_coarsenings(strip_labels(part.covering), guards))
          splits.push_back(split_part(part, along));
        it = split_cache.emplace(k, std::move(splits)).first;
      }
      options.push_back(it->second);
    }
    cartesian(options, [&](const std::vector<std::size_t>& pick) {
      std::vector<MergingPart> parts;
      for (std::size_t i = 0; i < pick.size(); ++i)
        for (const auto& sub : options[i][pick[i]]) parts.push_back(sub);
      if (parts.size() == u.parts().size()) return;  // nothing was split
      if (static_cast<int>(parts.size()) == n) return;  // everything was split
      const Merging v(s, n, std::move(parts));
      auto found = e.find(v);
      if (!found) throw std::logic_error("enumerate_posets: splitting left the poset");
      above[a].push_back(*found);
    });
    std::sort(above[a].begin(), above[a].end());
  }
  e.order = FinitePoset(std::move(above));
  return e;
}

SimplicialComplex merging_complex(const MergingPoset& e, std::optional<int> max_dim) {
  return order_complex(e.order, max_dim);
}

// ------------------------------------------------------------------ VE_n --

Simplex ve_image(const Merging& u) {
  if (!u.very_elementary()) throw PreconditionError("ve_image: merging is not very elementary");
  const Multigraph oriented = orient(make_sKn(u.s(), u.n()));
  Simplex out;
  for (const auto& part : u.parts()) {
    if (part.labels.size() != 2) continue;
    const Brick& a = part.covering.bricks[0];
    const Brick& b = part.covering.bricks[1];
    int dir = -1;
    for (int d = 0; d < u.s(); ++d)
      if (a.edges[d] != b.edges[d]) dir = d;
    const Brick& low = a.edges[dir].is_upper_half() ? b : a;
    const Brick& high = a.edges[dir].is_upper_half() ? a : b;
    out.push_back(*edge_id(oriented, Edge{*low.label, *high.label, dir + 1, true}));
  }
  std::sort(out.begin(), out.end());
  return out;
}

VeIsoReport ve_iso(int s, int n, const Guards& guards) {
  VeIsoReport r;
  const MergingPoset e = enumerate_posets(s, n, true, guards);
  const SimplicialComplex target = matching_complex(make_sKn(s, n), true, std::nullopt, guards);
  r.elements = e.size();
  r.faces = target.total();
  r.expected_single_pair = static_cast<std::size_t>(s) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1);
  for (const auto& u : e.elements) {
    r.images.push_back(ve_image(u));
    if (r.images.back().size() == 1) ++r.single_pair;
  }

  // Faces of M° in one list; face_id maps a simplex to its position.
  std::vector<Simplex> faces;
  std::vector<std::size_t> offset;
  for (int d = 0; d <= target.dim(); ++d) {
    offset.push_back(faces.size());
    faces.insert(faces.end(), target.simplices(d).begin(), target.simplices(d).end());
  }
  auto face_id = [&](const Simplex& s) -> std::optional<std::size_t> {
    auto i = target.index_of(s);
    if (!i) return std::nullopt;
    return offset[s.size() - 1] + *i;
  };

  std::vector<std::size_t> phi;
  bool all_found = true;
  for (const auto& img : r.images) {
    auto id = face_id(img);
    if (!id) {
      all_found = false;
      break;
    }
    phi.push_back(*id);
  }
  if (all_found) {
    std::vector<std::size_t> sorted = phi;
    std::sort(sorted.begin(), sorted.end());
    r.bijective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() && sorted.size() == faces.size();
  }

  r.order_reversing = true;
  for (std::size_t a = 0; a < e.size() && r.order_reversing; ++a)
    for (std::size_t b = 0; b < e.size(); ++b) {
      if (a == b) continue;
      const auto& ia = r.images[a];
      const auto& ib = r.images[b];
      const bool contains = ia.size() > ib.size() && std::includes(ia.begin(), ia.end(), ib.begin(), ib.end());
      if (contains != e.order.less(a, b)) {
        r.order_reversing = false;
        break;
      }
    }

  constexpr std::size_t kPairwiseLimit = 2000;
  if (e.size() <= kPairwiseLimit) {
    r.merging_le_checked = true;
    r.merging_le_agrees = true;
    for (std::size_t a = 0; a < e.size() && r.merging_le_agrees; ++a)
      for (std::size_t b = 0; b < e.size(); ++b)
        if (a != b && merging_le(e.elements[a], e.elements[b]) != e.order.less(a, b)) {
          r.merging_le_agrees = false;
          break;
        }
  }

  if (r.bijective) {
    // Face poset of M° ordered by inclusion, built directly from the faces.
    std::vector<std::vector<std::size_t>> above(faces.size());
    for (std::size_t t = 0; t < faces.size(); ++t) {
      const Simplex& big = faces[t];
      const std::size_t k = big.size();
      for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << k); ++mask) {
        Simplex small;
        for (std::size_t i = 0; i < k; ++i)
          if (mask >> i & 1u) small.push_back(big[i]);
        above[*face_id(small)].push_back(t);
      }
    }
    const SimplicialComplex subdivision = order_complex(FinitePoset(std::move(above)), std::nullopt, guards);
    const SimplicialComplex mapped =
        merging_complex(e).relabel([&](int v) { return static_cast<int>(phi[static_cast<std::size_t>(v)]); });
    r.realization_isomorphic = mapped.same_simplices(subdivision);
  }
  return r;
}

// ------------------------------------------------------ descending links --

namespace {

SimplicialComplex complex_on(const MergingPoset& e, const std::vector<std::size_t>& members, std::optional<int> max_dim) {
  return order_complex(e.order.induced(members), max_dim).relabel([&](int v) {
    return static_cast<int>(members[static_cast<std::size_t>(v)]);
  });
}

SimplicialComplex complex_on(const FinitePoset& p, const std::vector<std::size_t>& members, std::optional<int> max_dim) {
  return order_complex(p.induced(members), max_dim).relabel([&](int v) {
    return static_cast<int>(members[static_cast<std::size_t>(v)]);
  });
}

}  // namespace

DescendingLink descending_link(const MergingPoset& e, std::size_t u, std::optional<int> max_dim) {
  if (u >= e.size()) throw InvalidInput("descending_link: element out of range");
  DescendingLink out;
  const Height& hu = e.heights[u];
  std::vector<std::size_t> by_height;
  for (std::size_t v : e.order.below(u)) {
    if (e.heights[v].c == hu.c) out.down.push_back(v);
    if (e.heights[v] < hu) by_height.push_back(v);
  }
  for (std::size_t v : e.order.above(u)) {
    if (e.heights[v].c < hu.c) out.up.push_back(v);
    if (e.heights[v] < hu) by_height.push_back(v);
  }
  std::vector<std::size_t> both = out.down;
  both.insert(both.end(), out.up.begin(), out.up.end());
  std::sort(both.begin(), both.end());
  std::sort(by_height.begin(), by_height.end());
  out.matches_height = both == by_height;
  out.cross_comparable = true;
  for (std::size_t d : out.down)
    for (std::size_t w : out.up)
      if (!e.order.less(d, w)) out.cross_comparable = false;

  out.down_complex = complex_on(e, out.down, max_dim);
  out.up_complex = complex_on(e, out.up, max_dim);
  out.dlk = complex_on(e, both, max_dim);
  SimplicialComplex joined = join_complex(out.down_complex, out.up_complex);
  if (max_dim) joined = joined.skeleton(*max_dim);
  out.join_identity = out.dlk.same_simplices(joined);
  return out;
}

std::vector<std::size_t> two_brick_parts(const Merging& u) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < u.parts().size(); ++i)
    if (u.parts()[i].labels.size() == 2) out.push_back(i);
  return out;
}

Merging redo_except(const Merging& u, std::size_t part, const Merging& v) {
  const MergingPart& b = u.parts().at(part);
  std::vector<MergingPart> parts{b};
  for (const auto& p : v.parts()) {
    const bool inside = std::all_of(p.labels.begin(), p.labels.end(), [&](int j) {
      return std::binary_search(b.labels.begin(), b.labels.end(), j);
    });
    if (!inside) parts.push_back(p);
  }
  return Merging(u.s(), u.n(), std::move(parts));
}

Merging maximal_split_except(const Merging& u, std::size_t part) {
  const MergingPart& b = u.parts().at(part);
  std::vector<MergingPart> parts{b};
  for (int j = 1; j <= u.n(); ++j) {
    if (std::binary_search(b.labels.begin(), b.labels.end(), j)) continue;
    parts.push_back(MergingPart{{j}, Covering{u.s(), 1, {unit_brick(u.s(), j)}}});
  }
  return Merging(u.s(), u.n(), std::move(parts));
}

std::vector<TwoBricksVerdict> two_bricks_certificate(const MergingPoset& e, std::size_t u) {
  if (u >= e.size()) throw InvalidInput("two_bricks_certificate: element out of range");
  const Merging& um = e.elements[u];
  const auto parts = two_brick_parts(um);
  if (parts.empty()) throw PreconditionError("two_bricks_certificate: no block has exactly two bricks");
  if (um.very_elementary()) throw PreconditionError("two_bricks_certificate: element lies in VE_n");

  const DescendingLink link = descending_link(e, u, 0);
  const std::vector<std::size_t>& up = link.up;
  const FinitePoset uplink = e.order.induced(up);
  std::vector<std::size_t> position(e.size(), SIZE_MAX);
  for (std::size_t i = 0; i < up.size(); ++i) position[up[i]] = i;
  const HomologyReport h = homology(order_complex(uplink), true);

  std::vector<TwoBricksVerdict> out;
  for (std::size_t part : parts) {
    TwoBricksVerdict v;
    v.part = part;
    v.uplink_size = up.size();
    v.uplink_homology = h;
    const Merging zb = maximal_split_except(um, part);
    const auto zb_index = e.find(zb);
    v.zb_in_uplink = zb_index && position[*zb_index] != SIZE_MAX;
    v.v0_in_uplink = true;
    v.v0_le_zb = true;
    std::vector<std::size_t> to_v0(up.size());
    for (std::size_t i = 0; i < up.size(); ++i) {
      const Merging v0 = redo_except(um, part, e.elements[up[i]]);
      const auto idx = e.find(v0);
      if (!idx || position[*idx] == SIZE_MAX) {
        v.v0_in_uplink = false;
        to_v0[i] = i;
        continue;
      }
      to_v0[i] = position[*idx];
      if (!merging_le(v0, zb)) v.v0_le_zb = false;
    }
    if (v.zb_in_uplink && v.v0_in_uplink) {
      const std::vector<std::vector<std::size_t>> maps{to_v0, std::vector<std::size_t>(up.size(), position[*zb_index])};
      v.certificate = contraction_certificate(uplink, maps, position[*zb_index]);
    } else {
      v.certificate = {false, v.zb_in_uplink ? "V_0 left the up-link" : "Z_B is not in the up-link"};
    }
    out.push_back(std::move(v));
  }
  return out;
}

NoTwoBricksVerdict no_two_bricks_check(const MergingPoset& e, std::size_t u) {
  if (u >= e.size()) throw InvalidInput("no_two_bricks_check: element out of range");
  const Merging& um = e.elements[u];
  if (!two_brick_parts(um).empty()) throw PreconditionError("no_two_bricks_check: a block has exactly two bricks");
  if (um.very_elementary()) throw PreconditionError("no_two_bricks_check: element lies in VE_n");
  NoTwoBricksVerdict v;
  for (const auto& p : um.parts()) (p.labels.size() == 1 ? v.k_s : v.k_b) += 1;
  v.bound = v.k_b + nu(v.k_s) - 1;
  v.required_bound = eta(e.n, e.s) - 2;
  v.brick_count = e.n <= (1 << e.s) * v.k_b + v.k_s;
  const DescendingLink link = descending_link(e, u, std::max({v.bound + 1, v.required_bound + 1, v.k_b - 1, 1}));
  std::size_t ve_size = 0;
  for (int j = 1; 2 * j <= v.k_s; ++j) {
    std::size_t edges = 1;
    for (int i = 0; i < j; ++i) edges *= static_cast<std::size_t>(2 * e.s);
    ve_size += matchings_of_complete_graph(v.k_s, j) * edges;
  }
  v.downlink_size = link.down.size() == ve_size;
  v.connectivity = connectivity_report(link.dlk, v.required_bound);
  v.intermediate = connectivity_report(link.dlk, v.bound);
  v.uplink = connectivity_report(link.up_complex, v.k_b - 2);
  return v;
}

// -------------------------------------------------------------- intervals --

IntervalPoset interval_poset(const PVertex& x, const PVertex& z, bool cross_check, const Guards& guards) {
  auto w = pv_le(x, z);
  if (!w) throw PreconditionError("interval_poset: x is not below z");
  IntervalPoset p;
  p.x = x;
  p.z = z;
  p.witness = canonical(strip_labels(w->along));
  if (p.witness.size() > guards.max_interval_bricks)
    throw GuardExceeded("interval_poset: witness covering has " + std::to_string(p.witness.size()) +
                        " bricks, bound " + std::to_string(guards.max_interval_bricks));
  p.coverings = enumerate_coarsenings(p.witness, guards);
  const Covering trivial = trivial_covering(x.s(), x.t());
  std::vector<std::vector<std::size_t>> above(p.coverings.size());
  for (std::size_t i = 0; i < p.coverings.size(); ++i) {
    p.vertices.push_back(split_vertex(x, p.coverings[i]));
    if (p.coverings[i] == trivial) p.bottom = i;
    if (p.coverings[i] == p.witness) p.top = i;
    for (std::size_t j = 0; j < p.coverings.size(); ++j)
      if (i != j && refines(p.coverings[j], p.coverings[i])) above[i].push_back(j);
  }
  p.order = FinitePoset(std::move(above));
  if (cross_check) {
    for (std::size_t i = 0; i < p.vertices.size(); ++i)
      for (std::size_t j = 0; j < p.vertices.size(); ++j)
        if (pv_le(p.vertices[i], p.vertices[j]).has_value() != p.order.leq(i, j))
          throw std::logic_error("interval_poset: covering order disagrees with pv_le");
  }
  return p;
}

std::vector<std::size_t> interval_members(const IntervalPoset& p, IntervalKind kind) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.coverings.size(); ++i) {
    const bool lower_ok = i != p.bottom || kind == IntervalKind::closed || kind == IntervalKind::half_open_lower;
    const bool upper_ok = i != p.top || kind == IntervalKind::closed || kind == IntervalKind::half_open_upper;
    if (lower_ok && upper_ok) out.push_back(i);
  }
  return out;
}

namespace {

// The splitting from `coarse` to `fine` is elementary: inside each coarse
// brick every fine brick has edges at least half as long.
bool relatively_elementary(const Covering& coarse, const Covering& fine) {
  for (const auto& g : fine.bricks) {
    for (const auto& b : coarse.bricks) {
      if (!b.contains(g)) continue;
      for (int d = 0; d < g.dim(); ++d)
        if (g.edges[d].l - b.edges[d].l > 1) return false;
    }
  }
  return true;
}

}  // namespace

SimplicialComplex interval_complex(const IntervalPoset& p, IntervalKind kind, bool elementary_only) {
  const auto members = interval_members(p, kind);
  const SimplicialComplex all = complex_on(p.order, members, std::nullopt);
  if (!elementary_only) return all;
  SimplicialComplex out;
  for (int d = 0; d <= all.dim(); ++d)
    for (const auto& s : all.simplices(d)) {
      auto by_size = [&](int a, int b) {
        return p.coverings[static_cast<std::size_t>(a)].size() < p.coverings[static_cast<std::size_t>(b)].size();
      };
      const int lo = *std::min_element(s.begin(), s.end(), by_size);
      const int hi = *std::max_element(s.begin(), s.end(), by_size);
      if (relatively_elementary(p.coverings[static_cast<std::size_t>(lo)], p.coverings[static_cast<std::size_t>(hi)]))
        out.add_closed(s);
    }
  return out;
}

bool suspension_identity(const IntervalPoset& p) {
  const SimplicialComplex lower = interval_complex(p, IntervalKind::half_open_lower);
  const SimplicialComplex upper = interval_complex(p, IntervalKind::half_open_upper);
  SimplicialComplex both;
  for (int d = 0; d <= std::max(lower.dim(), upper.dim()); ++d) {
    for (const auto& s : lower.simplices(d)) both.add_closed(s);
    for (const auto& s : upper.simplices(d)) both.add_closed(s);
  }
  SimplicialComplex apexes;
  apexes.add_closed({static_cast<int>(p.bottom)});
  apexes.add_closed({static_cast<int>(p.top)});
  return both.same_simplices(join_complex(interval_complex(p, IntervalKind::open), apexes));
}

CubeVerdict cube_lemma_check(const PVertex& x, const PVertex& z, const Guards& guards) {
  if (!pv_lt(x, z)) throw PreconditionError("cube_lemma_check: x is not strictly below z");
  if (pv_elem_le(x, z)) throw PreconditionError("cube_lemma_check: x is elementarily below z");
  const IntervalPoset p = interval_poset(x, z, true, guards);
  const auto open = interval_members(p, IntervalKind::open);
  std::vector<std::size_t> position(p.coverings.size(), SIZE_MAX);
  for (std::size_t i = 0; i < open.size(); ++i) position[open[i]] = i;
  const Covering e = maximal_elementary(x.s(), x.t());

  CubeVerdict v;
  v.open_size = open.size();
  v.core_in_interval = true;
  v.core_matches_vertex = true;
  auto core_index = [&](std::size_t w) -> std::optional<std::size_t> {
    const Covering c = meet(e, p.coverings[w]);
    for (std::size_t i = 0; i < p.coverings.size(); ++i)
      if (p.coverings[i] == c) {
        if (!same_vertex(elementary_core(x, p.vertices[w]), p.vertices[i])) v.core_matches_vertex = false;
        return i;
      }
    return std::nullopt;
  };
  std::vector<std::size_t> to_core(open.size());
  for (std::size_t i = 0; i < open.size(); ++i) {
    const auto c = core_index(open[i]);
    if (!c || position[*c] == SIZE_MAX) {
      v.core_in_interval = false;
      to_core[i] = i;
    } else {
      to_core[i] = position[*c];
    }
  }
  const auto top_core = core_index(p.top);
  const bool top_ok = top_core && position[*top_core] != SIZE_MAX;
  if (!top_ok) v.core_in_interval = false;
  const FinitePoset poset = p.order.induced(open);
  if (v.core_in_interval && top_ok) {
    const std::vector<std::vector<std::size_t>> maps{to_core, std::vector<std::size_t>(open.size(), position[*top_core])};
    v.certificate = contraction_certificate(poset, maps, position[*top_core]);
  } else {
    v.certificate = {false, "an elementary core falls outside the open interval"};
  }
  v.homology = homology(interval_complex(p, IntervalKind::open), true);
  return v;
}

// ------------------------------------------------------------------ Morse --

bool MorseVerdict::pass() const {
  return std::all_of(levels.begin(), levels.end(), [](const MorseLevel& l) { return l.relative_vanishes && l.ranks_match; });
}

std::vector<std::vector<int>> height_keys(const MergingPoset& e) {
  std::vector<std::vector<int>> out;
  for (const auto& h : e.heights) {
    std::vector<int> key = h.c;
    key.push_back(h.b);
    out.push_back(std::move(key));
  }
  return out;
}

MorseVerdict morse_pair_check(const FinitePoset& p, const std::vector<std::vector<int>>& heights, int k_max) {
  if (heights.size() != p.size()) throw InvalidInput("morse_pair_check: one height per element required");
  if (k_max < 0) throw InvalidInput("morse_pair_check: k_max must be non-negative");
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b : p.above(a))
      if (heights[a] == heights[b])
        throw PreconditionError("morse_pair_check: comparable elements " + std::to_string(a) + " and " +
                                std::to_string(b) + " have equal height");

  std::vector<std::vector<int>> values = heights;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<std::size_t> level(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    level[i] = static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), heights[i]) - values.begin());

  const SimplicialComplex full = order_complex(p, k_max + 1);
  auto top_level = [&](const Simplex& s) {
    std::size_t t = 0;
    for (int v : s) t = std::max(t, level[static_cast<std::size_t>(v)]);
    return t;
  };

  MorseVerdict verdict;
  SimplicialComplex below(k_max + 1);  // X^{<t}, grown level by level
  for (std::size_t t = 0; t < values.size(); ++t) {
    MorseLevel info;
    info.height = values[t];
    info.k = k_max;
    std::vector<std::size_t> rank_sum(static_cast<std::size_t>(k_max) + 1, 0);
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (level[x] != t) continue;
      ++info.vertices;
      std::vector<std::size_t> link;
      for (std::size_t y : p.below(x))
        if (level[y] < t) link.push_back(y);
      for (std::size_t y : p.above(x))
        if (level[y] < t) link.push_back(y);
      std::sort(link.begin(), link.end());
      const SimplicialComplex dlk = complex_on(p, link, k_max);
      const HomologyReport h = homology(dlk, true, k_max - 1);
      info.k = std::min(info.k, h.connectivity() + 1);
      if (dlk.empty()) ++rank_sum[0];
      for (const auto& g : h.groups)
        if (g.dim + 1 <= k_max) rank_sum[static_cast<std::size_t>(g.dim + 1)] += g.betti;
    }
    SimplicialComplex upto(k_max + 1);
    for (int d = 0; d <= full.dim(); ++d)
      for (const auto& s : full.simplices(d))
        if (top_level(s) <= t) upto.add_closed(s);
    const HomologyReport rel = relative_homology(upto, below, k_max);
    info.relative_vanishes = true;
    info.ranks_match = true;
    for (const auto& g : rel.groups) {
      if (g.dim <= info.k && !g.trivial()) info.relative_vanishes = false;
      if (g.betti != rank_sum[static_cast<std::size_t>(g.dim)]) info.ranks_match = false;
    }
    below = std::move(upto);
    verdict.levels.push_back(std::move(info));
  }
  return verdict;
}

// ---------------------------------------------------------- ambient link --

AmbientLink desc_link_of_vertex(const PVertex& x, const Guards& guards) {
  AmbientLink out;
  const int n = x.t();
  out.all_elementary_below = true;
  out.isomorphic = true;
  if (n < 2) return out;
  const MergingPoset e = enumerate_posets(x.s(), n, false, guards);
  for (const auto& u : e.elements) {
    PVertex y = canonicalize(compose(merging_map(u), x.map()));
    if (!(y.t() < x.t() && pv_elem_le(y, x))) out.all_elementary_below = false;
    out.vertices.push_back(std::move(y));
  }
  for (std::size_t a = 0; a < e.size() && out.isomorphic; ++a)
    for (std::size_t b = 0; b < e.size(); ++b) {
      if (a == b) continue;
      const bool ambient = out.vertices[a].t() < out.vertices[b].t() && pv_le(out.vertices[a], out.vertices[b]);
      if (ambient != e.order.less(a, b)) {
        out.isomorphic = false;
        break;
      }
    }
  return out;
}

}  // namespace steinforge
