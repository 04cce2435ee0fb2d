#include "steinforge/dyadic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "steinforge/error.hpp"

namespace steinforge {

// ---------------------------------------------------------------- Dyadic --

Dyadic::Dyadic(BigInt k, int l) : k_(std::move(k)), l_(l) {
  if (l_ < 0 || k_ < 0) throw InvalidInput("dyadic: negative numerator or exponent");
  while (l_ > 0 && (k_ & 1) == 0) {
    k_ >>= 1;
    --l_;
  }
  if (k_ == 0) l_ = 0;
  if (k_ > (BigInt(1) << l_)) throw InvalidInput("dyadic: value exceeds 1");
}

Rational Dyadic::value() const { return Rational(k_, BigInt(1) << l_); }

std::string Dyadic::str() const {
  if (l_ == 0) return k_.str();
  return k_.str() + "/" + (BigInt(1) << l_).str();
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  const int l = std::max(a.l_, b.l_);
  return Dyadic((a.k_ << (l - a.l_)) + (b.k_ << (l - b.l_)), l);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
  const int l = std::max(a.l_, b.l_);
  BigInt k = (a.k_ << (l - a.l_)) - (b.k_ << (l - b.l_));
  if (k < 0) throw InvalidInput("dyadic: negative difference");
  return Dyadic(std::move(k), l);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const BigInt lhs = a.k_ << b.l_;
  const BigInt rhs = b.k_ << a.l_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// -------------------------------------------------------- DyadicInterval --

bool DyadicInterval::valid() const {
  return l >= 0 && l <= 62 && k < (std::uint64_t{1} << l);
}

std::optional<DyadicInterval> DyadicInterval::intersect(const DyadicInterval& other) const {
  if (contains(other)) return other;
  if (other.contains(*this)) return *this;
  return std::nullopt;
}

Rational DyadicInterval::lower() const { return Rational(BigInt(k), BigInt(1) << l); }

bool DyadicInterval::contains_point(const Rational& x) const {
  if (x < 0 || x >= 1) return false;
  const Rational scaled = x * Rational(BigInt(1) << l);
  const BigInt floor = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
  return floor == BigInt(k);
}

std::strong_ordering operator<=>(const DyadicInterval& a, const DyadicInterval& b) {
  const int c = std::min(a.l, b.l);
  const std::uint64_t pa = a.k >> (a.l - c);
  const std::uint64_t pb = b.k >> (b.l - c);
  if (pa != pb) return pa <=> pb;
  return a.l <=> b.l;
}

// ----------------------------------------------------------------- Brick --

int Brick::level_sum() const {
  int total = 0;
  for (const auto& e : edges) total += e.l;
  return total;
}

bool Brick::elementary() const {
  return std::all_of(edges.begin(), edges.end(), [](const DyadicInterval& e) { return e.l <= 1; });
}

bool Brick::contains(const Brick& other) const {
  if (block != other.block || edges.size() != other.edges.size()) return false;
  for (std::size_t d = 0; d < edges.size(); ++d)
    if (!edges[d].contains(other.edges[d])) return false;
  return true;
}

bool Brick::intersects(const Brick& other) const {
  if (block != other.block || edges.size() != other.edges.size()) return false;
  for (std::size_t d = 0; d < edges.size(); ++d)
    if (!edges[d].intersects(other.edges[d])) return false;
  return true;
}

std::optional<Brick> Brick::intersect(const Brick& other) const {
  if (block != other.block || edges.size() != other.edges.size()) return std::nullopt;
  Brick out;
  out.block = block;
  out.edges.reserve(edges.size());
  for (std::size_t d = 0; d < edges.size(); ++d) {
    auto e = edges[d].intersect(other.edges[d]);
    if (!e) return std::nullopt;
    out.edges.push_back(*e);
  }
  return out;
}

bool Brick::contains_point(int point_block, std::span<const Rational> x) const {
  if (point_block != block || x.size() != edges.size()) return false;
  for (std::size_t d = 0; d < edges.size(); ++d)
    if (!edges[d].contains_point(x[d])) return false;
  return true;
}

std::strong_ordering compare_region(const Brick& a, const Brick& b) {
  if (auto c = a.block <=> b.block; c != 0) return c;
  const std::size_t n = std::min(a.edges.size(), b.edges.size());
  for (std::size_t d = 0; d < n; ++d)
    if (auto c = a.edges[d] <=> b.edges[d]; c != 0) return c;
  return a.edges.size() <=> b.edges.size();
}

bool canonical_less(const Brick& a, const Brick& b) {
  if (auto c = compare_region(a, b); c != 0) return c < 0;
  return a.label < b.label;
}

bool operator==(const Brick& a, const Brick& b) { return a.same_region(b) && a.label == b.label; }

std::string to_string(const Brick& b) {
  std::ostringstream os;
  os << "B" << b.block;
  if (b.label) os << "#" << *b.label;
  os << "[";
  for (std::size_t d = 0; d < b.edges.size(); ++d) {
    const auto& e = b.edges[d];
    if (d) os << " x ";
    os << "[" << Dyadic(e.k, e.l).str() << "," << Dyadic(e.k + 1, e.l).str() << ")";
  }
  os << "]";
  return os.str();
}

// -------------------------------------------------------------- Covering --

void Covering::sort() { std::sort(bricks.begin(), bricks.end(), canonical_less); }

std::vector<Brick> Covering::block_bricks(int block) const {
  std::vector<Brick> out;
  for (const auto& b : bricks)
    if (b.block == block) out.push_back(b);
  return out;
}

bool operator==(const Covering& a, const Covering& b) {
  if (a.s != b.s || a.m != b.m || a.bricks.size() != b.bricks.size()) return false;
  auto x = a.bricks;
  auto y = b.bricks;
  std::sort(x.begin(), x.end(), canonical_less);
  std::sort(y.begin(), y.end(), canonical_less);
  return x == y;
}

Covering canonical(Covering c) {
  c.sort();
  return c;
}

Covering strip_labels(Covering c) {
  for (auto& b : c.bricks) b.label.reset();
  c.sort();
  return c;
}

std::string to_string(const Covering& c) {
  std::ostringstream os;
  os << "{s=" << c.s << " m=" << c.m << ":";
  for (const auto& b : c.bricks) os << " " << to_string(b);
  os << "}";
  return os.str();
}

Covering trivial_covering(int s, int m) {
  if (s < 1 || m < 1) throw InvalidInput("trivial_covering: s and m must be positive");
  Covering c{s, m, {}};
  for (int block = 1; block <= m; ++block)
    c.bricks.push_back(Brick{block, std::nullopt, std::vector<DyadicInterval>(s, DyadicInterval::unit())});
  return c;
}

Covering maximal_elementary(int s, int m) {
  if (s < 1 || m < 1) throw InvalidInput("maximal_elementary: s and m must be positive");
  if (s > 20) throw GuardExceeded("maximal_elementary: s too large");
  Covering c{s, m, {}};
  for (int block = 1; block <= m; ++block) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << s); ++bits) {
      Brick b{block, std::nullopt, {}};
      for (int d = 0; d < s; ++d) b.edges.push_back(DyadicInterval{1, (bits >> (s - 1 - d)) & 1u});
      c.bricks.push_back(std::move(b));
    }
  }
  c.sort();
  return c;
}

CoveringVerdict validate_covering(const Covering& c) {
  CoveringVerdict v;
  auto fail = [&v](std::string reason) {
    v.valid = false;
    v.reason = std::move(reason);
    return v;
  };
  if (c.s < 1) return fail("dimension s must be positive");
  if (c.m < 1) return fail("block count m must be positive");
  if (c.bricks.empty()) return fail("covering has no bricks");

  const bool labeled = c.bricks.front().label.has_value();
  std::vector<int> labels;
  for (std::size_t i = 0; i < c.bricks.size(); ++i) {
    const Brick& b = c.bricks[i];
    if (b.dim() != c.s) return fail("brick " + std::to_string(i) + " has wrong number of edges");
    if (b.block < 1 || b.block > c.m) return fail("brick " + std::to_string(i) + " has block outside 1..m");
    for (const auto& e : b.edges)
      if (!e.valid()) return fail("brick " + std::to_string(i) + " has an invalid interval");
    if (b.label.has_value() != labeled) return fail("covering mixes labeled and unlabeled bricks");
    if (labeled) labels.push_back(*b.label);
  }
  if (labeled) {
    std::sort(labels.begin(), labels.end());
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] != static_cast<int>(i) + 1) return fail("labels are not a bijection with 1..n");
  }

  std::vector<std::vector<std::size_t>> by_block(c.m + 1);
  for (std::size_t i = 0; i < c.bricks.size(); ++i) by_block[c.bricks[i].block].push_back(i);
  for (int block = 1; block <= c.m; ++block) {
    if (by_block[block].empty()) {
      v.missing_block = block;
      return fail("block " + std::to_string(block) + " has no bricks");
    }
  }
  for (int block = 1; block <= c.m; ++block) {
    const auto& idx = by_block[block];
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b)
        if (c.bricks[idx[a]].intersects(c.bricks[idx[b]])) {
          v.overlap = std::make_pair(idx[a], idx[b]);
          return fail("bricks " + std::to_string(idx[a]) + " and " + std::to_string(idx[b]) + " overlap");
        }
  }
  for (int block = 1; block <= c.m; ++block) {
    Dyadic total;
    for (std::size_t i : by_block[block]) total = total + c.bricks[i].volume();
    if (total != Dyadic::one()) {
      v.deficit_block = block;
      v.deficit = Dyadic::one() - total;
      return fail("block " + std::to_string(block) + " has volume deficit " + v.deficit->str());
    }
  }
  return v;
}

void require_valid(const Covering& c) {
  if (auto v = validate_covering(c); !v) throw InvalidInput("invalid covering: " + v.reason);
}

namespace {

void require_same_space(const Covering& u, const Covering& v, const char* op) {
  if (u.s != v.s) throw InvalidInput(std::string(op) + ": dimension mismatch");
  if (u.m != v.m) throw InvalidInput(std::string(op) + ": block count mismatch");
}

}  // namespace

bool refines(const Covering& u, const Covering& v) {
  require_same_space(u, v, "refines");
  for (const auto& a : u.bricks) {
    bool inside = false;
    for (const auto& b : v.bricks)
      if (b.contains(a)) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  return true;
}

std::vector<JoinPiece> join_pieces(const Covering& u, const Covering& v) {
  require_same_space(u, v, "join");
  std::vector<std::vector<std::size_t>> v_by_block(u.m + 1);
  for (std::size_t j = 0; j < v.bricks.size(); ++j) v_by_block.at(v.bricks[j].block).push_back(j);
  std::vector<JoinPiece> out;
  for (std::size_t i = 0; i < u.bricks.size(); ++i) {
    for (std::size_t j : v_by_block.at(u.bricks[i].block)) {
      if (auto x = u.bricks[i].intersect(v.bricks[j])) out.push_back({std::move(*x), i, j});
    }
  }
  return out;
}

Covering join(const Covering& u, const Covering& v) {
  Covering out{u.s, u.m, {}};
  for (auto& p : join_pieces(u, v)) out.bricks.push_back(std::move(p.brick));
  out.sort();
  return out;
}

Brick bounding_brick(std::span<const Brick> bricks) {
  if (bricks.empty()) throw InvalidInput("bounding_brick: empty input");
  Brick out{bricks.front().block, std::nullopt, bricks.front().edges};
  for (const auto& b : bricks.subspan(1)) {
    if (b.block != out.block) throw InvalidInput("bounding_brick: bricks in different blocks");
    if (b.dim() != out.dim()) throw InvalidInput("bounding_brick: dimension mismatch");
    for (std::size_t d = 0; d < out.edges.size(); ++d) {
      DyadicInterval& acc = out.edges[d];
      const DyadicInterval& e = b.edges[d];
      int c = std::min(acc.l, e.l);
      while ((acc.k >> (acc.l - c)) != (e.k >> (e.l - c))) --c;
      acc = acc.ancestor(c);
    }
  }
  return out;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

// Meet restricted to one block; u_items and v_items tile the same block.
std::vector<Brick> meet_block(const std::vector<Brick>& u_items, const std::vector<Brick>& v_items) {
  std::vector<Brick> items = u_items;
  items.insert(items.end(), v_items.begin(), v_items.end());
  const std::size_t nu = u_items.size();
  DisjointSets sets(items.size());
  for (std::size_t a = 0; a < nu; ++a)
    for (std::size_t b = nu; b < items.size(); ++b)
      if (items[a].intersects(items[b])) sets.unite(a, b);

  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::vector<std::size_t>> groups(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) groups[sets.find(i)].push_back(i);
    for (const auto& g : groups) {
      if (g.empty()) continue;
      std::vector<Brick> members;
      Dyadic u_volume;
      for (std::size_t i : g) {
        members.push_back(items[i]);
        if (i < nu) u_volume = u_volume + items[i].volume();
      }
      const Brick box = bounding_brick(members);
      if (u_volume == box.volume()) continue;
      for (std::size_t i = 0; i < items.size(); ++i)
        if (box.intersects(items[i]) && sets.unite(g.front(), i)) changed = true;
    }
  }

  std::vector<std::vector<Brick>> groups(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) groups[sets.find(i)].push_back(items[i]);
  std::vector<Brick> out;
  for (const auto& g : groups)
    if (!g.empty()) out.push_back(bounding_brick(g));
  return out;
}

}  // namespace

Covering meet(const Covering& u, const Covering& v) {
  require_same_space(u, v, "meet");
  Covering out{u.s, u.m, {}};
  for (int block = 1; block <= u.m; ++block) {
    auto ub = strip_labels(Covering{u.s, u.m, u.block_bricks(block)}).bricks;
    auto vb = strip_labels(Covering{v.s, v.m, v.block_bricks(block)}).bricks;
    for (auto& b : meet_block(ub, vb)) out.bricks.push_back(std::move(b));
  }
  out.sort();
  return out;
}

namespace {

bool covering_less(const Covering& a, const Covering& b) {
  return std::lexicographical_compare(a.bricks.begin(), a.bricks.end(), b.bricks.begin(), b.bricks.end(),
                                      canonical_less);
}

// All groupings of one block's bricks into sub-bricks.
void coarsen_block(const std::vector<Brick>& bricks, std::vector<bool>& used, std::vector<Brick>& current,
                   std::vector<std::vector<Brick>>& out) {
  std::size_t first = 0;
  while (first < bricks.size() && used[first]) ++first;
  if (first == bricks.size()) {
    out.push_back(current);
    return;
  }
  const Brick& seed = bricks[first];
  const int s = seed.dim();
  std::vector<int> level(s, 0);
  while (true) {
    Brick candidate{seed.block, std::nullopt, {}};
    for (int d = 0; d < s; ++d) candidate.edges.push_back(seed.edges[d].ancestor(level[d]));
    std::vector<std::size_t> members;
    bool ok = true;
    for (std::size_t j = 0; j < bricks.size() && ok; ++j) {
      if (!candidate.intersects(bricks[j])) continue;
      if (used[j] || !candidate.contains(bricks[j])) ok = false;
      else members.push_back(j);
    }
    if (ok) {
      for (std::size_t j : members) used[j] = true;
      current.push_back(candidate);
      coarsen_block(bricks, used, current, out);
      current.pop_back();
      for (std::size_t j : members) used[j] = false;
    }
    int d = s - 1;
    while (d >= 0 && level[d] == seed.edges[d].l) level[d--] = 0;
    if (d < 0) break;
    ++level[d];
  }
}

}  // namespace

std::vector<Covering> enumerate_coarsenings(const Covering& u, const Guards& guards) {
  if (u.size() > guards.max_coarsening_bricks)
    throw GuardExceeded("enumerate_coarsenings: " + std::to_string(u.size()) + " bricks exceeds bound " +
                        std::to_string(guards.max_coarsening_bricks));
  std::vector<Covering> result{Covering{u.s, u.m, {}}};
  for (int block = 1; block <= u.m; ++block) {
    auto bricks = strip_labels(Covering{u.s, u.m, u.block_bricks(block)}).bricks;
    std::vector<bool> used(bricks.size(), false);
    std::vector<Brick> current;
    std::vector<std::vector<Brick>> options;
    coarsen_block(bricks, used, current, options);
    std::vector<Covering> next;
    next.reserve(result.size() * options.size());
    for (const auto& partial : result) {
      for (const auto& opt : options) {
        Covering c = partial;
        c.bricks.insert(c.bricks.end(), opt.begin(), opt.end());
        next.push_back(std::move(c));
      }
    }
    result = std::move(next);
  }
  for (auto& c : result) c.sort();
  std::sort(result.begin(), result.end(), covering_less);
  return result;
}

CoveringClass classify(const Covering& c) {
  const Covering sorted = canonical(c);
  CoveringClass out;
  out.elementary = refines(maximal_elementary(c.s, c.m), c);
  const bool by_edges =
      std::all_of(sorted.bricks.begin(), sorted.bricks.end(), [](const Brick& b) { return b.elementary(); });
  if (out.elementary != by_edges)
    throw std::logic_error("classify: refinement and edge-length characterizations disagree");
  out.very_elementary = out.elementary && std::all_of(sorted.bricks.begin(), sorted.bricks.end(),
                                                      [](const Brick& b) { return b.very_elementary(); });
  for (const auto& b : sorted.bricks) out.volumes.push_back(b.volume());
  return out;
}

std::vector<Covering> enumerate_elementary(int s, bool labeled, std::optional<int> n, const Guards& guards) {
  if (s < 1) throw InvalidInput("enumerate_elementary: s must be positive");
  if (s > guards.max_exhaustive_s)
    throw GuardExceeded("enumerate_elementary: s = " + std::to_string(s) + " exceeds bound " +
                        std::to_string(guards.max_exhaustive_s));
  Guards local = guards;
  local.max_coarsening_bricks = std::max<std::size_t>(local.max_coarsening_bricks, std::size_t{1} << s);
  std::vector<Covering> shapes;
  for (auto& c : enumerate_coarsenings(maximal_elementary(s, 1), local))
    if (!n || static_cast<int>(c.size()) == *n) shapes.push_back(std::move(c));
  if (!labeled) return shapes;

  std::vector<Covering> out;
  for (const auto& shape : shapes) {
    std::vector<int> perm(shape.size());
    std::iota(perm.begin(), perm.end(), 1);
    do {
      Covering c = shape;
      for (std::size_t i = 0; i < perm.size(); ++i) c.bricks[i].label = perm[i];
      out.push_back(std::move(c));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

Brick transfer(const Brick& sub, const Brick& from, const Brick& to, const Guards& guards) {
  if (sub.dim() != from.dim() || from.dim() != to.dim()) throw InvalidInput("transfer: dimension mismatch");
  Brick out{to.block, to.label, {}};
  out.edges.reserve(sub.edges.size());
  for (std::size_t d = 0; d < sub.edges.size(); ++d) {
    const DyadicInterval& e = sub.edges[d];
    const DyadicInterval& f = from.edges[d];
    const DyadicInterval& t = to.edges[d];
    const int depth = e.l - f.l;
    if (depth < 0 || (e.k >> depth) != f.k) throw InvalidInput("transfer: brick is not inside its source");
    const int level = t.l + depth;
    if (level > guards.max_level)
      throw GuardExceeded("transfer: dyadic exponent " + std::to_string(level) + " exceeds bound " +
                          std::to_string(guards.max_level));
    const std::uint64_t rest = e.k - (f.k << depth);
    out.edges.push_back(DyadicInterval{level, (t.k << depth) + rest});
  }
  return out;
}

std::pair<Brick, Brick> bisect(const Brick& b, int d) {
  if (d < 0 || d >= b.dim()) throw InvalidInput("bisect: dimension out of range");
  Brick lo = b;
  Brick hi = b;
  lo.label.reset();
  hi.label.reset();
  lo.edges[d] = b.edges[d].child(0);
  hi.edges[d] = b.edges[d].child(1);
  return {lo, hi};
}

}  // namespace steinforge
