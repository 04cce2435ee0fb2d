#include "steinforge/complexes.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "steinforge/error.hpp"

namespace steinforge {

// ------------------------------------------------------------------ posets --

FinitePoset::FinitePoset(std::vector<std::vector<std::size_t>> above) {
  const std::size_t n = above.size();
  for (const auto& row : above)
    for (std::size_t j : row)
      if (j >= n) throw InvalidInput("poset: relation refers to element " + std::to_string(j));

  above_.resize(n);
  std::vector<std::size_t> stamp(n, n);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < n; ++i) {
    auto& out = above_[i];
    stack.assign(above[i].begin(), above[i].end());
    while (!stack.empty()) {
      const std::size_t j = stack.back();
      stack.pop_back();
      if (stamp[j] == i) continue;
      stamp[j] = i;
      if (j == i) throw InvalidInput("poset: relation has a cycle through element " + std::to_string(i));
      out.push_back(j);
      for (std::size_t k : above[j])
        if (stamp[k] != i) stack.push_back(k);
    }
    std::sort(out.begin(), out.end());
  }
  below_.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j : above_[i]) below_[j].push_back(i);
}

FinitePoset FinitePoset::from_oracle(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& less) {
  std::vector<std::vector<std::size_t>> above(n);
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && less(i, j)) {
        above[i].push_back(j);
        ++pairs;
      }
  FinitePoset p(std::move(above));
  if (p.relation_size() != pairs) throw InvalidInput("poset: oracle relation is not transitive");
  return p;
}

bool FinitePoset::less(std::size_t a, std::size_t b) const {
  return std::binary_search(above_[a].begin(), above_[a].end(), b);
}

std::size_t FinitePoset::relation_size() const {
  std::size_t r = 0;
  for (const auto& row : above_) r += row.size();
  return r;
}

FinitePoset FinitePoset::induced(std::span<const std::size_t> keep) const {
  std::vector<std::size_t> position(size(), size());
  for (std::size_t i = 0; i < keep.size(); ++i) position.at(keep[i]) = i;
  std::vector<std::vector<std::size_t>> above(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j : above_[keep[i]])
      if (position[j] != size()) above[i].push_back(position[j]);
  return FinitePoset(std::move(above));
}

FinitePoset FinitePoset::opposite() const { return FinitePoset(below_); }

// ------------------------------------------------------ simplicial complex --

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull ^ s.size();
  for (int v : s) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

void SimplicialComplex::add_closed(Simplex s) {
  if (s.empty()) throw InvalidInput("simplicial complex: empty simplex");
  const int d = static_cast<int>(s.size()) - 1;
  if (cap_ && d > *cap_) return;
  if (static_cast<int>(by_dim_.size()) <= d) {
    by_dim_.resize(d + 1);
    index_.resize(d + 1);
  }
  auto [it, inserted] = index_[d].emplace(s, by_dim_[d].size());
  if (inserted) by_dim_[d].push_back(std::move(s));
}

void SimplicialComplex::add(Simplex s) {
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InvalidInput("simplicial complex: repeated vertex");
  if (s.empty()) throw InvalidInput("simplicial complex: empty simplex");
  if (contains(s)) return;
  if (s.size() > 1) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex face;
      face.reserve(s.size() - 1);
      for (std::size_t j = 0; j < s.size(); ++j)
        if (j != i) face.push_back(s[j]);
      add(std::move(face));
    }
  }
  add_closed(std::move(s));
}

std::size_t SimplicialComplex::count(int d) const {
  return d >= 0 && d < static_cast<int>(by_dim_.size()) ? by_dim_[d].size() : 0;
}

std::size_t SimplicialComplex::total() const {
  std::size_t t = 0;
  for (const auto& v : by_dim_) t += v.size();
  return t;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int d) const {
  static const std::vector<Simplex> none;
  return d >= 0 && d < static_cast<int>(by_dim_.size()) ? by_dim_[d] : none;
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
  const int d = static_cast<int>(s.size()) - 1;
  if (d < 0 || d >= static_cast<int>(index_.size())) return std::nullopt;
  auto it = index_[d].find(s);
  if (it == index_[d].end()) return std::nullopt;
  return it->second;
}

bool SimplicialComplex::contains(const Simplex& s) const { return index_of(s).has_value(); }

std::vector<int> SimplicialComplex::vertices() const {
  std::vector<int> out;
  for (const auto& s : simplices(0)) out.push_back(s[0]);
  std::sort(out.begin(), out.end());
  return out;
}

SimplicialComplex SimplicialComplex::skeleton(int max_dim) const {
  SimplicialComplex out(max_dim);
  for (int d = 0; d <= std::min(max_dim, dim()); ++d)
    for (const auto& s : by_dim_[d]) out.add_closed(s);
  return out;
}

SimplicialComplex SimplicialComplex::induced(std::span<const int> vertex_set) const {
  std::vector<int> keep(vertex_set.begin(), vertex_set.end());
  std::sort(keep.begin(), keep.end());
  SimplicialComplex out(cap_);
  for (int d = 0; d <= dim(); ++d)
    for (const auto& s : by_dim_[d])
      if (std::all_of(s.begin(), s.end(), [&](int v) { return std::binary_search(keep.begin(), keep.end(), v); }))
        out.add_closed(s);
  return out;
}

bool SimplicialComplex::subcomplex_of(const SimplicialComplex& other) const {
  for (int d = 0; d <= dim(); ++d)
    for (const auto& s : by_dim_[d])
      if (!other.contains(s)) return false;
  return true;
}

bool SimplicialComplex::same_simplices(const SimplicialComplex& other) const {
  if (total() != other.total()) return false;
  return subcomplex_of(other);
}

SimplicialComplex SimplicialComplex::relabel(const std::function<int(int)>& f) const {
  SimplicialComplex out(cap_);
  for (int d = 0; d <= dim(); ++d)
    for (const auto& s : by_dim_[d]) {
      Simplex t;
      t.reserve(s.size());
      for (int v : s) t.push_back(f(v));
      std::sort(t.begin(), t.end());
      if (std::adjacent_find(t.begin(), t.end()) != t.end())
        throw InvalidInput("relabel: vertex map is not injective");
      out.add_closed(std::move(t));
    }
  return out;
}

bool SimplicialComplex::well_formed() const {
  for (int d = 0; d <= dim(); ++d) {
    for (const auto& s : by_dim_[d]) {
      if (static_cast<int>(s.size()) != d + 1) return false;
      if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
      if (d == 0) continue;
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex face(s);
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        if (!contains(face)) return false;
      }
    }
  }
  return true;
}

SimplicialComplex order_complex(const FinitePoset& p, std::optional<int> max_dim, const Guards& guards) {
  std::vector<std::vector<Simplex>> chains;
  std::size_t produced = 0;
  Simplex chain;
  const int cap = max_dim.value_or(std::numeric_limits<int>::max());
  std::function<void(std::size_t)> extend = [&](std::size_t last) {
    const int d = static_cast<int>(chain.size()) - 1;
    if (static_cast<int>(chains.size()) <= d) chains.resize(d + 1);
    Simplex sorted = chain;
    std::sort(sorted.begin(), sorted.end());
    chains[d].push_back(std::move(sorted));
    if (++produced > guards.max_simplices)
      throw GuardExceeded("order_complex: more than " + std::to_string(guards.max_simplices) + " simplices");
    if (d >= cap) return;
    for (std::size_t next : p.above(last)) {
      chain.push_back(static_cast<int>(next));
      extend(next);
      chain.pop_back();
    }
  };
  for (std::size_t v = 0; v < p.size(); ++v) {
    chain.assign(1, static_cast<int>(v));
    extend(v);
  }
  SimplicialComplex out(max_dim);
  for (auto& level : chains) {
    std::sort(level.begin(), level.end());
    for (auto& s : level) out.add_closed(std::move(s));
  }
  return out;
}

SimplicialComplex join_complex(const SimplicialComplex& k, const SimplicialComplex& l) {
  const auto kv = k.vertices();
  for (int v : l.vertices())
    if (std::binary_search(kv.begin(), kv.end(), v)) throw InvalidInput("join: vertex sets overlap");
  std::optional<int> cap;
  if (k.truncated() || l.truncated())
    cap = std::min(k.truncated().value_or(std::numeric_limits<int>::max()),
                   l.truncated().value_or(std::numeric_limits<int>::max()));
  std::vector<std::vector<Simplex>> levels(std::max(0, k.dim() + l.dim() + 2));
  auto emit = [&](const Simplex* a, const Simplex* b) {
    Simplex s;
    if (a) s.insert(s.end(), a->begin(), a->end());
    if (b) s.insert(s.end(), b->begin(), b->end());
    std::sort(s.begin(), s.end());
    levels[s.size() - 1].push_back(std::move(s));
  };
  for (int d = 0; d <= k.dim(); ++d)
    for (const auto& a : k.simplices(d)) emit(&a, nullptr);
  for (int d = 0; d <= l.dim(); ++d)
    for (const auto& b : l.simplices(d)) emit(nullptr, &b);
  for (int d = 0; d <= k.dim(); ++d)
    for (const auto& a : k.simplices(d))
      for (int e = 0; e <= l.dim(); ++e)
        for (const auto& b : l.simplices(e)) emit(&a, &b);
  SimplicialComplex out(cap);
  for (auto& level : levels)
    for (auto& s : level) out.add_closed(std::move(s));
  return out;
}

// ------------------------------------------------------------ dense Smith --

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// Smith reduction of d in place; row operations are mirrored into u and
// column operations into v when they are non-null.
std::vector<BigInt> smith_reduce(IntMatrix& d, IntMatrix* u, IntMatrix* v) {
  const std::size_t rows = d.size();
  const std::size_t cols = rows ? d[0].size() : 0;
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap(d[a], d[b]);
    if (u) std::swap((*u)[a], (*u)[b]);
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : d) std::swap(row[a], row[b]);
    if (v)
      for (auto& row : *v) std::swap(row[a], row[b]);
  };
  // row[a] -= q * row[b]
  auto row_axpy = [&](std::size_t a, std::size_t b, const BigInt& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < cols; ++j) d[a][j] -= q * d[b][j];
    if (u)
      for (std::size_t j = 0; j < rows; ++j) (*u)[a][j] -= q * (*u)[b][j];
  };
  // col[a] -= q * col[b]
  auto col_axpy = [&](std::size_t a, std::size_t b, const BigInt& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < rows; ++i) d[i][a] -= q * d[i][b];
    if (v)
      for (std::size_t i = 0; i < cols; ++i) (*v)[i][a] -= q * (*v)[i][b];
  };

  std::vector<BigInt> invariants;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry of the remaining block.
    std::optional<std::pair<std::size_t, std::size_t>> pos;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (d[i][j] != 0 && (!pos || abs(d[i][j]) < abs(d[pos->first][pos->second]))) pos = {i, j};
    if (!pos) break;
    swap_rows(t, pos->first);
    swap_cols(t, pos->second);

    while (true) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d[i][t] == 0) continue;
        row_axpy(i, t, floor_div(d[i][t], d[t][t]));
        if (d[i][t] != 0) {
          dirty = true;
          if (abs(d[i][t]) < abs(d[t][t])) swap_rows(t, i);
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d[t][j] == 0) continue;
        col_axpy(j, t, floor_div(d[t][j], d[t][t]));
        if (d[t][j] != 0) {
          dirty = true;
          if (abs(d[t][j]) < abs(d[t][t])) swap_cols(t, j);
        }
      }
      if (dirty) continue;
      // Pivot must divide the rest of the block.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < rows && !offender; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d[i][j] % d[t][t] != 0) {
            offender = i;
            break;
          }
      if (!offender) break;
      row_axpy(t, *offender, BigInt(-1));
    }
    if (d[t][t] < 0) {
      for (std::size_t j = 0; j < cols; ++j) d[t][j] = -d[t][j];
      if (u)
        for (std::size_t j = 0; j < rows; ++j) (*u)[t][j] = -(*u)[t][j];
    }
    invariants.push_back(d[t][t]);
  }
  return invariants;
}

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (const auto& row : m)
    if (row.size() != cols) throw InvalidInput("smith_normal_form: ragged matrix");
  SmithResult r{{}, identity_matrix(rows), identity_matrix(cols), m};
  r.invariants = smith_reduce(r.d, &r.u, &r.v);
  if (multiply(multiply(r.u, m), r.v) != r.d) throw std::logic_error("smith_normal_form: certificate mismatch");
  return r;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = k ? b[0].size() : 0;
  IntMatrix out(n, std::vector<BigInt>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw InvalidInput("multiply: dimension mismatch");
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  }
  return out;
}

bool unimodular(const IntMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) return false;
  if (n == 0) return true;
  // Bareiss elimination: the last pivot is the determinant.
  IntMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return false;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return abs(a[n - 1][n - 1]) == 1;
}

// ----------------------------------------------------------- sparse Smith --

namespace {

struct Overflow {};

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline BigInt checked_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt checked_sub(const BigInt& a, const BigInt& b) { return a - b; }
inline bool is_unit(std::int64_t a) { return a == 1 || a == -1; }
inline bool is_unit(const BigInt& a) { return a == 1 || a == -1; }

// Eliminates unit pivots (cheapest column first), then hands whatever is left
// to the dense reduction.
template <class T>
std::vector<BigInt> sparse_smith(const SparseMatrix& m) {
  using Row = std::vector<std::pair<std::size_t, T>>;
  std::vector<Row> rows(m.rows);
  for (const auto& e : m.entries) {
    if (e.row >= m.rows || e.col >= m.cols) throw InvalidInput("sparse matrix: entry out of range");
    if (e.value != 0) rows[e.row].emplace_back(e.col, T(e.value));
  }
  std::vector<std::vector<std::size_t>> col_rows(m.cols);
  std::vector<std::size_t> col_count(m.cols, 0);
  for (std::size_t r = 0; r < m.rows; ++r) {
    auto& row = rows[r];
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    // merge duplicate coordinates
    Row merged;
    for (auto& [c, v] : row) {
      if (!merged.empty() && merged.back().first == c) merged.back().second = merged.back().second + v;
      else merged.emplace_back(c, v);
    }
    std::erase_if(merged, [](const auto& p) { return p.second == 0; });
    row = std::move(merged);
    for (const auto& [c, v] : row) {
      col_rows[c].push_back(r);
      ++col_count[c];
    }
  }
  auto find_in = [](const Row& row, std::size_t c) -> const T* {
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& p, std::size_t x) { return p.first < x; });
    return it != row.end() && it->first == c ? &it->second : nullptr;
  };

  std::vector<bool> row_alive(m.rows, true);
  std::vector<bool> col_alive(m.cols, true);
  using Item = std::pair<std::size_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (std::size_t c = 0; c < m.cols; ++c) heap.emplace(col_count[c], c);

  std::size_t units = 0;
  Row scratch;
  while (!heap.empty()) {
    auto [cnt, c] = heap.top();
    heap.pop();
    if (!col_alive[c] || cnt != col_count[c]) continue;
    if (cnt == 0) {
      col_alive[c] = false;
      continue;
    }
    // Compact the candidate list and pick the sparsest row with a unit entry.
    auto& cand = col_rows[c];
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::erase_if(cand, [&](std::size_t r) { return !row_alive[r] || find_in(rows[r], c) == nullptr; });
    std::optional<std::size_t> pivot;
    for (std::size_t r : cand) {
      if (is_unit(*find_in(rows[r], c)) && (!pivot || rows[r].size() < rows[*pivot].size())) pivot = r;
    }
    if (!pivot) continue;  // revisited if a later update touches this column
    const std::size_t pr = *pivot;
    const Row prow = rows[pr];
    const T p = *find_in(prow, c);
    std::vector<std::size_t> touched;
    for (std::size_t r : cand) {
      if (r == pr) continue;
      Row& row = rows[r];
      const T factor = checked_mul(*find_in(row, c), p);  // p = +-1, so a / p = a * p
      scratch.clear();
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < row.size() || j < prow.size()) {
        if (j == prow.size() || (i < row.size() && row[i].first < prow[j].first)) {
          scratch.push_back(row[i++]);
        } else if (i == row.size() || prow[j].first < row[i].first) {
          const std::size_t col = prow[j].first;
          scratch.emplace_back(col, checked_sub(T(0), checked_mul(factor, prow[j].second)));
          col_rows[col].push_back(r);
          ++col_count[col];
          touched.push_back(col);
          ++j;
        } else {
          const std::size_t col = row[i].first;
          T value = checked_sub(row[i].second, checked_mul(factor, prow[j].second));
          if (value == 0) {
            --col_count[col];
          } else {
            scratch.emplace_back(col, std::move(value));
          }
          touched.push_back(col);
          ++i;
          ++j;
        }
      }
      row.swap(scratch);
    }
    for (const auto& [col, v] : prow) {
      --col_count[col];
      touched.push_back(col);
    }
    row_alive[pr] = false;
    rows[pr].clear();
    col_alive[c] = false;
    ++units;
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (std::size_t col : touched)
      if (col_alive[col]) heap.emplace(col_count[col], col);
  }

  // Dense remainder.
  std::vector<std::size_t> live_rows;
  std::vector<std::size_t> col_pos(m.cols, m.cols);
  std::size_t live_cols = 0;
  for (std::size_t r = 0; r < m.rows; ++r) {
    if (!row_alive[r] || rows[r].empty()) continue;
    live_rows.push_back(r);
    for (const auto& [c, v] : rows[r])
      if (col_pos[c] == m.cols) col_pos[c] = live_cols++;
  }
  std::vector<BigInt> out(units, BigInt(1));
  if (!live_rows.empty()) {
    IntMatrix dense(live_rows.size(), std::vector<BigInt>(live_cols, 0));
    for (std::size_t i = 0; i < live_rows.size(); ++i)
      for (const auto& [c, v] : rows[live_rows[i]]) dense[i][col_pos[c]] = BigInt(v);
    for (auto& x : smith_reduce(dense, nullptr, nullptr)) out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<BigInt> smith_invariants(const SparseMatrix& m) {
  try {
    return sparse_smith<std::int64_t>(m);
  } catch (const Overflow&) {
    return sparse_smith<BigInt>(m);
  }
}

SparseMatrix boundary_matrix(const SimplicialComplex& k, int dim, bool reduced) {
  SparseMatrix m;
  if (dim == 0) {
    m.cols = k.count(0);
    m.rows = reduced ? 1 : 0;
    if (reduced)
      for (std::size_t j = 0; j < m.cols; ++j) m.entries.push_back({0, j, 1});
    return m;
  }
  m.cols = k.count(dim);
  m.rows = k.count(dim - 1);
  const auto& simplices = k.simplices(dim);
  Simplex face;
  for (std::size_t j = 0; j < simplices.size(); ++j) {
    const auto& s = simplices[j];
    for (std::size_t i = 0; i < s.size(); ++i) {
      face.assign(s.begin(), s.end());
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
      auto row = k.index_of(face);
      if (!row) throw InvalidInput("boundary_matrix: complex is not closed under faces");
      m.entries.push_back({*row, j, (i % 2 == 0) ? 1 : -1});
    }
  }
  return m;
}

// --------------------------------------------------------------- homology --

std::string HomologyGroup::str() const {
  std::ostringstream os;
  bool first = true;
  if (betti > 0) {
    os << "Z";
    if (betti > 1) os << "^" << betti;
    first = false;
  }
  for (const auto& t : torsion) {
    if (!first) os << " + ";
    os << "Z/" << t;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

const HomologyGroup* HomologyReport::at(int dim) const {
  for (const auto& g : groups)
    if (g.dim == dim) return &g;
  return nullptr;
}

int HomologyReport::connectivity() const {
  if (empty) return -2;
  int k = -1;
  for (const auto& g : groups) {
    if (g.dim != k + 1 || !g.trivial()) break;
    k = g.dim;
  }
  return k;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::size_t count_components(const SimplicialComplex& k) {
  const auto& verts = k.simplices(0);
  DisjointSets sets(verts.size());
  for (const auto& e : k.simplices(1)) sets.unite(*k.index_of({e[0]}), *k.index_of({e[1]}));
  std::size_t c = 0;
  for (std::size_t i = 0; i < verts.size(); ++i) c += sets.find(i) == i ? 1 : 0;
  return c;
}

int degree_limit(const SimplicialComplex& k, std::optional<int> through) {
  // A complex truncated at cap is exact below cap unless nothing reached it.
  std::optional<int> reliable;
  if (k.truncated() && k.dim() >= *k.truncated()) reliable = *k.truncated() - 1;
  const int want = through ? *through : (reliable ? std::min(*reliable, k.dim()) : k.dim());
  if (reliable && want > *reliable)
    throw InvalidInput("homology: complex truncated at dimension " + std::to_string(*k.truncated()) +
                       " cannot determine degree " + std::to_string(want));
  return std::max(want, -1);
}

// Betti numbers and torsion from the invariants of consecutive boundary maps.
// cells[d] = rank of C_d, inv[d] = invariants of d_d : C_d -> C_{d-1}.
HomologyReport assemble(int top, const std::vector<std::size_t>& cells, const std::vector<std::vector<BigInt>>& inv) {
  HomologyReport r;
  r.valid_through = top;
  for (int d = 0; d <= top; ++d) {
    HomologyGroup g;
    g.dim = d;
    const std::size_t n = d < static_cast<int>(cells.size()) ? cells[d] : 0;
    const std::size_t rank_out = d < static_cast<int>(inv.size()) ? inv[d].size() : 0;
    const std::size_t rank_in = d + 1 < static_cast<int>(inv.size()) ? inv[d + 1].size() : 0;
    if (rank_out + rank_in > n) throw std::logic_error("homology: rank exceeds chain group size");
    g.betti = n - rank_out - rank_in;
    if (d + 1 < static_cast<int>(inv.size()))
      for (const auto& x : inv[d + 1])
        if (x > 1) g.torsion.push_back(x);
    r.groups.push_back(std::move(g));
  }
  return r;
}

}  // namespace

HomologyReport homology(const SimplicialComplex& k, bool reduced, std::optional<int> through) {
  const int top = degree_limit(k, through);
  std::vector<std::size_t> cells;
  std::vector<std::vector<BigInt>> inv;
  for (int d = 0; d <= top + 1; ++d) {
    cells.push_back(k.count(d));
    if (d == 0) {
      inv.push_back(reduced && !k.empty() ? std::vector<BigInt>{1} : std::vector<BigInt>{});
    } else {
      inv.push_back(k.count(d) == 0 ? std::vector<BigInt>{} : smith_invariants(boundary_matrix(k, d)));
    }
  }
  HomologyReport r = assemble(top, cells, inv);
  r.reduced = reduced;
  r.empty = k.empty();
  r.components = count_components(k);
  if (top >= 0) {
    const std::size_t expect = reduced ? (r.components == 0 ? 0 : r.components - 1) : r.components;
    if (r.groups[0].betti != expect || !r.groups[0].torsion.empty())
      throw std::logic_error("homology: H_0 disagrees with the component count");
  }
  return r;
}

HomologyReport relative_homology(const SimplicialComplex& k, const SimplicialComplex& l, std::optional<int> through) {
  if (!l.subcomplex_of(k)) throw InvalidInput("relative_homology: L is not a subcomplex of K");
  const int top = degree_limit(k, through);
  // Relative cells: simplices of K not in L, re-indexed per dimension.
  std::vector<std::vector<std::size_t>> rel_index;
  std::vector<std::size_t> cells;
  for (int d = 0; d <= top + 1; ++d) {
    std::vector<std::size_t> idx(k.count(d), SIZE_MAX);
    std::size_t next = 0;
    const auto& simplices = k.simplices(d);
    for (std::size_t i = 0; i < simplices.size(); ++i)
      if (!l.contains(simplices[i])) idx[i] = next++;
    rel_index.push_back(std::move(idx));
    cells.push_back(next);
  }
  std::vector<std::vector<BigInt>> inv{{}};
  for (int d = 1; d <= top + 1; ++d) {
    SparseMatrix full = boundary_matrix(k, d);
    SparseMatrix rel;
    rel.rows = cells[d - 1];
    rel.cols = cells[d];
    for (const auto& e : full.entries) {
      const std::size_t r = rel_index[d - 1][e.row];
      const std::size_t c = rel_index[d][e.col];
      if (r != SIZE_MAX && c != SIZE_MAX) rel.entries.push_back({r, c, e.value});
    }
    inv.push_back(rel.cols == 0 ? std::vector<BigInt>{} : smith_invariants(rel));
  }
  HomologyReport r = assemble(top, cells, inv);
  r.reduced = false;
  r.empty = k.empty();
  return r;
}

bool boundary_squares_to_zero(const SimplicialComplex& k) {
  for (int d = 2; d <= k.dim(); ++d) {
    const SparseMatrix outer = boundary_matrix(k, d - 1);
    const SparseMatrix inner = boundary_matrix(k, d);
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> by_col(outer.cols);
    for (const auto& e : outer.entries) by_col[e.col].emplace_back(e.row, e.value);
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> inner_cols(inner.cols);
    for (const auto& e : inner.entries) inner_cols[e.col].emplace_back(e.row, e.value);
    std::unordered_map<std::size_t, std::int64_t> acc;
    for (const auto& col : inner_cols) {
      acc.clear();
      for (const auto& [mid, a] : col)
        for (const auto& [row, b] : by_col[mid]) acc[row] += a * b;
      for (const auto& [row, v] : acc)
        if (v != 0) return false;
    }
  }
  return true;
}

// ----------------------------------------------------------- connectivity --

namespace {

using QMatrix = std::vector<std::vector<Rational>>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& a) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

QMatrix dense_q(const SparseMatrix& m) {
  QMatrix a(m.rows, std::vector<Rational>(m.cols, 0));
  for (const auto& e : m.entries) a[e.row][e.col] += e.value;
  return a;
}

std::size_t rank_q(QMatrix a) { return rref(a).size(); }

// A rational d-cycle that is not a boundary, if the complex is small enough.
std::optional<std::vector<Rational>> rational_witness(const SimplicialComplex& k, int d) {
  constexpr std::size_t kLimit = 400;
  if (k.count(d) > kLimit || k.count(d + 1) > kLimit || k.count(d - 1) > kLimit) return std::nullopt;
  QMatrix outgoing = dense_q(boundary_matrix(k, d));
  const std::size_t n = k.count(d);
  const auto pivots = rref(outgoing);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  QMatrix image = dense_q(boundary_matrix(k, d + 1));
  // columns of `image` span B_d; compare ranks with a candidate appended
  QMatrix image_t(k.count(d + 1), std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k.count(d + 1); ++j) image_t[j][i] = image[i][j];
  const std::size_t base_rank = rank_q(image_t);
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> z(n, 0);
    z[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) z[pivots[r]] = -outgoing[r][free];
    QMatrix extended = image_t;
    extended.push_back(z);
    if (rank_q(extended) > base_rank) return z;
  }
  return std::nullopt;
}

}  // namespace

ConnectivityVerdict connectivity_report(const SimplicialComplex& k, int conn) {
  ConnectivityVerdict v;
  v.k = conn;
  v.nonempty = !k.empty();
  if (conn <= -2) {
    v.pass = true;
    v.reason = "every space is (-2)-connected";
    return v;
  }
  if (!v.nonempty) {
    v.reason = "complex is empty";
    v.failing_degree = -1;
    return v;
  }
  v.report = homology(k, true, std::max(conn, 0));
  v.connected = v.report.components == 1;
  if (conn == -1) {
    v.pass = true;
    v.reason = "nonempty";
    return v;
  }
  if (!v.connected) {
    v.failing_degree = 0;
    v.reason = std::to_string(v.report.components) + " connected components";
    // one vertex from each of two components
    const auto& edges = k.simplices(1);
    const auto& verts = k.simplices(0);
    DisjointSets sets(verts.size());
    for (const auto& e : edges) sets.unite(*k.index_of({e[0]}), *k.index_of({e[1]}));
    for (std::size_t i = 1; i < verts.size(); ++i)
      if (sets.find(i) != sets.find(0)) {
        v.separated = {verts[0][0], verts[i][0]};
        break;
      }
    return v;
  }
  for (const auto& g : v.report.groups) {
    if (g.dim > conn || g.trivial()) continue;
    v.failing_degree = g.dim;
    v.reason = "reduced H_" + std::to_string(g.dim) + " = " + g.str();
    if (g.betti > 0) {
      if (auto z = rational_witness(k, g.dim)) {
        const auto& simplices = k.simplices(g.dim);
        for (std::size_t i = 0; i < z->size(); ++i)
          if ((*z)[i] != 0) v.cycle.emplace_back(simplices[i], (*z)[i]);
      }
    }
    return v;
  }
  v.pass = true;
  v.reason = "homologically " + std::to_string(conn) + "-connected";
  return v;
}

// ------------------------------------------------------------ contraction --

ContractionVerdict contraction_certificate(const FinitePoset& p, std::span<const std::vector<std::size_t>> maps,
                                           std::size_t target) {
  const std::size_t n = p.size();
  if (n == 0) return {false, "empty poset"};
  if (target >= n) return {false, "target is not an element"};
  std::vector<std::size_t> previous(n);
  std::iota(previous.begin(), previous.end(), 0);
  for (std::size_t step = 0; step < maps.size(); ++step) {
    const auto& g = maps[step];
    const std::string where = "map " + std::to_string(step + 1);
    if (g.size() != n) return {false, where + " is not total"};
    for (std::size_t w : g)
      if (w >= n) return {false, where + " leaves the poset"};
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b : p.above(a))
        if (!p.leq(g[a], g[b]))
          return {false, where + " is not monotone at (" + std::to_string(a) + ", " + std::to_string(b) + ")"};
    bool all_below = true;
    bool all_above = true;
    for (std::size_t w = 0; w < n; ++w) {
      all_below = all_below && p.leq(g[w], previous[w]);
      all_above = all_above && p.leq(previous[w], g[w]);
    }
    if (!all_below && !all_above) return {false, where + " is not pointwise comparable to its predecessor"};
    previous = g;
  }
  for (std::size_t w = 0; w < n; ++w)
    if (previous[w] != target)
      return {false, "last map is not constant at the target (element " + std::to_string(w) + ")"};
  return {true, "conical contraction"};
}

}  // namespace steinforge
