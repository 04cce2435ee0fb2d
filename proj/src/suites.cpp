#include "steinforge/suites.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <thread>

#include "steinforge/error.hpp"
#include "steinforge/figures.hpp"
#include "steinforge/matching.hpp"
#include "steinforge/random.hpp"

namespace steinforge {

using io::Json;

std::size_t SuiteReport::passed() const {
  return static_cast<std::size_t>(std::count_if(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; }));
}

std::vector<Verdict> run_trials(int trials, int jobs, const std::function<std::vector<Verdict>(int)>& trial) {
  std::vector<std::vector<Verdict>> results(static_cast<std::size_t>(std::max(trials, 0)));
  auto guarded = [&](int i) {
    try {
      results[static_cast<std::size_t>(i)] = trial(i);
    } catch (const std::exception& e) {
      results[static_cast<std::size_t>(i)] = {Verdict{"error", Json{{"trial", i}}, false, Json{{"error", e.what()}}}};
    }
  };
  const int threads = std::clamp(jobs, 1, std::max(trials, 1));
  if (threads == 1) {
    for (int i = 0; i < trials; ++i) guarded(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (int i = next++; i < trials; i = next++) guarded(i);
      });
    for (auto& th : pool) th.join();
  }
  std::vector<Verdict> out;
  for (auto& r : results)
    for (auto& v : r) out.push_back(std::move(v));
  return out;
}

namespace {

// ---------------------------------------------------------------- helpers --

Verdict verdict(std::string check, Json instance, bool pass, Json witness = nullptr) {
  return Verdict{std::move(check), std::move(instance), pass, pass ? Json(nullptr) : std::move(witness)};
}

// Records named sub-properties; the failing ones become the witness.
class Properties {
 public:
  void operator()(const std::string& name, bool ok) {
    if (!ok) failed_.push_back(name);
  }
  bool ok() const { return failed_.empty(); }
  Json failed() const { return failed_; }

 private:
  std::vector<std::string> failed_;
};

Json connectivity_witness(const ConnectivityVerdict& v) {
  Json w{{"k", v.k}, {"reason", v.reason}, {"failing_degree", v.failing_degree}};
  if (!v.separated.empty()) w["separated"] = v.separated;
  if (!v.cycle.empty()) {
    Json cycle = Json::array();
    for (const auto& [simplex, coeff] : v.cycle) cycle.push_back(Json{{"simplex", simplex}, {"coefficient", coeff.str()}});
    w["cycle"] = std::move(cycle);
  }
  w["homology"] = io::to_json(v.report);
  return w;
}

ConnectivityVerdict connectivity_of(const std::function<SimplicialComplex(std::optional<int>)>& build, int k) {
  return connectivity_report(build(std::max(k + 1, 1)), k);
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

struct Instance {
  int s;
  int n;
};

// (s, n) pairs for exhaustive suites: the configured pair, or every pair
// with s in `dims` and 2 <= n <= top(s).
std::vector<Instance> instances(const SuiteConfig& c, std::vector<int> dims, const std::function<int(int)>& top) {
  if (c.s) dims = {*c.s};
  std::vector<Instance> out;
  for (int s : dims) {
    if (c.n) {
      out.push_back({s, *c.n});
      continue;
    }
    for (int n = 2; n <= top(s); ++n) out.push_back({s, n});
  }
  return out;
}

Json at(const Instance& i) { return Json{{"s", i.s}, {"n", i.n}}; }

int trials_or(const SuiteConfig& c, int fallback) { return c.trials.value_or(fallback); }

std::uint64_t seed_of(const SuiteConfig& c) { return *c.seed; }

PVertex level_one(int s) { return canonicalize(identity_map(s, 1)); }

// Random covering of I^s(m) with between about two thirds of `fine` and
// `max_bricks` bricks, fine drawn from [lo, max_bricks].
Covering draw_covering(gen::Rng& rng, int s, int m, int lo, int max_bricks) {
  const int fine = gen::uniform(rng, std::max(lo, m), std::max(max_bricks, m));
  const auto min_bricks = static_cast<std::size_t>(std::max(m, 2 * fine / 3));
  return gen::random_covering(rng, s, m, static_cast<std::size_t>(fine), static_cast<std::size_t>(std::max(max_bricks, m)),
                              min_bricks);
}

// ---------------------------------------------------------- lattice-laws --

std::vector<Verdict> lattice_trial(const SuiteConfig& c, int i) {
  auto rng = gen::trial_rng(seed_of(c), static_cast<std::uint64_t>(i));
  const int s = c.s.value_or(i % 3 + 1);
  const int m = c.m.value_or(1);
  const auto max_bricks = static_cast<std::size_t>(c.max_bricks.value_or(10));
  auto draw = [&] { return draw_covering(rng, s, m, m, static_cast<int>(max_bricks)); };
  const Covering u = draw();
  const Covering v = draw();
  const Covering w = draw();
  const Covering mt = meet(u, v);
  const Covering jn = join(u, v);
  const Covering trivial = trivial_covering(s, m);

  Properties prop;
  prop("join-valid", validate_covering(jn).valid);
  prop("meet-valid", validate_covering(mt).valid);
  prop("reflexive", refines(u, u) && refines(v, v));
  prop("antisymmetric", !(refines(u, v) && refines(v, u)) || u == v);
  prop("transitive", !(refines(jn, u) && refines(u, mt)) || refines(jn, mt));
  prop("meet-lower-bound", refines(u, mt) && refines(v, mt));
  prop("join-upper-bound", refines(jn, u) && refines(jn, v));
  prop("meet-commutative", mt == meet(v, u));
  prop("join-commutative", jn == join(v, u));
  prop("meet-idempotent", meet(u, u) == canonical(u));
  prop("join-idempotent", join(u, u) == canonical(u));
  prop("meet-associative", meet(mt, w) == meet(u, meet(v, w)));
  prop("join-associative", join(jn, w) == join(u, join(v, w)));
  prop("absorption-meet", meet(u, jn) == canonical(u));
  prop("absorption-join", join(u, mt) == canonical(u));
  prop("trivial-minimum", refines(u, trivial) && meet(u, trivial) == trivial);
  prop("elementary-characterizations", classify(u).elementary == refines(maximal_elementary(s, m), u));

  // Exhaustive oracle: the finest coarsening of u that v also refines.
  std::vector<Covering> common;
  for (auto& x : enumerate_coarsenings(u))
    if (refines(v, x)) common.push_back(std::move(x));
  std::vector<const Covering*> finest;
  for (const auto& x : common)
    if (std::all_of(common.begin(), common.end(), [&](const Covering& y) { return refines(x, y); })) finest.push_back(&x);
  prop("meet-oracle", finest.size() == 1 && *finest.front() == mt);

  Json instance{{"trial", i}, {"s", s}, {"m", m}, {"bricks", {u.size(), v.size()}}};
  if (jn.size() <= default_guards().max_coarsening_bricks) {
    std::size_t coarser_common = 0;
    for (const auto& x : enumerate_coarsenings(jn))
      if (refines(x, u) && refines(x, v)) ++coarser_common;
    prop("join-oracle", coarser_common == 1);
  } else {
    instance["join_oracle"] = "skipped";
  }
  return {verdict("lattice-laws", std::move(instance), prop.ok(),
                  Json{{"failed", prop.failed()}, {"u", io::to_json(u)}, {"v", io::to_json(v)}, {"w", io::to_json(w)}})};
}

// ------------------------------------------------------------------ core --

std::vector<Verdict> figure_cores() {
  const PVertex x = level_one(2);
  const Covering e = maximal_elementary(2, 1);
  const std::vector<std::tuple<std::string, Covering, Covering>> cases{
      {"left", figures::core_left(), figures::core_left_expected()},
      {"middle", figures::core_middle(), figures::core_middle_expected()},
      {"right", figures::core_right(), figures::core_right_expected()},
  };
  std::vector<Verdict> out;
  for (const auto& [name, covering, expected] : cases) {
    const PVertex y = split_vertex(x, covering);
    const PVertex core = elementary_core(x, y);
    const Covering m = meet(e, covering);
    const bool ok = m == canonical(expected) && same_vertex(core, split_vertex(x, expected));
    out.push_back(verdict("core-regression", Json{{"figure", name}}, ok, Json{{"meet", io::to_json(m)}}));
  }
  return out;
}

std::vector<Verdict> core_trial(const SuiteConfig& c, int i) {
  auto rng = gen::trial_rng(seed_of(c), static_cast<std::uint64_t>(i));
  const int s = c.s.value_or(2);
  const int max_bricks = c.max_bricks.value_or(10);
  const PVertex x = gen::random_vertex(rng, s, gen::uniform(rng, 1, 2));
  const int t = x.t();
  const Covering u = draw_covering(rng, s, t, t, max_bricks);
  const PVertex y = split_vertex(x, u);
  const IntervalPoset p = interval_poset(x, y, false);
  const PVertex core = elementary_core(x, y);

  Properties prop;
  prop("core-elementary-above-x", pv_elem_le(x, core));
  prop("core-below-y", pv_le(core, y).has_value());
  std::vector<std::size_t> elementary;
  for (std::size_t w = 0; w < p.vertices.size(); ++w)
    if (pv_elem_le(x, p.vertices[w])) elementary.push_back(w);
  prop("core-maximal", std::all_of(elementary.begin(), elementary.end(),
                                   [&](std::size_t w) { return pv_le(p.vertices[w], core).has_value(); }));
  std::vector<std::size_t> maxima;
  for (std::size_t w : elementary)
    if (std::all_of(elementary.begin(), elementary.end(),
                    [&](std::size_t v) { return pv_le(p.vertices[v], p.vertices[w]).has_value(); }))
      maxima.push_back(w);
  prop("core-unique", maxima.size() == 1 && same_vertex(p.vertices[maxima.front()], core));
  prop("core-strict", !pv_lt(x, y) || pv_lt(x, core));
  std::vector<PVertex> cores;
  for (const auto& w : p.vertices) cores.push_back(elementary_core(x, w));
  bool monotone = true;
  for (std::size_t a = 0; a < p.vertices.size() && monotone; ++a)
    for (std::size_t b : p.order.above(a))
      if (!pv_le(cores[a], cores[b])) {
        monotone = false;
        break;
      }
  prop("core-monotone", monotone);
  return {verdict("elementary-core", Json{{"trial", i}, {"s", s}, {"t", t}, {"interval", p.vertices.size()}}, prop.ok(),
                  Json{{"failed", prop.failed()}, {"x", io::to_json(x.map())}, {"along", io::to_json(u)}})};
}

// ---------------------------------------------------------- group-axioms --

std::vector<Verdict> figure_one() {
  const PVertex x1 = canonicalize(figures::f1());
  const PVertex x2 = canonicalize(figures::f2());
  const PVertex swapped = canonicalize(figures::f2_swapped());
  std::vector<Verdict> out;
  out.push_back(verdict("figure1-split", Json{{"relation", "f1 < f2"}}, pv_lt(x1, x2)));
  const auto w = pv_le(x1, x2);
  const bool along = w && canonical(strip_labels(w->along)) == canonical(strip_labels(figures::f1_to_f2()));
  out.push_back(verdict("figure1-witness", Json{{"relation", "f2 = z o f1, z along horizontal halves"}}, along,
                        w ? Json{{"along", io::to_json(w->along)}} : Json(nullptr)));
  out.push_back(verdict("figure1-very-elementary", Json{{"relation", "f1 very elementarily below f2"}},
                        pv_velem_le(x1, x2)));
  out.push_back(verdict("figure1-block-swap", Json{{"relation", "f2 ~ f2 with blocks swapped"}},
                        same_vertex(x2, swapped) &&
                            io::to_json(x2.map()).dump() == io::to_json(swapped.map()).dump()));
  const Point p = evaluate(figures::f1(), Point{1, {Rational(1, 3), Rational(1, 3)}});
  out.push_back(verdict("figure1-evaluate", Json{{"point", "(1/3, 1/3)"}},
                        p == Point{1, {Rational(5, 6), Rational(2, 3)}},
                        Json{{"image", {p.x[0].str(), p.x[1].str()}}}));
  return out;
}

std::vector<Verdict> group_trial(const SuiteConfig& c, int i) {
  auto rng = gen::trial_rng(seed_of(c), static_cast<std::uint64_t>(i));
  const int s = c.s.value_or(i % 3 + 1);
  const int m = c.m.value_or(1);
  const int max_bricks = std::max(c.max_bricks.value_or(6), m);
  auto draw = [&] {
    return gen::random_map(rng, s, m, m, static_cast<std::size_t>(gen::uniform(rng, m, max_bricks)));
  };
  const DyadicMap f = draw();
  const DyadicMap g = draw();
  const DyadicMap h = draw();
  const DyadicMap id = identity_map(s, m);
  const Point p = gen::random_point(rng, s, m);

  Properties prop;
  prop("associative", equals(compose(h, compose(g, f)), compose(compose(h, g), f)));
  prop("identity", equals(compose(f, id), f) && equals(compose(id, f), f));
  prop("inverse", equals(compose(f, inverse(f)), id) && equals(compose(inverse(f), f), id));
  prop("involution", equals(inverse(inverse(f)), f));
  prop("compose-evaluate", evaluate(compose(g, f), p) == evaluate(g, evaluate(f, p)));
  prop("inverse-evaluate", evaluate(inverse(f), evaluate(f, p)) == p);
  prop("reduce-preserves", equals(reduce(compose(g, f)), compose(g, f)));

  // The action of sV preserves the three relations.
  const PVertex x = gen::random_vertex(rng, s, gen::uniform(rng, 1, 2));
  const Covering along = draw_covering(rng, s, x.t(), x.t(), 6);
  const PVertex y = split_vertex(x, along);
  const DyadicMap a = gen::random_map(rng, s, 1, 1, static_cast<std::size_t>(gen::uniform(rng, 1, 4)));
  const PVertex xa = act(x, a);
  const PVertex ya = act(y, a);
  prop("action-le", pv_le(x, y).has_value() == pv_le(xa, ya).has_value());
  prop("action-elem", pv_elem_le(x, y) == pv_elem_le(xa, ya));
  prop("action-velem", pv_velem_le(x, y) == pv_velem_le(xa, ya));

  const PVertex z = gen::random_vertex(rng, s, gen::uniform(rng, 1, 3));
  const PVertex top = directedness_check(x, z);
  prop("directed", pv_le(x, top).has_value() && pv_le(z, top).has_value());

  return {verdict("group-axioms", Json{{"trial", i}, {"s", s}, {"m", m}}, prop.ok(),
                  Json{{"failed", prop.failed()}, {"f", io::to_json(f)}, {"g", io::to_json(g)}, {"h", io::to_json(h)}})};
}

// ---------------------------------------------------------------- ve-iso --

std::vector<Verdict> ve_instance(const Instance& in) {
  const VeIsoReport r = ve_iso(in.s, in.n);
  Json instance = at(in);
  instance["elements"] = r.elements;
  instance["faces"] = r.faces;
  instance["single_pair"] = r.single_pair;
  return {verdict("ve-iso", std::move(instance), r.pass(),
                  Json{{"bijective", r.bijective},
                       {"order_reversing", r.order_reversing},
                       {"realization_isomorphic", r.realization_isomorphic},
                       {"merging_le_agrees", r.merging_le_agrees},
                       {"expected_single_pair", r.expected_single_pair}})};
}

// -------------------------------------------------------------- matching --

std::vector<Verdict> matching_instance(const Instance& in, std::optional<int> max_dim) {
  const Multigraph g = make_sKn(in.s, in.n);
  const int k = nu(in.n) - 1;
  std::vector<Verdict> out;
  for (bool oriented : {false, true}) {
    const auto v = connectivity_of(
        [&](std::optional<int> cap) { return matching_complex(g, oriented, max_dim ? std::max(*max_dim, *cap) : cap); },
        k);
    Json instance = at(in);
    instance["oriented"] = oriented;
    instance["k"] = k;
    out.push_back(verdict("matching-connectivity", std::move(instance), v.pass, connectivity_witness(v)));
  }
  if (in.n <= 6) {
    bool counts = true;
    for (bool oriented : {false, true}) {
      const SimplicialComplex full = matching_complex(g, oriented);
      for (int j = 1; 2 * j <= in.n; ++j) {
        std::size_t expected = matchings_of_complete_graph(in.n, j);
        for (int e = 0; e < j; ++e) expected *= static_cast<std::size_t>(oriented ? 2 * in.s : in.s);
        counts = counts && full.count(j - 1) == expected;
      }
    }
    out.push_back(verdict("matching-counts", at(in), counts));
  }
  if (in.n <= 5) {
    const SimplicialComplex plain = matching_complex(make_sKn(1, in.n), false);
    const Multigraph k1 = make_sKn(1, in.n);
    bool projection = true;
    Json bad;
    for (int d = 0; d <= plain.dim(); ++d)
      for (const auto& sigma : plain.simplices(d)) {
        std::vector<std::pair<int, int>> pairs;
        for (int id : sigma) pairs.emplace_back(k1.edges[static_cast<std::size_t>(id)].u, k1.edges[static_cast<std::size_t>(id)].v);
        const FiberCheck f = check_projection_fiber(in.s, in.n, pairs);
        if (projection && !(f.join_identity && f.spherical)) {
          projection = false;
          bad = Json{{"sigma", pairs}};
        }
      }
    out.push_back(verdict("projection-fibers", at(in), projection, bad));
    const SimplicialComplex colored = matching_complex(g, false);
    bool orientation = true;
    for (int d = 0; d <= colored.dim(); ++d)
      for (const auto& sigma : colored.simplices(d)) {
        const FiberCheck f = check_orientation_fiber(in.s, in.n, sigma);
        if (orientation && !(f.join_identity && f.spherical)) {
          orientation = false;
          bad = Json{{"sigma", sigma}};
        }
      }
    out.push_back(verdict("orientation-fibers", at(in), orientation, bad));
  }
  return out;
}

// ------------------------------------------------------- en-connectivity --

std::vector<Verdict> en_instance(const Instance& in) {
  std::vector<Verdict> out;
  for (bool very : {false, true}) {
    const MergingPoset e = enumerate_posets(in.s, in.n, very);
    const int k = very ? nu(in.n) - 1 : eta(in.n, in.s) - 1;
    const auto v = connectivity_of([&](std::optional<int> cap) { return merging_complex(e, cap); }, k);
    Json instance = at(in);
    instance["poset"] = very ? "VE" : "E";
    instance["elements"] = e.size();
    instance["k"] = k;
    out.push_back(verdict("merging-connectivity", std::move(instance), v.pass, connectivity_witness(v)));
  }
  out.push_back(verdict("eta-below-nu", at(in), in.s == 1 || eta(in.n, in.s) <= nu(in.n)));
  return out;
}

// -------------------------------------------------------------- ht-rules --

std::vector<Verdict> ht_instance(const Instance& in) {
  const MergingPoset e = enumerate_posets(in.s, in.n, false);
  Json bad;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < e.size() && bad.is_null(); ++a)
    for (std::size_t b : e.order.above(a)) {
      ++pairs;
      const Height& x = e.heights[a];
      const Height& y = e.heights[b];
      const bool ok = x.c >= y.c && x.b < y.b && ((x < y) == (x.c == y.c)) && ((x > y) == (x.c > y.c));
      if (!ok) {
        bad = Json{{"lower", io::to_json(e.elements[a])}, {"upper", io::to_json(e.elements[b])},
                   {"h_lower", x.str()}, {"h_upper", y.str()}};
        break;
      }
    }
  Json instance = at(in);
  instance["pairs"] = pairs;
  return {verdict("height-rules", std::move(instance), bad.is_null(), bad)};
}

// -------------------------------------------------------------- dlk-join --

std::vector<Verdict> dlk_instance(const Instance& in, std::optional<int> max_dim) {
  const MergingPoset e = enumerate_posets(in.s, in.n, false);
  Json bad;
  for (std::size_t u = 0; u < e.size() && bad.is_null(); ++u) {
    const DescendingLink d = descending_link(e, u, max_dim);
    if (!(d.join_identity && d.matches_height && d.cross_comparable))
      bad = Json{{"u", io::to_json(e.elements[u])},
                 {"join_identity", d.join_identity},
                 {"matches_height", d.matches_height},
                 {"cross_comparable", d.cross_comparable}};
  }
  Json instance = at(in);
  instance["elements"] = e.size();
  if (max_dim) instance["max_dim"] = *max_dim;
  return {verdict("dlk-join", std::move(instance), bad.is_null(), bad)};
}

// ------------------------------------------------------------ two-bricks --

Verdict two_brick_figure() {
  const auto ex = figures::two_brick_example();
  std::size_t part = 0;
  for (std::size_t p : two_brick_parts(ex.u))
    if (ex.u.parts()[p].labels == std::vector<int>{5, 6}) part = p;
  Properties prop;
  prop("v-above-u", merging_le(ex.u, ex.v));
  prop("v0", redo_except(ex.u, part, ex.v) == ex.v0);
  prop("z_b", maximal_split_except(ex.u, part) == ex.z_b);
  prop("v0-below-v", merging_le(ex.v0, ex.v));
  prop("v0-below-z_b", merging_le(ex.v0, ex.z_b));
  prop("v0-in-uplink", height(ex.v0).c < height(ex.u).c && merging_le(ex.u, ex.v0));
  return verdict("two-bricks-regression", Json{{"s", 2}, {"n", 6}}, prop.ok(), Json{{"failed", prop.failed()}});
}

std::vector<Verdict> two_bricks_instance(const Instance& in) {
  const MergingPoset e = enumerate_posets(in.s, in.n, false);
  std::size_t applicable = 0;
  Json bad;
  for (std::size_t u = 0; u < e.size(); ++u) {
    const Merging& m = e.elements[u];
    if (m.very_elementary() || two_brick_parts(m).empty()) continue;
    ++applicable;
    for (const auto& v : two_bricks_certificate(e, u))
      if (!v.pass() && bad.is_null())
        bad = Json{{"u", io::to_json(m)},
                   {"part", v.part},
                   {"v0_in_uplink", v.v0_in_uplink},
                   {"v0_le_zb", v.v0_le_zb},
                   {"zb_in_uplink", v.zb_in_uplink},
                   {"certificate", v.certificate.reason},
                   {"homology", io::to_json(v.uplink_homology)}};
  }
  Json instance = at(in);
  instance["applicable"] = applicable;
  return {verdict("two-bricks", std::move(instance), bad.is_null(), bad)};
}

std::vector<Verdict> no_two_bricks_instance(const Instance& in) {
  const MergingPoset e = enumerate_posets(in.s, in.n, false);
  std::size_t applicable = 0;
  Json bad;
  Json bad_intermediate;
  Json bad_uplink;
  for (std::size_t u = 0; u < e.size(); ++u) {
    const Merging& m = e.elements[u];
    if (m.very_elementary() || !two_brick_parts(m).empty()) continue;
    ++applicable;
    const NoTwoBricksVerdict v = no_two_bricks_check(e, u);
    auto describe = [&](const ConnectivityVerdict& c) {
      return Json{{"u", io::to_json(m)}, {"k_b", v.k_b}, {"k_s", v.k_s}, {"connectivity", connectivity_witness(c)}};
    };
    if (!v.pass() && bad.is_null()) {
      bad = describe(v.connectivity);
      bad["bound"] = v.bound;
      bad["required"] = v.required_bound;
      bad["brick_count"] = v.brick_count;
      bad["downlink_size"] = v.downlink_size;
    }
    if (!v.intermediate.pass && bad_intermediate.is_null()) bad_intermediate = describe(v.intermediate);
    if (!v.uplink.pass && bad_uplink.is_null()) bad_uplink = describe(v.uplink);
  }
  Json instance = at(in);
  instance["applicable"] = applicable;
  return {verdict("no-two-bricks", instance, bad.is_null(), bad),
          verdict("no-two-bricks-join-bound", instance, bad_intermediate.is_null(), bad_intermediate),
          verdict("no-two-bricks-uplink-bound", instance, bad_uplink.is_null(), bad_uplink)};
}

// ------------------------------------------------------------------ cube --

Verdict cube_verdict(const std::string& check, Json instance, const PVertex& x, const PVertex& z) {
  const CubeVerdict v = cube_lemma_check(x, z);
  const bool suspension = suspension_identity(interval_poset(x, z, false));
  instance["open_size"] = v.open_size;
  return verdict(check, std::move(instance), v.pass() && suspension,
                 Json{{"core_in_interval", v.core_in_interval},
                      {"core_matches_vertex", v.core_matches_vertex},
                      {"certificate", v.certificate.reason},
                      {"homology", io::to_json(v.homology)},
                      {"suspension_identity", suspension},
                      {"x", io::to_json(x.map())},
                      {"z", io::to_json(z.map())}});
}

std::vector<Verdict> figure_cubes() {
  const PVertex x = level_one(2);
  std::vector<Verdict> out;
  for (const auto& [name, c] : std::vector<std::pair<std::string, Covering>>{
           {"left", figures::core_left()}, {"middle", figures::core_middle()}, {"right", figures::core_right()}})
    out.push_back(cube_verdict("cube-regression", Json{{"figure", name}}, x, split_vertex(x, c)));
  return out;
}

std::vector<Verdict> cube_trial(const SuiteConfig& c, int i) {
  auto rng = gen::trial_rng(seed_of(c), static_cast<std::uint64_t>(i));
  const int s = c.s.value_or(i % 2 + 2);
  const int max_bricks = c.max_bricks.value_or(9);
  const PVertex x = gen::random_vertex(rng, s, gen::uniform(rng, 1, 2));
  const int t = x.t();
  Covering along;
  do {
    along = draw_covering(rng, s, t, t + 1, max_bricks);
  } while (classify(along).elementary);
  return {cube_verdict("cube-lemma", Json{{"trial", i}, {"s", s}, {"t", t}, {"bricks", along.size()}}, x,
                       split_vertex(x, along))};
}

// ------------------------------------------------------------ morse-pair --

std::vector<Verdict> morse_instance(const Instance& in, int k_max) {
  const MergingPoset e = enumerate_posets(in.s, in.n, false);
  const MorseVerdict v = morse_pair_check(e.order, height_keys(e), k_max);
  Json bad;
  for (const auto& l : v.levels)
    if (!(l.relative_vanishes && l.ranks_match) && bad.is_null())
      bad = Json{{"height", l.height}, {"k", l.k}, {"relative_vanishes", l.relative_vanishes}, {"ranks_match", l.ranks_match}};
  Json instance = at(in);
  instance["levels"] = v.levels.size();
  instance["k_max"] = k_max;
  return {verdict("morse-pair", std::move(instance), v.pass(), bad)};
}

// ------------------------------------------------------------ stabilizers --

std::vector<Verdict> stabilizer_trial(const SuiteConfig& c, int i) {
  auto rng = gen::trial_rng(seed_of(c), static_cast<std::uint64_t>(i));
  const int s = c.s.value_or(i % 3 + 1);
  const int t = c.n.value_or(gen::uniform(rng, 1, 4));
  const PVertex x = gen::random_vertex(rng, s, t);
  const auto stab = stabilizer(x);
  const PVertex a = gen::random_vertex(rng, s, 1);
  const PVertex b = gen::random_vertex(rng, s, 1);
  const DyadicMap g = transporter(a, b);
  Properties prop;
  prop("order", stab.size() == factorial(x.t()));
  prop("fixes", std::all_of(stab.begin(), stab.end(), [&](const DyadicMap& h) { return same_vertex(act(x, h), x); }));
  prop("transporter", same_vertex(act(a, g), b));
  prop("transporter-inverse", equals(transporter(b, a), inverse(g)));
  return {verdict("stabilizer", Json{{"trial", i}, {"s", s}, {"t", x.t()}, {"order", stab.size()}}, prop.ok(),
                  Json{{"failed", prop.failed()}, {"x", io::to_json(x.map())}})};
}

// ------------------------------------------------------------- desc-link --

std::vector<Verdict> desc_link_trial(const SuiteConfig& c, int i) {
  auto rng = gen::trial_rng(seed_of(c), static_cast<std::uint64_t>(i));
  const int s = c.s.value_or(2);
  const int t = gen::uniform(rng, 1, c.n.value_or(5));
  const PVertex x = gen::random_vertex(rng, s, t);
  const AmbientLink link = desc_link_of_vertex(x);
  const std::size_t expected = t >= 2 ? enumerate_posets(s, t, false).size() : 0;
  Properties prop;
  prop("size", link.size() == expected);
  prop("elementary-below", link.all_elementary_below);
  prop("isomorphic", link.isomorphic);
  return {verdict("desc-link", Json{{"trial", i}, {"s", s}, {"t", t}, {"size", link.size()}}, prop.ok(),
                  Json{{"failed", prop.failed()}, {"x", io::to_json(x.map())}})};
}

// -------------------------------------------------------------- registry --

struct Suite {
  bool randomized;
  std::function<std::vector<Verdict>(const SuiteConfig&)> run;
};

std::vector<Verdict> over(const SuiteConfig& c, const std::vector<Instance>& list,
                          const std::function<std::vector<Verdict>(const Instance&)>& f) {
  return run_trials(static_cast<int>(list.size()), c.jobs, [&](int i) { return f(list[static_cast<std::size_t>(i)]); });
}

std::vector<Verdict> trials(const SuiteConfig& c, int fallback,
                            const std::function<std::vector<Verdict>(const SuiteConfig&, int)>& f) {
  return run_trials(trials_or(c, fallback), c.jobs, [&](int i) { return f(c, i); });
}

std::vector<Verdict> concat(std::vector<Verdict> a, std::vector<Verdict> b) {
  for (auto& v : b) a.push_back(std::move(v));
  return a;
}

int merging_top(int s) { return default_guards().max_merging_n(s); }

const std::map<std::string, Suite>& registry() {
  static const std::map<std::string, Suite> suites{
      {"lattice-laws", {true, [](const SuiteConfig& c) { return trials(c, 500, lattice_trial); }}},
      {"core", {true, [](const SuiteConfig& c) { return concat(figure_cores(), trials(c, 200, core_trial)); }}},
      {"group-axioms", {true, [](const SuiteConfig& c) { return concat(figure_one(), trials(c, 1000, group_trial)); }}},
      {"ve-iso",
       {false,
        [](const SuiteConfig& c) {
          return over(c, instances(c, {1, 2, 3}, [](int s) { return s == 3 ? 5 : 6; }), ve_instance);
        }}},
      {"matching",
       {false,
        [](const SuiteConfig& c) {
          return over(c, instances(c, {1, 2, 3}, [](int s) { return s == 3 ? 6 : 8; }),
                      [&](const Instance& in) { return matching_instance(in, c.max_dim); });
        }}},
      {"en-connectivity",
       {false, [](const SuiteConfig& c) { return over(c, instances(c, {2, 3}, merging_top), en_instance); }}},
      {"ht-rules", {false, [](const SuiteConfig& c) { return over(c, instances(c, {2}, merging_top), ht_instance); }}},
      {"dlk-join",
       {false,
        [](const SuiteConfig& c) {
          return over(c, instances(c, {2}, [](int) { return 5; }),
                      [&](const Instance& in) { return dlk_instance(in, c.max_dim); });
        }}},
      {"two-bricks",
       {false,
        [](const SuiteConfig& c) {
          return concat({two_brick_figure()}, over(c, instances(c, {2}, [](int) { return 5; }), two_bricks_instance));
        }}},
      {"no-two-bricks",
       {false, [](const SuiteConfig& c) { return over(c, instances(c, {2, 3}, merging_top), no_two_bricks_instance); }}},
      {"cube", {true, [](const SuiteConfig& c) { return concat(figure_cubes(), trials(c, 50, cube_trial)); }}},
      {"morse-pair",
       {false,
        [](const SuiteConfig& c) {
          return over(c, instances(c, {2}, [](int) { return 5; }),
                      [&](const Instance& in) { return morse_instance(in, c.max_dim.value_or(3)); });
        }}},
      {"stabilizers", {true, [](const SuiteConfig& c) { return trials(c, 100, stabilizer_trial); }}},
      {"desc-link", {true, [](const SuiteConfig& c) { return trials(c, 20, desc_link_trial); }}},
  };
  return suites;
}

void validate(const std::string& name, const SuiteConfig& c) {
  const Guards& g = default_guards();
  if (c.s && (*c.s < 1 || *c.s > g.max_exhaustive_s))
    throw InvalidInput("--s must lie in 1.." + std::to_string(g.max_exhaustive_s));
  if (c.n && *c.n < 1) throw InvalidInput("--n must be positive");
  if (c.m && *c.m < 1) throw InvalidInput("--m must be positive");
  if (c.trials && *c.trials < 0) throw InvalidInput("--trials must be non-negative");
  if (c.max_dim && *c.max_dim < 0) throw InvalidInput("--max-dim must be non-negative");
  if (c.jobs < 1) throw InvalidInput("--jobs must be positive");
  if (c.max_bricks && (*c.max_bricks < 1 || static_cast<std::size_t>(*c.max_bricks) > g.max_coarsening_bricks))
    throw InvalidInput("--max-bricks must lie in 1.." + std::to_string(g.max_coarsening_bricks));
  if (suite_is_randomized(name) && !c.seed) throw InvalidInput("suite " + name + " is randomized and needs --seed");
  static const std::vector<std::string> merging_suites{"ve-iso",   "en-connectivity", "ht-rules",  "dlk-join",
                                                       "two-bricks", "no-two-bricks", "morse-pair"};
  if (c.n && std::find(merging_suites.begin(), merging_suites.end(), name) != merging_suites.end()) {
    for (int s : c.s ? std::vector<int>{*c.s} : std::vector<int>{1, 2, 3})
      if (*c.n > g.max_merging_n(s))
        throw GuardExceeded("n = " + std::to_string(*c.n) + " exceeds the bound " + std::to_string(g.max_merging_n(s)) +
                            " for s = " + std::to_string(s));
    if (*c.n < 2) throw InvalidInput("--n must be at least 2 for merging posets");
  }
  if (name == "desc-link" && c.n && *c.n > g.max_merging_n(c.s.value_or(2)))
    throw GuardExceeded("--n exceeds the merging-poset bound");
  if (name == "stabilizers" && c.n && *c.n > g.max_stabilizer_n) throw GuardExceeded("--n exceeds the stabilizer bound");
  if (name == "matching" && c.n && *c.n < 2) throw InvalidInput("--n must be at least 2");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, suite] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

bool suite_is_randomized(const std::string& name) {
  auto it = registry().find(name);
  return it != registry().end() && it->second.randomized;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& config) {
  auto it = registry().find(name);
  if (it == registry().end()) throw InvalidInput("unknown suite '" + name + "'");
  validate(name, config);
  return SuiteReport{name, it->second.run(config)};
}

}  // namespace steinforge
