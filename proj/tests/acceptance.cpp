// Acceptance gate: one PASS/FAIL line per criterion.
//
//   acceptance [--jobs N] [--expect-fail AC3,...]
//
// Exit status is 0 when the failing criteria are exactly the expected set.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "steinforge/figures.hpp"
#include "steinforge/groupsv.hpp"
#include "steinforge/suites.hpp"

using namespace steinforge;

namespace {

constexpr std::uint64_t kSeed = 20240617;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void need(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
};

struct Criterion {
  std::string id;
  std::string title;
  double limit_s;
  std::function<void(Outcome&, int)> body;
};

SuiteConfig seeded(std::optional<int> trials, int jobs) {
  SuiteConfig c;
  c.seed = kSeed;
  c.trials = trials;
  c.jobs = jobs;
  return c;
}

SuiteConfig exhaustive(int jobs) {
  SuiteConfig c;
  c.jobs = jobs;
  return c;
}

// Requires every verdict of `name` whose check is in `checks` (or every
// verdict if `checks` is empty) to pass; returns how many were counted.
std::size_t require_suite(Outcome& out, const std::string& name, const SuiteConfig& c,
                          const std::set<std::string>& checks = {}) {
  const SuiteReport r = run_suite(name, c);
  std::size_t counted = 0;
  std::size_t passed = 0;
  for (const auto& v : r.verdicts) {
    if (!checks.empty() && !checks.count(v.check)) continue;
    ++counted;
    if (v.pass) {
      ++passed;
    } else if (out.notes.size() < 4) {
      out.notes.push_back(name + ": " + v.check + " " + v.instance.dump());
    }
  }
  out.need(passed == counted && counted > 0, name);
  std::ostringstream note;
  note << name << " " << passed << "/" << counted;
  out.notes.push_back(note.str());
  return counted;
}

// Reports verdicts that the criterion does not depend on.
void inform_suite(Outcome& out, const std::string& name, const SuiteConfig& c, const std::string& check) {
  const SuiteReport r = run_suite(name, c);
  std::size_t counted = 0;
  std::size_t passed = 0;
  std::string first_failure;
  for (const auto& v : r.verdicts) {
    if (v.check != check) continue;
    ++counted;
    if (v.pass) ++passed;
    else if (first_failure.empty()) first_failure = v.instance.dump();
  }
  std::ostringstream note;
  note << "info " << check << " " << passed << "/" << counted;
  if (!first_failure.empty()) note << " first failure " << first_failure;
  out.notes.push_back(note.str());
}

std::vector<Criterion> criteria() {
  return {
      {"AC1", "lattice oracle", 60,
       [](Outcome& o, int jobs) { o.need(require_suite(o, "lattice-laws", seeded(500, jobs)) == 500, "500 trials"); }},
      {"AC2", "elementary core", 120,
       [](Outcome& o, int jobs) {
         require_suite(o, "core", seeded(200, jobs), {"core-regression"});
         o.need(require_suite(o, "core", seeded(200, jobs), {"elementary-core"}) == 200, "200 trials");
       }},
      {"AC3", "group laws and f1, f2 regressions", 120,
       [](Outcome& o, int jobs) {
         o.need(require_suite(o, "group-axioms", seeded(1000, jobs), {"group-axioms"}) == 1000, "1000 trials");
         require_suite(o, "group-axioms", seeded(0, jobs), {"figure1-split", "figure1-block-swap", "figure1-evaluate"});
         const PVertex x1 = canonicalize(figures::f1());
         const PVertex x2 = canonicalize(figures::f2());
         o.need(!pv_elem_le(x1, x2), "f1 not elementarily below f2");
       }},
      {"AC4", "very elementary mergings vs oriented matchings", 300,
       [](Outcome& o, int jobs) { require_suite(o, "ve-iso", exhaustive(jobs)); }},
      {"AC5", "matching complex connectivity", 600,
       [](Outcome& o, int jobs) { require_suite(o, "matching", exhaustive(jobs)); }},
      {"AC6", "merging poset connectivity", 900,
       [](Outcome& o, int jobs) { require_suite(o, "en-connectivity", exhaustive(jobs)); }},
      {"AC7", "height function and descending links", 900,
       [](Outcome& o, int jobs) {
         require_suite(o, "ht-rules", exhaustive(jobs));
         require_suite(o, "dlk-join", exhaustive(jobs));
         require_suite(o, "two-bricks", exhaustive(jobs));
         require_suite(o, "no-two-bricks", exhaustive(jobs), {"no-two-bricks"});
         inform_suite(o, "no-two-bricks", exhaustive(jobs), "no-two-bricks-join-bound");
       }},
      {"AC8", "cube intervals", 300,
       [](Outcome& o, int jobs) {
         require_suite(o, "cube", seeded(50, jobs), {"cube-regression"});
         o.need(require_suite(o, "cube", seeded(50, jobs), {"cube-lemma"}) == 50, "50 trials");
       }},
      {"AC9", "sublevel relative homology", 300,
       [](Outcome& o, int jobs) { require_suite(o, "morse-pair", exhaustive(jobs)); }},
      {"AC10", "stabilizers and transitivity", 60,
       [](Outcome& o, int jobs) { o.need(require_suite(o, "stabilizers", seeded(100, jobs)) == 100, "100 trials"); }},
  };
}

std::set<std::string> split_ids(const std::string& list) {
  std::set<std::string> out;
  std::stringstream in(list);
  for (std::string id; std::getline(in, id, ',');)
    if (!id.empty()) out.insert(id);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  int jobs = 1;
  std::set<std::string> expected;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--jobs" && i + 1 < argc) {
      jobs = std::atoi(argv[++i]);
    } else if (a == "--expect-fail" && i + 1 < argc) {
      expected = split_ids(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--jobs N] [--expect-fail AC3,...]\n";
      return 2;
    }
  }

  std::set<std::string> failed;
  for (const auto& c : criteria()) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o, jobs);
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("error: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.need(secs < c.limit_s, "time limit");
    if (!o.pass) failed.insert(c.id);
    std::printf("%-4s %s  %-48s %8.2fs / %4.0fs\n", c.id.c_str(), o.pass ? "PASS" : "FAIL", c.title.c_str(), secs,
                c.limit_s);
    for (const auto& n : o.notes) std::printf("       %s\n", n.c_str());
    std::fflush(stdout);
  }

  std::printf("failing: %zu, expected failing: %zu\n", failed.size(), expected.size());
  if (failed != expected) {
    for (const auto& id : failed)
      if (!expected.count(id)) std::printf("unexpected failure: %s\n", id.c_str());
    for (const auto& id : expected)
      if (!failed.count(id)) std::printf("expected failure now passes: %s\n", id.c_str());
    return 1;
  }
  return 0;
}
