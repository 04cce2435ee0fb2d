#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "steinforge/io.hpp"

namespace steinforge {

/// One checked instance.  `witness` is null unless the check failed (or the
/// check reports data worth keeping, such as counts).
struct Verdict {
  std::string check;
  io::Json instance;
  bool pass = false;
  io::Json witness;
};

/// Options shared by every suite; unset fields take per-suite defaults.
struct SuiteConfig {
  std::optional<int> s;
  std::optional<int> n;
  std::optional<int> m;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> max_dim;
  std::optional<int> max_bricks;
  int jobs = 1;
};

struct SuiteReport {
  std::string suite;
  std::vector<Verdict> verdicts;

  std::size_t passed() const;
  bool pass() const { return passed() == verdicts.size(); }
};

const std::vector<std::string>& suite_names();
/// Suites that draw random instances and therefore need a seed.
bool suite_is_randomized(const std::string& name);

/// Throws InvalidInput for an unknown suite, a missing seed or out-of-range
/// options.  Output is identical for every value of `jobs`.
SuiteReport run_suite(const std::string& name, const SuiteConfig& config);

/// Run `trials` independent jobs on up to `jobs` threads and concatenate the
/// results in trial order.
std::vector<Verdict> run_trials(int trials, int jobs, const std::function<std::vector<Verdict>(int)>& trial);

}  // namespace steinforge
