#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splaylab/model.hpp"
#include "splaylab/tree.hpp"

namespace splaylab {

// ---- randomness: one user seed, per-trial streams by counter

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  static Rng for_trial(std::uint64_t seed, std::uint64_t trial) { return Rng(splitmix64(seed ^ splitmix64(trial + 1))); }
  std::uint64_t next();
  // Uniform in [lo, hi], identical on every platform.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin() { return next() >> 63; }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform(0, static_cast<std::int64_t>(i) - 1)]);
  }

 private:
  std::uint64_t state_;
};

Tree random_tree(Rng& rng, std::size_t n, Key first = 1);  // random insertion order over first..first+n-1
std::vector<Key> random_requests(Rng& rng, const Tree& t, std::size_t m);

// ---- families

struct FamilyParams {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t m = 0;
  std::uint64_t seed = 1;
};
std::vector<std::string> family_names();
// Throws UnknownName / InvalidArgument.
Instance generate(const std::string& family, const FamilyParams& p);

// ---- probes (report only)

struct ProbeReport {
  std::string conjecture;
  std::size_t trials = 0, n = 0, m = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::string ratio_column;
  double max_ratio = 0, mean_ratio = 0, min_ratio = 0, median_ratio = 0;
  std::string csv() const;
};
std::vector<std::string> probe_names();
ProbeReport probe(const std::string& conjecture, std::size_t trials, std::size_t n, std::size_t m, std::uint64_t seed);

// ---- CSV reports for single instances

std::string lambda_report_header();
std::string lambda_report_row(const std::string& id, const Instance& inst, bool with_opt);
std::string opt_report_header();
std::string opt_report_row(const std::string& id, const Instance& inst);

// ---- verify suites

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  int criterion = 0;
  std::vector<Check> checks;
  double seconds = 0;
  bool passed() const;
  std::string text() const;
  std::string csv() const;
};

struct SuiteOptions {
  std::optional<std::size_t> max_n;  // caps exhaustive tree sizes
  std::optional<std::size_t> max_m;  // caps exhaustive sequence lengths
  std::uint64_t seed = 20240601;
};

struct SuiteInfo {
  std::string name;
  int criterion;
  double budget_seconds;
};
const std::vector<SuiteInfo>& suites();
// Throws UnknownName for unknown suites. "all" is handled by callers.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt);

}  // namespace splaylab
