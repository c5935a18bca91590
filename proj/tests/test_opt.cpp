#include "doctest.h"

#include <cstdlib>
#include <functional>

#include "splaylab/algorithms.hpp"
#include "splaylab/harness.hpp"
#include "splaylab/opt.hpp"

using namespace splaylab;

namespace {

void for_sequences(std::size_t n, std::size_t m, const std::function<void(const std::vector<Key>&)>& f) {
  std::vector<Key> x(m, 1);
  while (true) {
    f(x);
    std::size_t p = 0;
    while (p < m && x[p] == static_cast<Key>(n)) x[p++] = 1;
    if (p == m) return;
    ++x[p];
  }
}

// Independent oracle: plain recursion over all executions.
std::int64_t brute_opt(const Tree& t, const std::vector<Key>& x, std::size_t i) {
  if (i == x.size()) return 0;
  std::int64_t best = -1;
  for (const Transition& tr : enumerate_transitions(t, x[i])) {
    const std::int64_t c = static_cast<std::int64_t>(tr.q_prime.size()) + brute_opt(tr.after, x, i + 1);
    if (best < 0 || c < best) best = c;
  }
  return best;
}

}  // namespace

TEST_CASE("transition enumeration") {
  const Tree t = bst_from_sequence({2, 1, 3});
  // root access: Q any root subtree, Q' rooted at 2
  const auto root = enumerate_transitions(t, 2);
  CHECK(root.size() == 4);
  // x = 1: Q in {{1,2}, {1,2,3}}; Q' shapes rooted at 1: 1 and 2
  CHECK(enumerate_transitions(t, 1).size() == 3);
  for (int n = 1; n <= 5; ++n)
    for (const Tree& s : all_shapes(n))
      for (Key x : s.keys())
        for (const Transition& tr : enumerate_transitions(s, x)) {
          CHECK(tr.q_prime.root() == x);
          CHECK(is_root_subtree(s, tr.q_prime.keys()));
          CHECK(tr.after == substitute(s, tr.q_prime));
        }
}

TEST_CASE("opt examples") {
  const Tree t = bst_from_sequence({2, 1, 3});
  CHECK(opt_cost({{2}, t, std::nullopt}).cost == 1);
  CHECK(opt_cost({{1}, left_spine(iota_keys(1, 3)), std::nullopt}).cost == 3);
  CHECK(opt_cost({{}, t, std::nullopt}).cost == 0);
  const Instance f{{3, 1, 4, 2}, bst_from_sequence({3, 1, 2, 4}), std::nullopt};
  CHECK(opt_cost(f).cost == 9);
}

TEST_CASE("opt matches brute force and its execution validates") {
  for (int n = 1; n <= 4; ++n)
    for (const Tree& t : all_shapes(n))
      for (std::size_t m = 1; m <= 3; ++m)
        for_sequences(static_cast<std::size_t>(n), m, [&](const std::vector<Key>& x) {
          const Instance inst{x, t, std::nullopt};
          const OptResult r = opt_cost(inst);
          CHECK(r.cost == brute_opt(t, x, 0));
          CHECK(validate(inst, r.execution).cost == r.cost);
          CHECK(r.cost >= static_cast<std::int64_t>(m));
          CHECK(r.cost <= algo_cost(Algo::Splay, t, x));
          CHECK(r.cost <= algo_cost(Algo::MoveToRoot, t, x));
        });
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    Rng rng = Rng::for_trial(53, trial);
    const Tree t = random_tree(rng, static_cast<std::size_t>(rng.uniform(1, 6)));
    const auto x = random_requests(rng, t, static_cast<std::size_t>(rng.uniform(1, 5)));
    const Instance inst{x, t, std::nullopt};
    const OptResult r = opt_cost(inst);
    CHECK(validate(inst, r.execution).cost == r.cost);
    CHECK(r.cost <= algo_cost(Algo::Splay, t, x));
  }
}

TEST_CASE("opt is deterministic") {
  const Instance inst{{4, 1, 3, 2}, bst_from_sequence({2, 1, 4, 3}), std::nullopt};
  const OptResult a = opt_cost(inst), b = opt_cost(inst);
  CHECK(a.cost == b.cost);
  CHECK(a.execution == b.execution);
}

TEST_CASE("guards") {
  const Tree big = left_spine(iota_keys(1, 8));
  unsetenv("SPLAYLAB_GUARD_OVERRIDE");
  CHECK_FALSE(guard_override_enabled());
  CHECK(default_guards().max_n == 7);
  CHECK(default_guards().max_m == 8);
  try {
    opt_cost({{1}, big, std::nullopt});
    FAIL("expected GuardExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GuardExceeded);
  }
  CHECK_THROWS_AS(opt_cost({std::vector<Key>(9, 1), left_spine(iota_keys(1, 3)), std::nullopt}), Error);
  setenv("SPLAYLAB_GUARD_OVERRIDE", "0", 1);
  CHECK_FALSE(guard_override_enabled());
  setenv("SPLAYLAB_GUARD_OVERRIDE", "1", 1);
  CHECK(guard_override_enabled());
  CHECK(opt_cost({{1}, big, std::nullopt}).cost == 8);
  unsetenv("SPLAYLAB_GUARD_OVERRIDE");
}

TEST_CASE("strict monotonicity sweep, n <= 4, m <= 3") {
  const MonotoneReport r = opt_monotone_sweep(4, 3);
  CHECK(r.instances > 1000);
  CHECK(r.violations == 0);
  CHECK(r.elision_violations == 0);
  CHECK(r.comparisons == r.elisions);
}

TEST_CASE("initial tree shift") {
  const Tree t = bst_from_sequence({2, 1, 3, 4});
  CHECK(initial_tree_shift({1, 4}, t, t) == 0);
  CHECK_THROWS_AS(initial_tree_shift({1}, t, bst_from_sequence({1, 2, 3})), Error);
  for (const Tree& a : all_shapes(4))
    for (const Tree& b : all_shapes(4))
      for (std::size_t m = 1; m <= 2; ++m)
        for_sequences(4, m, [&](const std::vector<Key>& x) { CHECK(std::abs(initial_tree_shift(x, a, b)) <= 4); });
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    Rng rng = Rng::for_trial(59, trial);
    const Tree a = random_tree(rng, 5), b = random_tree(rng, 5);
    const auto x = random_requests(rng, a, 4);
    CHECK(std::abs(initial_tree_shift(x, a, b)) <= 5);
  }
}
