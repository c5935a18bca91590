#include "doctest.h"

#include <functional>

#include "splaylab/algorithms.hpp"
#include "splaylab/harness.hpp"
#include "splaylab/opt.hpp"
#include "splaylab/wilber.hpp"

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

// Lambda by direct Move-to-Root replay and graphical crossing counts.
std::int64_t lambda_oracle(const std::vector<Key>& x, const Tree& t) {
  std::int64_t total = 0;
  Tree cur = t;
  for (Key k : x) {
    total += static_cast<std::int64_t>(crossing_nodes_graphical(cur, k).size());
    cur = move_to_root(cur, k).first;
  }
  return total;
}

}  // namespace

TEST_CASE("level examples") {
  const Tree t = bst_from_sequence({2, 1, 3});
  CHECK(level_of(t, 2) == 1);
  const LevelReport spine = level(left_spine(iota_keys(1, 3)), 1);
  CHECK(spine.crossing == std::vector<Key>{3, 1});
  CHECK(spine.level == 2);
  CHECK(spine.bookkeeping == 1);
  const LevelReport s = level(bst_from_sequence({1, 7, 4, 2, 3, 6, 5}), 4);
  CHECK(s.crossing == std::vector<Key>{1, 7, 4});
  CHECK(s.level == 3);
  CHECK_THROWS_AS(level(t, 9), Error);
}

TEST_CASE("level agrees with the graphical definition, n <= 7") {
  for (int n = 1; n <= 7; ++n)
    for (const Tree& t : all_shapes(n))
      for (Key x : t.keys()) {
        const LevelReport r = level(t, x);
        auto g = crossing_nodes_graphical(t, x);
        auto c = r.crossing;
        std::sort(g.begin(), g.end());
        std::sort(c.begin(), c.end());
        CHECK(c == g);
        CHECK(r.level >= 1);
        CHECK(r.level <= t.depth(x) + 1);
        CHECK(r.level + r.bookkeeping == t.depth(x) + 1);
      }
}

TEST_CASE("lambda") {
  const Tree t = bst_from_sequence({2, 1, 3});
  CHECK(lambda({2}, t) == 1);
  CHECK(lambda({1, 3}, t) == 4);
  CHECK(lambda({1, 3, 3}, t) == 5);
  CHECK(lambda({1, 3}, bst_from_sequence({1, 3})) == 3);
  for (std::uint64_t trial = 0; trial < 500; ++trial) {
    Rng rng = Rng::for_trial(3, trial);
    const Tree s = random_tree(rng, static_cast<std::size_t>(rng.uniform(1, 12)));
    const auto x = random_requests(rng, s, static_cast<std::size_t>(rng.uniform(0, 15)));
    CHECK(lambda(x, s) == lambda_oracle(x, s));
  }
}

TEST_CASE("lambda prime and zeta") {
  const Instance root{{2}, bst_from_sequence({2, 1, 3}), std::nullopt};
  CHECK(lambda_prime(root) == 1);
  CHECK(zeta(root) == 0);
  const Instance f{{3, 1, 4, 2}, bst_from_sequence({3, 1, 2, 4}), std::nullopt};
  CHECK(lambda(f) == 9);
  CHECK(lambda_prime(f) == 8);
  CHECK(zeta(f) == 2);
  CHECK(lambda_prime(f) < lambda(f));
  for (std::uint64_t trial = 0; trial < 300; ++trial) {
    Rng rng = Rng::for_trial(5, trial);
    const Tree s = random_tree(rng, static_cast<std::size_t>(rng.uniform(1, 30)));
    const Instance inst{random_requests(rng, s, static_cast<std::size_t>(rng.uniform(0, 40))), s, std::nullopt};
    CHECK(lambda_prime(inst) + zeta(inst) == algo_cost(Algo::Splay, s, inst.requests));
  }
}

TEST_CASE("kappa and lambda2") {
  CHECK(kappa({4, 2, 3}, 1) == 0);
  CHECK(lambda2({5}) == 1);
  CHECK(lambda2({}) == 0);
  CHECK(lambda2({1, 3}) == 2);
  CHECK_THROWS_AS(kappa({1}, 2), Error);
  // termination and the equivalence identity, m <= 6 over <= 4 keys
  for (std::size_t m = 1; m <= 6; ++m)
    for_sequences(4, m, [](const std::vector<Key>& x) {
      const Tree b = bst_from_sequence(std::span<const Key>(x));
      CHECK(lambda2(x) == lambda(x, b) - static_cast<std::int64_t>(b.size()) + 1);
    });
  for (std::uint64_t trial = 0; trial < 2000; ++trial) {
    Rng rng = Rng::for_trial(9, trial);
    std::vector<Key> x;
    const std::int64_t m = rng.uniform(1, 12), keys = rng.uniform(1, 8);
    for (std::int64_t i = 0; i < m; ++i) x.push_back(rng.uniform(1, keys));
    const Tree b = bst_from_sequence(std::span<const Key>(x));
    CHECK(lambda2(x) == lambda(x, b) - static_cast<std::int64_t>(b.size()) + 1);
  }
}

TEST_CASE("remove-one gap") {
  const Tree s = bst_from_sequence({1, 7, 4, 2, 3, 6, 5});
  CHECK(remove_one_gap(s, 4, {}) == 0);
  const std::int64_t gap = remove_one_gap(s, 4, {5, 3});
  CHECK(gap == 4);
  CHECK(gap > level_of(s, 4));
  CHECK(gap <= 4 * level_of(s, 4));
}

TEST_CASE("approximate monotonicity of lambda, n <= 5, m <= 4") {
  for (int n = 1; n <= 5; ++n)
    for (const Tree& t : all_shapes(n))
      for (std::size_t m = 1; m <= 4; ++m)
        for_sequences(static_cast<std::size_t>(n), m, [&](const std::vector<Key>& x) {
          const std::int64_t lx = lambda(x, t);
          for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
            std::vector<Key> y;
            for (std::size_t j = 0; j < m; ++j)
              if (mask >> j & 1u) y.push_back(x[j]);
            CHECK(lambda(y, t) <= 4 * lx);
          }
        });
  for (std::uint64_t trial = 0; trial < 5000; ++trial) {
    Rng rng = Rng::for_trial(19, trial);
    const Tree t = random_tree(rng, static_cast<std::size_t>(rng.uniform(1, 10)));
    const auto x = random_requests(rng, t, static_cast<std::size_t>(rng.uniform(1, 8)));
    std::vector<Key> y;
    for (Key k : x)
      if (rng.coin()) y.push_back(k);
    CHECK(lambda(y, t) <= 4 * lambda(x, t));
  }
}

TEST_CASE("lambda is within 24 OPT on oracle-sized instances") {
  for (int n = 1; n <= 4; ++n)
    for (const Tree& t : all_shapes(n))
      for (std::size_t m = 1; m <= 3; ++m)
        for_sequences(static_cast<std::size_t>(n), m, [&](const std::vector<Key>& x) {
          CHECK(lambda(x, t) <= 24 * opt_cost({x, t, std::nullopt}).cost);
        });
}
