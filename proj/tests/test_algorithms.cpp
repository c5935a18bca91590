#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "splaylab/algorithms.hpp"
#include "splaylab/harness.hpp"
#include "splaylab/wilber.hpp"

using namespace splaylab;

TEST_CASE("splay examples") {
  const Tree t = bst_from_sequence({2, 1, 3});
  auto [same, r0] = splay(t, 2);
  CHECK(same == t);
  CHECK(r0.cost == 1);
  CHECK(r0.steps.empty());

  auto [rs, r1] = splay(left_spine(iota_keys(1, 3)), 1);
  CHECK(rs == right_spine(iota_keys(1, 3)));
  CHECK(r1.cost == 3);
  CHECK(r1.steps == std::vector<SplayStepKind>{SplayStepKind::ZigZig});

  auto [z, r2] = splay(t, 1);
  CHECK(z == bst_from_sequence({1, 2, 3}));
  CHECK(r2.cost == 2);
  CHECK(r2.steps == std::vector<SplayStepKind>{SplayStepKind::Zig});
}

TEST_CASE("splay: step accounting") {
  for (int n = 1; n <= 6; ++n)
    for (const Tree& t : all_shapes(n))
      for (Key x : t.keys()) {
        auto [u, rec] = splay(t, x);
        int arity = 0;
        for (std::size_t i = 0; i < rec.steps.size(); ++i) {
          arity += rec.steps[i] == SplayStepKind::Zig ? 1 : 2;
          if (rec.steps[i] == SplayStepKind::Zig) CHECK(i + 1 == rec.steps.size());
        }
        CHECK(arity == t.depth(x));
        CHECK(rec.cost == t.depth(x) + 1);
        CHECK(rec.crossing + rec.bookkeeping == rec.cost);
        CHECK(rec.crossing == level_of(t, x));
        CHECK(u.root() == x);
      }
}

TEST_CASE("splay agrees with the global-view realization, n <= 6") {
  for (int n = 1; n <= 6; ++n)
    for (const Tree& t : all_shapes(n))
      for (Key x : t.keys()) CHECK(splay(t, x).first == splay_global_view(t, x));
}

TEST_CASE("transition trees depend only on the access path encoding") {
  // Transplant one access path into every tree that contains it and compare
  // the rearranged path subtrees after relabeling.
  for (Algo a : {Algo::Splay, Algo::MoveToRoot, Algo::TopDownSplay})
    for (int n = 1; n <= 5; ++n) {
      std::map<PathEncoding, std::string> seen;
      for (const Tree& t : all_shapes(n))
        for (Key x : t.keys()) {
          const Tree u = access(a, t, x);
          const auto path = t.path(x);
          std::vector<Key> sorted = path;
          std::sort(sorted.begin(), sorted.end());
          const std::string q_prime = shape_string(canonicalize(root_subtree(u, sorted)).tree);
          const PathEncoding enc = path_encoding(t, x);
          auto [it, fresh] = seen.emplace(enc, q_prime);
          if (!fresh) CHECK(it->second == q_prime);
        }
    }
}

TEST_CASE("move-to-root") {
  const Tree t = bst_from_sequence({2, 1, 3});
  CHECK(move_to_root(t, 2).first == t);
  const Tree u = move_to_root(left_spine(iota_keys(1, 3)), 1).first;
  CHECK(u.root() == 1);
  CHECK(u.right_child(1) == 3);
  CHECK(u.left_child(3) == 2);
}

TEST_CASE("move-to-root matches the recency treap") {
  for (std::uint64_t trial = 0; trial < 300; ++trial) {
    Rng rng = Rng::for_trial(7, trial);
    const Tree t = random_tree(rng, static_cast<std::size_t>(rng.uniform(1, 12)));
    const auto x = random_requests(rng, t, static_cast<std::size_t>(rng.uniform(0, 20)));
    CHECK(run_streaming(Algo::MoveToRoot, t, x).final_tree == treap_after(t, x));
  }
}

TEST_CASE("top-down splay") {
  const Tree t = bst_from_sequence({2, 1, 3});
  CHECK(top_down_splay(t, 2).first == t);
  // odd-length paths give the same tree as bottom-up splay
  for (int n = 1; n <= 6; ++n)
    for (const Tree& s : all_shapes(n))
      for (Key x : s.keys()) {
        auto [u, rec] = top_down_splay(s, x);
        CHECK(u.root() == x);
        CHECK(is_valid_bst(u));
        CHECK(rec.cost == s.depth(x) + 1);
        if (s.depth(x) % 2 == 0) CHECK(u == splay(s, x).first);
      }
}

TEST_CASE("insertion splay") {
  CHECK(insertion_splay(Tree{}, 5) == bst_from_sequence({5}));
  const Tree u = insertion_splay(left_spine(iota_keys(1, 3)), 4);
  CHECK(u.root() == 4);
  CHECK(u.keys() == iota_keys(1, 4));
}

TEST_CASE("splay execution: spine-312 regression") {
  const Instance in = generate("spine-312", {100, 0, 0, 1});
  const ExecutionTrace tr = splay_execute(in);
  CHECK(tr.cost == 103);
  CHECK(algo_cost(Algo::Splay, in.initial, *in.subsequence) == 151);
  CHECK(splay_execute({{}, in.initial, std::nullopt}).cost == 0);
}

TEST_CASE("algorithm traces validate in the transition model") {
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    Rng rng = Rng::for_trial(11, trial);
    const Tree t = random_tree(rng, static_cast<std::size_t>(rng.uniform(1, 20)));
    const auto x = random_requests(rng, t, static_cast<std::size_t>(rng.uniform(0, 30)));
    for (Algo a : {Algo::Splay, Algo::MoveToRoot, Algo::TopDownSplay}) {
      const Instance inst{x, t, std::nullopt};
      const ExecutionTrace tr = execute(a, inst);
      const ExecutionTrace v = validate(inst, tr.execution());
      CHECK(v.cost == tr.cost);
      CHECK(v.final_tree() == tr.final_tree());
      const RunTotals rt = run_streaming(a, t, x);
      CHECK(rt.cost == tr.cost);
      CHECK(rt.crossing + rt.bookkeeping == rt.cost);
    }
  }
}

TEST_CASE("splay total cost stays within 4 (m+n) log2(n+1)") {
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    Rng rng = Rng::for_trial(13, trial);
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 300));
    const Tree t = random_tree(rng, n);
    const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 1000));
    const auto x = random_requests(rng, t, m);
    const double bound = 4.0 * static_cast<double>(m + n) * std::log2(static_cast<double>(n) + 1.0);
    CHECK(static_cast<double>(algo_cost(Algo::Splay, t, x)) <= bound);
  }
}

TEST_CASE("increment/decrement encodings: subsequence ratios (report only)") {
  // Flat trees driven by requests whose paths are 0, 00, 1 or 11.
  double worst = 0;
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    Rng rng = Rng::for_trial(17, trial);
    const std::size_t n = 64;
    Tree t = right_spine(iota_keys(1, static_cast<Key>(n)));
    std::vector<Key> x;
    TreeEditor ed(t);
    for (int i = 0; i < 200; ++i) {
      std::vector<Key> options;
      for (const char* enc : {"0", "00", "1", "11"}) try {
          options.push_back(decode_path(ed.tree(), enc));
        } catch (const Error&) {
        }
      if (options.empty()) break;
      const Key k = options[rng.uniform(0, static_cast<std::int64_t>(options.size()) - 1)];
      x.push_back(k);
      splay_in_place(ed, k);
    }
    std::vector<Key> y;
    for (Key k : x)
      if (rng.coin()) y.push_back(k);
    worst = std::max(worst, static_cast<double>(algo_cost(Algo::Splay, t, y)) /
                                static_cast<double>(algo_cost(Algo::Splay, t, x)));
  }
  MESSAGE("max cost(Y)/cost(X) on increment/decrement encodings: " << worst);
  CHECK(worst > 0);
}

TEST_CASE("deque") {
  const Tree t0 = bst_from_sequence({5, 3, 7});
  const DequeResult d = deque_run(t0, parse_deque_script("push 2\npop\n"));
  CHECK(d.tree.keys() == t0.keys());
  CHECK(d.removed == std::vector<Key>{2});
  CHECK(d.cost <= 8);

  const Key n = 500;
  std::vector<DequeOp> pops(static_cast<std::size_t>(n), DequeOp{DequeOpKind::Pop, 0});
  const DequeResult all = deque_run(right_spine(iota_keys(1, n)), pops);
  CHECK(all.tree.empty());
  CHECK(all.removed == iota_keys(1, n));
  MESSAGE("n sequential pops on a right spine, n = " << n << ": cost " << all.cost);
  CHECK(all.cost <= 10 * n);

  CHECK_THROWS_AS(parse_deque_script("shove 3\n"), Error);
}
