#include "doctest.h"

#include <functional>

#include "splaylab/algorithms.hpp"
#include "splaylab/harness.hpp"
#include "splaylab/opt.hpp"
#include "splaylab/transforms.hpp"

using namespace splaylab;

namespace {

void all_executions(const Tree& cur, const std::vector<Key>& x, Execution& e,
                    const std::function<void(const Execution&)>& f) {
  if (e.size() == x.size()) {
    f(e);
    return;
  }
  for (const Transition& tr : enumerate_transitions(cur, x[e.size()])) {
    e.push_back(tr.q_prime);
    all_executions(tr.after, x, e, f);
    e.pop_back();
  }
}

// Replays keys with per-access path lengths.
struct Replay {
  Tree final_tree;
  std::int64_t cost = 0;
  std::int64_t max_nodes = 0;
  std::vector<Tree> after;
};
Replay replay(Algo a, const Tree& t, const std::vector<Key>& keys) {
  Replay r;
  TreeEditor ed(t);
  for (Key k : keys) {
    const AccessRecord rec = access_in_place(a, ed, k);
    r.cost += rec.cost;
    r.max_nodes = std::max(r.max_nodes, rec.cost);
    r.after.push_back(ed.tree());
  }
  r.final_tree = std::move(ed).take();
  return r;
}

}  // namespace

TEST_CASE("simulation blocks reproduce every after-tree, n <= 4, m <= 2") {
  std::size_t count = 0;
  for (int n = 1; n <= 4; ++n)
    for (const Tree& t : all_shapes(n))
      for (std::size_t m = 1; m <= 2; ++m) {
        std::vector<Key> x(m, 1);
        while (true) {
          const Instance inst{x, t, std::nullopt};
          Execution e;
          all_executions(t, x, e, [&](const Execution& ex) {
            ++count;
            const ExecutionTrace tr = validate(inst, ex);
            const Embedding emb = simulation_embedding(inst, ex);
            const Replay rep = replay(Algo::Splay, emb.initial, emb.keys);
            CHECK(is_subsequence(x, emb.keys));
            CHECK(rep.max_nodes <= 4);
            CHECK(rep.cost <= 80 * tr.cost);
            REQUIRE(emb.block_end.size() == m);
            for (std::size_t i = 0; i < m; ++i) {
              const std::size_t end = emb.block_end[i];
              CHECK(emb.keys[end - 1] == x[i]);
              // the guard-padded after-tree restricted to the real keys
              const Tree& at = rep.after[end - 1];
              CHECK(root_subtree(at, t.keys()) == tr.steps[i].after);
            }
          });
          std::size_t p = 0;
          while (p < m && x[p] == n) x[p++] = 1;
          if (p == m) break;
          ++x[p];
        }
      }
  CHECK(count > 1000);
}

TEST_CASE("simulation blocks on large trees stay within four-node paths") {
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    Rng rng = Rng::for_trial(43, trial);
    const Tree t = random_tree(rng, static_cast<std::size_t>(rng.uniform(4, 40)));
    const auto x = random_requests(rng, t, static_cast<std::size_t>(rng.uniform(1, 6)));
    const Instance inst{x, t, std::nullopt};
    // Move-to-Root's execution has large transition trees on deep requests.
    const ExecutionTrace tr = execute(Algo::MoveToRoot, inst);
    const Embedding emb = simulation_embedding(inst, tr.execution());
    const Replay rep = replay(Algo::Splay, emb.initial, emb.keys);
    CHECK(emb.initial == t);
    CHECK(rep.final_tree == tr.final_tree());
    CHECK(rep.max_nodes <= 4);
    CHECK(rep.cost <= 80 * tr.cost);
    CHECK(is_subsequence(x, emb.keys));
  }
}

TEST_CASE("top-down embedding on random tiny executions") {
  for (std::uint64_t trial = 0; trial < 300; ++trial) {
    Rng rng = Rng::for_trial(47, trial);
    const Tree t = random_tree(rng, static_cast<std::size_t>(rng.uniform(4, 7)));
    const auto x = random_requests(rng, t, static_cast<std::size_t>(rng.uniform(1, 4)));
    const Instance inst{x, t, std::nullopt};
    Execution e;
    Tree cur = t;
    for (Key k : x) {
      const auto trs = enumerate_transitions(cur, k);
      const Transition& pick = trs[rng.uniform(0, static_cast<std::int64_t>(trs.size()) - 1)];
      e.push_back(pick.q_prime);
      cur = pick.after;
    }
    const ExecutionTrace tr = validate(inst, e);
    const TopDownEmbedding emb = topdown_embedding(inst, e);
    const std::vector<Key> init{emb.z, emb.b, emb.a, emb.z};
    REQUIRE(emb.keys.size() >= 4);
    CHECK(std::vector<Key>(emb.keys.begin(), emb.keys.begin() + 4) == init);
    CHECK(emb.a == t.keys().front());
    CHECK(emb.b == t.keys()[1]);
    CHECK(emb.z == t.keys().back());
    CHECK(is_subsequence(x, emb.keys));
    const Replay rep = replay(Algo::TopDownSplay, t, emb.keys);
    CHECK(rep.final_tree == topdown_frame(tr.final_tree(), emb.a, emb.b, emb.z));
    CHECK(rep.cost <= kTopDownCostConstant * (tr.cost + static_cast<std::int64_t>(t.size())));
  }
}

TEST_CASE("top-down frame") {
  const Tree t = bst_from_sequence({4, 2, 6, 1, 3, 5, 7});
  const Tree f = topdown_frame(t, 1, 2, 7);
  CHECK(f.root() == 7);
  CHECK(f.left_child(7) == 2);
  CHECK(f.left_child(2) == 1);
  CHECK_FALSE(f.right_child(7).has_value());
  CHECK(f.keys() == t.keys());
}
