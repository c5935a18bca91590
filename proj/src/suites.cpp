#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

#include "splaylab/algorithms.hpp"
#include "splaylab/harness.hpp"
#include "splaylab/opt.hpp"
#include "splaylab/transforms.hpp"
#include "splaylab/wilber.hpp"

namespace splaylab {

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string SuiteResult::text() const {
  std::ostringstream os;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", seconds);
  os << "suite " << suite << " (criterion " << criterion << "): " << (passed() ? "PASS" : "FAIL") << " in " << buf
     << "s\n";
  for (const Check& c : checks)
    os << "  [" << (c.passed ? "ok" : "FAIL") << "] " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  return os.str();
}

std::string SuiteResult::csv() const {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  std::ostringstream os;
  for (const Check& c : checks)
    os << suite << "," << criterion << "," << quote(c.name) << "," << (c.passed ? "pass" : "fail") << ","
       << quote(c.detail) << "\n";
  return os.str();
}

namespace {

struct Ctx {
  SuiteResult& r;
  const SuiteOptions& opt;
  void check(const std::string& name, bool ok, const std::string& detail = "") { r.checks.push_back({name, ok, detail}); }
  std::size_t cap_n(std::size_t d) const { return opt.max_n ? std::min(d, *opt.max_n) : d; }
  std::size_t cap_m(std::size_t d) const { return opt.max_m ? std::min(d, *opt.max_m) : d; }
};

std::string keys_str(const std::vector<Key>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// Calls f on every sequence over keys 1..n of length m.
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

struct Violations {
  std::size_t count = 0, total = 0;
  std::string first;
  void add(bool ok, const std::function<std::string()>& what) {
    ++total;
    if (ok) return;
    if (count++ == 0) first = what();
  }
  std::string detail(const std::string& unit) const {
    std::string s = std::to_string(total) + " " + unit + ", " + std::to_string(count) + " violations";
    return first.empty() ? s : s + "; first: " + first;
  }
};

// Random valid execution: a uniformly chosen transition per access.
Execution random_execution(Rng& rng, const Tree& t, const std::vector<Key>& x) {
  Execution e;
  Tree cur = t;
  for (Key k : x) {
    auto trs = enumerate_transitions(cur, k);
    auto& pick = trs[rng.uniform(0, static_cast<std::int64_t>(trs.size()) - 1)];
    e.push_back(pick.q_prime);
    cur = pick.after;
  }
  return e;
}

struct SplayReplay {
  Tree final_tree;
  std::int64_t cost = 0;
  int max_path_nodes = 0;
};
SplayReplay replay_splay(Algo a, const Tree& t, const std::vector<Key>& keys) {
  SplayReplay r;
  TreeEditor ed(t);
  for (Key k : keys) {
    AccessRecord rec = access_in_place(a, ed, k);
    r.cost += rec.cost;
    r.max_path_nodes = std::max(r.max_path_nodes, static_cast<int>(rec.cost));
  }
  r.final_tree = std::move(ed).take();
  return r;
}

// ---------------------------------------------------------------- 1
void suite_g4(Ctx& c) {
  const TransitionDigraph& g4 = cached_digraph(4, Algo::Splay);
  c.check("G_4 has 14 vertices", g4.vertices.size() == 14, std::to_string(g4.vertices.size()));
  const bool sc = strongly_connected(g4);
  c.check("G_4 is strongly connected", sc);
  if (sc) {
    const int d = diameter(g4);
    c.check("G_4 diameter <= 5", d <= 5, "diameter " + std::to_string(d));
  }
  c.check("G_3 (splay) is not strongly connected", !strongly_connected(cached_digraph(3, Algo::Splay)));
  c.check("G_3 (move-to-root) is strongly connected", strongly_connected(cached_digraph(3, Algo::MoveToRoot)));
  bool deg = true;
  for (int n = 1; n <= 6; ++n)
    for (Algo a : {Algo::Splay, Algo::MoveToRoot, Algo::TopDownSplay}) {
      const TransitionDigraph& g = cached_digraph(n, a);
      if (g.vertices.size() != catalan(n)) deg = false;
      for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        if (static_cast<int>(g.arcs[v].size()) != n) deg = false;
        if (g.arcs[v][g.vertices[v].root() - 1] != static_cast<int>(v)) deg = false;
      }
    }
  c.check("out-degree n and root self-loops, n <= 6, all algorithms", deg);
}

// ---------------------------------------------------------------- 2
void check_plan(const Tree& s, const Tree& t, Violations& v) {
  const TransformPlan p = transform_sequence(s, t);
  const std::size_t n = s.size();
  const SplayReplay rep = replay_splay(Algo::Splay, s, p.keys);
  bool restricted = true;
  TreeEditor ed(s);
  for (Key y : p.restricted) {
    if (!is_restricted(ed.tree(), y)) restricted = false;
    ed.rotate_key(y);
  }
  const bool ok = rep.final_tree == t && rep.cost == p.cost && p.cost <= 80 * static_cast<std::int64_t>(n) &&
                  p.restricted.size() <= 4 * n && restricted && ed.tree() == t;
  v.add(ok, [&] {
    return shape_string(s) + " -> " + shape_string(t) + " cost " + std::to_string(p.cost) + " rotations " +
           std::to_string(p.restricted.size());
  });
}

void suite_transform(Ctx& c) {
  Violations v4;
  std::int64_t max_cost = 0;
  for (const Tree& s : all_shapes(4))
    for (const Tree& t : all_shapes(4)) {
      check_plan(s, t, v4);
      max_cost = std::max(max_cost, transform_sequence(s, t).cost);
    }
  c.check("all 14x14 four-node pairs replay exactly, cost <= 320, <= 16 restricted rotations", v4.count == 0,
          v4.detail("pairs") + "; max cost " + std::to_string(max_cost));
  for (std::size_t n : {8, 16, 32, 64}) {
    Violations v;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
      Rng rng = Rng::for_trial(c.opt.seed, n * 1000 + trial);
      const Tree s = random_tree(rng, n), t = random_tree(rng, n);
      check_plan(s, t, v);
    }
    c.check("n=" + std::to_string(n) + ": 100 random pairs replay exactly, cost <= 80n, <= 4n restricted rotations",
            v.count == 0, v.detail("pairs"));
  }
}

// ---------------------------------------------------------------- 3
struct BlockCheck {
  std::int64_t cost = 0;
  bool ok = false;
};

void suite_simulation(Ctx& c) {
  std::unordered_map<std::string, BlockCheck> blocks;
  std::unordered_map<std::string, std::vector<Transition>> trans;
  auto transitions = [&](const Tree& t, Key x) -> const std::vector<Transition>& {
    const std::string key = shape_string(t) + "#" + std::to_string(x);
    auto it = trans.find(key);
    if (it == trans.end()) it = trans.emplace(key, enumerate_transitions(t, x)).first;
    return it->second;
  };
  auto block = [&](const Tree& padded, const Tree& qp) -> const BlockCheck& {
    const std::string key = shape_string(padded) + "#" + shape_string(qp);
    auto it = blocks.find(key);
    if (it != blocks.end()) return it->second;
    BlockCheck b;
    const Tree q = root_subtree(padded, qp.keys());
    const auto keys = simulation_block(padded, q, qp);
    const SplayReplay rep = replay_splay(Algo::Splay, padded, keys);
    b.cost = rep.cost;
    b.ok = !keys.empty() && keys.back() == qp.root() && rep.max_path_nodes <= 4 &&
           rep.final_tree == substitute(padded, qp);
    return blocks.emplace(key, b).first->second;
  };

  Violations ex;
  std::size_t executions = 0;
  const std::size_t max_n = c.cap_n(4), max_m = c.cap_m(3);
  for (std::size_t n = 1; n <= max_n; ++n)
    for (const Tree& t : all_shapes(static_cast<int>(n)))
      for (std::size_t m = 1; m <= max_m; ++m) {
        // Depth-first over request sequences and transitions together.
        std::vector<Key> xs;
        std::function<void(const Tree&, const Tree&, std::int64_t, std::int64_t, bool)> dfs =
            [&](const Tree& cur, const Tree& padded, std::int64_t ce, std::int64_t cs, bool ok) {
              if (xs.size() == m) {
                ++executions;
                ex.add(ok && cs <= 80 * ce, [&] { return "tree " + shape_string(t) + " X=" + keys_str(xs); });
                return;
              }
              for (Key x = 1; x <= static_cast<Key>(n); ++x) {
                xs.push_back(x);
                for (const Transition& tr : transitions(cur, x)) {
                  const BlockCheck& b = block(padded, tr.q_prime);
                  dfs(tr.after, substitute(padded, tr.q_prime), ce + static_cast<std::int64_t>(tr.q_prime.size()),
                      cs + b.cost, ok && b.ok);
                }
                xs.pop_back();
              }
            };
        dfs(t, pad_guards(t, 4), 0, 0, true);
      }
  c.check("exhaustive n<=" + std::to_string(max_n) + ", m<=" + std::to_string(max_m) +
              ": every block ends with its request, replays exactly, paths <= 4 nodes; cost <= 80 cost(E)",
          ex.count == 0, std::to_string(executions) + " executions, " + std::to_string(blocks.size()) +
                             " distinct blocks, " + std::to_string(ex.count) + " violations" +
                             (ex.first.empty() ? "" : "; first: " + ex.first));

  Violations rnd;
  double worst = 0;
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    Rng rng = Rng::for_trial(c.opt.seed, trial);
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 6));
    const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 5));
    const Tree t = random_tree(rng, n);
    const auto x = random_requests(rng, t, m);
    const Execution e = random_execution(rng, t, x);
    const Instance inst{x, t, std::nullopt};
    const std::int64_t ce = validate(inst, e).cost;
    const Embedding emb = simulation_embedding(inst, e);
    const SplayReplay rep = replay_splay(Algo::Splay, emb.initial, emb.keys);
    Tree expect = emb.initial;
    for (const Tree& qp : e) expect = substitute(expect, qp);
    worst = std::max(worst, static_cast<double>(rep.cost) / static_cast<double>(ce));
    rnd.add(is_subsequence(x, emb.keys) && rep.cost <= 80 * ce && rep.max_path_nodes <= 4 && rep.final_tree == expect,
            [&] { return "tree " + shape_string(t) + " X=" + keys_str(x); });
  }
  c.check("1000 random executions (n<=6, m<=5): X subsequence, cost <= 80 cost(E), paths <= 4 nodes, final tree",
          rnd.count == 0, rnd.detail("executions") + "; max cost ratio " + fmt(worst));
}

// ---------------------------------------------------------------- 4
void suite_opt_monotone(Ctx& c) {
  const std::size_t n = c.cap_n(4), m = c.cap_m(3);
  const MonotoneReport r = opt_monotone_sweep(n, m);
  c.check("OPT(Y,T) < OPT(X,T) for every strict subsequence, n<=" + std::to_string(n) + ", m<=" + std::to_string(m),
          r.violations == 0,
          std::to_string(r.instances) + " instances, " + std::to_string(r.comparisons) + " comparisons, " +
              std::to_string(r.violations) + " violations" + (r.messages.empty() ? "" : "; " + r.messages.front()));
  c.check("elided optimal executions validate with strictly smaller cost", r.elision_violations == 0,
          std::to_string(r.elisions) + " elisions, " + std::to_string(r.elision_violations) + " violations");
}

// ---------------------------------------------------------------- 5
void suite_wilber_equivalence(Ctx& c) {
  auto ok = [](const std::vector<Key>& x) {
    const Tree b = bst_from_sequence(std::span<const Key>(x));
    return lambda2(x) == lambda(x, b) - static_cast<std::int64_t>(b.size()) + 1;
  };
  Violations ex;
  const std::size_t mm = c.cap_m(5), kk = c.cap_n(4);
  for (std::size_t m = 1; m <= mm; ++m)
    for_sequences(kk, m, [&](const std::vector<Key>& x) { ex.add(ok(x), [&] { return keys_str(x); }); });
  c.check("exhaustive m<=" + std::to_string(mm) + " over <=" + std::to_string(kk) + " keys", ex.count == 0,
          ex.detail("sequences"));
  Violations rnd;
  for (std::uint64_t trial = 0; trial < 10000; ++trial) {
    Rng rng = Rng::for_trial(c.opt.seed, trial);
    const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 12));
    const Key keys = rng.uniform(1, 8);
    std::vector<Key> x;
    for (std::size_t i = 0; i < m; ++i) x.push_back(rng.uniform(1, keys));
    rnd.add(ok(x), [&] { return keys_str(x); });
  }
  c.check("10^4 random sequences (m<=12, keys<=8)", rnd.count == 0, rnd.detail("sequences"));
  c.check("kappa(X,1) = 0 and lambda2 of one request is 1", kappa({5, 1, 4}, 1) == 0 && lambda2({7}) == 1);
}

// ---------------------------------------------------------------- 6
void suite_lambda_opt(Ctx& c) {
  double worst = 0;
  Violations ex;
  const std::size_t nn = c.cap_n(4), mm = c.cap_m(3);
  auto one = [&](const Instance& inst, Violations& v) {
    const std::int64_t lam = lambda(inst), opt = opt_cost(inst).cost;
    worst = std::max(worst, static_cast<double>(lam) / static_cast<double>(opt));
    v.add(lam <= 24 * opt, [&] { return "tree " + shape_string(inst.initial) + " X=" + keys_str(inst.requests); });
  };
  for (std::size_t n = 1; n <= nn; ++n)
    for (const Tree& t : all_shapes(static_cast<int>(n)))
      for (std::size_t m = 1; m <= mm; ++m)
        for_sequences(n, m, [&](const std::vector<Key>& x) { one({x, t, std::nullopt}, ex); });
  c.check("Lambda <= 24 OPT, exhaustive n<=" + std::to_string(nn) + ", m<=" + std::to_string(mm), ex.count == 0,
          ex.detail("instances"));
  Violations rnd;
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    Rng rng = Rng::for_trial(c.opt.seed, trial);
    const Tree t = random_tree(rng, 5);
    one({random_requests(rng, t, 4), t, std::nullopt}, rnd);
  }
  c.check("Lambda <= 24 OPT, 200 random n=5, m=4", rnd.count == 0, rnd.detail("instances"));
  c.check("observed max Lambda/OPT", true, fmt(worst));
}

// ---------------------------------------------------------------- 7
void suite_remove_one(Ctx& c) {
  Violations ex;
  const std::size_t nn = c.cap_n(5), mm = c.cap_m(4);
  for (std::size_t n = 1; n <= nn; ++n)
    for (const Tree& s : all_shapes(static_cast<int>(n)))
      for (Key x = 1; x <= static_cast<Key>(n); ++x) {
        const int lv = level_of(s, x);
        for (std::size_t len = 0; len <= mm; ++len)
          for_sequences(n, len, [&](const std::vector<Key>& z) {
            ex.add(remove_one_gap(s, x, z) <= 4 * lv, [&] {
              return "S=" + shape_string(s) + " x=" + std::to_string(x) + " Z=" + keys_str(z);
            });
          });
      }
  c.check("gap <= 4 level_S(x), exhaustive n<=" + std::to_string(nn) + ", |Z|<=" + std::to_string(mm), ex.count == 0,
          ex.detail("cases"));
  Violations rnd;
  for (std::uint64_t trial = 0; trial < 10000; ++trial) {
    Rng rng = Rng::for_trial(c.opt.seed, trial);
    const Tree s = random_tree(rng, static_cast<std::size_t>(rng.uniform(1, 10)));
    const Key x = random_requests(rng, s, 1)[0];
    const auto z = random_requests(rng, s, static_cast<std::size_t>(rng.uniform(0, 8)));
    rnd.add(remove_one_gap(s, x, z) <= 4 * level_of(s, x), [&] { return "S=" + shape_string(s); });
  }
  c.check("gap <= 4 level_S(x), 10^4 random (n<=10, |Z|<=8)", rnd.count == 0, rnd.detail("cases"));
  const Tree s = bst_from_sequence({1, 7, 4, 2, 3, 6, 5});
  const std::int64_t gap = remove_one_gap(s, 4, {5, 3});
  const int lv = level_of(s, 4);
  c.check("counter-example S=BST(1,7,4,2,3,6,5), Z=(5,3), x=4 exceeds level_S(4)", lv == 3 && gap > lv,
          "gap " + std::to_string(gap) + ", level " + std::to_string(lv));
}

// ---------------------------------------------------------------- 8
void suite_wilber_monotone(Ctx& c) {
  Violations ex;
  const std::size_t nn = c.cap_n(4), mm = c.cap_m(4);
  for (std::size_t n = 1; n <= nn; ++n)
    for (const Tree& t : all_shapes(static_cast<int>(n)))
      for (std::size_t m = 1; m <= mm; ++m)
        for_sequences(n, m, [&](const std::vector<Key>& x) {
          const std::int64_t lx = lambda(x, t);
          for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
            std::vector<Key> y;
            for (std::size_t j = 0; j < m; ++j)
              if (mask >> j & 1u) y.push_back(x[j]);
            ex.add(lambda(y, t) <= 4 * lx, [&] { return "tree " + shape_string(t) + " X=" + keys_str(x) + " Y=" + keys_str(y); });
          }
        });
  c.check("Lambda(Y) <= 4 Lambda(X), exhaustive n<=" + std::to_string(nn) + ", m<=" + std::to_string(mm),
          ex.count == 0, ex.detail("subsequences"));
  Violations rnd;
  double worst = 0;
  for (std::uint64_t trial = 0; trial < 10000; ++trial) {
    Rng rng = Rng::for_trial(c.opt.seed, trial);
    const Tree t = random_tree(rng, static_cast<std::size_t>(rng.uniform(1, 8)));
    const auto x = random_requests(rng, t, static_cast<std::size_t>(rng.uniform(1, 6)));
    std::vector<Key> y;
    for (Key k : x)
      if (rng.coin()) y.push_back(k);
    const std::int64_t lx = lambda(x, t), ly = lambda(y, t);
    worst = std::max(worst, static_cast<double>(ly) / static_cast<double>(lx));
    rnd.add(ly <= 4 * lx, [&] { return "tree " + shape_string(t) + " X=" + keys_str(x) + " Y=" + keys_str(y); });
  }
  c.check("Lambda(Y) <= 4 Lambda(X), 10^4 random (n<=8, m<=6)", rnd.count == 0,
          rnd.detail("trials") + "; max ratio " + fmt(worst));
}

// ---------------------------------------------------------------- 9
void suite_window_levels(Ctx& c) {
  LevelFormulaReport ex;
  std::size_t runs = 0;
  const std::size_t nn = c.cap_n(5), mm = c.cap_m(4);
  for (std::size_t n = 1; n <= nn; ++n)
    for (const Tree& s : all_shapes(static_cast<int>(n)))
      for (Key x = 1; x <= static_cast<Key>(n); ++x)
        for (std::size_t len = 0; len <= mm; ++len)
          for_sequences(n, len, [&](const std::vector<Key>& z) {
            ex.merge(validate_level_formulas(window_decompose(s, x, z)));
            ++runs;
          });
  LevelFormulaReport rnd;
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    Rng rng = Rng::for_trial(c.opt.seed, trial);
    const Tree s = random_tree(rng, static_cast<std::size_t>(rng.uniform(1, 8)));
    const Key x = random_requests(rng, s, 1)[0];
    const auto z = random_requests(rng, s, static_cast<std::size_t>(rng.uniform(0, 8)));
    rnd.merge(validate_level_formulas(window_decompose(s, x, z)));
  }
  for (auto* rep : {&ex, &rnd}) {
    const std::string scope = rep == &ex ? "exhaustive n<=" + std::to_string(nn) + ", |Z|<=" + std::to_string(mm) +
                                               " (" + std::to_string(runs) + " runs)"
                                         : "1000 random n<=8";
    const std::string first = rep->messages.empty() ? "" : "; first: " + rep->messages.front();
    c.check(scope + ": top tree, window keys, K = movetoroot(J, x)",
            rep->top_tree + rep->window_keys + rep->mtr_split == 0,
            std::to_string(rep->steps_checked) + " steps; " + std::to_string(rep->top_tree) + "/" +
                std::to_string(rep->window_keys) + "/" + std::to_string(rep->mtr_split) + " violations" + first);
    c.check(scope + ": level differences sum to the gap", rep->delta_sum == 0,
            std::to_string(rep->delta_sum) + " violations");
    c.check(scope + ": zipped and unzipped level case tables", rep->zipped + rep->unzipped == 0,
            std::to_string(rep->formula_checks) + " formula checks; " + std::to_string(rep->zipped) + "/" +
                std::to_string(rep->unzipped) + " violations" + first);
    c.check(scope + ": augmented-subtree differences, settled steps, decrease table, level-difference bounds",
            rep->augmented + rep->augmented_stable + rep->zero_after_settle + rep->max_level_decrease +
                    rep->level_difference_bound + rep->per_step_bound ==
                0,
            std::to_string(rep->augmented) + "/" + std::to_string(rep->augmented_stable) + "/" +
                std::to_string(rep->zero_after_settle) + "/" + std::to_string(rep->max_level_decrease) + "/" +
                std::to_string(rep->level_difference_bound) + "/" + std::to_string(rep->per_step_bound) +
                " violations");
  }
}

// ---------------------------------------------------------------- 10
void suite_additive(Ctx& c) {
  Violations v;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    Rng rng = Rng::for_trial(c.opt.seed, trial);
    const Tree t = random_tree(rng, static_cast<std::size_t>(rng.uniform(4, 32)));
    const auto x = random_requests(rng, t, static_cast<std::size_t>(rng.uniform(1, 16)));
    const int k = static_cast<int>(rng.uniform(1, 5));
    const Instance inst{x, t, std::nullopt};
    const auto u = augmented_repeat(inst, 1);
    const auto ku = augmented_repeat(inst, k);
    const RunTotals ru = run_streaming(Algo::Splay, t, u);
    const std::int64_t cku = algo_cost(Algo::Splay, t, ku);
    v.add(cku == k * ru.cost && ru.final_tree == t && ru.cost >= algo_cost(Algo::Splay, t, x),
          [&] { return "tree " + shape_string(t) + " X=" + keys_str(x) + " k=" + std::to_string(k); });
  }
  c.check("cost(k*U,T) = k cost(U,T); U resets the tree; cost(U) >= cost(X) (100 random, n<=32, m<=16, k<=5)",
          v.count == 0, v.detail("instances"));
  Violations o;
  double worst = 0;
  const Guards g{4, 100000};
  for (const Tree& t : all_shapes(4))
    for_sequences(4, 2, [&](const std::vector<Key>& x) {
      const Instance inst{x, t, std::nullopt};
      const std::int64_t ox = opt_cost(inst, g).cost;
      const std::int64_t oku = opt_cost({augmented_repeat(inst, 2), t, std::nullopt}, g).cost;
      worst = std::max(worst, static_cast<double>(oku) / static_cast<double>(2 * ox));
      o.add(oku <= 83 * 2 * ox, [&] { return "tree " + shape_string(t) + " X=" + keys_str(x); });
    });
  c.check("OPT(2*U,T) <= 83*2*OPT(X,T), all n=4 trees, m=2", o.count == 0,
          o.detail("instances") + "; max OPT(kU)/(k OPT(X)) " + fmt(worst));
}

// ---------------------------------------------------------------- 11
double family_ratio(Algo a, const Instance& inst) {
  return static_cast<double>(algo_cost(a, inst.initial, *inst.subsequence)) /
         static_cast<double>(algo_cost(a, inst.initial, inst.requests));
}

void suite_families(Ctx& c) {
  const double r1 = family_ratio(Algo::Splay, generate("spine-312", {10000, 0, 0, c.opt.seed}));
  c.check("spine-312 n=10^4: cost(Y)/cost(X) in [1.45, 1.55]", r1 >= 1.45 && r1 <= 1.55, fmt(r1));
  const double r2 = family_ratio(Algo::Splay, generate("powers", {0, 14, 0, c.opt.seed}));
  c.check("powers k=14: cost(Y)/cost(X) in [1.9, 2.1]", r2 >= 1.9 && r2 <= 2.1, fmt(r2));
}

// ---------------------------------------------------------------- 12
void check_conversion(const Instance& inst, const Execution& e, Violations& v) {
  const std::int64_t ce = validate(inst, e).cost;
  const ExecutionTrace tr = validate(inst, e);
  const RotationExecution r = to_rotation_model(inst, e);
  const RotationReplay rep = replay_rotations(inst, r);
  bool same = true;
  for (std::size_t i = 0; i < rep.after.size(); ++i)
    if (rep.after[i] != tr.steps[i].after || rep.search_depth[i] != 0) same = false;
  bool back_ok = false;
  std::int64_t cb = 0;
  try {
    const FromRotationResult fr = from_rotation_model(inst, r);
    const ExecutionTrace btr = validate(inst, fr.execution);
    cb = btr.cost;
    back_ok = apply_rotations(btr.final_tree(), fr.dropped) == tr.final_tree() && cb <= 4 * rep.cost;
  } catch (const Error&) {
  }
  v.add(same && rep.cost <= 3 * ce && back_ok, [&] {
    return "tree " + shape_string(inst.initial) + " X=" + keys_str(inst.requests) + " cost " + std::to_string(ce) +
           " rot " + std::to_string(rep.cost) + " back " + std::to_string(cb);
  });
}

void check_from_rotation(const Instance& inst, const RotationExecution& r, Violations& v) {
  const RotationReplay rep = replay_rotations(inst, r);
  bool ok = false;
  std::int64_t cb = 0;
  try {
    const FromRotationResult fr = from_rotation_model(inst, r);
    const ExecutionTrace tr = validate(inst, fr.execution);
    cb = tr.cost;
    // The conversion roots each request before its search, so the reference
    // final tree has x_m rotated to the root.
    const Tree expect = move_to_root(rep.after.back(), inst.requests.back()).first;
    ok = cb <= 4 * rep.cost && apply_rotations(tr.final_tree(), fr.dropped) == expect;
  } catch (const Error&) {
  }
  v.add(ok, [&] {
    return "tree " + shape_string(inst.initial) + " X=" + keys_str(inst.requests) + " rot cost " +
           std::to_string(rep.cost) + " back " + std::to_string(cb);
  });
}

void suite_conversions(Ctx& c) {
  Violations ex;
  const std::size_t nn = c.cap_n(3), mm = c.cap_m(2);
  for (std::size_t n = 1; n <= nn; ++n)
    for (const Tree& t : all_shapes(static_cast<int>(n)))
      for (std::size_t m = 1; m <= mm; ++m)
        for_sequences(n, m, [&](const std::vector<Key>& x) {
          std::function<void(const Tree&, Execution&)> dfs = [&](const Tree& cur, Execution& e) {
            if (e.size() == m) {
              check_conversion({x, t, std::nullopt}, e, ex);
              return;
            }
            for (const Transition& tr : enumerate_transitions(cur, x[e.size()])) {
              e.push_back(tr.q_prime);
              dfs(tr.after, e);
              e.pop_back();
            }
          };
          Execution e;
          dfs(t, e);
        });
  c.check("exhaustive executions n<=" + std::to_string(nn) + ", m<=" + std::to_string(mm) +
              ": to-rotation <= 3x, round trip validates with <= 4x, same after-trees",
          ex.count == 0, ex.detail("executions"));
  Violations rnd;
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    Rng rng = Rng::for_trial(c.opt.seed, trial);
    const Tree t = random_tree(rng, static_cast<std::size_t>(rng.uniform(1, 6)));
    const auto x = random_requests(rng, t, static_cast<std::size_t>(rng.uniform(1, 5)));
    check_conversion({x, t, std::nullopt}, random_execution(rng, t, x), rnd);
  }
  c.check("1000 random executions (n<=6, m<=5): to-rotation <= 3x, round trip <= 4x", rnd.count == 0,
          rnd.detail("executions"));
  Violations rot;
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    Rng rng = Rng::for_trial(c.opt.seed ^ 0xabcdefULL, trial);
    const Tree t = random_tree(rng, static_cast<std::size_t>(rng.uniform(1, 6)));
    const auto x = random_requests(rng, t, static_cast<std::size_t>(rng.uniform(1, 5)));
    RotationExecution r;
    TreeEditor ed(t);
    for (std::size_t i = 0; i < x.size(); ++i) {
      RotationStep st;
      const std::int64_t e = t.size() > 1 ? rng.uniform(0, 4) : 0;
      for (std::int64_t j = 0; j < e; ++j) {
        Key k;
        do k = random_requests(rng, t, 1)[0];
        while (k == ed.tree().root());
        ed.rotate_key(k);
        st.rotations.push_back(k);
      }
      r.steps.push_back(std::move(st));
    }
    check_from_rotation({x, t, std::nullopt}, r, rot);
  }
  c.check("1000 random rotation executions: from-rotation validates, cost <= 4x, final tree", rot.count == 0,
          rot.detail("executions"));
}

// ---------------------------------------------------------------- 13
void suite_topdown(Ctx& c) {
  const TransitionDigraph& g3 = cached_digraph(3, Algo::TopDownSplay);
  const Tree ls = left_spine(iota_keys(1, 3));
  std::string detail;
  bool blocked = false;
  for (const Tree& zz : {bst_from_sequence({3, 1, 2}), bst_from_sequence({1, 3, 2})}) {
    bool reach = true;
    try {
      shortest_path(g3, ls, zz);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Unreachable) reach = false;
    }
    detail += shape_string(zz) + (reach ? " reachable; " : " unreachable; ");
    blocked = blocked || !reach;
  }
  c.check("n=3 top-down digraph: the left spine cannot reach a zig-zag shape", blocked, detail);
  bool none = true;
  for (int n = 3; n <= 6; ++n) none = none && !strongly_connected(cached_digraph(n, Algo::TopDownSplay));
  c.check("top-down digraph not strongly connected for 3 <= n <= 6", none);

  Violations v;
  double worst = 0;
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    Rng rng = Rng::for_trial(c.opt.seed, trial);
    const std::size_t n = static_cast<std::size_t>(rng.uniform(4, 6));
    const Tree t = random_tree(rng, n);
    const auto x = random_requests(rng, t, static_cast<std::size_t>(rng.uniform(1, 4)));
    const Execution e = random_execution(rng, t, x);
    const Instance inst{x, t, std::nullopt};
    const ExecutionTrace tr = validate(inst, e);
    bool ok = false;
    std::int64_t cost = 0;
    try {
      const TopDownEmbedding emb = topdown_embedding(inst, e);
      const SplayReplay rep = replay_splay(Algo::TopDownSplay, t, emb.keys);
      cost = rep.cost;
      worst = std::max(worst, static_cast<double>(cost) / static_cast<double>(tr.cost + static_cast<std::int64_t>(n)));
      ok = is_subsequence(x, emb.keys) && rep.final_tree == topdown_frame(tr.final_tree(), emb.a, emb.b, emb.z) &&
           cost <= kTopDownCostConstant * (tr.cost + static_cast<std::int64_t>(n));
    } catch (const Error&) {
    }
    v.add(ok, [&] { return "tree " + shape_string(t) + " X=" + keys_str(x) + " cost " + std::to_string(cost); });
  }
  c.check("200 random executions: X subsequence, final frame matches, cost <= 100 (cost(E) + |T|)", v.count == 0,
          v.detail("executions") + "; max cost/(cost(E)+n) " + fmt(worst));
}

// ---------------------------------------------------------------- 14
void suite_universal(Ctx& c) {
  for (std::size_t q : {5, 7, 9}) {
    Violations v;
    double worst = 0;
    std::size_t max_len = 0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
      Rng rng = Rng::for_trial(c.opt.seed, q * 1000 + trial);
      const std::size_t n = static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(q), 200));
      const Tree t = random_tree(rng, n);
      std::vector<Key> all = t.keys();
      rng.shuffle(all);
      std::vector<Key> qkeys(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(q));
      const Tree qt = bst_from_sequence(std::span<const Key>(qkeys));
      const auto u = universal_transform(qt);
      const SplayReplay rep = replay_splay(Algo::Splay, t, u);
      const auto sorted = qt.keys();
      const bool rooted = is_root_subtree(rep.final_tree, sorted) && root_subtree(rep.final_tree, sorted) == qt;
      const bool own = std::all_of(u.begin(), u.end(), [&](Key k) { return qt.contains(k); });
      max_len = std::max(max_len, u.size());
      worst = std::max(worst, static_cast<double>(rep.cost) / static_cast<double>(root_closure(t, sorted).size()));
      v.add(rooted && own && u.size() <= 30 * q, [&] { return "Q=" + shape_string(qt) + " |T|=" + std::to_string(n); });
    }
    c.check("|Q|=" + std::to_string(q) + ": Q is a root subtree after U(Q), |U(Q)| <= 30|Q|", v.count == 0,
            v.detail("supersets") + "; max |U| " + std::to_string(max_len) + "; max cost/|C_T(Q)| " + fmt(worst));
  }
}

// ---------------------------------------------------------------- 15
void suite_simultaneous(Ctx& c) {
  for (const SimultaneousCheck& s : check_listed_simultaneous())
    c.check(std::string(s.from_left_spine ? "left spine + " : "right spine + ") + keys_str(s.seq) +
                ": Splay and Move-to-Root agree",
            s.agree, "splay " + shape_string(s.splay_result) + ", move-to-root " + shape_string(s.mtr_result));
  const auto keys = iota_keys(1, 4);
  const Tree ls = left_spine(keys), rs = right_spine(keys);
  const std::vector<Key> down{4, 3, 2, 1};
  c.check("left spine + (4,3,2,1) gives the right spine under both",
          run_streaming(Algo::Splay, ls, down).final_tree == rs && run_streaming(Algo::MoveToRoot, ls, down).final_tree == rs);
  Violations v;
  for (const Tree& s : all_shapes(4))
    for (const Tree& t : all_shapes(4)) {
      bool ok = false;
      try {
        const auto seq = simultaneous_transform4(s, t);
        ok = run_streaming(Algo::Splay, s, seq).final_tree == t && run_streaming(Algo::MoveToRoot, s, seq).final_tree == t;
      } catch (const Error&) {
      }
      v.add(ok, [&] { return shape_string(s) + " -> " + shape_string(t); });
    }
  c.check("composition through the left spine reaches all 14x14 pairs under both", v.count == 0, v.detail("pairs"));
}

// ---------------------------------------------------------------- 16
void suite_probes(Ctx& c) {
  struct Run {
    const char* name;
    std::size_t trials, n, m;
  };
  const Run runs[] = {{"splay-mr-crossings", 10, 1000, 10000}, {"splay-bookkeeping", 10, 1000, 10000},
                      {"monotone-splay-crossings", 10, 1000, 10000}, {"deque-linear", 10, 1000, 10000},
                      {"traversal-linear", 10, 1000, 0},            {"subseq-ratio", 10, 1000, 1000}};
  for (const Run& r : runs) {
    const ProbeReport a = probe(r.name, r.trials, r.n, r.m, c.opt.seed);
    const ProbeReport b = probe(r.name, r.trials, r.n, r.m, c.opt.seed);
    c.check(std::string(r.name) + " runs to completion deterministically", a.csv() == b.csv() && !a.rows.empty(),
            a.ratio_column + " max " + fmt(a.max_ratio) + ", mean " + fmt(a.mean_ratio));
  }
}

}  // namespace

const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> s = {
      {"g4", 1, 1},           {"transform", 2, 10},       {"simulation", 3, 60},     {"opt-monotone", 4, 120},
      {"wilber-equivalence", 5, 30}, {"lambda-opt", 6, 120}, {"remove-one", 7, 120}, {"wilber-monotone", 8, 60},
      {"window-levels", 9, 120}, {"additive", 10, 60},       {"families", 11, 10},      {"conversions", 12, 60},
      {"topdown", 13, 30},    {"universal", 14, 60},      {"simultaneous", 15, 5},   {"probes", 16, 600}};
  return s;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
  static const std::map<std::string, void (*)(Ctx&)> fns = {
      {"g4", suite_g4},
      {"transform", suite_transform},
      {"simulation", suite_simulation},
      {"opt-monotone", suite_opt_monotone},
      {"wilber-equivalence", suite_wilber_equivalence},
      {"lambda-opt", suite_lambda_opt},
      {"remove-one", suite_remove_one},
      {"wilber-monotone", suite_wilber_monotone},
      {"window-levels", suite_window_levels},
      {"additive", suite_additive},
      {"families", suite_families},
      {"conversions", suite_conversions},
      {"topdown", suite_topdown},
      {"universal", suite_universal},
      {"simultaneous", suite_simultaneous},
      {"probes", suite_probes}};
  auto it = fns.find(name);
  if (it == fns.end()) throw Error(ErrorKind::UnknownName, "unknown suite '" + name + "'");
  SuiteResult r;
  r.suite = name;
  for (const SuiteInfo& s : suites())
    if (s.name == name) r.criterion = s.criterion;
  Ctx c{r, opt};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    it->second(c);
  } catch (const Error& e) {
    c.check("suite raised an error", false, e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace splaylab
