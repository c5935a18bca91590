#include "splaylab/opt.hpp"

#include <cstdlib>
#include <limits>
#include <mutex>
#include <unordered_map>

#include "splaylab/algorithms.hpp"

namespace splaylab {

bool guard_override_enabled() {
  const char* v = std::getenv("SPLAYLAB_GUARD_OVERRIDE");
  return v && *v && std::string(v) != "0";
}

Guards default_guards() {
  if (guard_override_enabled())
    return {std::numeric_limits<std::size_t>::max(), std::numeric_limits<std::size_t>::max()};
  return {};
}

namespace {

using KeySets = std::vector<std::vector<Key>>;

// Root subtrees of the subtree at s that contain s and every forced key.
KeySets subtrees_from(const Tree& t, Slot s, const std::vector<bool>& forced) {
  KeySets acc{{t.key_at(s)}};
  for (Slot c : {t.left_slot(s), t.right_slot(s)}) {
    if (c == kNone) continue;
    KeySets child = subtrees_from(t, c, forced);
    KeySets next;
    for (const auto& a : acc) {
      if (!forced[c]) next.push_back(a);
      for (const auto& b : child) {
        auto u = a;
        u.insert(u.end(), b.begin(), b.end());
        next.push_back(std::move(u));
      }
    }
    acc = std::move(next);
  }
  return acc;
}

struct Reduced {
  Tree after;
  std::int64_t cost;
  Tree q_prime;
  std::string print;
};

struct KeyHash {
  std::size_t operator()(const std::pair<Tree, Key>& p) const noexcept {
    return TreeHash{}(p.first) * 1000003u ^ std::hash<Key>{}(p.second);
  }
};

// Cheapest transition per distinct after-tree.
const std::vector<Reduced>& reduced_transitions(const Tree& t, Key x) {
  static std::mutex mu;
  static std::unordered_map<std::pair<Tree, Key>, std::vector<Reduced>, KeyHash> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({t, x});
    if (it != cache.end()) return it->second;
  }
  std::unordered_map<Tree, std::size_t, TreeHash> pos;
  std::vector<Reduced> out;
  for (Transition& tr : enumerate_transitions(t, x)) {
    const std::int64_t c = static_cast<std::int64_t>(tr.q_prime.size());
    std::string print = shape_string(tr.q_prime);
    auto it = pos.find(tr.after);
    if (it == pos.end()) {
      pos.emplace(tr.after, out.size());
      out.push_back({std::move(tr.after), c, std::move(tr.q_prime), std::move(print)});
    } else {
      Reduced& r = out[it->second];
      if (c < r.cost || (c == r.cost && print < r.print)) {
        r.cost = c;
        r.q_prime = std::move(tr.q_prime);
        r.print = std::move(print);
      }
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(t, x), std::move(out)).first->second;
}

}  // namespace

std::vector<Transition> enumerate_transitions(const Tree& t, Key x) {
  const Slot xs = t.slot_of(x);
  std::vector<bool> forced(t.size(), false);
  for (Slot s = xs; s != kNone; s = t.parent_slot(s)) forced[s] = true;
  std::vector<Transition> out;
  for (auto& q : subtrees_from(t, t.root_slot(), forced)) {
    std::sort(q.begin(), q.end());
    auto mid = std::lower_bound(q.begin(), q.end(), x);
    const std::vector<Key> lo(q.begin(), mid), hi(mid + 1, q.end());
    const auto ls = all_shapes_over(lo);
    const auto rs = all_shapes_over(hi);
    for (const Tree& l : ls)
      for (const Tree& r : rs) {
        std::vector<Key> order{x};
        for (Key k : preorder(l)) order.push_back(k);
        for (Key k : preorder(r)) order.push_back(k);
        Tree qp = bst_from_sequence(std::span<const Key>(order));
        Tree after = substitute(t, qp);
        out.push_back({std::move(qp), std::move(after)});
      }
  }
  return out;
}

OptResult opt_cost(const Instance& inst, const Guards& g) {
  check_instance(inst);
  if (inst.initial.size() > g.max_n || inst.requests.size() > g.max_m)
    throw Error(ErrorKind::GuardExceeded, "OPT oracle guard: n=" + std::to_string(inst.initial.size()) + " (max " +
                                              std::to_string(g.max_n) + "), m=" + std::to_string(inst.requests.size()) +
                                              " (max " + std::to_string(g.max_m) + ")");
  struct Node {
    Tree tree;
    std::int64_t cost;
    int parent;
    Tree q_prime;
    std::string print;
  };
  std::vector<Node> nodes{{inst.initial, 0, -1, Tree{}, ""}};
  std::vector<int> layer{0};
  OptResult res;
  for (Key x : inst.requests) {
    std::unordered_map<Tree, int, TreeHash> where;
    std::vector<int> next;
    for (int si : layer) {
      ++res.states_expanded;
      const Tree cur = nodes[si].tree;
      const std::int64_t base = nodes[si].cost;
      for (const Reduced& r : reduced_transitions(cur, x)) {
        const std::int64_t c = base + r.cost;
        auto it = where.find(r.after);
        if (it == where.end()) {
          where.emplace(r.after, static_cast<int>(nodes.size()));
          next.push_back(static_cast<int>(nodes.size()));
          nodes.push_back({r.after, c, si, r.q_prime, r.print});
        } else {
          Node& n = nodes[it->second];
          if (c < n.cost || (c == n.cost && r.print < n.print)) {
            n.cost = c;
            n.parent = si;
            n.q_prime = r.q_prime;
            n.print = r.print;
          }
        }
      }
    }
    layer = std::move(next);
  }
  int best = layer.front();
  for (int i : layer)
    if (nodes[i].cost < nodes[best].cost) best = i;
  res.cost = nodes[best].cost;
  for (int i = best; nodes[i].parent != -1; i = nodes[i].parent) res.execution.push_back(nodes[i].q_prime);
  std::reverse(res.execution.begin(), res.execution.end());
  return res;
}

void opt_monotone_check(const Instance& inst, MonotoneReport& r) {
  ++r.instances;
  const OptResult full = opt_cost(inst, {inst.initial.size(), inst.requests.size()});
  const std::size_t m = inst.requests.size();
  auto note = [&](const std::string& what, std::uint32_t mask) {
    if (r.messages.size() >= 20) return;
    std::string s = what + ": tree " + shape_string(inst.initial) + " X=(";
    for (std::size_t j = 0; j < m; ++j) s += (j ? "," : "") + std::to_string(inst.requests[j]);
    r.messages.push_back(s + ") deleted mask " + std::to_string(mask));
  };
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    std::set<std::size_t> deleted;
    for (std::size_t j = 0; j < m; ++j)
      if (mask >> j & 1u) deleted.insert(j + 1);
    const Instance sub = subsequence_instance(inst, deleted);
    const OptResult part = opt_cost(sub, {inst.initial.size(), inst.requests.size()});
    ++r.comparisons;
    if (!(part.cost < full.cost)) {
      ++r.violations;
      note("OPT(Y) >= OPT(X)", mask);
    }
    ++r.elisions;
    try {
      const Execution el = elide(inst, full.execution, deleted);
      const ExecutionTrace tr = validate(sub, el);
      if (!(tr.cost < full.cost) || tr.cost < part.cost) {
        ++r.elision_violations;
        note("elided cost " + std::to_string(tr.cost), mask);
      }
    } catch (const Error& e) {
      ++r.elision_violations;
      note(std::string("elision invalid: ") + e.what(), mask);
    }
  }
}

MonotoneReport opt_monotone_sweep(std::size_t max_n, std::size_t max_m) {
  MonotoneReport r;
  for (std::size_t n = 1; n <= max_n; ++n)
    for (const Tree& t : all_shapes(static_cast<int>(n)))
      for (std::size_t m = 1; m <= max_m; ++m) {
        std::vector<Key> x(m, 1);
        while (true) {
          opt_monotone_check({x, t, std::nullopt}, r);
          std::size_t p = 0;
          while (p < m && x[p] == static_cast<Key>(n)) x[p++] = 1;
          if (p == m) break;
          ++x[p];
        }
      }
  return r;
}

std::int64_t initial_tree_shift(const std::vector<Key>& x, const Tree& t, const Tree& t_prime, const Guards& g) {
  if (t.keys() != t_prime.keys()) throw Error(ErrorKind::KeyMismatch, "initial trees must share keys");
  return opt_cost({x, t, std::nullopt}, g).cost - opt_cost({x, t_prime, std::nullopt}, g).cost;
}

}  // namespace splaylab
