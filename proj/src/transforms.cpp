#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <set>

#include "splaylab/transforms.hpp"

namespace splaylab {

bool is_restricted(const Tree& t, Key x) {
  auto p = t.parent(x);
  if (!p) return false;
  if (*p == t.root()) return true;
  return t.left_child(t.root()) == *p;
}

std::vector<Key> flatten_restricted(const Tree& t) {
  std::vector<Key> out;
  if (t.empty()) return out;
  TreeEditor ed(t);
  auto rot = [&](Slot s) {
    out.push_back(ed.tree().key_at(s));
    ed.rotate_up(s);
  };
  // Raise the maximum along the right spine.
  while (ed.tree().right_slot(ed.tree().root_slot()) != kNone) rot(ed.tree().right_slot(ed.tree().root_slot()));
  // Pull left-child right subtrees onto the left spine, then scroll the left
  // spine down onto the finished right spine.
  while (true) {
    const Tree& c = ed.tree();
    Slot l = c.left_slot(c.root_slot());
    if (l == kNone) break;
    if (c.right_slot(l) != kNone) rot(c.right_slot(l));
    else rot(l);
  }
  return out;
}

Tree apply_rotations(const Tree& t, const std::vector<Key>& rots) {
  TreeEditor ed(t);
  for (Key k : rots) ed.rotate_key(k);
  return std::move(ed).take();
}

std::vector<Key> inverse_rotations(const Tree& t, const std::vector<Key>& rots) {
  TreeEditor ed(t);
  std::vector<Key> inv;
  for (Key k : rots) {
    Slot s = ed.tree().slot_of(k);
    Slot p = ed.tree().parent_slot(s);
    if (p == kNone) throw Error(ErrorKind::RotateAtRoot, "rotation at root key " + std::to_string(k));
    inv.push_back(ed.tree().key_at(p));
    ed.rotate_up(s);
  }
  std::reverse(inv.begin(), inv.end());
  return inv;
}

namespace {

struct G4Table {
  // paths[s][t]: keys 1..4 splayed to move shape s to shape t.
  std::vector<std::vector<std::vector<Key>>> paths;
};

const G4Table& g4_table() {
  static std::once_flag once;
  static G4Table table;
  std::call_once(once, [] {
    const TransitionDigraph& g = cached_digraph(4, Algo::Splay);
    const std::size_t v = g.vertices.size();
    table.paths.assign(v, std::vector<std::vector<Key>>(v));
    for (std::size_t s = 0; s < v; ++s)
      for (std::size_t t = 0; t < v; ++t) table.paths[s][t] = shortest_path(g, g.vertices[s], g.vertices[t]);
  });
  return table;
}

// Level-order fill of a root subtree of t to four nodes, seeded by `seed`.
std::vector<Key> fill_to_four(const Tree& t, std::vector<Key> seed, const std::vector<Key>* pool) {
  std::set<Key> have(seed.begin(), seed.end());
  std::set<Key> allowed;
  if (pool) allowed.insert(pool->begin(), pool->end());
  std::deque<Slot> q{t.root_slot()};
  while (!q.empty() && have.size() < 4) {
    Slot s = q.front();
    q.pop_front();
    Key k = t.key_at(s);
    if (pool && !allowed.count(k)) continue;
    if (have.insert(k).second) seed.push_back(k);
    if (t.left_slot(s) != kNone) q.push_back(t.left_slot(s));
    if (t.right_slot(s) != kNone) q.push_back(t.right_slot(s));
  }
  if (have.size() < 4) throw Error(ErrorKind::InvalidArgument, "fewer than four nodes available for a four-node subtree");
  std::sort(seed.begin(), seed.end());
  return seed;
}

}  // namespace

std::vector<Key> g4_keys(const Tree& w, const Tree& target) {
  if (w.size() != 4 || w.keys() != target.keys())
    throw Error(ErrorKind::KeyMismatch, "four-node transform needs two trees on the same four keys");
  const Canonical cw = canonicalize(w), ct = canonicalize(target);
  const TransitionDigraph& g = cached_digraph(4, Algo::Splay);
  const auto& path = g4_table().paths[g.index_of(cw.tree)][g.index_of(ct.tree)];
  std::vector<Key> out;
  for (Key k : path) out.push_back(cw.labels[k - 1]);
  return out;
}

std::vector<Key> realize_restricted(const Tree& t, Key y, const std::vector<Key>* pool) {
  if (!is_restricted(t, y)) throw Error(ErrorKind::InvalidArgument, "rotation at " + std::to_string(y) + " is not restricted");
  const Key p = *t.parent(y);
  std::vector<Key> seed{t.root()};
  if (p != t.root()) seed.push_back(p);
  seed.push_back(y);
  const auto w = fill_to_four(t, seed, pool);
  const Tree induced = root_subtree(t, w);
  return g4_keys(induced, rotate(induced, y));
}

TransformPlan transform_sequence(const Tree& t, const Tree& t_prime) {
  if (t.keys() != t_prime.keys()) throw Error(ErrorKind::KeyMismatch, "transform needs equal key sets");
  TransformPlan plan;
  plan.source = t;
  plan.target = t_prime;
  const std::size_t n = t.size();
  plan.predicted_bound = 80 * static_cast<std::int64_t>(n);
  if (n == 0) return plan;
  if (t == t_prime) {
    plan.keys = {t.root()};
  } else if (n < 4) {
    const Canonical a = canonicalize(t), b = canonicalize(t_prime);
    for (Key k : shortest_path(cached_digraph(static_cast<int>(n), Algo::Splay), a.tree, b.tree))
      plan.keys.push_back(a.labels[k - 1]);
  } else {
    plan.restricted = flatten_restricted(t);
    for (Key k : inverse_rotations(t_prime, flatten_restricted(t_prime))) plan.restricted.push_back(k);
    TreeEditor cur(t);
    for (Key y : plan.restricted) {
      for (Key k : realize_restricted(cur.tree(), y)) {
        splay_in_place(cur, k);
        plan.keys.push_back(k);
      }
    }
  }
  if (plan.keys.empty() || plan.keys.back() != t_prime.root()) plan.keys.push_back(t_prime.root());
  plan.cost = algo_cost(Algo::Splay, t, plan.keys);
  return plan;
}

std::vector<Key> augmented_repeat(const Instance& inst, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "repeat count must be at least 1");
  check_instance(inst);
  const Tree v = run_streaming(Algo::Splay, inst.initial, inst.requests).final_tree;
  std::vector<Key> u = inst.requests;
  for (Key x : transform_sequence(v, inst.initial).keys) u.push_back(x);
  std::vector<Key> out;
  for (int i = 0; i < k; ++i) out.insert(out.end(), u.begin(), u.end());
  return out;
}

std::vector<Key> cleanup_group(Key x, Key y, Key z) { return {z, y, z, x, y, z}; }

std::vector<Key> universal_transform(const Tree& q) {
  const std::size_t n = q.size();
  if (n < 5 || n % 2 == 0) throw Error(ErrorKind::InvalidArgument, "universal transform needs an odd size of at least 5");
  const auto& keys = q.keys();
  std::vector<Key> out(keys.rbegin(), keys.rend());
  for (std::size_t i = 1; i <= (n - 1) / 2; ++i)
    for (Key k : cleanup_group(keys[2 * i - 2], keys[2 * i - 1], keys[2 * i])) out.push_back(k);
  for (Key k : transform_sequence(left_spine(keys), q).keys) out.push_back(k);
  return out;
}

// ---------------------------------------------------------------- four-node simultaneous transforms

std::vector<std::vector<Key>> listed_simultaneous_sequences() {
  return {{3, 1, 4, 1}, {2, 3, 4, 1, 2, 1}, {2, 3, 4, 1, 3, 1}, {2, 3, 4, 2, 4, 1}, {2}, {2, 3, 4, 2, 4, 1, 2}};
}

std::vector<SimultaneousCheck> check_listed_simultaneous() {
  const auto keys = iota_keys(1, 4);
  std::vector<SimultaneousCheck> out;
  for (bool from_left : {true, false}) {
    for (auto seq : listed_simultaneous_sequences()) {
      if (!from_left)
        for (Key& k : seq) k = 5 - k;
      SimultaneousCheck c;
      c.seq = seq;
      c.from_left_spine = from_left;
      const Tree start = from_left ? left_spine(keys) : right_spine(keys);
      c.splay_result = run_streaming(Algo::Splay, start, seq).final_tree;
      c.mtr_result = run_streaming(Algo::MoveToRoot, start, seq).final_tree;
      c.agree = c.splay_result == c.mtr_result;
      out.push_back(std::move(c));
    }
  }
  return out;
}

namespace {

// Shortest synchronized sequence from the left spine for each reachable tree.
const std::map<std::string, std::vector<Key>>& sync_table() {
  static std::once_flag once;
  static std::map<std::string, std::vector<Key>> table;
  std::call_once(once, [] {
    const TransitionDigraph& gs = cached_digraph(4, Algo::Splay);
    const TransitionDigraph& gm = cached_digraph(4, Algo::MoveToRoot);
    const int ls = gs.index_of(left_spine(iota_keys(1, 4)));
    using State = std::pair<int, int>;
    std::map<State, std::pair<State, Key>> prev;
    std::deque<State> q{{ls, ls}};
    prev[{ls, ls}] = {{-1, -1}, 0};
    while (!q.empty()) {
      State s = q.front();
      q.pop_front();
      for (Key k = 1; k <= 4; ++k) {
        State nx{gs.arcs[s.first][k - 1], gm.arcs[s.second][k - 1]};
        if (prev.count(nx)) continue;
        prev[nx] = {s, k};
        q.push_back(nx);
      }
    }
    for (const auto& [s, pr] : prev) {
      if (s.first != s.second) continue;
      std::vector<Key> seq;
      for (State c = s; prev[c].first.first != -1; c = prev[c].first) seq.push_back(prev[c].second);
      std::reverse(seq.begin(), seq.end());
      table[shape_string(gs.vertices[s.first])] = seq;
    }
  });
  return table;
}

}  // namespace

std::vector<Key> simultaneous_transform4(const Tree& t, const Tree& t_prime) {
  if (t.size() != 4 || t.keys() != t_prime.keys())
    throw Error(ErrorKind::InvalidArgument, "simultaneous transform needs two trees on the same four keys");
  const Canonical a = canonicalize(t), b = canonicalize(t_prime);
  // Accessing the keys in increasing order leaves the left spine under both.
  std::vector<Key> seq{1, 2, 3, 4};
  auto it = sync_table().find(shape_string(b.tree));
  if (it == sync_table().end()) throw Error(ErrorKind::Unreachable, "no synchronized sequence to " + shape_string(t_prime));
  seq.insert(seq.end(), it->second.begin(), it->second.end());
  for (Key& k : seq) k = a.labels[k - 1];
  return seq;
}

}  // namespace splaylab
