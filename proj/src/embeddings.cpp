#include <algorithm>
#include <deque>
#include <set>

#include "splaylab/transforms.hpp"

namespace splaylab {

Tree pad_guards(const Tree& t, std::size_t min_size) {
  if (t.size() >= min_size) return t;
  TreeEditor ed(t);
  Key next = t.empty() ? 1 : t.keys().back() + 1;
  while (ed.tree().size() < min_size) ed.insert_leaf(next++);
  return std::move(ed).take();
}

std::vector<Key> simulation_block(const Tree& prev, const Tree& q, const Tree& q_prime) {
  if (prev.size() < 4) throw Error(ErrorKind::InvalidArgument, "simulation block needs at least four keys");
  const Key x = q_prime.root();
  std::vector<Key> keys;
  if (q.size() < 4) {
    // Grow Q level by level into its hanging subtrees.
    std::vector<Key> w = q.keys();
    std::set<Key> have(w.begin(), w.end());
    std::deque<Slot> bq{prev.root_slot()};
    while (!bq.empty() && w.size() < 4) {
      Slot s = bq.front();
      bq.pop_front();
      if (have.insert(prev.key_at(s)).second) w.push_back(prev.key_at(s));
      if (prev.left_slot(s) != kNone) bq.push_back(prev.left_slot(s));
      if (prev.right_slot(s) != kNone) bq.push_back(prev.right_slot(s));
    }
    std::sort(w.begin(), w.end());
    const Tree after = substitute(prev, q_prime);
    keys = g4_keys(root_subtree(prev, w), root_subtree(after, w));
  } else {
    std::vector<Key> rots = flatten_restricted(q);
    for (Key k : inverse_rotations(q_prime, flatten_restricted(q_prime))) rots.push_back(k);
    const std::vector<Key>& pool = q.keys();
    TreeEditor cur(prev);
    for (Key y : rots)
      for (Key k : realize_restricted(cur.tree(), y, &pool)) {
        splay_in_place(cur, k);
        keys.push_back(k);
      }
  }
  if (keys.empty() || keys.back() != x) keys.push_back(x);
  return keys;
}

Embedding simulation_embedding(const Instance& inst, const Execution& e) {
  const ExecutionTrace tr = validate(inst, e);
  Embedding out;
  out.initial = pad_guards(inst.initial, 4);
  Tree cur = out.initial;
  for (const TraceStep& st : tr.steps) {
    for (Key k : simulation_block(cur, st.q, st.q_prime)) out.keys.push_back(k);
    out.block_end.push_back(out.keys.size());
    cur = substitute(cur, st.q_prime);
  }
  return out;
}

namespace {

Tree strip(const Tree& t, Key a, Key b, Key z) {
  TreeEditor ed(t);
  ed.remove_spliced(a);
  ed.remove_spliced(b);
  ed.remove_spliced(z);
  return std::move(ed).take();
}

// Top-Down Splay keys inducing restricted rotations of the subtree hanging
// right of b in the frame.
struct Inducer {
  Key a, z;
  std::vector<Key>* out;
  TreeEditor* r;  // mirror of the hanging subtree

  void rotate_at(Key y) {
    const Tree& t = r->tree();
    const Key p = *t.parent(y);
    if (p == t.root()) {
      out->insert(out->end(), {y, a, z});
    } else if (t.left_child(t.root()) == p) {
      out->insert(out->end(), {a, y, a, z});
    } else {
      throw Error(ErrorKind::InvalidArgument, "unrestricted rotation in frame");
    }
    r->rotate_key(y);
  }
  void transform(const Tree& from, const Tree& to) {
    for (Key y : flatten_restricted(from)) rotate_at(y);
    for (Key y : inverse_rotations(to, flatten_restricted(to))) rotate_at(y);
  }
};

}  // namespace

Tree topdown_frame(const Tree& t, Key a, Key b, Key z) {
  const Tree r = strip(t, a, b, z);
  std::vector<Key> order{z, b, a};
  for (Key k : preorder(r)) order.push_back(k);
  return bst_from_sequence(std::span<const Key>(order));
}

TopDownEmbedding topdown_embedding(const Instance& inst, const Execution& e) {
  if (inst.initial.size() < 4) throw Error(ErrorKind::InvalidArgument, "top-down embedding needs at least four keys");
  const ExecutionTrace tr = validate(inst, e);
  TopDownEmbedding out;
  const auto& keys = inst.initial.keys();
  out.a = keys[0];
  out.b = keys[1];
  out.z = keys.back();
  const Key a = out.a, b = out.b, z = out.z;
  out.keys = {z, b, a, z};
  // The hanging subtree right after the initialization accesses.
  const Tree framed = run_streaming(Algo::TopDownSplay, inst.initial, out.keys).final_tree;
  TreeEditor r(strip(framed, a, b, z));
  Inducer ind{a, z, &out.keys, &r};
  ind.transform(r.tree(), strip(inst.initial, a, b, z));
  out.init_len = out.keys.size();
  for (std::size_t i = 0; i < tr.steps.size(); ++i) {
    const TraceStep& st = tr.steps[i];
    const Key x = tr.requests[i];
    std::vector<Key> w0;
    for (Key k : st.q.keys())
      if (k != a && k != b && k != z) w0.push_back(k);
    if (!w0.empty()) {
      const Tree next = strip(st.after, a, b, z);
      ind.transform(root_subtree(r.tree(), w0), root_subtree(next, w0));
    }
    out.keys.push_back(x);
    if (x == a || x == b) out.keys.push_back(z);
    else if (x != z) out.keys.insert(out.keys.end(), {a, z});
  }
  return out;
}

}  // namespace splaylab
