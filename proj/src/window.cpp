#include <algorithm>
#include <set>
#include <sstream>

#include "splaylab/algorithms.hpp"
#include "splaylab/wilber.hpp"

namespace splaylab {

bool WindowBound::below(Key k) const {
  switch (kind) {
    case Kind::NegInf: return true;
    case Kind::PosInf: return false;
    default: return key < k;
  }
}

bool WindowBound::above(Key k) const {
  switch (kind) {
    case Kind::NegInf: return false;
    case Kind::PosInf: return true;
    default: return key > k;
  }
}

std::string WindowBound::str() const {
  switch (kind) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "+inf";
    default: return std::to_string(key);
  }
}

namespace {

// Subtree of t rooted at key r, as its own tree.
Tree subtree_at(const Tree& t, std::optional<Key> r) {
  if (!r) return Tree{};
  std::vector<Slot> st{t.slot_of(*r)}, slots;
  while (!st.empty()) {
    Slot s = st.back();
    st.pop_back();
    slots.push_back(s);
    if (t.left_slot(s) != kNone) st.push_back(t.left_slot(s));
    if (t.right_slot(s) != kNone) st.push_back(t.right_slot(s));
  }
  std::sort(slots.begin(), slots.end());
  // Slots of a subtree are a contiguous rank range.
  const Slot base = slots.front();
  std::vector<Key> keys;
  std::vector<Slot> left, right;
  for (Slot s : slots) {
    keys.push_back(t.key_at(s));
    left.push_back(t.left_slot(s) == kNone ? kNone : t.left_slot(s) - base);
    right.push_back(t.right_slot(s) == kNone ? kNone : t.right_slot(s) - base);
  }
  return Tree::from_links(std::move(keys), std::move(left), std::move(right), t.slot_of(*r) - base);
}

Tree augment_top(const Tree& j, Key g) {
  std::vector<Key> keys = j.keys();
  const bool below = j.empty() || g < keys.front();
  if (!below && g < keys.back()) throw Error(ErrorKind::InvalidArgument, "augment key inside subtree range");
  const std::size_t n = keys.size();
  std::vector<Slot> left(n + 1, kNone), right(n + 1, kNone);
  const Slot off = below ? 1 : 0;
  for (std::size_t s = 0; s < n; ++s) {
    Slot l = j.left_slot(static_cast<Slot>(s)), r = j.right_slot(static_cast<Slot>(s));
    left[s + off] = l == kNone ? kNone : l + off;
    right[s + off] = r == kNone ? kNone : r + off;
  }
  Slot groot = below ? 0 : static_cast<Slot>(n);
  if (n > 0) (below ? right : left)[groot] = j.root_slot() + off;
  if (below) keys.insert(keys.begin(), g);
  else keys.push_back(g);
  return Tree::from_links(std::move(keys), std::move(left), std::move(right), groot);
}

std::optional<Key> child(const Tree& t, Key k, bool left) {
  return left ? t.left_child(k) : t.right_child(k);
}

std::set<Key> generalized_path(const Tree& jp, Key x) {
  auto p = jp.path(x);
  std::set<Key> s(p.begin(), p.end());
  for (auto c = jp.left_child(x); c; c = jp.right_child(*c)) s.insert(*c);
  for (auto c = jp.right_child(x); c; c = jp.left_child(*c)) s.insert(*c);
  return s;
}

}  // namespace

WindowDecomposition window_decompose(const Tree& s0, Key x, const std::vector<Key>& z) {
  if (!s0.contains(x)) throw Error(ErrorKind::KeyAbsent, "x not in S");
  for (Key k : z)
    if (!s0.contains(k)) throw Error(ErrorKind::KeyAbsent, "request " + std::to_string(k) + " not in S");
  WindowDecomposition d;
  d.S = s0;
  d.x = x;
  d.Z = z;
  d.gap = remove_one_gap(s0, x, z);
  const std::size_t m = z.size();

  TreeEditor es(s0), et(access(Algo::MoveToRoot, s0, x));
  WindowBound u = WindowBound::neg_inf(), v = WindowBound::pos_inf();
  std::optional<std::size_t> st, tt;
  for (std::size_t i = 0; i <= m; ++i) {
    if (i > 0) {
      const Key zi = z[i - 1];
      move_to_root_in_place(es, zi);
      move_to_root_in_place(et, zi);
      if (!u.above(zi) && zi <= x) {
        u = WindowBound::at(zi);
        st = i;
      }
      if (x <= zi && !v.below(zi)) {
        v = WindowBound::at(zi);
        tt = i;
      }
    }
    WindowStep w;
    w.i = i;
    w.u = u;
    w.v = v;
    w.s = st;
    w.t = tt;
    w.S = es.tree();
    w.T = et.tree();
    for (Key k : s0.keys())
      if (!(u.below(k) && v.above(k))) w.top_keys.push_back(k);
    if (i == 0) {
      w.J = w.S;
      w.K = w.T;
    } else if (st != tt) {
      // A boundary never requested counts as more recent than any request:
      // then the window hangs below the other boundary.
      const bool use_u = st && (!tt || *st < *tt);
      const Key g = use_u ? u.key : v.key;
      w.augment = g;
      w.J = subtree_at(w.S, child(w.S, g, !use_u));
      w.K = subtree_at(w.T, child(w.T, g, !use_u));
    }
    if (!w.J.empty()) w.j_parent = w.S.parent(w.J.root());
    if (!w.K.empty()) w.k_parent = w.T.parent(w.K.root());
    w.J_plus = w.augment ? augment_top(w.J, *w.augment) : w.J;
    w.K_plus = w.augment ? augment_top(w.K, *w.augment) : w.K;
    w.k = w.J.contains(x) ? level_of(w.J, x) : 0;
    for (Key k : s0.keys()) w.delta[k] = level_of(w.S, k) - level_of(w.T, k);
    d.steps.push_back(std::move(w));
  }

  for (std::size_t i = 1; i <= m; ++i) {
    const WindowStep& prev = d.steps[i - 1];
    const WindowStep& cur = d.steps[i];
    LevelWitness w;
    w.i = i;
    w.z = z[i - 1];
    w.zbar = w.z;
    w.level_diff = prev.delta.at(w.z);
    w.k_prev = prev.k;
    w.k_cur = cur.k;
    w.G = cur.k < prev.k ? 1 : 0;
    w.in_window = prev.J_plus.contains(w.z);
    if (prev.J.empty() || prev.k <= 1 || !w.in_window) {
      d.witnesses.push_back(w);
      continue;
    }
    w.formulas_apply = true;
    const Tree& J = prev.J;
    const Tree& Jp = prev.J_plus;
    const Tree& K = prev.K;
    const Tree& Kp = prev.K_plus;
    const std::set<Key> pp = generalized_path(Jp, x);
    for (Key a : Jp.path(w.z)) {
      auto pa = Jp.parent(a);
      if (pp.count(a) || (pa && pp.count(*pa))) w.zbar = a;
    }
    const Key y = w.zbar;
    const int k = prev.k;
    std::map<int, std::optional<Key>> wn;
    wn[-1] = x;
    wn[0] = i - 1 > 0 ? std::optional<Key>(Jp.root()) : std::nullopt;
    const auto cr = level(J, x).crossing;
    for (int j = 1; j < k; ++j) wn[j] = cr[j - 1];
    const Key px = *J.parent(x);
    const bool x_left = J.left_child(px) == x;
    wn[k] = child(J, x, x_left);
    wn[k + 1] = child(J, x, !x_left);
    if (y == x) {
      w.c = -1;
    } else {
      const auto anc = Jp.path(y);
      w.c = -2;
      for (const auto& [j, key] : wn)
        if (key && std::find(anc.begin(), anc.end(), *key) != anc.end()) w.c = std::max(w.c, j);
    }
    if (w.c == -1) w.l = k;
    else if (wn[0] && y == *wn[0]) w.l = 0;
    else w.l = level_of(J, *wn[w.c]);
    w.delta = i > 1 ? 1 : 0;
    w.A = pp.count(y) ? 0 : 1;
    // B compares the node's anchor on the generalized path (itself, or its
    // parent for an off-path child) against the zone's crossing node.
    const Key anchor = pp.count(y) ? y : *Jp.parent(y);
    w.B = (w.c >= -1 && wn[w.c] && anchor == *wn[w.c]) ? 0 : 1;
    w.E = level_of(J, x) < level_of(Jp, x) ? 1 : 0;
    w.F = (K.contains(y) && level_of(K, y) < level_of(Kp, y)) ? 1 : 0;
    w.zipped_level = level_of(Jp, y);
    w.unzipped_level = level_of(Kp, y);
    const int A = w.A, B = w.B, E = w.E, F = w.F, dl = w.delta;
    if (w.c == -1) {
      w.zipped_formula = w.l + E;
      w.unzipped_formula = 1 + dl;
    } else if (w.c == 0) {
      w.zipped_formula = w.l + 1;
      w.unzipped_formula = 1;
    } else if (w.c == 1) {
      w.zipped_formula = w.l + (1 - A) * (1 - B) * dl + B * (1 + A + E) + A * (1 - B) * (1 + dl * (1 - E));
      w.unzipped_formula = 2 + F + B * (1 + A);
    } else {
      w.zipped_formula = w.l + B * (1 + A) + E;
      w.unzipped_formula = w.c == 2 ? 2 + F + B * (1 + A) : 3 + F + A;
    }
    d.witnesses.push_back(w);
  }
  return d;
}

std::size_t LevelFormulaReport::required_violations() const {
  return top_tree + window_keys + mtr_split + delta_sum + zipped + unzipped;
}

std::size_t LevelFormulaReport::all_violations() const {
  return required_violations() + augmented + augmented_stable + zero_after_settle + max_level_decrease +
         level_difference_bound + per_step_bound;
}

void LevelFormulaReport::merge(const LevelFormulaReport& o) {
  steps_checked += o.steps_checked;
  formula_checks += o.formula_checks;
  top_tree += o.top_tree;
  window_keys += o.window_keys;
  mtr_split += o.mtr_split;
  augmented += o.augmented;
  augmented_stable += o.augmented_stable;
  delta_sum += o.delta_sum;
  zero_after_settle += o.zero_after_settle;
  zipped += o.zipped;
  unzipped += o.unzipped;
  max_level_decrease += o.max_level_decrease;
  level_difference_bound += o.level_difference_bound;
  per_step_bound += o.per_step_bound;
  for (const auto& m : o.messages)
    if (messages.size() < 20) messages.push_back(m);
}

LevelFormulaReport validate_level_formulas(const WindowDecomposition& d) {
  LevelFormulaReport r;
  auto note = [&](std::size_t& counter, const std::string& what, std::size_t i) {
    ++counter;
    if (r.messages.size() < 20) {
      std::ostringstream os;
      os << what << " at i=" << i << " S=" << shape_string(d.S) << " x=" << d.x << " Z=(";
      for (std::size_t j = 0; j < d.Z.size(); ++j) os << (j ? "," : "") << d.Z[j];
      os << ")";
      r.messages.push_back(os.str());
    }
  };
  const std::size_t m = d.Z.size();
  for (std::size_t i = 0; i <= m; ++i) {
    const WindowStep& w = d.steps[i];
    ++r.steps_checked;
    if (i >= 1) {
      const Key root = w.S.root();
      bool ok = root == w.T.root() && !(w.u.below(root) && w.v.above(root));
      for (Key y : w.top_keys)
        if (y != root && w.S.parent(y) != w.T.parent(y)) ok = false;
      if (!ok) note(r.top_tree, "top tree differs", i);
    }
    std::vector<Key> window;
    for (Key k : d.S.keys())
      if (w.u.below(k) && w.v.above(k)) window.push_back(k);
    if (w.J.keys() != window || w.K.keys() != window) note(r.window_keys, "window keys", i);
    if (!(w.u == w.v) && !w.J.empty() && access(Algo::MoveToRoot, w.J, d.x) != w.K)
      note(r.mtr_split, "K != movetoroot(J, x)", i);
    if (i < m) {
      bool ok = true;
      for (const auto& [y, dv] : w.delta) {
        int expect = w.J_plus.contains(y) ? level_of(w.J_plus, y) - level_of(w.K_plus, y) : 0;
        if (dv != expect) ok = false;
      }
      if (!ok) note(r.augmented, "augmented level difference", i);
      if (!w.J_plus.contains(d.Z[i]) &&
          (d.steps[i + 1].J_plus != w.J_plus || d.steps[i + 1].K_plus != w.K_plus))
        note(r.augmented_stable, "augmented subtree changed by outside request", i + 1);
    }
  }
  std::int64_t sum = 0;
  for (const LevelWitness& w : d.witnesses) {
    sum += w.level_diff;
    const WindowStep& prev = d.steps[w.i - 1];
    if ((prev.J.empty() || prev.k <= 1) && w.level_diff != 0)
      note(r.zero_after_settle, "nonzero difference after settling", w.i);
    if (!w.formulas_apply) continue;
    ++r.formula_checks;
    if (w.level_diff != w.zipped_level - w.unzipped_level)
      note(r.augmented, "representative node difference", w.i);
    if (w.zipped_level != w.zipped_formula)
      note(r.zipped, "zipped level " + std::to_string(w.zipped_level) + " vs formula " +
                         std::to_string(w.zipped_formula) + " (c=" + std::to_string(w.c) + ")",
           w.i);
    if (w.unzipped_level != w.unzipped_formula)
      note(r.unzipped, "unzipped level " + std::to_string(w.unzipped_level) + " vs formula " +
                           std::to_string(w.unzipped_formula) + " (c=" + std::to_string(w.c) + ")",
           w.i);
    int dec;
    if (w.c == -1) dec = w.k_prev;
    else if (w.c <= 2) dec = 0;
    else if (w.c <= w.k_prev) dec = w.l - 2;
    else dec = w.l - 3;
    if (w.k_cur > w.k_prev - dec) note(r.max_level_decrease, "max level difference did not decrease", w.i);
    if (w.c != -1) {
      int bound = (w.l >= 1 && w.l <= 2) ? 0 : w.l;
      if (w.level_diff > bound) note(r.level_difference_bound, "level difference bound", w.i);
    }
    if (w.level_diff > w.k_prev - w.k_cur + 3 * w.G) note(r.per_step_bound, "per-step bound", w.i);
  }
  if (sum != d.gap) note(r.delta_sum, "difference sum " + std::to_string(sum) + " != gap " + std::to_string(d.gap), m);
  return r;
}

}  // namespace splaylab
