#include "splaylab/tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>

namespace splaylab {

namespace {

std::string key_str(Key k) { return std::to_string(k); }

void shift_slots(std::vector<Slot>& v, Slot from, Slot delta) {
  for (Slot& s : v)
    if (s != kNone && s >= from) s += delta;
}

}  // namespace

// ---------------------------------------------------------------- Tree

Tree Tree::from_links(std::vector<Key> sorted_keys, std::vector<Slot> left,
                      std::vector<Slot> right, Slot root) {
  const std::size_t n = sorted_keys.size();
  if (left.size() != n || right.size() != n)
    throw Error(ErrorKind::InvalidArgument, "link vectors differ in size from key vector");
  for (std::size_t i = 1; i < n; ++i)
    if (!(sorted_keys[i - 1] < sorted_keys[i]))
      throw Error(ErrorKind::InvalidArgument, "keys must be strictly increasing");
  Tree t;
  t.keys_ = std::move(sorted_keys);
  t.left_ = std::move(left);
  t.right_ = std::move(right);
  t.parent_.assign(n, kNone);
  t.root_ = n == 0 ? kNone : root;
  if (n == 0) return t;
  if (root < 0 || static_cast<std::size_t>(root) >= n)
    throw Error(ErrorKind::InvalidArgument, "root slot out of range");
  auto link = [&](Slot p, Slot c) {
    if (c == kNone) return;
    if (c < 0 || static_cast<std::size_t>(c) >= n || c == root || t.parent_[c] != kNone)
      throw Error(ErrorKind::InvalidArgument, "node has zero or several parents");
    t.parent_[c] = p;
  };
  for (std::size_t s = 0; s < n; ++s) {
    link(static_cast<Slot>(s), t.left_[s]);
    link(static_cast<Slot>(s), t.right_[s]);
  }
  if (!is_valid_bst(t)) throw Error(ErrorKind::InvalidArgument, "links violate symmetric order");
  return t;
}

std::optional<Slot> Tree::find(Key k) const {
  auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
  if (it == keys_.end() || *it != k) return std::nullopt;
  return static_cast<Slot>(it - keys_.begin());
}

Slot Tree::slot_of(Key k) const {
  auto s = find(k);
  if (!s) throw Error(ErrorKind::KeyAbsent, "key " + key_str(k) + " not in tree");
  return *s;
}

Key Tree::root() const {
  if (root_ == kNone) throw Error(ErrorKind::EmptyTree, "empty tree has no root");
  return keys_[root_];
}

std::optional<Key> Tree::left_child(Key k) const {
  Slot c = left_[slot_of(k)];
  if (c == kNone) return std::nullopt;
  return keys_[c];
}

std::optional<Key> Tree::right_child(Key k) const {
  Slot c = right_[slot_of(k)];
  if (c == kNone) return std::nullopt;
  return keys_[c];
}

std::optional<Key> Tree::parent(Key k) const {
  Slot c = parent_[slot_of(k)];
  if (c == kNone) return std::nullopt;
  return keys_[c];
}

int Tree::depth(Key k) const {
  int d = 0;
  for (Slot s = parent_[slot_of(k)]; s != kNone; s = parent_[s]) ++d;
  return d;
}

std::vector<Key> Tree::path(Key k) const {
  std::vector<Key> p;
  for (Slot s = slot_of(k); s != kNone; s = parent_[s]) p.push_back(keys_[s]);
  std::reverse(p.begin(), p.end());
  return p;
}

Tree Tree::relabeled(std::vector<Key> sorted_keys) const {
  if (sorted_keys.size() != keys_.size())
    throw Error(ErrorKind::KeyMismatch, "relabel needs the same number of keys");
  for (std::size_t i = 1; i < sorted_keys.size(); ++i)
    if (!(sorted_keys[i - 1] < sorted_keys[i]))
      throw Error(ErrorKind::InvalidArgument, "relabel keys must be strictly increasing");
  Tree t = *this;
  t.keys_ = std::move(sorted_keys);
  return t;
}

std::size_t TreeHash::operator()(const Tree& t) const noexcept {
  std::size_t h = std::hash<Slot>()(t.root_slot()) * 1000003u;
  for (std::size_t s = 0; s < t.size(); ++s) {
    h ^= std::hash<Key>()(t.key_at(static_cast<Slot>(s))) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(t.left_slot(static_cast<Slot>(s)) + 2) * 0x100000001b3ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(t.right_slot(static_cast<Slot>(s)) + 2) * 0xc2b2ae3d27d4eb4fULL + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------- editor

void TreeEditor::rotate_up(Slot x) {
  Tree& t = t_;
  Slot p = t.parent_[x];
  if (p == kNone)
    throw Error(ErrorKind::RotateAtRoot, "rotation at root key " + key_str(t.keys_[x]));
  Slot g = t.parent_[p];
  if (t.left_[p] == x) {
    Slot b = t.right_[x];
    t.left_[p] = b;
    if (b != kNone) t.parent_[b] = p;
    t.right_[x] = p;
  } else {
    Slot b = t.left_[x];
    t.right_[p] = b;
    if (b != kNone) t.parent_[b] = p;
    t.left_[x] = p;
  }
  t.parent_[p] = x;
  t.parent_[x] = g;
  if (g == kNone) {
    t.root_ = x;
  } else if (t.left_[g] == p) {
    t.left_[g] = x;
  } else {
    t.right_[g] = x;
  }
}

Slot TreeEditor::insert_leaf(Key k) {
  Tree& t = t_;
  auto it = std::lower_bound(t.keys_.begin(), t.keys_.end(), k);
  if (it != t.keys_.end() && *it == k)
    throw Error(ErrorKind::DuplicateKey, "key " + key_str(k) + " already present");
  Slot pos = static_cast<Slot>(it - t.keys_.begin());
  shift_slots(t.left_, pos, 1);
  shift_slots(t.right_, pos, 1);
  shift_slots(t.parent_, pos, 1);
  if (t.root_ != kNone && t.root_ >= pos) ++t.root_;
  t.keys_.insert(it, k);
  t.left_.insert(t.left_.begin() + pos, kNone);
  t.right_.insert(t.right_.begin() + pos, kNone);
  t.parent_.insert(t.parent_.begin() + pos, kNone);
  if (t.root_ == kNone) {
    t.root_ = pos;
    return pos;
  }
  Slot c = t.root_;
  while (true) {
    Slot& next = k < t.keys_[c] ? t.left_[c] : t.right_[c];
    if (next == kNone) {
      next = pos;
      t.parent_[pos] = c;
      return pos;
    }
    c = next;
  }
}

void TreeEditor::remove_spliced(Key k) {
  Tree& t = t_;
  Slot s = t.slot_of(k);
  if (t.left_[s] != kNone && t.right_[s] != kNone)
    throw Error(ErrorKind::InvalidArgument, "remove_spliced needs a node with at most one child");
  Slot c = t.left_[s] != kNone ? t.left_[s] : t.right_[s];
  Slot p = t.parent_[s];
  if (c != kNone) t.parent_[c] = p;
  if (p == kNone) {
    t.root_ = c;
  } else if (t.left_[p] == s) {
    t.left_[p] = c;
  } else {
    t.right_[p] = c;
  }
  t.keys_.erase(t.keys_.begin() + s);
  t.left_.erase(t.left_.begin() + s);
  t.right_.erase(t.right_.begin() + s);
  t.parent_.erase(t.parent_.begin() + s);
  shift_slots(t.left_, s + 1, -1);
  shift_slots(t.right_, s + 1, -1);
  shift_slots(t.parent_, s + 1, -1);
  if (t.root_ != kNone && t.root_ > s) --t.root_;
}

// ---------------------------------------------------------------- builders

Tree bst_from_sequence(std::span<const Key> seq) {
  // The new key hangs below whichever of its current neighbours was
  // inserted later, which is the one with a free slot on its side.
  std::vector<Key> order;
  std::map<Key, std::size_t> seen;
  for (Key k : seq)
    if (seen.emplace(k, order.size()).second) order.push_back(k);
  std::vector<Key> sorted(order);
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  std::vector<Slot> left(n, kNone), right(n, kNone);
  auto slot = [&](Key k) {
    return static_cast<Slot>(std::lower_bound(sorted.begin(), sorted.end(), k) - sorted.begin());
  };
  std::map<Key, Slot> inserted;
  Slot root = kNone;
  for (Key k : order) {
    Slot s = slot(k);
    if (inserted.empty()) {
      root = s;
    } else {
      auto succ = inserted.lower_bound(k);
      bool placed = false;
      if (succ != inserted.begin()) {
        auto pred = std::prev(succ);
        if (right[pred->second] == kNone) {
          right[pred->second] = s;
          placed = true;
        }
      }
      if (!placed) left[succ->second] = s;
    }
    inserted.emplace(k, s);
  }
  return Tree::from_links(std::move(sorted), std::move(left), std::move(right), root);
}

Tree bst_from_sequence(std::initializer_list<Key> keys) {
  std::vector<Key> v(keys);
  return bst_from_sequence(std::span<const Key>(v));
}

Tree rotate(const Tree& t, Key x) {
  TreeEditor e(t);
  e.rotate_key(x);
  return std::move(e).take();
}

std::vector<Key> preorder(const Tree& t) {
  std::vector<Key> out;
  out.reserve(t.size());
  std::vector<Slot> st;
  if (t.root_slot() != kNone) st.push_back(t.root_slot());
  while (!st.empty()) {
    Slot s = st.back();
    st.pop_back();
    out.push_back(t.key_at(s));
    if (t.right_slot(s) != kNone) st.push_back(t.right_slot(s));
    if (t.left_slot(s) != kNone) st.push_back(t.left_slot(s));
  }
  return out;
}

std::vector<Key> postorder(const Tree& t) {
  // Reverse of a root-right-left preorder.
  std::vector<Key> out;
  out.reserve(t.size());
  std::vector<Slot> st;
  if (t.root_slot() != kNone) st.push_back(t.root_slot());
  while (!st.empty()) {
    Slot s = st.back();
    st.pop_back();
    out.push_back(t.key_at(s));
    if (t.left_slot(s) != kNone) st.push_back(t.left_slot(s));
    if (t.right_slot(s) != kNone) st.push_back(t.right_slot(s));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

PathEncoding path_encoding(const Tree& t, Key x) {
  Slot target = t.slot_of(x);
  PathEncoding enc;
  for (Slot s = target; t.parent_slot(s) != kNone; s = t.parent_slot(s))
    enc.push_back(t.left_slot(t.parent_slot(s)) == s ? '0' : '1');
  std::reverse(enc.begin(), enc.end());
  return enc;
}

Key decode_path(const Tree& t, const PathEncoding& enc) {
  Slot s = t.root_slot();
  if (s == kNone) throw Error(ErrorKind::KeyAbsent, "decode on empty tree");
  for (char c : enc) {
    if (c != '0' && c != '1') throw Error(ErrorKind::Parse, "path encodings use 0 and 1 only");
    s = c == '0' ? t.left_slot(s) : t.right_slot(s);
    if (s == kNone) throw Error(ErrorKind::KeyAbsent, "path " + enc + " leaves the tree");
  }
  return t.key_at(s);
}

// ---------------------------------------------------------------- subtrees

RootSubtree root_subtree_detail(const Tree& t, std::span<const Key> keys_in) {
  std::vector<Key> keys(keys_in.begin(), keys_in.end());
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
    throw Error(ErrorKind::DuplicateKey, "root_subtree key set has duplicates");
  std::vector<char> in(t.size(), 0);
  std::vector<Slot> slots;
  for (Key k : keys) {
    Slot s = t.slot_of(k);
    in[s] = 1;
    slots.push_back(s);
  }
  RootSubtree out;
  if (keys.empty()) {
    if (!t.empty()) throw Error(ErrorKind::RootMissing, "empty key set misses the root");
    out.hanging.push_back(std::nullopt);
    return out;
  }
  if (!in[t.root_slot()]) throw Error(ErrorKind::RootMissing, "key set misses the root");
  for (Slot s : slots)
    if (s != t.root_slot() && !in[t.parent_slot(s)])
      throw Error(ErrorKind::Disconnected,
                  "key " + key_str(t.key_at(s)) + " is not connected to the root within the set");
  const std::size_t k = keys.size();
  std::vector<Slot> left(k, kNone), right(k, kNone);
  auto local = [&](Slot s) {
    return static_cast<Slot>(std::lower_bound(slots.begin(), slots.end(), s) - slots.begin());
  };
  out.hanging.assign(k + 1, std::nullopt);
  for (std::size_t r = 0; r < k; ++r) {
    Slot s = slots[r];
    Slot l = t.left_slot(s), rr = t.right_slot(s);
    if (l != kNone) {
      if (in[l]) left[r] = local(l);
      else out.hanging[r] = t.key_at(l);
    }
    if (rr != kNone) {
      if (in[rr]) right[r] = local(rr);
      else out.hanging[r + 1] = t.key_at(rr);
    }
  }
  out.induced = Tree::from_links(std::move(keys), std::move(left), std::move(right), local(t.root_slot()));
  return out;
}

Tree root_subtree(const Tree& t, std::span<const Key> keys) {
  return root_subtree_detail(t, keys).induced;
}

bool is_root_subtree(const Tree& t, std::span<const Key> keys) {
  try {
    root_subtree_detail(t, keys);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::vector<Key> root_closure(const Tree& t, std::span<const Key> keys) {
  std::vector<char> in(t.size(), 0);
  for (Key k : keys)
    for (Slot s = t.slot_of(k); s != kNone && !in[s]; s = t.parent_slot(s)) in[s] = 1;
  std::vector<Key> out;
  for (std::size_t s = 0; s < t.size(); ++s)
    if (in[s]) out.push_back(t.key_at(static_cast<Slot>(s)));
  return out;
}

Tree substitute(const Tree& t, const Tree& q_prime) {
  if (q_prime.empty()) {
    if (!t.empty()) throw Error(ErrorKind::RootMissing, "empty transition tree");
    return t;
  }
  RootSubtree rs = root_subtree_detail(t, q_prime.keys());
  const std::size_t k = q_prime.size();
  std::vector<Slot> full(k);
  for (std::size_t r = 0; r < k; ++r) full[r] = t.slot_of(q_prime.keys()[r]);
  std::vector<Slot> left(t.size()), right(t.size());
  for (std::size_t s = 0; s < t.size(); ++s) {
    left[s] = t.left_slot(static_cast<Slot>(s));
    right[s] = t.right_slot(static_cast<Slot>(s));
  }
  auto hang = [&](std::size_t gap) -> Slot {
    return rs.hanging[gap] ? t.slot_of(*rs.hanging[gap]) : kNone;
  };
  for (std::size_t r = 0; r < k; ++r) {
    Slot l = q_prime.left_slot(static_cast<Slot>(r));
    Slot rr = q_prime.right_slot(static_cast<Slot>(r));
    left[full[r]] = l != kNone ? full[l] : hang(r);
    right[full[r]] = rr != kNone ? full[rr] : hang(r + 1);
  }
  return Tree::from_links(t.keys(), std::move(left), std::move(right), full[q_prime.root_slot()]);
}

// ---------------------------------------------------------------- enumeration

std::uint64_t catalan(int n) {
  std::uint64_t c = 1;
  for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

namespace {

void preorders(std::span<const Key> keys, std::vector<std::vector<Key>>& out) {
  if (keys.empty()) {
    out.emplace_back();
    return;
  }
  for (std::size_t r = 0; r < keys.size(); ++r) {
    std::vector<std::vector<Key>> ls, rs;
    preorders(keys.subspan(0, r), ls);
    preorders(keys.subspan(r + 1), rs);
    for (const auto& l : ls)
      for (const auto& rr : rs) {
        std::vector<Key> p;
        p.reserve(keys.size());
        p.push_back(keys[r]);
        p.insert(p.end(), l.begin(), l.end());
        p.insert(p.end(), rr.begin(), rr.end());
        out.push_back(std::move(p));
      }
  }
}

}  // namespace

std::vector<Tree> all_shapes_over(std::span<const Key> sorted_keys) {
  std::vector<std::vector<Key>> pres;
  preorders(sorted_keys, pres);
  std::vector<Tree> out;
  out.reserve(pres.size());
  for (const auto& p : pres) out.push_back(bst_from_sequence(std::span<const Key>(p)));
  return out;
}

std::vector<Tree> all_shapes(int n) {
  std::vector<Key> keys = iota_keys(1, n);
  return all_shapes_over(keys);
}

Canonical canonicalize(const Tree& t) {
  Canonical c{t.relabeled(iota_keys(1, static_cast<Key>(t.size()))), t.keys()};
  return c;
}

// ---------------------------------------------------------------- text forms

std::string shape_string(const Tree& t) {
  std::string out;
  std::function<void(Slot)> go = [&](Slot s) {
    if (s == kNone) {
      out += '.';
      return;
    }
    out += '(';
    out += key_str(t.key_at(s));
    out += ' ';
    go(t.left_slot(s));
    out += ' ';
    go(t.right_slot(s));
    out += ')';
  };
  go(t.root_slot());
  return out;
}

Tree parse_shape(const std::string& s) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  std::vector<Key> keys;
  struct Node {
    Key key;
    int l, r;
  };
  std::vector<Node> nodes;
  std::function<int()> parse = [&]() -> int {
    skip();
    if (i >= s.size()) throw Error(ErrorKind::Parse, "unexpected end of shape");
    if (s[i] == '.') {
      ++i;
      return -1;
    }
    if (s[i] != '(') throw Error(ErrorKind::Parse, "expected '(' or '.' in shape");
    ++i;
    skip();
    std::size_t j = i;
    if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) throw Error(ErrorKind::Parse, "expected key in shape");
    Key k = std::stoll(s.substr(i, j - i));
    i = j;
    int id = static_cast<int>(nodes.size());
    nodes.push_back({k, -1, -1});
    int l = parse();
    int r = parse();
    nodes[id].l = l;
    nodes[id].r = r;
    skip();
    if (i >= s.size() || s[i] != ')') throw Error(ErrorKind::Parse, "expected ')' in shape");
    ++i;
    return id;
  };
  int root = parse();
  skip();
  if (i != s.size()) throw Error(ErrorKind::Parse, "trailing characters after shape");
  for (const auto& n : nodes) keys.push_back(n.key);
  std::vector<Key> sorted(keys);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorKind::Parse, "duplicate key in shape");
  auto slot = [&](int id) -> Slot {
    if (id < 0) return kNone;
    return static_cast<Slot>(std::lower_bound(sorted.begin(), sorted.end(), nodes[id].key) - sorted.begin());
  };
  std::vector<Slot> left(sorted.size(), kNone), right(sorted.size(), kNone);
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    left[slot(static_cast<int>(id))] = slot(nodes[id].l);
    right[slot(static_cast<int>(id))] = slot(nodes[id].r);
  }
  try {
    return Tree::from_links(std::move(sorted), std::move(left), std::move(right), slot(root));
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

std::string tree_line(const Tree& t) {
  std::ostringstream os;
  os << "tree:";
  for (Key k : preorder(t)) os << ' ' << k;
  return os.str();
}

std::vector<Key> iota_keys(Key lo, Key hi) {
  std::vector<Key> v;
  for (Key k = lo; k <= hi; ++k) v.push_back(k);
  return v;
}

Tree left_spine(std::span<const Key> sorted_keys) {
  const std::size_t n = sorted_keys.size();
  std::vector<Slot> left(n, kNone), right(n, kNone);
  for (std::size_t s = 1; s < n; ++s) left[s] = static_cast<Slot>(s - 1);
  return Tree::from_links({sorted_keys.begin(), sorted_keys.end()}, std::move(left), std::move(right),
                          n == 0 ? kNone : static_cast<Slot>(n - 1));
}

Tree right_spine(std::span<const Key> sorted_keys) {
  const std::size_t n = sorted_keys.size();
  std::vector<Slot> left(n, kNone), right(n, kNone);
  for (std::size_t s = 0; s + 1 < n; ++s) right[s] = static_cast<Slot>(s + 1);
  return Tree::from_links({sorted_keys.begin(), sorted_keys.end()}, std::move(left), std::move(right),
                          n == 0 ? kNone : 0);
}

bool is_valid_bst(const Tree& t) {
  const std::size_t n = t.size();
  if (n == 0) return t.root_slot() == kNone;
  if (t.root_slot() == kNone || t.parent_slot(t.root_slot()) != kNone) return false;
  // In-order walk must visit slots 0..n-1 in order, exactly once.
  std::vector<Slot> st;
  Slot c = t.root_slot();
  Slot expect = 0;
  std::size_t steps = 0;
  while (c != kNone || !st.empty()) {
    if (++steps > 4 * n + 4) return false;
    while (c != kNone) {
      st.push_back(c);
      c = t.left_slot(c);
      if (st.size() > n) return false;
    }
    c = st.back();
    st.pop_back();
    if (c != expect) return false;
    ++expect;
    Slot r = t.right_slot(c);
    if (r != kNone && t.parent_slot(r) != c) return false;
    Slot l = t.left_slot(c);
    if (l != kNone && t.parent_slot(l) != c) return false;
    c = r;
  }
  return static_cast<std::size_t>(expect) == n;
}

}  // namespace splaylab
