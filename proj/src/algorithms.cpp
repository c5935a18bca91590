#include "splaylab/algorithms.hpp"

#include <algorithm>
#include <sstream>

namespace splaylab {

const char* to_string(SplayStepKind k) {
  switch (k) {
    case SplayStepKind::Zig: return "zig";
    case SplayStepKind::ZigZig: return "zig-zig";
    case SplayStepKind::ZigZag: return "zig-zag";
  }
  return "?";
}

const char* to_string(Algo a) {
  switch (a) {
    case Algo::Splay: return "splay";
    case Algo::MoveToRoot: return "mtr";
    case Algo::TopDownSplay: return "tds";
  }
  return "?";
}

Algo parse_algo(const std::string& s) {
  if (s == "splay") return Algo::Splay;
  if (s == "mtr") return Algo::MoveToRoot;
  if (s == "tds") return Algo::TopDownSplay;
  throw Error(ErrorKind::UnknownName, "unknown algorithm '" + s + "'");
}

namespace {

int crossing_from_encoding(const PathEncoding& enc) {
  if (enc.empty()) return 1;
  int c = 2;
  for (std::size_t j = 1; j < enc.size(); ++j)
    if (enc[j] != enc[j - 1]) ++c;
  return c;
}

AccessRecord start_record(const Tree& t, Key x) {
  AccessRecord r;
  r.key = x;
  r.path = path_encoding(t, x);
  r.cost = static_cast<std::int64_t>(r.path.size()) + 1;
  r.crossing = crossing_from_encoding(r.path);
  r.bookkeeping = static_cast<int>(r.cost) - r.crossing;
  return r;
}

bool is_left(const Tree& t, Slot s) {
  Slot p = t.parent_slot(s);
  return p != kNone && t.left_slot(p) == s;
}

// Move-to-Root followed by rotating same-side pairs (p_{j-1}, p_j) for the
// given parity of j; p_0 = x, p_k = root.
void global_view(TreeEditor& ed, Key x, bool top_down) {
  std::vector<Key> up = ed.tree().path(x);
  std::reverse(up.begin(), up.end());  // p_0 = x .. p_k = root
  const std::size_t k = up.size() - 1;
  Slot xs = ed.tree().slot_of(x);
  while (ed.tree().parent_slot(xs) != kNone) ed.rotate_up(xs);
  for (std::size_t j = 2; j <= k; ++j) {
    bool take = top_down ? (j % 2 == k % 2) : (j % 2 == 0);
    if (!take) continue;
    Key a = up[j - 1], b = up[j];
    if ((a < x) != (b < x)) continue;
    Slot sa = ed.tree().slot_of(a), sb = ed.tree().slot_of(b);
    if (ed.tree().parent_slot(sa) == sb) ed.rotate_up(sa);
    else if (ed.tree().parent_slot(sb) == sa) ed.rotate_up(sb);
    else throw Error(ErrorKind::InvalidArgument, "global view pair not adjacent");
  }
}

}  // namespace

AccessRecord splay_in_place(TreeEditor& ed, Key x) {
  AccessRecord r = start_record(ed.tree(), x);
  const Slot xs = ed.tree().slot_of(x);
  while (true) {
    const Tree& t = ed.tree();
    Slot p = t.parent_slot(xs);
    if (p == kNone) break;
    Slot g = t.parent_slot(p);
    if (g == kNone) {
      ed.rotate_up(xs);
      r.steps.push_back(SplayStepKind::Zig);
    } else if (is_left(t, xs) == is_left(t, p)) {
      ed.rotate_up(p);
      ed.rotate_up(xs);
      r.steps.push_back(SplayStepKind::ZigZig);
    } else {
      ed.rotate_up(xs);
      ed.rotate_up(xs);
      r.steps.push_back(SplayStepKind::ZigZag);
    }
  }
  return r;
}

AccessRecord move_to_root_in_place(TreeEditor& ed, Key x) {
  AccessRecord r = start_record(ed.tree(), x);
  const Slot xs = ed.tree().slot_of(x);
  while (ed.tree().parent_slot(xs) != kNone) ed.rotate_up(xs);
  return r;
}

AccessRecord top_down_splay_in_place(TreeEditor& ed, Key x) {
  AccessRecord r = start_record(ed.tree(), x);
  global_view(ed, x, true);
  return r;
}

AccessRecord access_in_place(Algo a, TreeEditor& ed, Key x) {
  switch (a) {
    case Algo::Splay: return splay_in_place(ed, x);
    case Algo::MoveToRoot: return move_to_root_in_place(ed, x);
    case Algo::TopDownSplay: return top_down_splay_in_place(ed, x);
  }
  throw Error(ErrorKind::InvalidArgument, "bad algorithm");
}

namespace {
std::pair<Tree, AccessRecord> pure(Algo a, const Tree& t, Key x) {
  TreeEditor ed(t);
  AccessRecord r = access_in_place(a, ed, x);
  return {std::move(ed).take(), std::move(r)};
}
}  // namespace

std::pair<Tree, AccessRecord> splay(const Tree& t, Key x) { return pure(Algo::Splay, t, x); }
std::pair<Tree, AccessRecord> move_to_root(const Tree& t, Key x) { return pure(Algo::MoveToRoot, t, x); }
std::pair<Tree, AccessRecord> top_down_splay(const Tree& t, Key x) { return pure(Algo::TopDownSplay, t, x); }
Tree access(Algo a, const Tree& t, Key x) { return pure(a, t, x).first; }

AccessRecord insertion_splay_in_place(TreeEditor& ed, Key k) {
  ed.insert_leaf(k);
  return splay_in_place(ed, k);
}

Tree insertion_splay(const Tree& t, Key k) {
  TreeEditor ed(t);
  insertion_splay_in_place(ed, k);
  return std::move(ed).take();
}

ExecutionTrace execute(Algo a, const Instance& inst) {
  check_instance(inst);
  ExecutionTrace tr;
  tr.initial = inst.initial;
  tr.requests = inst.requests;
  TreeEditor ed(inst.initial);
  for (Key x : inst.requests) {
    TraceStep st;
    std::vector<Key> pk = ed.tree().path(x);
    std::sort(pk.begin(), pk.end());
    st.q = root_subtree(ed.tree(), pk);
    AccessRecord r = access_in_place(a, ed, x);
    st.access_path = r.path;
    st.after = ed.tree();
    st.q_prime = root_subtree(st.after, pk);
    tr.cost += r.cost;
    tr.steps.push_back(std::move(st));
  }
  return tr;
}

ExecutionTrace splay_execute(const Instance& inst) { return execute(Algo::Splay, inst); }

RunTotals run_streaming(Algo a, const Tree& initial, const std::vector<Key>& requests) {
  RunTotals tot;
  TreeEditor ed(initial);
  for (Key x : requests) {
    AccessRecord r = access_in_place(a, ed, x);
    tot.cost += r.cost;
    tot.crossing += r.crossing;
    tot.bookkeeping += r.bookkeeping;
  }
  tot.final_tree = std::move(ed).take();
  return tot;
}

std::int64_t algo_cost(Algo a, const Tree& initial, const std::vector<Key>& requests) {
  return run_streaming(a, initial, requests).cost;
}

// ---------------------------------------------------------------- deque

DequeResult deque_run(const Tree& t0, const std::vector<DequeOp>& ops) {
  DequeResult res;
  TreeEditor ed(t0);
  for (const DequeOp& op : ops) {
    const Tree& t = ed.tree();
    switch (op.kind) {
      case DequeOpKind::Pop:
      case DequeOpKind::Eject: {
        if (t.empty()) throw Error(ErrorKind::EmptyTree, "delete on empty deque");
        const bool pop = op.kind == DequeOpKind::Pop;
        const auto& keys = t.keys();
        Key ext = pop ? keys.front() : keys.back();
        if (keys.size() == 1) {
          res.cost += splay_in_place(ed, ext).cost;
        } else {
          Key nb = pop ? keys[1] : keys[keys.size() - 2];
          res.cost += splay_in_place(ed, nb).cost;
        }
        ed.remove_spliced(ext);
        res.removed.push_back(ext);
        break;
      }
      case DequeOpKind::Push:
        if (!t.empty() && op.key >= t.keys().front())
          throw Error(ErrorKind::InvalidArgument, "push needs a new minimum key");
        res.cost += insertion_splay_in_place(ed, op.key).cost;
        break;
      case DequeOpKind::Inject:
        if (!t.empty() && op.key <= t.keys().back())
          throw Error(ErrorKind::InvalidArgument, "inject needs a new maximum key");
        res.cost += insertion_splay_in_place(ed, op.key).cost;
        break;
    }
  }
  res.tree = std::move(ed).take();
  return res;
}

std::vector<DequeOp> parse_deque_script(const std::string& text) {
  std::vector<DequeOp> ops;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word) || word[0] == '#') continue;
    DequeOp op{};
    if (word == "pop") op.kind = DequeOpKind::Pop;
    else if (word == "eject") op.kind = DequeOpKind::Eject;
    else if (word == "push" || word == "inject") {
      op.kind = word == "push" ? DequeOpKind::Push : DequeOpKind::Inject;
      if (!(ls >> op.key)) throw Error(ErrorKind::Parse, word + " needs a key");
    } else {
      throw Error(ErrorKind::Parse, "unknown deque op '" + word + "'");
    }
    ops.push_back(op);
  }
  return ops;
}

// ---------------------------------------------------------------- oracles

Tree splay_global_view(const Tree& t, Key x) {
  TreeEditor ed(t);
  global_view(ed, x, false);
  return std::move(ed).take();
}

Tree treap_after(const Tree& initial, const std::vector<Key>& accessed) {
  // Priority: access i -> i (1-based); never accessed -> postorder rank
  // minus |T| minus 1, so all initial priorities are negative.
  const auto post = postorder(initial);
  const std::int64_t n = static_cast<std::int64_t>(initial.size());
  std::vector<std::pair<std::int64_t, Key>> pri;
  for (std::size_t i = 0; i < post.size(); ++i)
    pri.emplace_back(static_cast<std::int64_t>(i + 1) - n - 1, post[i]);
  std::sort(pri.begin(), pri.end(), [](auto& a, auto& b) { return a.second < b.second; });
  for (std::size_t i = 0; i < accessed.size(); ++i) {
    auto it = std::lower_bound(pri.begin(), pri.end(), accessed[i],
                               [](const auto& p, Key k) { return p.second < k; });
    if (it == pri.end() || it->second != accessed[i])
      throw Error(ErrorKind::KeyAbsent, "accessed key not in tree");
    it->first = static_cast<std::int64_t>(i + 1);
  }
  std::sort(pri.begin(), pri.end(), [](auto& a, auto& b) { return a.first > b.first; });
  std::vector<Key> order;
  for (auto& p : pri) order.push_back(p.second);
  return bst_from_sequence(std::span<const Key>(order));
}

}  // namespace splaylab
