#include "splaylab/model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace splaylab {

namespace {

std::string step_tag(std::size_t i) { return "step " + std::to_string(i) + ": "; }

std::vector<Key> parse_keys(const std::string& rest) {
  std::istringstream is(rest);
  std::vector<Key> out;
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t used = 0;
      Key k = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(k);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad key token '" + tok + "'");
    }
  }
  return out;
}

}  // namespace

void check_instance(const Instance& inst) {
  for (Key x : inst.requests)
    if (!inst.initial.contains(x))
      throw Error(ErrorKind::KeyAbsent, "request " + std::to_string(x) + " not in initial tree");
}

Execution ExecutionTrace::execution() const {
  Execution e;
  for (const auto& s : steps) e.push_back(s.q_prime);
  return e;
}

ExecutionTrace validate(const Instance& inst, const Execution& e) {
  if (e.size() != inst.requests.size())
    throw Error(ErrorKind::InvalidExecution, "execution has " + std::to_string(e.size()) +
                                                 " transition trees for " +
                                                 std::to_string(inst.requests.size()) + " requests");
  ExecutionTrace tr;
  tr.initial = inst.initial;
  tr.requests = inst.requests;
  const Tree* cur = &tr.initial;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Tree& qp = e[i];
    const Key x = inst.requests[i];
    if (qp.empty() || qp.root() != x)
      throw Error(ErrorKind::InvalidExecution,
                  step_tag(i + 1) + "transition tree root is not the requested key " + std::to_string(x));
    for (Key k : qp.keys())
      if (!cur->contains(k))
        throw Error(ErrorKind::KeyMismatch,
                    step_tag(i + 1) + "transition tree key " + std::to_string(k) + " not in tree");
    RootSubtree rs;
    try {
      rs = root_subtree_detail(*cur, qp.keys());
    } catch (const Error& err) {
      throw Error(err.kind(), step_tag(i + 1) + err.what());
    }
    TraceStep st;
    st.access_path = path_encoding(*cur, x);
    st.q = std::move(rs.induced);
    st.q_prime = qp;
    st.after = substitute(*cur, qp);
    tr.cost += static_cast<std::int64_t>(qp.size());
    tr.steps.push_back(std::move(st));
    cur = &tr.steps.back().after;
  }
  return tr;
}

Instance subsequence_instance(const Instance& inst, const std::set<std::size_t>& deleted) {
  Instance out;
  out.initial = inst.initial;
  for (std::size_t i = 1; i <= inst.requests.size(); ++i)
    if (!deleted.count(i)) out.requests.push_back(inst.requests[i - 1]);
  return out;
}

Execution elide(const Instance& inst, const Execution& e, const std::set<std::size_t>& deleted) {
  const std::size_t m = inst.requests.size();
  for (std::size_t d : deleted)
    if (d < 1 || d > m)
      throw Error(ErrorKind::InvalidArgument, "deleted index " + std::to_string(d) + " out of range");
  ExecutionTrace tr = validate(inst, e);
  Execution out;
  std::size_t i = 1;
  while (i <= m) {
    if (!deleted.count(i)) {
      out.push_back(e[i - 1]);
      ++i;
      continue;
    }
    std::size_t j = i;
    std::size_t k = j;
    while (k <= m && deleted.count(k)) ++k;
    if (k > m) break;  // trailing block: those transitions are simply removed
    std::vector<Key> keys;
    for (std::size_t r = j; r <= k; ++r) {
      const auto& q = tr.steps[r - 1].q.keys();
      keys.insert(keys.end(), q.begin(), q.end());
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    const Tree& before = tr.before(j - 1);
    if (!is_root_subtree(before, keys))
      throw Error(ErrorKind::InvalidExecution, "elided key set is not a root subtree (block at " +
                                                   std::to_string(j) + ")");
    out.push_back(root_subtree(tr.steps[k - 1].after, keys));
    i = k + 1;
  }
  return out;
}

// ---------------------------------------------------------------- rotations

RotationReplay replay_rotations(const Instance& inst, const RotationExecution& r) {
  if (r.steps.size() != inst.requests.size())
    throw Error(ErrorKind::InvalidExecution, "rotation execution length differs from request count");
  RotationReplay out;
  TreeEditor ed(inst.initial);
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    for (Key k : r.steps[i].rotations) {
      try {
        ed.rotate_key(k);
      } catch (const Error& err) {
        throw Error(ErrorKind::InvalidExecution, step_tag(i + 1) + err.what());
      }
    }
    const Key x = inst.requests[i];
    if (!ed.tree().contains(x))
      throw Error(ErrorKind::InvalidExecution, step_tag(i + 1) + "search key absent");
    int d = ed.tree().depth(x);
    out.search_depth.push_back(d);
    out.after.push_back(ed.tree());
    out.cost += 1 + static_cast<std::int64_t>(r.steps[i].rotations.size()) + d;
  }
  return out;
}

std::int64_t rotation_cost(const Instance& inst, const RotationExecution& r) {
  return replay_rotations(inst, r).cost;
}

namespace {

// Rotations to the right spine, with the parent of each rotated key at the
// time of rotation.
std::vector<std::pair<Key, Key>> spine_pairs(const Tree& t) {
  std::vector<std::pair<Key, Key>> out;
  if (t.empty()) return out;
  TreeEditor ed(t);
  Slot c = ed.tree().root_slot();
  while (c != kNone) {
    Slot l = ed.tree().left_slot(c);
    if (l != kNone) {
      out.emplace_back(ed.tree().key_at(l), ed.tree().key_at(c));
      ed.rotate_up(l);
      c = l;
    } else {
      c = ed.tree().right_slot(c);
    }
  }
  return out;
}

}  // namespace

std::vector<Key> right_spine_rotations(const Tree& t) {
  std::vector<Key> out;
  for (const auto& pr : spine_pairs(t)) out.push_back(pr.first);
  return out;
}

std::vector<Key> from_right_spine_rotations(const Tree& t) {
  auto pairs = spine_pairs(t);
  std::vector<Key> out;
  for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) out.push_back(it->second);
  return out;
}

RotationExecution to_rotation_model(const Instance& inst, const Execution& e) {
  ExecutionTrace tr = validate(inst, e);
  RotationExecution r;
  for (const auto& st : tr.steps) {
    RotationStep rs;
    rs.rotations = right_spine_rotations(st.q);
    auto back = from_right_spine_rotations(st.q_prime);
    rs.rotations.insert(rs.rotations.end(), back.begin(), back.end());
    r.steps.push_back(std::move(rs));
  }
  return r;
}

FromRotationResult from_rotation_model(const Instance& inst, const RotationExecution& r) {
  replay_rotations(inst, r);  // validity

  // Stage 1: bring x_i to the root before its search, undo before the next
  // access.
  const std::size_t m = r.steps.size();
  std::vector<std::vector<Key>> groups(m);
  {
    TreeEditor ed(inst.initial);
    std::vector<Key> undo;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Key>& g = groups[i];
      for (Key k : undo) {
        ed.rotate_key(k);
        g.push_back(k);
      }
      undo.clear();
      for (Key k : r.steps[i].rotations) {
        ed.rotate_key(k);
        g.push_back(k);
      }
      const Key x = inst.requests[i];
      std::vector<Key> parents;
      while (ed.tree().root() != x) {
        parents.push_back(*ed.tree().parent(x));
        ed.rotate_key(x);
        g.push_back(x);
      }
      undo.assign(parents.rbegin(), parents.rend());
    }
  }

  // Stage 2 and 3: per access, keep the rotations whose edges are connected
  // to x_i, defer the rest past the search, then summarize as (Q, Q').
  FromRotationResult out;
  Tree cur = inst.initial;
  std::vector<Key> pending;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Key> list = pending;
    list.insert(list.end(), groups[i].begin(), groups[i].end());
    pending.clear();

    const std::size_t n = cur.size();
    std::vector<Slot> uf(n);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](Slot a) {
      while (uf[a] != a) a = uf[a] = uf[uf[a]];
      return a;
    };
    std::vector<std::pair<Slot, Slot>> edges;
    {
      TreeEditor sim(cur);
      for (Key k : list) {
        Slot s = sim.tree().slot_of(k);
        Slot p = sim.tree().parent_slot(s);
        edges.emplace_back(s, p);
        uf[find(s)] = find(p);
        sim.rotate_up(s);
      }
    }
    const Key x = inst.requests[i];
    const Slot xs = cur.slot_of(x);
    std::vector<Key> qkeys{x};
    std::vector<char> inq(n, 0);
    inq[xs] = 1;
    TreeEditor ed(cur);
    std::size_t kept = 0;
    for (std::size_t j = 0; j < list.size(); ++j) {
      auto [s, p] = edges[j];
      if (find(s) == find(xs)) {
        ed.rotate_up(s);
        ++kept;
        for (Slot a : {s, p})
          if (!inq[a]) {
            inq[a] = 1;
            qkeys.push_back(cur.key_at(a));
          }
      } else {
        pending.push_back(list[j]);
      }
    }
    Tree next = std::move(ed).take();
    if (next.root() != x)
      throw Error(ErrorKind::InvalidExecution, step_tag(i + 1) + "grouped rotations do not root the request");
    std::sort(qkeys.begin(), qkeys.end());
    if (qkeys.size() > 2 * kept + 1)
      throw Error(ErrorKind::InvalidExecution, step_tag(i + 1) + "group larger than 2e+1");
    Tree qp = root_subtree(next, qkeys);
    if (substitute(cur, qp) != next)
      throw Error(ErrorKind::InvalidExecution, step_tag(i + 1) + "group is not a root subtree transformation");
    out.execution.push_back(std::move(qp));
    cur = std::move(next);
  }
  out.dropped = std::move(pending);
  return out;
}

// ---------------------------------------------------------------- text

Instance parse_instance(const std::string& text) {
  Instance inst;
  bool have_tree = false, have_req = false;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::Parse, "expected 'name: values' line");
    std::string name = line.substr(first, colon - first);
    std::string rest = line.substr(colon + 1);
    if (name == "tree") {
      auto keys = parse_keys(rest);
      inst.initial = bst_from_sequence(std::span<const Key>(keys));
      if (inst.initial.size() != keys.size()) throw Error(ErrorKind::Parse, "duplicate key in tree line");
      have_tree = true;
    } else if (name == "requests") {
      inst.requests = parse_keys(rest);
      have_req = true;
    } else if (name == "subsequence") {
      inst.subsequence = parse_keys(rest);
    } else {
      throw Error(ErrorKind::Parse, "unknown line '" + name + "'");
    }
  }
  if (!have_tree || !have_req) throw Error(ErrorKind::Parse, "instance needs tree: and requests: lines");
  check_instance(inst);
  return inst;
}

std::string format_instance(const Instance& inst) {
  std::ostringstream os;
  os << tree_line(inst.initial) << "\nrequests:";
  for (Key k : inst.requests) os << ' ' << k;
  os << '\n';
  if (inst.subsequence) {
    os << "subsequence:";
    for (Key k : *inst.subsequence) os << ' ' << k;
    os << '\n';
  }
  return os.str();
}

Execution parse_execution(const std::string& text) {
  Execution e;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    e.push_back(parse_shape(line.substr(first, line.find_last_not_of(" \t\r") - first + 1)));
  }
  return e;
}

std::string format_execution(const Execution& e) {
  std::string out;
  for (const auto& t : e) out += shape_string(t) + "\n";
  return out;
}

bool is_subsequence(const std::vector<Key>& sub, const std::vector<Key>& seq) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < seq.size() && j < sub.size(); ++i)
    if (seq[i] == sub[j]) ++j;
  return j == sub.size();
}

}  // namespace splaylab
