#pragma once

#include <string>
#include <utility>
#include <vector>

#include "splaylab/model.hpp"
#include "splaylab/tree.hpp"

namespace splaylab {

enum class SplayStepKind { Zig, ZigZig, ZigZag };
const char* to_string(SplayStepKind k);

struct AccessRecord {
  Key key = 0;
  PathEncoding path;                  // before the access
  std::vector<SplayStepKind> steps;   // Splay only
  std::int64_t cost = 0;              // d + 1
  int crossing = 0;                   // level in the tree before the access
  int bookkeeping = 0;                // cost - crossing
};

enum class Algo { Splay, MoveToRoot, TopDownSplay };
const char* to_string(Algo a);
Algo parse_algo(const std::string& s);  // "splay" | "mtr" | "tds"

// In-place forms for streaming use.
AccessRecord splay_in_place(TreeEditor& ed, Key x);
AccessRecord move_to_root_in_place(TreeEditor& ed, Key x);
AccessRecord top_down_splay_in_place(TreeEditor& ed, Key x);
AccessRecord access_in_place(Algo a, TreeEditor& ed, Key x);

std::pair<Tree, AccessRecord> splay(const Tree& t, Key x);
std::pair<Tree, AccessRecord> move_to_root(const Tree& t, Key x);
std::pair<Tree, AccessRecord> top_down_splay(const Tree& t, Key x);
Tree access(Algo a, const Tree& t, Key x);

// Insert k as a leaf, then splay it.
Tree insertion_splay(const Tree& t, Key k);
AccessRecord insertion_splay_in_place(TreeEditor& ed, Key k);

// Full traces (retain every after-tree).
ExecutionTrace execute(Algo a, const Instance& inst);
ExecutionTrace splay_execute(const Instance& inst);

// Streaming totals; keeps only the current tree.
struct RunTotals {
  std::int64_t cost = 0;
  std::int64_t crossing = 0;
  std::int64_t bookkeeping = 0;
  Tree final_tree;
};
RunTotals run_streaming(Algo a, const Tree& initial, const std::vector<Key>& requests);
std::int64_t algo_cost(Algo a, const Tree& initial, const std::vector<Key>& requests);

// ---- deque

enum class DequeOpKind { Push, Inject, Pop, Eject };
struct DequeOp {
  DequeOpKind kind;
  Key key = 0;  // push / inject only
};
struct DequeResult {
  Tree tree;
  std::int64_t cost = 0;
  std::vector<Key> removed;  // keys returned by pop / eject, in order
};
DequeResult deque_run(const Tree& t0, const std::vector<DequeOp>& ops);
std::vector<DequeOp> parse_deque_script(const std::string& text);

// Global-view Splay: Move-to-Root, then rotate same-side ancestor pairs
// (p1,p2), (p3,p4), ... Used as an independent realization in tests.
Tree splay_global_view(const Tree& t, Key x);

// Treap rebuilt from scratch: priorities are latest access time, initial
// nodes ranked by postorder. Oracle for Move-to-Root.
Tree treap_after(const Tree& initial, const std::vector<Key>& accessed);

}  // namespace splaylab
