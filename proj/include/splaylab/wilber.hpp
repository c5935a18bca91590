#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "splaylab/model.hpp"
#include "splaylab/tree.hpp"

namespace splaylab {

struct LevelReport {
  Key key = 0;
  std::vector<Key> crossing;  // top-down
  int level = 0;
  int bookkeeping = 0;  // d + 1 - level
};

// Crossing nodes: root, x, and every access-path node whose incoming and
// outgoing path pointers differ in direction.
LevelReport level(const Tree& t, Key x);
int level_of(const Tree& t, Key x);

// Crossing nodes by the graphical definition: left children whose right
// child is on the path, right children whose left child is on the path, plus
// the root and x. Independent oracle for level().
std::vector<Key> crossing_nodes_graphical(const Tree& t, Key x);

std::int64_t lambda(const Instance& inst);
std::int64_t lambda(const std::vector<Key>& requests, const Tree& initial);
std::int64_t lambda_prime(const Instance& inst);
std::int64_t zeta(const Instance& inst);

// Wilber's score for access i (1-based).
int kappa(const std::vector<Key>& x, std::size_t i);
std::int64_t lambda2(const std::vector<Key>& x);  // 0 for the empty sequence

// Lambda(Z, S) - Lambda(Z, movetoroot(S, x)).
std::int64_t remove_one_gap(const Tree& s, Key x, const std::vector<Key>& z);

// ---- window decomposition

struct WindowBound {
  enum class Kind { NegInf, Finite, PosInf };
  Kind kind = Kind::Finite;
  Key key = 0;

  static WindowBound neg_inf() { return {Kind::NegInf, 0}; }
  static WindowBound pos_inf() { return {Kind::PosInf, 0}; }
  static WindowBound at(Key k) { return {Kind::Finite, k}; }
  bool finite() const { return kind == Kind::Finite; }
  bool below(Key k) const;  // bound < k
  bool above(Key k) const;  // bound > k
  bool operator==(const WindowBound&) const = default;
  std::string str() const;
};

struct WindowStep {
  std::size_t i = 0;
  WindowBound u, v;
  std::optional<std::size_t> s, t;  // nullopt = never requested (the -inf time)
  Tree S, T;                        // after-trees from S and from movetoroot(S, x)
  std::vector<Key> top_keys;        // I_i
  Tree J, K, J_plus, K_plus;
  std::optional<Key> augment;       // key placed above J and K, if any
  std::optional<Key> j_parent;      // parent of Root(J) in S_i
  std::optional<Key> k_parent;      // parent of Root(K) in T_i
  int k = 0;                        // level of x in J (0 when empty)
  std::map<Key, int> delta;         // level_S(y) - level_T(y)
};

struct LevelWitness {
  std::size_t i = 0;  // request index, 1-based
  Key z = 0;
  Key zbar = 0;
  bool in_window = false;     // z in J+_{i-1}
  bool formulas_apply = false;
  int k_prev = 0, k_cur = 0;
  int c = 0, l = 0;
  int delta = 0, A = 0, B = 0, E = 0, F = 0, G = 0;
  int zipped_level = 0, unzipped_level = 0;
  int zipped_formula = 0, unzipped_formula = 0;
  int level_diff = 0;  // Delta_{i-1}(z_i)
};

struct WindowDecomposition {
  Tree S;
  Key x = 0;
  std::vector<Key> Z;
  std::vector<WindowStep> steps;  // i = 0..m
  std::vector<LevelWitness> witnesses;  // i = 1..m
  std::int64_t gap = 0;
};

WindowDecomposition window_decompose(const Tree& s, Key x, const std::vector<Key>& z);

struct LevelFormulaReport {
  std::size_t steps_checked = 0;
  std::size_t formula_checks = 0;
  std::size_t top_tree = 0;    // Root/parents on I agree
  std::size_t window_keys = 0; // J, K keys = open window
  std::size_t mtr_split = 0;   // K = movetoroot(J, x)
  std::size_t augmented = 0;   // Delta via J+, K+ levels
  std::size_t augmented_stable = 0;
  std::size_t delta_sum = 0;
  std::size_t zero_after_settle = 0;
  std::size_t zipped = 0;      // zipped-level case table
  std::size_t unzipped = 0;    // unzipped-level case table
  std::size_t max_level_decrease = 0;
  std::size_t level_difference_bound = 0;
  std::size_t per_step_bound = 0;  // Delta <= k_{i-1} - k_i + 3 G_i
  std::vector<std::string> messages;

  // Violations counted against the acceptance gate.
  std::size_t required_violations() const;
  std::size_t all_violations() const;
  void merge(const LevelFormulaReport& o);
};

LevelFormulaReport validate_level_formulas(const WindowDecomposition& d);

}  // namespace splaylab
