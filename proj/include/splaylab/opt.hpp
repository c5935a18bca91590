#pragma once

#include <string>
#include <vector>

#include "splaylab/model.hpp"
#include "splaylab/tree.hpp"

namespace splaylab {

struct Guards {
  std::size_t max_n = 7;
  std::size_t max_m = 8;
};

// Defaults, or unlimited when SPLAYLAB_GUARD_OVERRIDE is set to a non-empty,
// non-"0" value.
Guards default_guards();
bool guard_override_enabled();

struct Transition {
  Tree q_prime;
  Tree after;
};
// Every (Q, Q') for accessing x in t: Q any root subtree containing x, Q'
// any arrangement of Q's keys rooted at x.
std::vector<Transition> enumerate_transitions(const Tree& t, Key x);

struct OptResult {
  std::int64_t cost = 0;
  Execution execution;
  std::size_t states_expanded = 0;
};
OptResult opt_cost(const Instance& inst, const Guards& g = default_guards());

struct MonotoneReport {
  std::size_t instances = 0;
  std::size_t comparisons = 0;
  std::size_t violations = 0;
  std::size_t elisions = 0;
  std::size_t elision_violations = 0;
  std::vector<std::string> messages;
};
// Every tree on <= max_n keys, every X of length <= max_m, every strict
// subsequence Y: OPT(Y,T) < OPT(X,T); elision of the optimal execution
// validates and costs strictly less.
MonotoneReport opt_monotone_sweep(std::size_t max_n, std::size_t max_m);
// One instance of the sweep.
void opt_monotone_check(const Instance& inst, MonotoneReport& r);

std::int64_t initial_tree_shift(const std::vector<Key>& x, const Tree& t, const Tree& t_prime,
                                const Guards& g = default_guards());

}  // namespace splaylab
