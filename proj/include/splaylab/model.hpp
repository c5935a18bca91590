#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "splaylab/tree.hpp"

namespace splaylab {

struct Instance {
  std::vector<Key> requests;
  Tree initial;
  std::optional<std::vector<Key>> subsequence;  // paired Y, when a family has one
};

// Throws KeyAbsent when a request is missing from the initial tree.
void check_instance(const Instance& inst);

// Transition trees Q'_1..Q'_m.
using Execution = std::vector<Tree>;

struct TraceStep {
  Tree q;        // connected root subtree of the previous after-tree
  Tree q_prime;  // transition tree, rooted at the request
  Tree after;
  PathEncoding access_path;  // path of the request in the previous after-tree
};

struct ExecutionTrace {
  Tree initial;
  std::vector<Key> requests;
  std::vector<TraceStep> steps;
  std::int64_t cost = 0;

  const Tree& final_tree() const { return steps.empty() ? initial : steps.back().after; }
  const Tree& before(std::size_t i) const { return i == 0 ? initial : steps[i - 1].after; }
  Execution execution() const;
};

// Checks every step; throws InvalidExecution with a per-step diagnostic.
ExecutionTrace validate(const Instance& inst, const Execution& e);

// Merge transition trees around the deleted (1-based) request indices.
Execution elide(const Instance& inst, const Execution& e, const std::set<std::size_t>& deleted);

// Instance restricted to the requests not in `deleted` (1-based).
Instance subsequence_instance(const Instance& inst, const std::set<std::size_t>& deleted);

// ---- rotation-based model

struct RotationStep {
  std::vector<Key> rotations;  // keys rotated, in order, before the search
};

struct RotationExecution {
  std::vector<RotationStep> steps;
};

struct RotationReplay {
  std::vector<Tree> after;       // tree at search time, per access
  std::vector<int> search_depth;  // depth of x_i at search time
  std::int64_t cost = 0;          // sum of 1 + e_i + d_i
};

// Throws InvalidExecution on rotation at a root or absent key.
RotationReplay replay_rotations(const Instance& inst, const RotationExecution& r);
std::int64_t rotation_cost(const Instance& inst, const RotationExecution& r);

// Rotations (keys) turning t into its right spine. At most |t|-1 of them.
std::vector<Key> right_spine_rotations(const Tree& t);
// Rotations turning the right spine into t: the inverse of the above.
std::vector<Key> from_right_spine_rotations(const Tree& t);

RotationExecution to_rotation_model(const Instance& inst, const Execution& e);

struct FromRotationResult {
  Execution execution;
  // Rotations still pending after the last search (deferred by grouping and
  // never needed). Replaying them on the final after-tree gives the rotation
  // execution's last search-time tree with x_m then rotated to the root.
  std::vector<Key> dropped;
};
FromRotationResult from_rotation_model(const Instance& inst, const RotationExecution& r);

// ---- text formats

// "tree: ..." then "requests: ..." and optionally "subsequence: ...".
Instance parse_instance(const std::string& text);
std::string format_instance(const Instance& inst);
Execution parse_execution(const std::string& text);
std::string format_execution(const Execution& e);

// True iff `sub` occurs in `seq` as a (not necessarily contiguous) subsequence.
bool is_subsequence(const std::vector<Key>& sub, const std::vector<Key>& seq);

}  // namespace splaylab
