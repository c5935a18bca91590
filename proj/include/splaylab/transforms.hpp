#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "splaylab/algorithms.hpp"
#include "splaylab/model.hpp"
#include "splaylab/tree.hpp"

namespace splaylab {

// ---- transition digraphs

struct TransitionDigraph {
  int n = 0;
  Algo algo = Algo::Splay;
  std::vector<Tree> vertices;               // all_shapes(n)
  std::vector<std::vector<int>> arcs;       // arcs[v][x - 1] = vertex after accessing x
  std::unordered_map<Tree, int, TreeHash> index;

  int index_of(const Tree& t) const;  // throws KeyMismatch for a foreign tree
};

inline constexpr int kMaxDigraphN = 8;

TransitionDigraph build_digraph(int n, Algo a);  // 1 <= n <= 8, else GuardExceeded
// Shared read-only instance per (n, algo).
const TransitionDigraph& cached_digraph(int n, Algo a);

bool strongly_connected(const TransitionDigraph& g);
// Largest finite BFS distance; throws Unreachable when not strongly connected.
int diameter(const TransitionDigraph& g);
// Keys accessed to move s to t (keys 1..n). Throws Unreachable.
std::vector<Key> shortest_path(const TransitionDigraph& g, const Tree& s, const Tree& t);

struct GnReport {
  int n = 0;
  Algo algo = Algo::Splay;
  std::size_t vertices = 0;
  bool strongly_connected = false;
  std::optional<int> diameter;
  Tree max_eccentricity_vertex;
  int max_eccentricity = 0;  // over reachable targets
};
GnReport gn_report(int n, Algo a);
std::string format_gn_report(const GnReport& r);

// ---- restricted rotations and transformation sequences

// Rotation at x whose parent is the root or the root's left child.
bool is_restricted(const Tree& t, Key x);

// Restricted rotations turning t into its right spine; at most 2|t| - 2.
std::vector<Key> flatten_restricted(const Tree& t);

// Inverse of a rotation list: applying it to replay(t, rots) gives back t.
std::vector<Key> inverse_rotations(const Tree& t, const std::vector<Key>& rots);

Tree apply_rotations(const Tree& t, const std::vector<Key>& rots);

struct TransformPlan {
  Tree source, target;
  std::vector<Key> keys;              // splay these from source to reach target
  std::vector<Key> restricted;        // the restricted rotations realized
  std::int64_t predicted_bound = 0;   // 80 n
  std::int64_t cost = 0;              // Splay cost of replaying keys
};

// Splay keys realizing one restricted rotation at y in the current tree,
// inside a four-node root subtree. Fill nodes come from `pool` when given.
std::vector<Key> realize_restricted(const Tree& t, Key y, const std::vector<Key>* pool = nullptr);

// Splay keys turning the top four-node root subtree w of t into the shape
// target (same keys). Uses G_4 shortest paths.
std::vector<Key> g4_keys(const Tree& w, const Tree& target);

TransformPlan transform_sequence(const Tree& t, const Tree& t_prime);

// ---- embeddings

struct Embedding {
  Tree initial;                    // possibly padded with guard keys
  std::vector<Key> keys;           // the request sequence
  std::vector<std::size_t> block_end;  // index one past each access's block
};

// Splay simulation of an execution. Trees of fewer than four keys are padded
// with guard keys above the maximum, hung as a right chain under it.
Embedding simulation_embedding(const Instance& inst, const Execution& e);

// Splay keys for one access: turns T_{i-1} into T_i, ending with x_i.
// prev must have at least four keys.
std::vector<Key> simulation_block(const Tree& prev, const Tree& q, const Tree& q_prime);

Tree pad_guards(const Tree& t, std::size_t min_size);

// Top-Down Splay embedding. Needs |T| >= 4.
struct TopDownEmbedding {
  std::vector<Key> keys;
  Key a = 0, b = 0, z = 0;  // frame keys: min, its successor, max
  std::size_t init_len = 0;
};
TopDownEmbedding topdown_embedding(const Instance& inst, const Execution& e);
// The tree z(b(a, R), .) where R is t with a, b, z spliced out.
Tree topdown_frame(const Tree& t, Key a, Key b, Key z);
inline constexpr std::int64_t kTopDownCostConstant = 100;

// ---- sequences built from splaying

// k copies of X followed by T(V, T), V = splay final tree of X from T.
std::vector<Key> augmented_repeat(const Instance& inst, int k);

// G(x, y, z) = (z, y, z, x, y, z).
std::vector<Key> cleanup_group(Key x, Key y, Key z);
// Universal transform for |Q| odd and >= 5.
std::vector<Key> universal_transform(const Tree& q);

// Four-node transforms driving Splay and Move-to-Root alike.
struct SimultaneousCheck {
  std::vector<Key> seq;
  bool from_left_spine = true;  // mirror sequences start from the right spine
  Tree splay_result, mtr_result;
  bool agree = false;
};
// The six listed sequences from the left spine and their mirrors.
std::vector<std::vector<Key>> listed_simultaneous_sequences();
std::vector<SimultaneousCheck> check_listed_simultaneous();
// Keys 1..4 only. Result drives both algorithms from t to t_prime.
std::vector<Key> simultaneous_transform4(const Tree& t, const Tree& t_prime);

}  // namespace splaylab
