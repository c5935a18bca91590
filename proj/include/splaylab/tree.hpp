#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "splaylab/error.hpp"

namespace splaylab {

using Key = std::int64_t;
using Slot = std::int32_t;
inline constexpr Slot kNone = -1;

// 0 = left, 1 = right; empty string addresses the root.
using PathEncoding = std::string;

class TreeEditor;

// Binary search tree over a finite key set. Slots are key ranks, so two
// trees with the same keys and shape compare equal member-wise.
class Tree {
 public:
  Tree() = default;

  // left/right are slot indices into the sorted key vector (kNone = absent).
  // Throws InvalidArgument unless the links describe a valid BST.
  static Tree from_links(std::vector<Key> sorted_keys, std::vector<Slot> left,
                         std::vector<Slot> right, Slot root);

  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }
  const std::vector<Key>& keys() const { return keys_; }

  Slot root_slot() const { return root_; }
  Slot left_slot(Slot s) const { return left_[s]; }
  Slot right_slot(Slot s) const { return right_[s]; }
  Slot parent_slot(Slot s) const { return parent_[s]; }
  Key key_at(Slot s) const { return keys_[s]; }

  std::optional<Slot> find(Key k) const;
  Slot slot_of(Key k) const;  // throws KeyAbsent
  bool contains(Key k) const { return find(k).has_value(); }

  Key root() const;  // throws EmptyTree
  std::optional<Key> left_child(Key k) const;
  std::optional<Key> right_child(Key k) const;
  std::optional<Key> parent(Key k) const;
  int depth(Key k) const;              // edges from the root
  std::vector<Key> path(Key k) const;  // root .. k

  // Same shape, keys replaced by an order-isomorphic sorted key list.
  Tree relabeled(std::vector<Key> sorted_keys) const;

  bool operator==(const Tree&) const = default;

 private:
  friend class TreeEditor;
  std::vector<Key> keys_;
  std::vector<Slot> left_, right_, parent_;
  Slot root_ = kNone;
};

struct TreeHash {
  std::size_t operator()(const Tree& t) const noexcept;
};

// Mutable working copy for streaming algorithms.
class TreeEditor {
 public:
  TreeEditor() = default;
  explicit TreeEditor(Tree t) : t_(std::move(t)) {}

  const Tree& tree() const { return t_; }
  Tree take() && { return std::move(t_); }

  // Rotate the edge between s and its parent. Throws RotateAtRoot.
  void rotate_up(Slot s);
  void rotate_key(Key k) { rotate_up(t_.slot_of(k)); }

  // Leaf insertion; returns the new slot. Slots of larger keys shift by one.
  Slot insert_leaf(Key k);
  // Remove a node that has at most one child, splicing the child up.
  void remove_spliced(Key k);

 private:
  Tree t_;
};

// Insertion tree: first occurrences inserted by plain leaf insertion.
Tree bst_from_sequence(std::span<const Key> keys);
Tree bst_from_sequence(std::initializer_list<Key> keys);

Tree rotate(const Tree& t, Key x);

std::vector<Key> preorder(const Tree& t);
std::vector<Key> postorder(const Tree& t);

PathEncoding path_encoding(const Tree& t, Key x);
Key decode_path(const Tree& t, const PathEncoding& enc);  // throws KeyAbsent

// Connected subtree containing the root, described by its key set.
struct RootSubtree {
  Tree induced;
  // hanging[r] is the root key of the subtree of t occupying the r-th gap of
  // the induced keys (gap 0 = left of the smallest), if any.
  std::vector<std::optional<Key>> hanging;
};
RootSubtree root_subtree_detail(const Tree& t, std::span<const Key> keys);
Tree root_subtree(const Tree& t, std::span<const Key> keys);
bool is_root_subtree(const Tree& t, std::span<const Key> keys);

// Smallest root subtree of t containing the given keys (union of paths).
std::vector<Key> root_closure(const Tree& t, std::span<const Key> keys);

// Replace the root subtree with the key set of q_prime by q_prime itself.
Tree substitute(const Tree& t, const Tree& q_prime);

// Every BST over keys 1..n exactly once (n = 0 gives the empty tree).
std::vector<Tree> all_shapes(int n);
// Same, over an arbitrary sorted key list.
std::vector<Tree> all_shapes_over(std::span<const Key> sorted_keys);
std::uint64_t catalan(int n);

struct Canonical {
  Tree tree;                // keys 1..n
  std::vector<Key> labels;  // labels[i-1] = original key of canonical key i
};
Canonical canonicalize(const Tree& t);

// Shape print "(k L R)" with "." for absent; empty tree prints ".".
std::string shape_string(const Tree& t);
Tree parse_shape(const std::string& s);  // throws Parse

// "tree: k1 k2 ..." text form (preorder, an insertion order producing t).
std::string tree_line(const Tree& t);

Tree left_spine(std::span<const Key> sorted_keys);
Tree right_spine(std::span<const Key> sorted_keys);
std::vector<Key> iota_keys(Key lo, Key hi);  // lo..hi inclusive

bool is_valid_bst(const Tree& t);

}  // namespace splaylab
