#ifndef LEVEL_SPECTRA_TREE_HPP
#define LEVEL_SPECTRA_TREE_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace level_spectra {

using Vertex = std::size_t;

// Parent sentinel for the root in the internal (0-based) representation.
inline constexpr Vertex kNoParent = static_cast<Vertex>(-1);

// Enumeration refuses orders above this unless overridden.
inline constexpr std::size_t kDefaultEnumerationCap = 16;

// Per-vertex distance from the root, in edges.
using LevelVector = std::vector<int>;

// Canonical level sequence: preorder levels with child subtrees sorted so the
// sequence is lexicographically largest. Two rooted trees are isomorphic iff
// their canonical sequences are equal.
using LevelSequence = std::vector<int>;

/// Immutable rooted tree stored as a validated parent array.
class RootedTree {
 public:
  /// Validates a 0-based parent array; the root carries kNoParent.
  explicit RootedTree(std::vector<Vertex> parent);

  /// External format: 1-based indices with 0 marking the root when
  /// one_based is set, otherwise 0-based with -1 marking the root.
  static RootedTree from_parent_list(std::span<const std::int64_t> parents, bool one_based = true);

  /// Builds the tree described by a level sequence (preorder levels, first entry 0).
  static RootedTree from_level_sequence(std::span<const int> sequence);

  std::size_t size() const noexcept { return parent_.size(); }
  Vertex root() const noexcept { return root_; }
  Vertex parent(Vertex v) const { return parent_.at(v); }
  const std::vector<Vertex>& parents() const noexcept { return parent_; }

  const std::vector<Vertex>& children(Vertex v) const { return children_.at(v); }
  bool is_leaf(Vertex v) const { return children_.at(v).empty(); }
  std::vector<Vertex> leaves() const;

  /// Parent array in the external 1-based convention (root = 0).
  std::vector<std::int64_t> one_based_parents() const;

  friend bool operator==(const RootedTree& a, const RootedTree& b) { return a.parent_ == b.parent_; }

 private:
  std::vector<Vertex> parent_;
  std::vector<std::vector<Vertex>> children_;
  Vertex root_ = 0;
};

LevelVector levels(const RootedTree& tree);
int max_level(const LevelVector& levels);

RootedTree rooted_path(std::size_t n);
RootedTree rooted_star(std::size_t n);
// Star rooted at one of its leaves: root, centre, then n-2 leaves.
RootedTree star_rooted_at_leaf(std::size_t n);
RootedTree complete_dary(std::size_t arity, std::size_t height);

LevelSequence canonical_sequence(const RootedTree& tree);
std::string encode(const LevelSequence& sequence);
inline std::string canonical_encoding(const RootedTree& tree) { return encode(canonical_sequence(tree)); }
RootedTree canonicalize(const RootedTree& tree);

bool is_rooted_path(const RootedTree& tree);
bool is_rooted_star(const RootedTree& tree);

/// Removes leaf v; surviving vertices keep their relative order.
RootedTree delete_leaf(const RootedTree& tree, Vertex v);

// Streams canonical level sequences of every rooted tree on n unlabeled
// vertices, one per isomorphism class, in decreasing lexicographic order
// (rooted path first, rooted star last).
class RootedTreeEnumerator {
 public:
  explicit RootedTreeEnumerator(std::size_t n, std::size_t cap = kDefaultEnumerationCap);

  /// Returns the next tree, or nullopt once the order is exhausted.
  std::optional<RootedTree> next();
  std::optional<LevelSequence> next_sequence();

 private:
  LevelSequence current_;
  bool done_ = false;
};

std::vector<RootedTree> enumerate_rooted_trees(std::size_t n, std::size_t cap = kDefaultEnumerationCap);

/// Number of unlabeled rooted trees on n vertices from the Euler-transform
/// recurrence; independent of the enumerator.
std::uint64_t rooted_tree_count(std::size_t n);

/// Cap from LEVEL_SPECTRA_CAP when set, otherwise kDefaultEnumerationCap.
std::size_t enumeration_cap_from_env();

// Tree file: line 1 = n, line 2 = the 1-based parent array with 0 for the root.
RootedTree read_tree_file(std::istream& in);
void write_tree_file(std::ostream& out, const RootedTree& tree);
void write_dot(std::ostream& out, const RootedTree& tree);

}  // namespace level_spectra

#endif  // LEVEL_SPECTRA_TREE_HPP
