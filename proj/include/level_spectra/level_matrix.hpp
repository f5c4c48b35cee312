#ifndef LEVEL_SPECTRA_LEVEL_MATRIX_HPP
#define LEVEL_SPECTRA_LEVEL_MATRIX_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "level_spectra/matrix.hpp"
#include "level_spectra/tree.hpp"

namespace level_spectra {

/// Level matrix of a rooted tree, l_ij = |level(i) - level(j)|, together with
/// the aggregates every bound is evaluated from.
///
/// Row sums L_i, the level index LI = (1/2) sum_ij l_ij, H = sum_ij l_ij^2 and
/// the vector Q_i = sum_j l_ij L_j are computed once at construction, in exact
/// 64-bit integers.
class LevelMatrix {
 public:
  explicit LevelMatrix(const RootedTree& tree);
  explicit LevelMatrix(LevelVector levels);

  std::size_t size() const noexcept { return entries_.size(); }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const IntMatrix& entries() const noexcept { return entries_; }
  const LevelVector& levels() const noexcept { return levels_; }
  int max_level() const noexcept { return max_level_; }

  const std::vector<std::int64_t>& row_sums() const noexcept { return row_sums_; }
  std::int64_t level_index() const noexcept { return level_index_; }
  std::int64_t h_value() const noexcept { return h_value_; }
  const std::vector<std::int64_t>& q_vector() const noexcept { return q_; }
  std::int64_t row_sum_squares() const noexcept { return row_sum_squares_; }

 private:
  LevelVector levels_;
  IntMatrix entries_;
  int max_level_ = 0;
  std::vector<std::int64_t> row_sums_;
  std::vector<std::int64_t> q_;
  std::int64_t level_index_ = 0;
  std::int64_t h_value_ = 0;
  std::int64_t row_sum_squares_ = 0;
};

inline LevelMatrix build_level_matrix(const RootedTree& tree) { return LevelMatrix(tree); }
inline std::int64_t level_index(const LevelMatrix& m) { return m.level_index(); }
inline std::int64_t h_value(const LevelMatrix& m) { return m.h_value(); }
inline const std::vector<std::int64_t>& row_sums(const LevelMatrix& m) { return m.row_sums(); }

/// Tree path distances via the common-ancestor formula.
IntMatrix distance_matrix(const RootedTree& tree);

/// Closed form for L_i - L_k when levels are sorted non-increasing; i and k
/// are 1-based with 1 <= i < k <= n.
std::int64_t row_sum_difference(std::span<const int> sorted_levels, std::size_t i, std::size_t k);

/// Connectivity of the graph on nonzero off-diagonal entries.
bool is_irreducible(const IntMatrix& m);

/// n, then one whitespace-separated row per line.
void write_matrix(std::ostream& out, const IntMatrix& m);

}  // namespace level_spectra

#endif  // LEVEL_SPECTRA_LEVEL_MATRIX_HPP
