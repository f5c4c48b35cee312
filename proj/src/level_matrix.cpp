#include "level_spectra/level_matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>

#include "level_spectra/error.hpp"

namespace level_spectra {

LevelMatrix::LevelMatrix(const RootedTree& tree) : LevelMatrix(level_spectra::levels(tree)) {}

LevelMatrix::LevelMatrix(LevelVector levels) : levels_(std::move(levels)), entries_(levels_.size()) {
  const std::size_t n = levels_.size();
  max_level_ = level_spectra::max_level(levels_);
  row_sums_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t l = std::abs(static_cast<std::int64_t>(levels_[i]) - levels_[j]);
      entries_(i, j) = l;
      row_sums_[i] += l;
      h_value_ += l * l;
    }
    level_index_ += row_sums_[i];
    row_sum_squares_ += row_sums_[i] * row_sums_[i];
  }
  level_index_ /= 2;

  q_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) q_[i] += entries_(i, j) * row_sums_[j];
  }
}

IntMatrix distance_matrix(const RootedTree& tree) {
  const std::size_t n = tree.size();
  const auto lv = levels(tree);
  IntMatrix d(n);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      Vertex a = i, b = j;
      while (lv[a] > lv[b]) a = tree.parent(a);
      while (lv[b] > lv[a]) b = tree.parent(b);
      while (a != b) {
        a = tree.parent(a);
        b = tree.parent(b);
      }
      const std::int64_t dist = lv[i] + lv[j] - 2 * lv[a];
      d(i, j) = dist;
      d(j, i) = dist;
    }
  }
  return d;
}

std::int64_t row_sum_difference(std::span<const int> sorted_levels, std::size_t i, std::size_t k) {
  const std::size_t n = sorted_levels.size();
  if (i < 1 || k <= i || k > n) {
    throw Error(ErrorCode::IndexError, "need 1 <= i < k <= n");
  }
  const auto l = [&](std::size_t idx) { return static_cast<std::int64_t>(sorted_levels[idx - 1]); };
  const auto nn = static_cast<std::int64_t>(n);
  const auto ii = static_cast<std::int64_t>(i);
  const auto kk = static_cast<std::int64_t>(k);
  std::int64_t middle = 0;
  for (std::size_t j = i + 1; j < k; ++j) middle += l(j);
  return (nn - 2 * ii) * l(i) - 2 * middle - (nn - 2 * kk + 2) * l(k);
}

bool is_irreducible(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n <= 1) return true;
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t u = 0; u < n; ++u) {
      if (!seen[u] && m(v, u) != 0) {
        seen[u] = true;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == n;
}

void write_matrix(std::ostream& out, const IntMatrix& m) {
  out << m.size() << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
}

}  // namespace level_spectra
