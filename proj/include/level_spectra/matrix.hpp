#ifndef LEVEL_SPECTRA_MATRIX_HPP
#define LEVEL_SPECTRA_MATRIX_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace level_spectra {

// Dense square row-major matrix.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  std::span<T> row(std::size_t i) { return {data_.data() + i * n_, n_}; }

  const std::vector<T>& data() const noexcept { return data_; }

  template <typename U>
  SquareMatrix<U> cast() const {
    SquareMatrix<U> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out(i, j) = static_cast<U>((*this)(i, j));
    return out;
  }

  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using IntMatrix = SquareMatrix<std::int64_t>;
using RealMatrix = SquareMatrix<double>;

}  // namespace level_spectra

#endif  // LEVEL_SPECTRA_MATRIX_HPP
