#ifndef LEVEL_SPECTRA_EXACT_HPP
#define LEVEL_SPECTRA_EXACT_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "level_spectra/matrix.hpp"

namespace level_spectra {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::size_t kDefaultCharPolyCap = 24;

/// Monic characteristic polynomial det(xI - A), coefficients degree-descending.
///
/// Faddeev-LeVerrier recurrence in exact integers:
///   M_1 = I,  c_{n-1} = -tr(A)
///   M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k
/// The division by k is exact for integer matrices.
std::vector<BigInt> faddeev_leverrier(const IntMatrix& a, std::size_t cap = kDefaultCharPolyCap);

/// Rank by fraction-free (Bareiss) elimination with row pivoting.
std::size_t integer_rank(const IntMatrix& a);

/// Real roots of an integer polynomial (degree-descending coefficients), with
/// multiplicity, sorted descending. Roots are isolated exactly with Sturm
/// sequences on the square-free factors and refined by rational bisection to
/// an absolute width below `width`. Non-real roots are not reported.
std::vector<double> real_roots(std::span<const BigInt> coeffs_desc, double width = 1e-13);

std::vector<std::string> to_decimal_strings(std::span<const BigInt> values);

}  // namespace level_spectra

#endif  // LEVEL_SPECTRA_EXACT_HPP
