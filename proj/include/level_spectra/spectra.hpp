#ifndef LEVEL_SPECTRA_SPECTRA_HPP
#define LEVEL_SPECTRA_SPECTRA_HPP

#include <cstddef>
#include <vector>

#include "level_spectra/eigen.hpp"
#include "level_spectra/exact.hpp"
#include "level_spectra/level_matrix.hpp"

namespace level_spectra {

inline constexpr double kDefaultClusterTol = 1e-8;

struct Cluster {
  double value;
  std::size_t multiplicity;
};

struct Spectrum {
  std::vector<double> values;  // descending
  std::vector<Cluster> clusters;
  double rho = 0.0;
  double energy = 0.0;
  std::vector<double> perron;  // empty when n < 2
  double tolerance = kDefaultClusterTol;

  std::size_t size() const noexcept { return values.size(); }
};

struct SpectrumOptions {
  double cluster_tol = kDefaultClusterTol;
  EigenMethod method = EigenMethod::HouseholderQL;
};

/// Full spectral summary of a symmetric matrix. The Perron vector is filled
/// in when n >= 2 and the top eigenvector is strictly single-signed.
Spectrum symmetric_spectrum(const RealMatrix& matrix, const SpectrumOptions& options = {});

inline Spectrum compute_spectrum(const LevelMatrix& matrix, const SpectrumOptions& options = {}) {
  return symmetric_spectrum(matrix.entries().cast<double>(), options);
}

/// Groups descending values whose consecutive gap is at most tol * max(1, rho).
std::vector<Cluster> cluster_values(const std::vector<double>& values, double tol, double rho);

struct PerronPair {
  double rho;
  std::vector<double> vector;  // unit 2-norm, all entries > 0
};

/// Throws TooSmall for n = 1 and NotPositive if the top eigenvector has a
/// non-positive entry.
PerronPair perron_vector(const LevelMatrix& matrix);

inline double level_energy(const Spectrum& spectrum) { return spectrum.energy; }

inline std::vector<BigInt> characteristic_polynomial(const LevelMatrix& matrix,
                                                     std::size_t cap = kDefaultCharPolyCap) {
  return faddeev_leverrier(matrix.entries(), cap);
}

/// n - rank(L) by exact integer elimination.
inline std::size_t exact_zero_multiplicity(const LevelMatrix& matrix) {
  return matrix.size() - integer_rank(matrix.entries());
}

/// Number of eigenvalues within tol * max(1, rho) of lambda. Throws
/// AmbiguousCluster when that window cuts through a cluster or touches two.
std::size_t clustered_multiplicity(const Spectrum& spectrum, double lambda, double tol = kDefaultClusterTol);

/// Number of values within `window` of lambda, without the ambiguity check.
std::size_t count_within(const std::vector<double>& values, double lambda, double window);

}  // namespace level_spectra

#endif  // LEVEL_SPECTRA_SPECTRA_HPP
