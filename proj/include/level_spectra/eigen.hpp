#ifndef LEVEL_SPECTRA_EIGEN_HPP
#define LEVEL_SPECTRA_EIGEN_HPP

#include <vector>

#include "level_spectra/matrix.hpp"

namespace level_spectra {

enum class EigenMethod {
  HouseholderQL,  // tridiagonalisation followed by implicit-shift QL
  Jacobi,         // cyclic Jacobi rotations, used for cross-validation
};

struct EigenDecomposition {
  std::vector<double> values;  // descending
  RealMatrix vectors;          // column k belongs to values[k]; empty if not requested
};

/// Eigenvalues (and optionally orthonormal eigenvectors) of a real symmetric
/// matrix. Throws ConvergenceFailure if the iteration cap is exceeded.
EigenDecomposition symmetric_eigen(const RealMatrix& a, bool want_vectors = true,
                                   EigenMethod method = EigenMethod::HouseholderQL);

inline std::vector<double> symmetric_eigenvalues(const RealMatrix& a,
                                                 EigenMethod method = EigenMethod::HouseholderQL) {
  return symmetric_eigen(a, false, method).values;
}

}  // namespace level_spectra

#endif  // LEVEL_SPECTRA_EIGEN_HPP
