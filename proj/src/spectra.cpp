#include "level_spectra/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "level_spectra/error.hpp"

namespace level_spectra {

std::vector<Cluster> cluster_values(const std::vector<double>& values, double tol, double rho) {
  std::vector<Cluster> out;
  const double gap = tol * std::max(1.0, rho);
  std::size_t start = 0;
  for (std::size_t i = 1; i <= values.size(); ++i) {
    if (i == values.size() || values[i - 1] - values[i] > gap) {
      double sum = 0.0;
      for (std::size_t k = start; k < i; ++k) sum += values[k];
      out.push_back({sum / static_cast<double>(i - start), i - start});
      start = i;
    }
  }
  return out;
}

Spectrum symmetric_spectrum(const RealMatrix& matrix, const SpectrumOptions& options) {
  Spectrum s;
  s.tolerance = options.cluster_tol;
  const std::size_t n = matrix.size();
  auto eig = symmetric_eigen(matrix, n >= 2, options.method);
  s.values = std::move(eig.values);
  // Perron root; for a star -rho is also an eigenvalue, so max |v| can land on it.
  if (!s.values.empty()) s.rho = s.values.front();
  for (double v : s.values) s.energy += std::abs(v);
  s.clusters = cluster_values(s.values, options.cluster_tol, s.rho);

  if (n >= 2) {
    std::vector<double> y(n);
    std::size_t big = 0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = eig.vectors(i, 0);
      if (std::abs(y[i]) > std::abs(y[big])) big = i;
    }
    if (y[big] < 0) {
      for (double& x : y) x = -x;
    }
    if (std::all_of(y.begin(), y.end(), [](double x) { return x > 0.0; })) s.perron = std::move(y);
  }
  return s;
}

PerronPair perron_vector(const LevelMatrix& matrix) {
  if (matrix.size() < 2) throw Error(ErrorCode::TooSmall, "Perron vector needs n >= 2");
  const Spectrum s = compute_spectrum(matrix);
  if (s.perron.empty()) {
    throw Error(ErrorCode::NotPositive, "top eigenvector is not strictly positive");
  }
  return {s.values.front(), s.perron};
}

std::size_t count_within(const std::vector<double>& values, double lambda, double window) {
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [&](double v) { return std::abs(v - lambda) <= window; }));
}

std::size_t clustered_multiplicity(const Spectrum& spectrum, double lambda, double tol) {
  if (!(tol > 0)) throw Error(ErrorCode::InvalidOrder, "tolerance must be positive");
  const double window = tol * std::max(1.0, spectrum.rho);
  const auto& v = spectrum.values;

  // Each cluster touching the window must lie entirely inside it, and at most
  // one may touch it.
  std::size_t touching = 0;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= v.size(); ++i) {
    if (i == v.size() || v[i - 1] - v[i] > window) {
      const double hi = v[start];
      const double lo = v[i - 1];
      const bool touches = lo <= lambda + window && hi >= lambda - window;
      if (touches) {
        ++touching;
        if (hi > lambda + window || lo < lambda - window) {
          throw Error(ErrorCode::AmbiguousCluster, "window cuts through an eigenvalue cluster");
        }
      }
      start = i;
    }
  }
  if (touching > 1) throw Error(ErrorCode::AmbiguousCluster, "window touches more than one cluster");
  return count_within(v, lambda, window);
}

}  // namespace level_spectra
