// Test-only reference computations, deliberately independent of the library
// code paths they check.
#ifndef LEVEL_SPECTRA_TESTS_ORACLES_HPP
#define LEVEL_SPECTRA_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// AHU string of the subtree at v: "(" + sorted child strings + ")".
inline std::string ahu(const std::vector<std::vector<int>>& kids, int v) {
  std::vector<std::string> parts;
  for (int c : kids[v]) parts.push_back(ahu(kids, c));
  std::sort(parts.begin(), parts.end());
  std::string s = "(";
  for (auto& p : parts) s += p;
  return s + ")";
}

// parent[0] = -1 for the root, vertex 0 always the root.
inline std::string ahu_of_parents(const std::vector<int>& parent) {
  std::vector<std::vector<int>> kids(parent.size());
  int root = 0;
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (parent[v] < 0) {
      root = static_cast<int>(v);
    } else {
      kids[parent[v]].push_back(static_cast<int>(v));
    }
  }
  return ahu(kids, root);
}

// AHU string of a preorder level sequence.
inline std::string ahu_of_levels(const std::vector<int>& seq) {
  std::vector<int> parent(seq.size(), -1);
  std::vector<int> stack;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    while (!stack.empty() && seq[stack.back()] >= seq[i]) stack.pop_back();
    parent[i] = stack.empty() ? -1 : stack.back();
    stack.push_back(static_cast<int>(i));
  }
  return ahu_of_parents(parent);
}

// Isomorphism classes of rooted trees on n labelled vertices rooted at 0, by
// brute force over every parent function. Feasible up to n = 7.
inline std::set<std::string> labelled_tree_classes(int n) {
  std::set<std::string> classes;
  if (n == 1) {
    classes.insert("()");
    return classes;
  }
  std::vector<int> parent(n, 0);
  parent[0] = -1;
  for (;;) {
    bool acyclic = true;
    for (int v = 1; v < n && acyclic; ++v) {
      int u = v;
      for (int steps = 0; u != 0; ++steps) {
        if (steps > n) {
          acyclic = false;
          break;
        }
        u = parent[u];
      }
    }
    if (acyclic) classes.insert(ahu_of_parents(parent));
    int k = 1;
    while (k < n && ++parent[k] == n) parent[k++] = 0;
    if (k == n) break;
  }
  return classes;
}

// Rooted tree counts from A(x) = x * prod_k (1 - x^k)^(-a_k), expanded as a
// power series; a different route from the divisor-sum recurrence.
inline std::vector<std::uint64_t> rooted_counts(int nmax) {
  std::vector<std::uint64_t> a(nmax + 1, 0);
  a[1] = 1;
  for (int m = 2; m <= nmax; ++m) {
    // prod over k < m of (1 - x^k)^(-a_k), coefficient of x^(m-1)
    std::vector<std::uint64_t> series(m, 0);
    series[0] = 1;
    for (int k = 1; k < m; ++k) {
      for (std::uint64_t copy = 0; copy < a[k]; ++copy) {
        // multiply by 1/(1 - x^k)
        for (int d = k; d < m; ++d) series[d] += series[d - k];
      }
    }
    a[m] = series[m - 1];
  }
  return a;
}

// Spectrum of a symmetric matrix by plain cyclic Jacobi in long double.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<long double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 200; ++sweep) {
    long double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-36L) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::fabs(a[p][q]) < 1e-300L) continue;
        const long double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        const long double t = (theta >= 0 ? 1 : -1) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        const long double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const long double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const long double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>(a[i][i]);
  std::sort(out.rbegin(), out.rend());
  return out;
}

// |lev_i - lev_j| straight from the definition.
inline std::vector<std::vector<long double>> level_matrix(const std::vector<int>& lev) {
  const std::size_t n = lev.size();
  std::vector<std::vector<long double>> m(n, std::vector<long double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = std::abs(lev[i] - lev[j]);
  return m;
}

// Levels from a 1-based parent list with 0 for the root.
inline std::vector<int> levels_of(const std::vector<int>& parents1) {
  const std::size_t n = parents1.size();
  std::vector<int> lev(n, -1);
  std::function<int(std::size_t)> depth = [&](std::size_t v) -> int {
    if (lev[v] >= 0) return lev[v];
    return lev[v] = parents1[v] == 0 ? 0 : depth(parents1[v] - 1) + 1;
  };
  for (std::size_t v = 0; v < n; ++v) depth(v);
  return lev;
}

// Integer determinant of x*I - A at integer x, by fraction-free expansion on
// 128-bit values; only for small n.
inline __int128 det_shifted(const std::vector<std::vector<long long>>& a, long long x) {
  const std::size_t n = a.size();
  std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = (i == j ? x : 0) - a[i][j];
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace oracle

#endif  // LEVEL_SPECTRA_TESTS_ORACLES_HPP
