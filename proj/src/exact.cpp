#include "level_spectra/exact.hpp"

#include <algorithm>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "level_spectra/error.hpp"

namespace level_spectra {

using Rational = boost::multiprecision::cpp_rational;

std::vector<BigInt> faddeev_leverrier(const IntMatrix& a, std::size_t cap) {
  const std::size_t n = a.size();
  if (n > cap) {
    throw Error(ErrorCode::ResourceLimit,
                "characteristic polynomial capped at n = " + std::to_string(cap));
  }
  // coeff[k] multiplies x^k
  std::vector<BigInt> coeff(n + 1, 0);
  coeff[n] = 1;

  SquareMatrix<BigInt> m(n, BigInt(0));
  SquareMatrix<BigInt> am(n, BigInt(0));  // A * M_{k-1}
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i) m(i, i) = am(i, i) + coeff[n - k + 1];
    if (k > 1) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j) m(i, j) = am(i, j);
    }
    BigInt trace = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        BigInt acc = 0;
        for (std::size_t t = 0; t < n; ++t) {
          if (a(i, t) != 0) acc += a(i, t) * m(t, j);
        }
        am(i, j) = std::move(acc);
      }
      trace += am(i, i);
    }
    coeff[n - k] = -trace / static_cast<long long>(k);
  }
  std::reverse(coeff.begin(), coeff.end());
  return coeff;
}

std::size_t integer_rank(const IntMatrix& a) {
  const std::size_t n = a.size();
  SquareMatrix<BigInt> m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);

  BigInt previous = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t pivot = row;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) continue;
    if (pivot != row) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(row, j));
    }
    for (std::size_t i = row + 1; i < n; ++i) {
      for (std::size_t j = col + 1; j < n; ++j) {
        m(i, j) = (m(row, col) * m(i, j) - m(i, col) * m(row, j)) / previous;
      }
      m(i, col) = 0;
    }
    previous = m(row, col);
    ++row;
  }
  return row;
}

namespace {

// Dense univariate polynomial over Q, coefficients ascending.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rational& lead() const { return c_.back(); }
  const std::vector<Rational>& coeffs() const { return c_; }

  Poly derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long long>(i));
    return Poly(std::move(d));
  }

  Poly monic() const {
    if (is_zero()) return *this;
    std::vector<Rational> d = c_;
    const Rational l = lead();
    for (auto& x : d) x /= l;
    return Poly(std::move(d));
  }

  Rational eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  int sign_at(const Rational& x) const {
    const Rational v = eval(x);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
  }

  // Long division: *this = q * d + r.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    std::vector<Rational> r = c_;
    const int dd = d.degree();
    if (degree() < dd) return {Poly(), *this};
    std::vector<Rational> q(degree() - dd + 1, 0);
    for (int k = degree(); k >= dd; --k) {
      if (r[k] == 0) continue;
      const Rational f = r[k] / d.lead();
      q[k - dd] = f;
      for (int j = 0; j <= dd; ++j) r[k - dd + j] -= f * d.c_[j];
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
  }

  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return Poly(std::move(r));
  }

  Poly operator-() const {
    std::vector<Rational> r = c_;
    for (auto& x : r) x = -x;
    return Poly(std::move(r));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Yun's square-free decomposition: f = prod factor_i^i (up to a constant).
std::vector<std::pair<Poly, int>> square_free(const Poly& f) {
  std::vector<std::pair<Poly, int>> out;
  const Poly df = f.derivative();
  Poly a = gcd(f, df);
  Poly b = f.divmod(a).first;
  Poly c = df.divmod(a).first;
  Poly d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    a = gcd(b, d);
    if (a.degree() > 0) out.emplace_back(a, i);
    const Poly nb = b.divmod(a).first;
    c = d.divmod(a).first;
    b = nb;
    d = c - b.derivative();
  }
  return out;
}

class SturmChain {
 public:
  explicit SturmChain(const Poly& p) {
    chain_.push_back(p);
    chain_.push_back(p.derivative());
    while (!chain_.back().is_zero()) {
      const auto& n = chain_.size();
      chain_.push_back(-chain_[n - 2].divmod(chain_[n - 1]).second);
    }
    chain_.pop_back();
  }

  int sign_changes(const Rational& x) const {
    int changes = 0;
    int last = 0;
    for (const auto& p : chain_) {
      const int s = p.sign_at(x);
      if (s == 0) continue;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  }

  const Poly& base() const { return chain_.front(); }

 private:
  std::vector<Poly> chain_;
};

// Roots of a square-free polynomial inside (lo, hi]; neither endpoint is a root.
void isolate(const SturmChain& s, Rational lo, Rational hi, int v_lo, int v_hi, const Rational& width,
             std::vector<Rational>& roots) {
  const int count = v_lo - v_hi;
  if (count <= 0) return;
  const Poly& p = s.base();
  if (count == 1) {
    int s_lo = p.sign_at(lo);
    while (hi - lo > width) {
      const Rational mid = (lo + hi) / 2;
      const int sm = p.sign_at(mid);
      if (sm == 0) {
        roots.push_back(mid);
        return;
      }
      if (sm == s_lo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    roots.push_back((lo + hi) / 2);
    return;
  }
  // Split away from any exact root so both halves keep root-free endpoints.
  Rational mid = (lo + hi) / 2;
  for (long long k = 3; p.sign_at(mid) == 0; ++k) mid = lo + (hi - lo) * Rational(k - 1, 2 * k - 1);
  const int v_mid = s.sign_changes(mid);
  isolate(s, lo, mid, v_lo, v_mid, width, roots);
  isolate(s, mid, hi, v_mid, v_hi, width, roots);
}

}  // namespace

std::vector<double> real_roots(std::span<const BigInt> coeffs_desc, double width) {
  std::vector<Rational> asc;
  for (auto it = coeffs_desc.rbegin(); it != coeffs_desc.rend(); ++it) asc.emplace_back(*it);

  std::vector<double> out;
  std::size_t zeros = 0;
  while (zeros < asc.size() && asc[zeros] == 0) ++zeros;
  if (zeros == asc.size()) throw Error(ErrorCode::DegenerateDenominator, "zero polynomial has no isolated roots");
  out.assign(zeros, 0.0);
  const Poly f(std::vector<Rational>(asc.begin() + static_cast<std::ptrdiff_t>(zeros), asc.end()));

  const Rational w(width);
  for (const auto& [factor, multiplicity] : square_free(f)) {
    const SturmChain chain(factor);
    Rational bound = 0;
    for (int i = 0; i < factor.degree(); ++i) {
      Rational r = factor.coeffs()[i] / factor.lead();
      if (r < 0) r = -r;
      bound = std::max(bound, r);
    }
    bound += 1;
    std::vector<Rational> roots;
    isolate(chain, -bound, bound, chain.sign_changes(-bound), chain.sign_changes(bound), w, roots);
    for (const auto& r : roots) {
      for (int m = 0; m < multiplicity; ++m) out.push_back(static_cast<double>(r));
    }
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<std::string> to_decimal_strings(std::span<const BigInt> values) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.str());
  return out;
}

}  // namespace level_spectra
