#include "level_spectra/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "level_spectra/error.hpp"

namespace level_spectra {

std::string_view to_string(Relation r) noexcept {
  switch (r) {
    case Relation::LessEqual: return "<=";
    case Relation::GreaterEqual: return ">=";
    case Relation::Equal: return "=";
    case Relation::InInterval: return "in";
  }
  return "?";
}

BoundReport make_report(std::string name, double lhs, Relation relation, double rhs,
                        std::optional<bool> equality_expected, double rel_tol, std::optional<double> lower) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.lower = lower;
  r.relation = relation;
  r.equality_expected = equality_expected;
  double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  if (lower) scale = std::max(scale, std::abs(*lower));
  r.tolerance = rel_tol * scale;

  switch (relation) {
    case Relation::LessEqual: r.slack = rhs - lhs; break;
    case Relation::GreaterEqual: r.slack = lhs - rhs; break;
    case Relation::Equal: r.slack = -std::abs(lhs - rhs); break;
    case Relation::InInterval: r.slack = std::min(lhs - lower.value_or(lhs), rhs - lhs); break;
  }
  r.satisfied = std::isfinite(r.slack) && r.slack >= -r.tolerance;
  if (equality_expected && relation != Relation::InInterval) {
    if (*equality_expected) {
      r.satisfied = r.satisfied && std::abs(lhs - rhs) <= r.tolerance;
    } else {
      r.satisfied = r.satisfied && r.slack > r.tolerance;
    }
  }
  return r;
}

TreeAnalysis analyze_tree(const RootedTree& tree, const SpectrumOptions& options, double bound_tol,
                          double identity_tol) {
  LevelMatrix matrix(tree);
  Spectrum spectrum = compute_spectrum(matrix, options);
  const bool path = static_cast<std::size_t>(matrix.max_level()) + 1 == tree.size();
  return TreeAnalysis{tree, std::move(matrix), std::move(spectrum), path, bound_tol, identity_tol};
}

namespace {

double as_double(std::int64_t x) { return static_cast<double>(x); }

double sum_squares(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

std::optional<bool> equality_for_small(std::size_t n) {
  return n <= 2 ? std::optional<bool>(true) : std::nullopt;
}

}  // namespace

BoundReport check_rho_upper_lmax(const TreeAnalysis& a) {
  const double bound = as_double(static_cast<std::int64_t>(a.n()) - 1) * a.matrix.max_level();
  return make_report("rho-upper-lmax", a.spectrum.rho, Relation::LessEqual, bound, equality_for_small(a.n()), a.bound_tol);
}

BoundReport check_trace_identity(const TreeAnalysis& a) {
  return make_report("trace-identity", sum_squares(a.spectrum.values), Relation::Equal,
                     as_double(a.matrix.h_value()), std::nullopt, a.identity_tol);
}

BoundReport check_rho_lower_meansq(const TreeAnalysis& a) {
  const double rho = a.spectrum.rho;
  return make_report("rho-lower-meansq", rho * rho, Relation::GreaterEqual,
                     as_double(a.matrix.h_value()) / static_cast<double>(a.n()), equality_for_small(a.n()),
                     a.bound_tol);
}

std::array<BoundReport, 2> check_rho_row_bounds(const TreeAnalysis& a) {
  const double n = static_cast<double>(a.n());
  const auto& rows = a.matrix.row_sums();
  const double max_row = as_double(*std::max_element(rows.begin(), rows.end()));
  // Equality in the lower bound holds exactly when n <= 2.
  return {make_report("rho-lower-level-index", 2.0 * as_double(a.matrix.level_index()) / n, Relation::LessEqual,
                      a.spectrum.rho, a.n() <= 2, a.bound_tol),
          make_report("rho-upper-rowsum", a.spectrum.rho, Relation::LessEqual, max_row, std::nullopt, a.bound_tol)};
}

BoundReport check_rho_lower_rowsq(const TreeAnalysis& a) {
  return make_report("rho-lower-rowsq", a.spectrum.rho, Relation::GreaterEqual,
                     std::sqrt(as_double(a.matrix.row_sum_squares()) / static_cast<double>(a.n())), std::nullopt,
                     a.bound_tol);
}

BoundReport check_rho_lower_q(const TreeAnalysis& a) {
  const std::int64_t denom = a.matrix.row_sum_squares();
  if (denom == 0) throw Error(ErrorCode::DegenerateDenominator, "all row sums vanish");
  double q2 = 0.0;
  for (std::int64_t q : a.matrix.q_vector()) q2 += as_double(q) * as_double(q);
  return make_report("rho-lower-q", a.spectrum.rho, Relation::GreaterEqual, std::sqrt(q2 / as_double(denom)),
                     std::nullopt, a.bound_tol);
}

BoundReport check_q_sum_identity(const TreeAnalysis& a) {
  std::int64_t total = 0;
  for (std::int64_t q : a.matrix.q_vector()) total += q;
  BoundReport r = make_report("q-sum-identity", as_double(total), Relation::Equal,
                              as_double(a.matrix.row_sum_squares()), std::nullopt, 0.0);
  r.satisfied = total == a.matrix.row_sum_squares();
  return r;
}

std::array<BoundReport, 2> check_bound_chain(const TreeAnalysis& a) {
  const double n = static_cast<double>(a.n());
  const double l2 = as_double(a.matrix.row_sum_squares());
  double q2 = 0.0;
  for (std::int64_t q : a.matrix.q_vector()) q2 += as_double(q) * as_double(q);
  const double q_bound = l2 > 0 ? std::sqrt(q2 / l2) : 0.0;
  const double row_bound = std::sqrt(l2 / n);
  const double li_bound = 2.0 * as_double(a.matrix.level_index()) / n;
  return {make_report("chain-q-over-rowsq", q_bound, Relation::GreaterEqual, row_bound, std::nullopt, a.bound_tol),
          make_report("chain-rowsq-over-level-index", row_bound, Relation::GreaterEqual, li_bound, std::nullopt,
                      a.bound_tol)};
}

BoundReport check_quotient_bound(const TreeAnalysis& a) {
  if (a.n() < 2) throw Error(ErrorCode::TooSmall, "quotient bound needs n > 1");
  const double n1 = static_cast<double>(a.n() - 1);
  const double li = as_double(a.matrix.level_index());
  double best = -1.0;
  for (std::int64_t row : a.matrix.row_sums()) {
    const double l = as_double(row);
    const double d = li - l;
    best = std::max(best, (d + std::sqrt(d * d + n1 * l * l)) / n1);
  }
  return make_report("quotient-bound", a.spectrum.rho, Relation::GreaterEqual, best, std::nullopt, a.bound_tol);
}

BoundReport check_lambda_sq_bound(const TreeAnalysis& a) {
  const double n = static_cast<double>(a.n());
  const double rho = a.spectrum.rho;
  return make_report("lambda-sq-bound", rho * rho, Relation::LessEqual,
                     (n - 1.0) * as_double(a.matrix.h_value()) / n, std::nullopt, a.bound_tol);
}

std::vector<BoundReport> check_eigenvalue_intervals(const TreeAnalysis& a) {
  const std::size_t n = a.n();
  if (n <= 2) throw Error(ErrorCode::TooSmall, "interval bounds need n > 2");
  const double nd = static_cast<double>(n);
  const double h = as_double(a.matrix.h_value());
  const double outer = std::sqrt((nd - 1.0) * h / nd);
  const double inner = std::sqrt(h / (nd * (nd - 1.0)));

  std::vector<BoundReport> out;
  out.reserve(n);
  for (std::size_t j = 1; j <= n; ++j) {
    const double jd = static_cast<double>(j);
    double lo, hi;
    if (j == 1) {
      lo = inner;
      hi = outer;
    } else if (j == n) {
      lo = -outer;
      hi = -inner;
    } else {
      lo = -std::sqrt((jd - 1.0) * h / (nd * (nd - jd + 1.0)));
      hi = std::sqrt((nd - jd) * h / (jd * nd));
    }
    BoundReport r = make_report("eigenvalue-intervals", a.spectrum.values[j - 1], Relation::InInterval, hi,
                                std::nullopt, a.bound_tol, lo);
    r.index = j;
    out.push_back(std::move(r));
  }
  return out;
}

BoundReport check_rho_interval(const TreeAnalysis& a) {
  const double nd = static_cast<double>(a.n());
  const double outer = std::sqrt((nd - 1.0) * as_double(a.matrix.h_value()) / nd);
  return make_report("rho-interval", a.spectrum.rho, Relation::InInterval, outer, std::nullopt, a.bound_tol,
                     -outer);
}

std::vector<BoundReport> check_energy_bounds(const TreeAnalysis& a) {
  const double nd = static_cast<double>(a.n());
  const double h = as_double(a.matrix.h_value());
  const double energy = a.spectrum.energy;
  const double original = std::sqrt(nd * h);
  std::vector<BoundReport> out;
  out.push_back(make_report("energy-upper-nh", energy, Relation::LessEqual, original, std::nullopt, a.bound_tol));
  if (!a.is_path) {
    const double improved = std::sqrt((nd - 1.0) * h);
    out.push_back(make_report("energy-upper-n1h", energy, Relation::LessEqual, improved, std::nullopt, a.bound_tol));
    out.push_back(make_report("energy-bound-order", improved, Relation::LessEqual, original, std::nullopt,
                                a.bound_tol));
  }
  return out;
}

BoundReport check_energy_identity(const TreeAnalysis& a) {
  return make_report("energy-identity", a.spectrum.energy, Relation::Equal, 2.0 * a.spectrum.rho, std::nullopt,
                     a.identity_tol);
}

namespace {

template <typename F>
double bisect(F&& f, double lo, double hi, double abs_tol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (!(flo < 0 && fhi > 0) && !(flo > 0 && fhi < 0)) {
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    throw Error(ErrorCode::NoBracket, "function does not change sign on the bracket");
  }
  for (int iter = 0; iter < 400 && hi - lo > abs_tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double path_rho_closed_form(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidOrder, "closed form needs n >= 2");
  const double nd = static_cast<double>(n);
  const auto g = [nd](double t) { return std::tanh(0.5 * t) * std::tanh(0.5 * nd * t) - 1.0 / nd; };
  const double t = bisect(g, 1e-9, 50.0, 1e-14);
  // cosh t - 1 = 2 sinh^2(t/2), without cancellation for small t
  const double s = std::sinh(0.5 * t);
  return 1.0 / (2.0 * s * s);
}

std::array<double, 3> leafstar_cubic_roots(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::InvalidOrder, "cubic needs n >= 3");
  const double linear = 9.0 - 5.0 * static_cast<double>(n);
  const double constant = 8.0 - 4.0 * static_cast<double>(n);
  const auto f = [=](double x) { return (x * x + linear) * x + constant; };
  // Turning points at +-c; every root lies within the Cauchy bound.
  const double c = std::sqrt(-linear / 3.0);
  const double b = 1.0 + std::max(std::abs(linear), std::abs(constant));
  const auto tol = [](double lo, double hi) { return 1e-15 * std::max({1.0, std::abs(lo), std::abs(hi)}); };
  return {bisect(f, c, b, tol(c, b)), bisect(f, -c, c, tol(-c, c)), bisect(f, -b, -c, tol(-b, -c))};
}

namespace {

using Runner = std::function<void(const TreeAnalysis&, std::vector<BoundReport>&)>;

struct BoundCheck {
  std::string_view name;
  std::size_t min_order;
  Runner run;
};

const std::vector<BoundCheck>& registry() {
  static const std::vector<BoundCheck> checks = {
      {"rho-upper-lmax", 1, [](const TreeAnalysis& a, auto& out) { out.push_back(check_rho_upper_lmax(a)); }},
      {"trace-identity", 1, [](const TreeAnalysis& a, auto& out) { out.push_back(check_trace_identity(a)); }},
      {"rho-lower-meansq", 1, [](const TreeAnalysis& a, auto& out) { out.push_back(check_rho_lower_meansq(a)); }},
      {"rho-row-bounds", 1,
       [](const TreeAnalysis& a, auto& out) {
         for (auto& r : check_rho_row_bounds(a)) out.push_back(std::move(r));
       }},
      {"rho-lower-rowsq", 1, [](const TreeAnalysis& a, auto& out) { out.push_back(check_rho_lower_rowsq(a)); }},
      {"rho-lower-q", 2, [](const TreeAnalysis& a, auto& out) { out.push_back(check_rho_lower_q(a)); }},
      {"q-sum-identity", 1, [](const TreeAnalysis& a, auto& out) { out.push_back(check_q_sum_identity(a)); }},
      {"bound-chain", 2,
       [](const TreeAnalysis& a, auto& out) {
         for (auto& r : check_bound_chain(a)) out.push_back(std::move(r));
       }},
      {"quotient-bound", 2, [](const TreeAnalysis& a, auto& out) { out.push_back(check_quotient_bound(a)); }},
      {"lambda-sq-bound", 1, [](const TreeAnalysis& a, auto& out) { out.push_back(check_lambda_sq_bound(a)); }},
      {"eigenvalue-intervals", 3,
       [](const TreeAnalysis& a, auto& out) {
         for (auto& r : check_eigenvalue_intervals(a)) out.push_back(std::move(r));
       }},
      {"rho-interval", 1, [](const TreeAnalysis& a, auto& out) { out.push_back(check_rho_interval(a)); }},
      {"energy-bounds", 1,
       [](const TreeAnalysis& a, auto& out) {
         for (auto& r : check_energy_bounds(a)) out.push_back(std::move(r));
       }},
      {"energy-identity", 1, [](const TreeAnalysis& a, auto& out) { out.push_back(check_energy_identity(a)); }},
  };
  return checks;
}

const std::vector<std::string_view>& registry_names() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> v;
    for (const auto& c : registry()) v.push_back(c.name);
    return v;
  }();
  return names;
}

}  // namespace

std::span<const std::string_view> bound_check_names() { return registry_names(); }

BoundEvaluation evaluate_bounds(const TreeAnalysis& a, std::span<const std::string> selection) {
  for (const auto& s : selection) {
    const auto& names = registry_names();
    if (std::find(names.begin(), names.end(), s) == names.end()) {
      throw Error(ErrorCode::UnknownCheck, "unknown bound check '" + s + "'");
    }
  }
  BoundEvaluation out;
  for (const auto& check : registry()) {
    if (!selection.empty() &&
        std::find(selection.begin(), selection.end(), check.name) == selection.end()) {
      continue;
    }
    if (a.n() < check.min_order) {
      out.skipped.emplace_back(std::string(check.name), "requires n >= " + std::to_string(check.min_order));
      continue;
    }
    check.run(a, out.reports);
  }
  return out;
}

}  // namespace level_spectra
