#include "level_spectra/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <ostream>

#include "json.hpp"

namespace level_spectra {

using nlohmann::json;

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

namespace {

// 12 significant digits; non-finite values become null.
json real(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(format_real(x).c_str(), nullptr);
}

json reals(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(real(x));
  return a;
}

json to_json(const BoundReport& r) {
  json j = {
      {"name", r.name},
      {"lhs", real(r.lhs)},
      {"rhs", real(r.rhs)},
      {"relation", std::string(to_string(r.relation))},
      {"slack", real(r.slack)},
      {"satisfied", r.satisfied},
      {"equality_expected", r.equality_expected ? json(*r.equality_expected) : json(nullptr)},
  };
  if (r.lower) j["lower"] = real(*r.lower);
  if (r.index) j["index"] = *r.index;
  return j;
}

json to_json(const Spectrum& s) {
  json clusters = json::array();
  for (const auto& c : s.clusters) clusters.push_back({{"value", real(c.value)}, {"multiplicity", c.multiplicity}});
  json j = {{"values", reals(s.values)}, {"clusters", clusters}, {"rho", real(s.rho)}, {"energy", real(s.energy)}};
  if (!s.perron.empty()) j["perron"] = reals(s.perron);
  return j;
}

json charpoly_json(const std::vector<BigInt>& c) {
  json a = json::array();
  for (const auto& s : to_decimal_strings(c)) a.push_back(s);
  return a;
}

std::string relation_text(const BoundReport& r) {
  if (r.relation == Relation::InInterval) {
    return format_real(r.lhs) + " in [" + format_real(*r.lower) + ", " + format_real(r.rhs) + "]";
  }
  return format_real(r.lhs) + " " + std::string(to_string(r.relation)) + " " + format_real(r.rhs);
}

std::string poly_text(const std::vector<BigInt>& c) {
  std::string out;
  const std::size_t n = c.size() - 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    const std::size_t power = n - i;
    const BigInt mag = c[i] < 0 ? BigInt(-c[i]) : c[i];
    if (out.empty()) {
      if (c[i] < 0) out += "-";
    } else {
      out += c[i] < 0 ? " - " : " + ";
    }
    if (mag != 1 || power == 0) out += mag.str();
    if (power >= 1) out += "x";
    if (power >= 2) out += "^" + std::to_string(power);
  }
  return out.empty() ? "0" : out;
}

}  // namespace

AnalysisReport analyze(const RootedTree& tree, const AnalysisOptions& options) {
  AnalysisReport report{analyze_tree(tree, options.spectrum, options.bound_tol, options.identity_tol), 0, std::nullopt, {}};
  report.mul_zero_exact = exact_zero_multiplicity(report.analysis.matrix);
  if (options.charpoly) report.charpoly = characteristic_polynomial(report.analysis.matrix);
  if (options.with_bounds) report.bounds = evaluate_bounds(report.analysis, options.bounds);
  return report;
}

void write_analysis_text(std::ostream& out, const AnalysisReport& report) {
  const auto& a = report.analysis;
  const auto& m = a.matrix;
  out << "vertices       " << a.n() << '\n';
  out << "levels        ";
  for (int l : m.levels()) out << ' ' << l;
  out << "\nmax level      " << m.max_level() << '\n';
  out << "level index    " << m.level_index() << '\n';
  out << "H              " << m.h_value() << '\n';
  out << "row sums      ";
  for (auto r : m.row_sums()) out << ' ' << r;
  out << "\neigenvalues   ";
  for (double v : a.spectrum.values) out << ' ' << format_real(v);
  out << "\nclusters      ";
  for (const auto& c : a.spectrum.clusters) out << ' ' << format_real(c.value) << " (x" << c.multiplicity << ')';
  out << "\nrho            " << format_real(a.spectrum.rho) << '\n';
  out << "energy         " << format_real(a.spectrum.energy) << '\n';
  out << "mul(0) exact   " << report.mul_zero_exact << '\n';
  if (report.charpoly) out << "charpoly       " << poly_text(*report.charpoly) << '\n';
  if (!report.bounds.reports.empty() || !report.bounds.skipped.empty()) {
    out << "\nbounds\n";
    for (const auto& r : report.bounds.reports) {
      std::string name = r.name;
      if (r.index) name += "[" + std::to_string(*r.index) + "]";
      out << "  " << std::left << std::setw(30) << name << std::setw(5) << (r.satisfied ? "ok" : "FAIL")
          << relation_text(r) << "  slack " << format_real(r.slack) << '\n';
    }
    for (const auto& [name, reason] : report.bounds.skipped) {
      out << "  " << std::left << std::setw(30) << name << "skip " << reason << '\n';
    }
  }
}

void write_analysis_json(std::ostream& out, const AnalysisReport& report) {
  const auto& a = report.analysis;
  const auto& m = a.matrix;
  json bounds = json::array();
  for (const auto& r : report.bounds.reports) bounds.push_back(to_json(r));
  json skipped = json::array();
  for (const auto& [name, reason] : report.bounds.skipped) skipped.push_back({{"name", name}, {"reason", reason}});
  json j = {
      {"n", a.n()},
      {"levels", m.levels()},
      {"l_max", m.max_level()},
      {"LI", m.level_index()},
      {"H", m.h_value()},
      {"row_sums", m.row_sums()},
      {"spectrum", to_json(a.spectrum)},
      {"rho", real(a.spectrum.rho)},
      {"energy", real(a.spectrum.energy)},
      {"mul_zero_exact", report.mul_zero_exact},
      {"bounds", bounds},
      {"skipped_bounds", skipped},
  };
  if (report.charpoly) j["charpoly"] = charpoly_json(*report.charpoly);
  out << j.dump(2) << '\n';
}

void write_bounds_csv(std::ostream& out, const std::vector<BoundReport>& reports) {
  out << "name,index,lhs,relation,lower,rhs,slack,satisfied,equality_expected\n";
  for (const auto& r : reports) {
    out << r.name << ',' << (r.index ? std::to_string(*r.index) : "") << ',' << format_real(r.lhs) << ','
        << to_string(r.relation) << ',' << (r.lower ? format_real(*r.lower) : "") << ',' << format_real(r.rhs) << ','
        << format_real(r.slack) << ',' << (r.satisfied ? "true" : "false") << ','
        << (r.equality_expected ? (*r.equality_expected ? "true" : "false") : "") << '\n';
  }
}

void write_spectrum_json(std::ostream& out, const Spectrum& spectrum) { out << to_json(spectrum).dump(2) << '\n'; }

void write_charpoly_json(std::ostream& out, const std::vector<BigInt>& coeffs) {
  out << charpoly_json(coeffs).dump() << '\n';
}

void write_bound_json(std::ostream& out, const BoundReport& report) { out << to_json(report).dump(2) << '\n'; }

void write_ledger_text(std::ostream& out, const VerificationLedger& ledger) {
  out << "order " << ledger.order << ": " << ledger.tree_count << " trees (recurrence " << ledger.expected_count
      << "), " << ledger.total_violations() << " violations\n\n";
  out << std::left << std::setw(32) << "check" << std::right << std::setw(8) << "trees" << std::setw(10) << "evals"
      << std::setw(12) << "violations" << std::setw(20) << "worst slack" << '\n';
  for (const auto& c : ledger.checks) {
    out << std::left << std::setw(32) << c.name << std::right << std::setw(8) << c.trees_checked << std::setw(10)
        << c.evaluations << std::setw(12) << c.violations << std::setw(20) << format_real(c.worst_slack) << '\n';
  }
  if (!ledger.extremal.empty()) {
    out << '\n';
    for (const auto& e : ledger.extremal) {
      out << e.stat << " min " << format_real(e.min_value) << " at [" << e.min_tree << "] gap "
          << format_real(e.min_gap) << "; max " << format_real(e.max_value) << " at [" << e.max_tree << "] gap "
          << format_real(e.max_gap) << '\n';
    }
  }
  if (!ledger.skipped.empty()) {
    out << '\n';
    for (const auto& [name, reason] : ledger.skipped) out << "skipped " << name << ": " << reason << '\n';
  }
  if (!ledger.violations.empty()) {
    out << '\n';
    for (const auto& v : ledger.violations) out << "VIOLATION " << v.check << " [" << v.tree << "] " << v.detail << '\n';
  }
}

void write_ledger_json(std::ostream& out, const VerificationLedger& ledger) {
  json checks = json::array();
  for (const auto& c : ledger.checks) {
    checks.push_back({{"name", c.name},
                      {"trees_checked", c.trees_checked},
                      {"evaluations", c.evaluations},
                      {"violations", c.violations},
                      {"worst_slack", real(c.worst_slack)},
                      {"worst_tree", c.worst_tree}});
  }
  json extremal = json::array();
  for (const auto& e : ledger.extremal) {
    extremal.push_back({{"stat", e.stat},
                        {"min_tree", e.min_tree},
                        {"min_value", real(e.min_value)},
                        {"min_gap", real(e.min_gap)},
                        {"max_tree", e.max_tree},
                        {"max_value", real(e.max_value)},
                        {"max_gap", real(e.max_gap)}});
  }
  json violations = json::array();
  for (const auto& v : ledger.violations) {
    violations.push_back({{"check", v.check}, {"tree", v.tree}, {"detail", v.detail}});
  }
  json skipped = json::array();
  for (const auto& [name, reason] : ledger.skipped) skipped.push_back({{"name", name}, {"reason", reason}});
  json j = {{"order", ledger.order},
            {"tree_count", ledger.tree_count},
            {"expected_count", ledger.expected_count},
            {"violation_count", ledger.total_violations()},
            {"ok", ledger.ok()},
            {"checks", checks},
            {"extremal", extremal},
            {"violations", violations},
            {"skipped", skipped}};
  out << j.dump(2) << '\n';
}

}  // namespace level_spectra
