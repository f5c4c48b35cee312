// level-spectra: command-line front end for the level_spectra library.
//
// Exit codes: 0 ok, 1 verification violations (or a failed --expect),
// 2 invalid tree input, 3 I/O failure, 4 resource limit, 64 usage error.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "level_spectra/bounds.hpp"
#include "level_spectra/error.hpp"
#include "level_spectra/report.hpp"
#include "level_spectra/tree.hpp"
#include "level_spectra/verify.hpp"

namespace ls = level_spectra;
using nlohmann::json;

namespace {

enum Exit : int { kOk = 0, kViolations = 1, kInput = 2, kIo = 3, kResource = 4, kUsage = 64 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ls::ErrorCode code) {
  switch (code) {
    case ls::ErrorCode::ParseError:
    case ls::ErrorCode::CycleDetected:
    case ls::ErrorCode::MultipleRoots:
    case ls::ErrorCode::NoRoot:
    case ls::ErrorCode::IndexOutOfRange:
      return kInput;
    case ls::ErrorCode::ResourceLimit:
      return kResource;
    case ls::ErrorCode::InvalidOrder:
    case ls::ErrorCode::UnknownCheck:
    case ls::ErrorCode::TooSmall:
      return kUsage;
    default:
      return kViolations;
  }
}

ls::RootedTree load_tree(const std::string& path) {
  if (path == "-") return ls::read_tree_file(std::cin);
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return ls::read_tree_file(in);
}

// Splits "a,b,c"; "all" (or nothing) selects everything.
std::vector<std::string> split_names(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (name.empty() || name == "all") continue;
      out.push_back(name);
    }
  }
  return out;
}

// Writes to --out when given, otherwise stdout.
template <typename F>
void emit(const std::string& out_path, F&& write) {
  if (out_path.empty() || out_path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot write '" + out_path + "'");
  write(out);
  if (!out) throw IoError("write to '" + out_path + "' failed");
}

struct Tolerance {
  std::optional<double> value;

  void apply(ls::AnalysisOptions& o) const {
    if (!value) return;
    o.spectrum.cluster_tol = *value;
    o.bound_tol = *value;
    o.identity_tol = *value;
  }
  void apply(ls::VerifyOptions& o) const {
    if (!value) return;
    o.cluster_tol = *value;
    o.bound_tol = *value;
    o.identity_tol = *value;
  }
};

void add_tol(CLI::App* cmd, Tolerance& tol) {
  cmd->add_option("--tol", tol.value, "Relative tolerance for clustering and bound comparisons")
      ->check(CLI::PositiveNumber);
}

int write_analysis(std::ostream& out, const ls::AnalysisReport& report, const std::string& format) {
  if (format == "json") {
    ls::write_analysis_json(out, report);
  } else if (format == "csv") {
    ls::write_bounds_csv(out, report.bounds.reports);
  } else if (format == "dot") {
    ls::write_dot(out, report.analysis.tree);
  } else if (format == "treefile") {
    ls::write_tree_file(out, report.analysis.tree);
  } else if (format == "matrix") {
    ls::write_matrix(out, report.analysis.matrix.entries());
  } else {
    ls::write_analysis_text(out, report);
  }
  return kOk;
}

bool bounds_hold(const ls::AnalysisReport& report) {
  for (const auto& r : report.bounds.reports) {
    if (!r.satisfied) return false;
  }
  return true;
}

std::string expected_encoding(const std::string& expect, std::size_t n) {
  if (expect == "star") return ls::canonical_encoding(ls::rooted_star(n));
  return ls::canonical_encoding(ls::rooted_path(n));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Level matrices of rooted trees: spectra, bounds and exhaustive verification"};
  app.set_version_flag("--version", "level-spectra 0.1.0");
  app.require_subcommand(1);

  const std::vector<std::string> analysis_formats{"text", "json", "csv", "dot", "treefile", "matrix"};

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Analyze one tree file ('-' reads stdin)");
  std::string analyze_path;
  std::string analyze_format = "text";
  bool analyze_charpoly = false;
  std::vector<std::string> analyze_bounds;
  std::string analyze_out;
  Tolerance analyze_tol;
  analyze->add_option("path", analyze_path, "Tree file")->required();
  analyze->add_option("--format", analyze_format)->check(CLI::IsMember(analysis_formats));
  analyze->add_flag("--charpoly", analyze_charpoly, "Include the exact characteristic polynomial");
  analyze->add_option("--bounds", analyze_bounds, "'all' or a comma-separated list of checks")->delimiter(',');
  analyze->add_option("--out", analyze_out, "Write the report here instead of stdout");
  add_tol(analyze, analyze_tol);

  // verify
  auto* verify = app.add_subcommand("verify", "Check every rooted tree of one order");
  std::size_t verify_order = 0;
  std::vector<std::string> verify_only;
  std::size_t verify_jobs = 0;
  std::string verify_format = "text";
  std::string verify_out;
  Tolerance verify_tol;
  verify->add_option("--order", verify_order)->required()->check(CLI::PositiveNumber);
  verify->add_option("--only", verify_only, "Comma-separated check names")->delimiter(',');
  verify->add_option("--jobs", verify_jobs, "Worker threads (default: available parallelism)");
  verify->add_option("--format", verify_format)->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--out", verify_out, "Write the ledger here instead of stdout");
  bool verify_list = false;
  verify->add_flag("--list", verify_list, "Print the check names and exit");
  add_tol(verify, verify_tol);

  // extremal
  auto* extremal = app.add_subcommand("extremal", "Arg-extreme tree of rho or energy at one order");
  std::size_t extremal_order = 0;
  std::string extremal_stat;
  bool extremal_min = false;
  bool extremal_max = false;
  std::string extremal_expect;
  std::string extremal_format = "text";
  extremal->add_option("--order", extremal_order)->required()->check(CLI::PositiveNumber);
  extremal->add_option("--stat", extremal_stat)->required()->check(CLI::IsMember({"rho", "energy"}));
  auto* min_flag = extremal->add_flag("--min", extremal_min);
  auto* max_flag = extremal->add_flag("--max", extremal_max);
  min_flag->excludes(max_flag);
  extremal->add_option("--expect", extremal_expect, "Fail unless the extreme tree is this family")
      ->check(CLI::IsMember({"star", "path"}));
  extremal->add_option("--format", extremal_format)->check(CLI::IsMember({"text", "json"}));

  // special
  auto* special = app.add_subcommand("special", "Analyze a named family");
  std::string special_family;
  std::size_t special_order = 0;
  std::size_t special_arity = 2;
  std::size_t special_height = 0;
  std::string special_format = "text";
  Tolerance special_tol;
  special->add_option("family", special_family)->required()->check(
      CLI::IsMember({"star", "path", "leafstar", "dary"}));
  special->add_option("--order", special_order)->check(CLI::PositiveNumber);
  special->add_option("--arity", special_arity)->check(CLI::PositiveNumber);
  special->add_option("--height", special_height);
  special->add_option("--format", special_format)->check(CLI::IsMember({"text", "json"}));
  add_tol(special, special_tol);

  // charpoly
  auto* charpoly = app.add_subcommand("charpoly", "Exact characteristic polynomial of a tree file");
  std::string charpoly_path;
  std::string charpoly_format = "json";
  charpoly->add_option("path", charpoly_path)->required();
  charpoly->add_option("--format", charpoly_format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) {
      ls::AnalysisOptions options;
      options.charpoly = analyze_charpoly;
      options.bounds = split_names(analyze_bounds);
      analyze_tol.apply(options);
      const auto tree = load_tree(analyze_path);
      const auto report = ls::analyze(tree, options);
      emit(analyze_out, [&](std::ostream& out) { write_analysis(out, report, analyze_format); });
      return kOk;
    }

    if (*verify) {
      if (verify_list) {
        for (const auto& name : ls::all_check_names()) std::cout << name << '\n';
        return kOk;
      }
      ls::VerifyOptions options;
      options.selection = split_names(verify_only);
      options.jobs = verify_jobs;
      options.cap = ls::enumeration_cap_from_env();
      verify_tol.apply(options);
      const auto ledger = ls::verify_order(verify_order, options);
      emit(verify_out, [&](std::ostream& out) {
        if (verify_format == "json") {
          ls::write_ledger_json(out, ledger);
        } else {
          ls::write_ledger_text(out, ledger);
        }
      });
      return ledger.ok() ? kOk : kViolations;
    }

    if (*extremal) {
      const std::size_t cap = ls::enumeration_cap_from_env();
      const auto found = extremal_stat == "rho" ? ls::verify_extremal_rho(extremal_order, cap)
                                                : ls::verify_extremal_energy(extremal_order, cap);
      const bool want_min = extremal_min;
      const auto& tree = want_min ? found.min_tree : found.max_tree;
      const double value = want_min ? found.min_value : found.max_value;
      const double gap = want_min ? found.min_gap : found.max_gap;
      const std::string encoding = ls::canonical_encoding(tree);

      bool ok = true;
      if (!extremal_expect.empty()) {
        ok = encoding == expected_encoding(extremal_expect, extremal_order) && gap > 1e-9;
      }
      if (extremal_format == "json") {
        json j = {{"order", extremal_order},
                  {"stat", extremal_stat},
                  {"direction", want_min ? "min" : "max"},
                  {"tree", encoding},
                  {"value", std::strtod(ls::format_real(value).c_str(), nullptr)},
                  {"gap", std::isfinite(gap) ? json(std::strtod(ls::format_real(gap).c_str(), nullptr)) : json()}};
        if (!extremal_expect.empty()) {
          j["expect"] = extremal_expect;
          j["ok"] = ok;
        }
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << (want_min ? "min " : "max ") << extremal_stat << " over order " << extremal_order << '\n'
                  << "tree   " << encoding << '\n'
                  << "value  " << ls::format_real(value) << '\n'
                  << "gap    " << ls::format_real(gap) << '\n';
        if (!extremal_expect.empty()) {
          std::cout << "expect " << extremal_expect << ": " << (ok ? "ok" : "FAILED") << '\n';
        }
      }
      return ok ? kOk : kViolations;
    }

    if (*special) {
      std::optional<ls::RootedTree> tree;
      if (special_family == "dary") {
        tree = ls::complete_dary(special_arity, special_height);
      } else {
        if (special_order == 0) throw UsageError("--order is required for " + special_family);
        if (special_family == "star") tree = ls::rooted_star(special_order);
        if (special_family == "path") tree = ls::rooted_path(special_order);
        if (special_family == "leafstar") tree = ls::star_rooted_at_leaf(special_order);
      }
      ls::AnalysisOptions options;
      special_tol.apply(options);
      const auto report = ls::analyze(*tree, options);
      const auto& values = report.analysis.spectrum.values;
      const std::size_t n = tree->size();

      json extra = json::object();
      std::ostringstream text;
      if (special_family == "path" && n >= 2) {
        const double closed = ls::path_rho_closed_form(n);
        const double numeric = report.analysis.spectrum.rho;
        const double residual = std::abs(closed - numeric) / std::max(1.0, std::abs(numeric));
        extra = {{"closed_form_rho", closed}, {"eigensolver_rho", numeric}, {"relative_residual", residual}};
        text << "closed-form rho  " << ls::format_real(closed) << '\n'
             << "eigensolver rho  " << ls::format_real(numeric) << '\n'
             << "residual         " << ls::format_real(residual) << '\n';
      } else if (special_family == "leafstar" && n >= 3) {
        const auto roots = ls::leafstar_cubic_roots(n);
        // Nonzero part of the spectrum: the largest value and the two smallest.
        const std::array<double, 3> spectral{values.front(), values[n - 2], values[n - 1]};
        json rs = json::array();
        text << "cubic x^3 + (" << 9 - 5 * static_cast<long>(n) << ")x + (" << 8 - 4 * static_cast<long>(n) << ")\n";
        for (std::size_t k = 0; k < 3; ++k) {
          const double residual = std::abs(roots[k] - spectral[k]);
          rs.push_back({{"root", roots[k]}, {"eigenvalue", spectral[k]}, {"residual", residual}});
          text << "root " << ls::format_real(roots[k]) << "  eigenvalue " << ls::format_real(spectral[k])
               << "  residual " << ls::format_real(residual) << '\n';
        }
        extra = {{"cubic_roots", rs}};
      }

      if (special_format == "json") {
        std::ostringstream buf;
        ls::write_analysis_json(buf, report);
        json j = json::parse(buf.str());
        j["family"] = special_family;
        if (!extra.empty()) j["closed_form"] = extra;
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << "family         " << special_family << '\n';
        ls::write_analysis_text(std::cout, report);
        if (!text.str().empty()) std::cout << '\n' << text.str();
      }
      return bounds_hold(report) ? kOk : kViolations;
    }

    if (*charpoly) {
      const auto tree = load_tree(charpoly_path);
      const auto coeffs = ls::characteristic_polynomial(ls::LevelMatrix(tree));
      if (charpoly_format == "json") {
        ls::write_charpoly_json(std::cout, coeffs);
      } else {
        for (std::size_t i = 0; i < coeffs.size(); ++i) std::cout << (i ? " " : "") << coeffs[i];
        std::cout << '\n';
      }
      return kOk;
    }
  } catch (const ls::Error& e) {
    std::cerr << "level-spectra: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const IoError& e) {
    std::cerr << "level-spectra: " << e.what() << '\n';
    return kIo;
  } catch (const UsageError& e) {
    std::cerr << "level-spectra: " << e.what() << '\n';
    return kUsage;
  } catch (const std::bad_alloc&) {
    std::cerr << "level-spectra: out of memory\n";
    return kResource;
  }
  return kUsage;
}
