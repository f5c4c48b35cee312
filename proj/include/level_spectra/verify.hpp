#ifndef LEVEL_SPECTRA_VERIFY_HPP
#define LEVEL_SPECTRA_VERIFY_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "level_spectra/bounds.hpp"
#include "level_spectra/tree.hpp"

namespace level_spectra {

struct VerifyOptions {
  std::vector<std::string> selection;  // empty = every check
  std::size_t jobs = 0;                // 0 = hardware concurrency
  std::size_t cap = kDefaultEnumerationCap;
  double cluster_tol = kDefaultClusterTol;
  double bound_tol = kDefaultBoundTol;
  double identity_tol = kIdentityTol;
  std::size_t charpoly_max_order = 12;  // exact pipelines above this order are skipped
};

// Per-check counters, merged across trees independently of scheduling.
struct CheckTally {
  std::string name;
  std::size_t trees_checked = 0;
  std::size_t evaluations = 0;
  std::size_t violations = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  std::string worst_tree;  // canonical encoding attaining worst_slack
};

struct Violation {
  std::string check;
  std::string tree;
  std::string detail;

  friend auto operator<=>(const Violation&, const Violation&) = default;
};

struct ExtremalStat {
  std::string stat;  // "rho" or "energy"
  std::string min_tree;
  double min_value = 0.0;
  double min_gap = 0.0;  // second smallest - smallest; +inf with a single tree
  std::string max_tree;
  double max_value = 0.0;
  double max_gap = 0.0;
};

struct VerificationLedger {
  std::size_t order = 0;
  std::uint64_t tree_count = 0;
  std::uint64_t expected_count = 0;
  std::vector<CheckTally> checks;  // sorted by name
  std::vector<ExtremalStat> extremal;
  std::vector<Violation> violations;  // sorted
  std::vector<std::pair<std::string, std::string>> skipped;  // (check, reason), sorted

  std::size_t total_violations() const noexcept { return violations.size(); }
  bool ok() const noexcept { return violations.empty() && tree_count == expected_count; }
  const CheckTally* find(std::string_view name) const;
};

/// Names of the structural, spectral and extremal checks run in addition to
/// the bound checks of evaluate_bounds.
std::span<const std::string_view> verify_check_names();

/// Every name accepted in VerifyOptions::selection.
std::vector<std::string> all_check_names();

/// Runs every selected check over every rooted tree of order n.
VerificationLedger verify_order(std::size_t n, const VerifyOptions& options = {});

struct ExtremalTrees {
  RootedTree min_tree;
  double min_value;
  double min_gap;
  RootedTree max_tree;
  double max_value;
  double max_gap;
};

ExtremalTrees verify_extremal_rho(std::size_t n, std::size_t cap = kDefaultEnumerationCap);
ExtremalTrees verify_extremal_energy(std::size_t n, std::size_t cap = kDefaultEnumerationCap);

/// Multiplicity and leaf-deletion theorems on a single tree; appends one
/// entry per failed assertion to `violations`.
void verify_multiplicity_theorems(const TreeAnalysis& a, std::vector<Violation>& violations,
                                  double tol = kDefaultClusterTol);

/// Cauchy interlacing for every leaf deletion; returns the smallest margin.
double verify_interlacing(const TreeAnalysis& a, std::vector<Violation>& violations,
                          double tol = kDefaultClusterTol);

}  // namespace level_spectra

#endif  // LEVEL_SPECTRA_VERIFY_HPP
