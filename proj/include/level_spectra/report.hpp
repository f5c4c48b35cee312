#ifndef LEVEL_SPECTRA_REPORT_HPP
#define LEVEL_SPECTRA_REPORT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "level_spectra/bounds.hpp"
#include "level_spectra/verify.hpp"

namespace level_spectra {

struct AnalysisOptions {
  bool charpoly = false;
  std::vector<std::string> bounds;  // empty = all
  bool with_bounds = true;
  SpectrumOptions spectrum;
  double bound_tol = kDefaultBoundTol;
  double identity_tol = kIdentityTol;
};

struct AnalysisReport {
  TreeAnalysis analysis;
  std::size_t mul_zero_exact = 0;
  std::optional<std::vector<BigInt>> charpoly;
  BoundEvaluation bounds;
};

AnalysisReport analyze(const RootedTree& tree, const AnalysisOptions& options = {});

// Every floating-point value is written with 12 significant digits.
std::string format_real(double x);

void write_analysis_text(std::ostream& out, const AnalysisReport& report);
void write_analysis_json(std::ostream& out, const AnalysisReport& report);
void write_bounds_csv(std::ostream& out, const std::vector<BoundReport>& reports);

void write_spectrum_json(std::ostream& out, const Spectrum& spectrum);
/// Decimal coefficient strings, degree-descending.
void write_charpoly_json(std::ostream& out, const std::vector<BigInt>& coeffs);
void write_bound_json(std::ostream& out, const BoundReport& report);

void write_ledger_text(std::ostream& out, const VerificationLedger& ledger);
void write_ledger_json(std::ostream& out, const VerificationLedger& ledger);

}  // namespace level_spectra

#endif  // LEVEL_SPECTRA_REPORT_HPP
