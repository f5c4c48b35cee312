#include "level_spectra/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "level_spectra/error.hpp"

namespace level_spectra {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGapTol = 1e-9;

constexpr std::string_view kVerifyChecks[] = {
    "tree-count",
    "canonical-idempotence",
    "level-recurrence",
    "level-le-distance",
    "row-sum-difference",
    "irreducible",
    "zero-trace",
    "charpoly-trace",
    "dual-pipeline",
    "perron-positive",
    "zero-multiplicity",
    "zero-multiplicity-cluster",
    "one-positive-eigenvalue",
    "star-iff-mul0",
    "leaf-deletion-multiplicity",
    "leaf-deletion-zero",
    "interlacing",
    "star-minimises-rho",
    "path-maximises-rho",
    "path-maximises-energy",
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// Results of one worker, merged associatively at the end.
struct Partial {
  std::map<std::string, CheckTally> tallies;
  std::vector<Violation> violations;
  std::set<std::pair<std::string, std::string>> skipped;

  void merge(Partial&& other) {
    for (auto& [name, t] : other.tallies) {
      auto& mine = tallies[name];
      mine.name = name;
      mine.trees_checked += t.trees_checked;
      mine.evaluations += t.evaluations;
      mine.violations += t.violations;
      if (t.worst_slack < mine.worst_slack ||
          (t.worst_slack == mine.worst_slack && t.worst_tree < mine.worst_tree)) {
        mine.worst_slack = t.worst_slack;
        mine.worst_tree = t.worst_tree;
      }
    }
    violations.insert(violations.end(), std::make_move_iterator(other.violations.begin()),
                      std::make_move_iterator(other.violations.end()));
    skipped.merge(other.skipped);
  }
};

// Records the outcome of checks on a single tree.
class Recorder {
 public:
  Recorder(Partial& partial, std::string tree) : partial_(partial), tree_(std::move(tree)) {}

  void record(const std::string& check, bool ok, double slack, const std::string& detail = {}) {
    auto& t = partial_.tallies[check];
    t.name = check;
    if (touched_.insert(check).second) ++t.trees_checked;
    ++t.evaluations;
    if (!std::isnan(slack) &&
        (slack < t.worst_slack || (slack == t.worst_slack && (t.worst_tree.empty() || tree_ < t.worst_tree)))) {
      t.worst_slack = slack;
      t.worst_tree = tree_;
    }
    if (!ok) {
      ++t.violations;
      partial_.violations.push_back({check, tree_, detail});
    }
  }

  void skip(const std::string& check, const std::string& reason) { partial_.skipped.emplace(check, reason); }

  const std::string& tree() const { return tree_; }

 private:
  Partial& partial_;
  std::string tree_;
  std::set<std::string> touched_;
};

struct LeafData {
  Vertex leaf;
  LevelMatrix matrix;
  Spectrum spectrum;
};

// Lazily computed per-tree state shared by several checks.
class TreeContext {
 public:
  TreeContext(const RootedTree& tree, const SpectrumOptions& options, double bound_tol, double identity_tol)
      : analysis_(analyze_tree(tree, options, bound_tol, identity_tol)), options_(options) {}

  const TreeAnalysis& analysis() const { return analysis_; }

  const std::vector<LeafData>& leaves() {
    if (!leaves_) {
      leaves_.emplace();
      for (Vertex v : analysis_.tree.leaves()) {
        LevelMatrix m(delete_leaf(analysis_.tree, v));
        Spectrum s = compute_spectrum(m, options_);
        leaves_->push_back({v, std::move(m), std::move(s)});
      }
    }
    return *leaves_;
  }

  std::size_t nullity() {
    if (!nullity_) nullity_ = exact_zero_multiplicity(analysis_.matrix);
    return *nullity_;
  }

  const std::vector<BigInt>& charpoly() {
    if (!charpoly_) charpoly_ = characteristic_polynomial(analysis_.matrix, analysis_.n());
    return *charpoly_;
  }

 private:
  TreeAnalysis analysis_;
  SpectrumOptions options_;
  std::optional<std::vector<LeafData>> leaves_;
  std::optional<std::size_t> nullity_;
  std::optional<std::vector<BigInt>> charpoly_;
};

double window(const Spectrum& s, double tol) { return tol * std::max(1.0, s.rho); }

void check_multiplicity(TreeContext& ctx, Recorder& rec, double tol, const std::function<bool(std::string_view)>& want) {
  const TreeAnalysis& a = ctx.analysis();
  const std::size_t n = a.n();
  const auto& s = a.spectrum;
  const std::size_t lmax = static_cast<std::size_t>(a.matrix.max_level());

  if (want("zero-multiplicity")) {
    if (n > 2) {
      const std::size_t nul = ctx.nullity();
      rec.record("zero-multiplicity", nul == n - 1 - lmax, 0.0,
                 "nullity " + std::to_string(nul) + " vs n-1-lmax " + std::to_string(n - 1 - lmax));
    } else {
      rec.skip("zero-multiplicity", "requires n > 2");
    }
  }

  if (want("zero-multiplicity-cluster")) {
    const std::size_t nul = ctx.nullity();
    try {
      const std::size_t m = clustered_multiplicity(s, 0.0, tol);
      rec.record("zero-multiplicity-cluster", m == nul, 0.0,
                 "clustered " + std::to_string(m) + " vs exact " + std::to_string(nul));
    } catch (const Error& e) {
      rec.record("zero-multiplicity-cluster", false, 0.0, e.what());
    }
  }

  if (want("one-positive-eigenvalue")) {
    if (n >= 2) {
      const double w = window(s, tol);
      const auto positives = std::count_if(s.values.begin(), s.values.end(), [&](double v) { return v > w; });
      rec.record("one-positive-eigenvalue", positives == 1, 0.0, std::to_string(positives) + " positive eigenvalues");
    } else {
      rec.skip("one-positive-eigenvalue", "requires n >= 2");
    }
  }

  if (want("star-iff-mul0")) {
    if (n > 2) {
      const bool star = is_rooted_star(a.tree);
      const bool full = ctx.nullity() == n - 2;
      rec.record("star-iff-mul0", star == full, 0.0,
                 std::string(star ? "star" : "non-star") + " with nullity " + std::to_string(ctx.nullity()));
    } else {
      rec.skip("star-iff-mul0", "requires n > 2");
    }
  }

  if (want("leaf-deletion-multiplicity")) {
    if (n >= 2) {
      const double w = window(s, tol);
      for (const auto& leaf : ctx.leaves()) {
        for (const auto& c : s.clusters) {
          const auto after = static_cast<long>(count_within(leaf.spectrum.values, c.value, w));
          const long delta = static_cast<long>(c.multiplicity) - after;
          rec.record("leaf-deletion-multiplicity", std::labs(delta) <= 1, 1.0 - static_cast<double>(std::labs(delta)),
                     "leaf v" + std::to_string(leaf.leaf + 1) + ", lambda " + fmt(c.value) + ": delta " +
                         std::to_string(delta));
        }
      }
    } else {
      rec.skip("leaf-deletion-multiplicity", "requires n >= 2");
    }
  }

  if (want("leaf-deletion-zero")) {
    if (n > 2) {
      const auto before = static_cast<long>(ctx.nullity());
      for (const auto& leaf : ctx.leaves()) {
        const auto after = static_cast<long>(leaf.matrix.size() - integer_rank(leaf.matrix.entries()));
        const long delta = before - after;
        rec.record("leaf-deletion-zero", delta == 0 || delta == 1, 0.0,
                   "leaf v" + std::to_string(leaf.leaf + 1) + ": delta " + std::to_string(delta));
      }
    } else {
      rec.skip("leaf-deletion-zero", "requires n > 2");
    }
  }
}

void check_interlacing(TreeContext& ctx, Recorder& rec, double tol) {
  const TreeAnalysis& a = ctx.analysis();
  if (a.n() < 2) {
    rec.skip("interlacing", "requires n >= 2");
    return;
  }
  const auto& lambda = a.spectrum.values;
  const double eps = window(a.spectrum, tol);
  for (const auto& leaf : ctx.leaves()) {
    const auto& mu = leaf.spectrum.values;
    double margin = kInf;
    std::string where;
    for (std::size_t k = 0; k < mu.size(); ++k) {
      const double m = std::min(lambda[k] - mu[k], mu[k] - lambda[k + 1]);
      if (m < margin) {
        margin = m;
        where = "k=" + std::to_string(k + 1);
      }
    }
    rec.record("interlacing", margin >= -eps, margin,
               "leaf v" + std::to_string(leaf.leaf + 1) + " at " + where + ", margin " + fmt(margin));
  }
}

void check_structure(TreeContext& ctx, Recorder& rec, const std::function<bool(std::string_view)>& want,
                     const LevelSequence* source, std::size_t charpoly_max_order) {
  const TreeAnalysis& a = ctx.analysis();
  const std::size_t n = a.n();
  const auto& lv = a.matrix.levels();

  if (want("canonical-idempotence")) {
    const auto seq = canonical_sequence(a.tree);
    bool ok = canonical_sequence(RootedTree::from_level_sequence(seq)) == seq;
    if (source) ok = ok && seq == *source;
    rec.record("canonical-idempotence", ok, 0.0, "canonical form not stable");
  }

  if (want("level-recurrence")) {
    bool ok = lv[a.tree.root()] == 0;
    for (Vertex v = 0; v < n; ++v) {
      if (v != a.tree.root()) ok = ok && lv[v] == lv[a.tree.parent(v)] + 1 && lv[v] > 0;
    }
    rec.record("level-recurrence", ok, 0.0, "level recurrence broken");
  }

  if (want("level-le-distance")) {
    const IntMatrix d = distance_matrix(a.tree);
    bool dominated = true;
    std::int64_t min_gap = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        dominated = dominated && a.matrix(i, j) <= d(i, j);
        min_gap = std::min(min_gap, d(i, j) - a.matrix(i, j));
      }
    const bool equal = d == a.matrix.entries();
    rec.record("level-le-distance", dominated && (equal == a.is_path), static_cast<double>(min_gap),
               dominated ? "matrix equality disagrees with path test" : "level entry exceeds distance");
  }

  if (want("row-sum-difference")) {
    if (n >= 2) {
      std::vector<int> sorted = lv;
      std::sort(sorted.begin(), sorted.end(), std::greater<>());
      std::vector<std::int64_t> rows(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rows[i] += std::abs(sorted[i] - sorted[j]);
      bool ok = true;
      std::string detail;
      for (std::size_t i = 1; i <= n && ok; ++i) {
        for (std::size_t k = i + 1; k <= n && ok; ++k) {
          const std::int64_t direct = rows[i - 1] - rows[k - 1];
          const std::int64_t closed = row_sum_difference(sorted, i, k);
          const std::int64_t floor = static_cast<std::int64_t>(n - 2 * k + 2) * (sorted[i - 1] - sorted[k - 1]);
          const bool flat = std::all_of(sorted.begin() + static_cast<std::ptrdiff_t>(i - 1),
                                        sorted.begin() + static_cast<std::ptrdiff_t>(k - 1),
                                        [&](int l) { return l == sorted[i - 1]; });
          ok = direct == closed && direct >= floor && ((direct == floor) == flat);
          if (!ok) detail = "i=" + std::to_string(i) + ", k=" + std::to_string(k);
        }
      }
      rec.record("row-sum-difference", ok, 0.0, detail);
    } else {
      rec.skip("row-sum-difference", "requires n >= 2");
    }
  }

  if (want("irreducible")) {
    rec.record("irreducible", is_irreducible(a.matrix.entries()), 0.0, "level matrix is reducible");
  }

  if (want("zero-trace")) {
    double sum = 0.0;
    for (double v : a.spectrum.values) sum += v;
    const double tol = static_cast<double>(n) * 1e-10 * std::max(1.0, a.spectrum.rho);
    rec.record("zero-trace", std::abs(sum) <= tol, tol - std::abs(sum), "eigenvalue sum " + fmt(sum));
  }

  const bool exact_ok = n <= charpoly_max_order;
  if (want("charpoly-trace")) {
    if (exact_ok) {
      const auto& c = ctx.charpoly();
      bool ok = c.front() == 1;
      if (n >= 2) ok = ok && c[1] == 0;
      if (n >= 2) ok = ok && c[2] * 2 == -BigInt(a.matrix.h_value());
      if (n >= 2) ok = ok && ((c.back() == 0) == !a.is_path);  // det(L) = 0 iff not a path
      rec.record("charpoly-trace", ok, 0.0, "characteristic polynomial coefficients disagree");
    } else {
      rec.skip("charpoly-trace", "order above exact cap");
    }
  }

  if (want("dual-pipeline")) {
    if (exact_ok) {
      const auto roots = real_roots(ctx.charpoly());
      double worst = 0.0;
      bool ok = roots.size() == n;
      for (std::size_t k = 0; ok && k < n; ++k) worst = std::max(worst, std::abs(roots[k] - a.spectrum.values[k]));
      ok = ok && worst <= 1e-7;
      rec.record("dual-pipeline", ok, 1e-7 - worst,
                 "root count " + std::to_string(roots.size()) + ", max deviation " + fmt(worst));
    } else {
      rec.skip("dual-pipeline", "order above exact cap");
    }
  }

  if (want("perron-positive")) {
    if (n >= 2) {
      const auto& y = a.spectrum.perron;
      bool ok = y.size() == n;
      double residual = 0.0, norm = 0.0;
      if (ok) {
        for (std::size_t i = 0; i < n; ++i) {
          double r = -a.spectrum.rho * y[i];
          for (std::size_t j = 0; j < n; ++j) r += static_cast<double>(a.matrix(i, j)) * y[j];
          residual += r * r;
          norm += y[i] * y[i];
        }
        residual = std::sqrt(residual);
        norm = std::sqrt(norm);
        ok = residual <= 1e-10 * a.spectrum.rho * norm && std::abs(norm - 1.0) <= 1e-12 &&
             a.spectrum.rho == a.spectrum.values.front();
      }
      rec.record("perron-positive", ok, 0.0, "residual " + fmt(residual) + ", norm " + fmt(norm));
    } else {
      rec.skip("perron-positive", "requires n >= 2");
    }
  }
}

struct Extreme {
  double best;
  std::size_t index = std::numeric_limits<std::size_t>::max();
  std::string tree;
  double second;
  bool minimise;

  explicit Extreme(bool min) : best(min ? kInf : -kInf), second(min ? kInf : -kInf), minimise(min) {}

  bool better(double a, std::size_t ia, double b, std::size_t ib) const {
    if (a != b) return minimise ? a < b : a > b;
    return ia < ib;
  }

  void offer(double value, std::size_t idx, const std::string& enc) {
    if (index == std::numeric_limits<std::size_t>::max() || better(value, idx, best, index)) {
      if (index != std::numeric_limits<std::size_t>::max()) second = best;
      best = value;
      index = idx;
      tree = enc;
    } else if (minimise ? value < second : value > second) {
      second = value;
    }
  }

  void merge(const Extreme& o) {
    if (o.index == std::numeric_limits<std::size_t>::max()) return;
    const double o_second = o.second;
    offer(o.best, o.index, o.tree);
    if (minimise ? o_second < second : o_second > second) second = o_second;
  }

  double gap() const { return std::abs(second - best); }
};

struct WorkerState {
  Partial partial;
  Extreme rho_min{true}, rho_max{false}, energy_min{true}, energy_max{false};
};

}  // namespace

const CheckTally* VerificationLedger::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::span<const std::string_view> verify_check_names() { return kVerifyChecks; }

std::vector<std::string> all_check_names() {
  std::vector<std::string> out;
  for (auto n : bound_check_names()) out.emplace_back(n);
  for (auto n : verify_check_names()) out.emplace_back(n);
  return out;
}

void verify_multiplicity_theorems(const TreeAnalysis& a, std::vector<Violation>& violations, double tol) {
  Partial p;
  Recorder rec(p, canonical_encoding(a.tree));
  TreeContext ctx(a.tree, SpectrumOptions{tol}, a.bound_tol, a.identity_tol);
  check_multiplicity(ctx, rec, tol, [](std::string_view) { return true; });
  violations.insert(violations.end(), p.violations.begin(), p.violations.end());
}

double verify_interlacing(const TreeAnalysis& a, std::vector<Violation>& violations, double tol) {
  Partial p;
  Recorder rec(p, canonical_encoding(a.tree));
  TreeContext ctx(a.tree, SpectrumOptions{tol}, a.bound_tol, a.identity_tol);
  check_interlacing(ctx, rec, tol);
  violations.insert(violations.end(), p.violations.begin(), p.violations.end());
  const auto it = p.tallies.find("interlacing");
  return it == p.tallies.end() ? kInf : it->second.worst_slack;
}

VerificationLedger verify_order(std::size_t n, const VerifyOptions& options) {
  const auto names = all_check_names();
  for (const auto& s : options.selection) {
    if (std::find(names.begin(), names.end(), s) == names.end()) {
      throw Error(ErrorCode::UnknownCheck, "unknown check '" + s + "'");
    }
  }
  const auto want = [&](std::string_view name) {
    return options.selection.empty() ||
           std::find(options.selection.begin(), options.selection.end(), name) != options.selection.end();
  };
  std::vector<std::string> bound_selection;
  bool any_bounds = options.selection.empty();
  for (const auto& s : options.selection) {
    const auto bn = bound_check_names();
    if (std::find(bn.begin(), bn.end(), s) != bn.end()) {
      bound_selection.push_back(s);
      any_bounds = true;
    }
  }

  RootedTreeEnumerator enumerator(n, options.cap);
  std::mutex source_mutex;
  std::size_t next_index = 0;

  const std::size_t jobs = options.jobs ? options.jobs : std::max<std::size_t>(1, std::thread::hardware_concurrency());
  std::vector<WorkerState> states(jobs);
  const SpectrumOptions spectrum_options{options.cluster_tol};

  const auto worker = [&](WorkerState& state) {
    constexpr std::size_t kBatch = 32;
    std::vector<std::pair<std::size_t, LevelSequence>> batch;
    for (;;) {
      batch.clear();
      {
        std::lock_guard lock(source_mutex);
        while (batch.size() < kBatch) {
          auto seq = enumerator.next_sequence();
          if (!seq) break;
          batch.emplace_back(next_index++, std::move(*seq));
        }
      }
      if (batch.empty()) return;
      for (const auto& [index, seq] : batch) {
        Recorder rec(state.partial, encode(seq));
        try {
          TreeContext ctx(RootedTree::from_level_sequence(seq), spectrum_options, options.bound_tol,
                          options.identity_tol);
          const TreeAnalysis& a = ctx.analysis();
          if (any_bounds) {
            const auto eval = evaluate_bounds(a, bound_selection);
            for (const auto& r : eval.reports) {
              std::string detail = std::string(r.name) + ": " + fmt(r.lhs) + " " + std::string(to_string(r.relation)) +
                                   " " + (r.lower ? "[" + fmt(*r.lower) + ", " + fmt(r.rhs) + "]" : fmt(r.rhs));
              if (r.index) detail += " (j=" + std::to_string(*r.index) + ")";
              rec.record(r.name, r.satisfied, r.slack, detail);
            }
            for (const auto& [check, reason] : eval.skipped) rec.skip(check, reason);
          }
          check_structure(ctx, rec, want, &seq, options.charpoly_max_order);
          check_multiplicity(ctx, rec, options.cluster_tol, want);
          if (want("interlacing")) check_interlacing(ctx, rec, options.cluster_tol);

          state.rho_min.offer(a.spectrum.rho, index, rec.tree());
          state.rho_max.offer(a.spectrum.rho, index, rec.tree());
          state.energy_min.offer(a.spectrum.energy, index, rec.tree());
          state.energy_max.offer(a.spectrum.energy, index, rec.tree());
        } catch (const std::exception& e) {
          rec.record("exception", false, kInf, e.what());
        }
      }
    }
  };

  if (jobs == 1) {
    worker(states.front());
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (auto& s : states) threads.emplace_back(worker, std::ref(s));
    for (auto& t : threads) t.join();
  }

  WorkerState total;
  for (auto& s : states) {
    total.partial.merge(std::move(s.partial));
    total.rho_min.merge(s.rho_min);
    total.rho_max.merge(s.rho_max);
    total.energy_min.merge(s.energy_min);
    total.energy_max.merge(s.energy_max);
  }

  VerificationLedger ledger;
  ledger.order = n;
  ledger.tree_count = next_index;
  ledger.expected_count = rooted_tree_count(n);

  Partial& p = total.partial;
  {
    Recorder rec(p, "");
    if (want("tree-count")) {
      rec.record("tree-count", ledger.tree_count == ledger.expected_count,
                 -std::abs(static_cast<double>(ledger.tree_count) - static_cast<double>(ledger.expected_count)),
                 "enumerated " + std::to_string(ledger.tree_count) + ", recurrence " +
                     std::to_string(ledger.expected_count));
    }
    // Extremal theorems: unique star minimiser and unique path maximiser.
    const std::string star = canonical_encoding(rooted_star(n));
    const std::string path = canonical_encoding(rooted_path(n));
    const bool several = ledger.tree_count > 1;
    const auto extremal = [&](const std::string& name, const Extreme& e, const std::string& expect) {
      if (!want(name)) return;
      if (n < 2) {
        rec.skip(name, "requires n >= 2");
        return;
      }
      const double gap = several ? e.gap() : kInf;
      rec.record(name, e.tree == expect && gap > kGapTol, several ? gap : 0.0,
                 "extreme at [" + e.tree + "] with gap " + fmt(gap));
    };
    extremal("star-minimises-rho", total.rho_min, star);
    extremal("path-maximises-rho", total.rho_max, path);
    extremal("path-maximises-energy", total.energy_max, path);
  }

  const auto stat = [&](std::string name, const Extreme& lo, const Extreme& hi) {
    const bool several = ledger.tree_count > 1;
    return ExtremalStat{std::move(name), lo.tree, lo.best, several ? lo.gap() : kInf,
                        hi.tree, hi.best, several ? hi.gap() : kInf};
  };
  if (ledger.tree_count > 0) {
    ledger.extremal.push_back(stat("energy", total.energy_min, total.energy_max));
    ledger.extremal.push_back(stat("rho", total.rho_min, total.rho_max));
  }

  for (auto& [name, t] : p.tallies) ledger.checks.push_back(std::move(t));
  ledger.violations = std::move(p.violations);
  std::sort(ledger.violations.begin(), ledger.violations.end());
  ledger.skipped.assign(p.skipped.begin(), p.skipped.end());
  return ledger;
}

namespace {

ExtremalTrees sweep(std::size_t n, std::size_t cap, bool energy) {
  if (n < 2) throw Error(ErrorCode::InvalidOrder, "extremal search needs n >= 2");
  RootedTreeEnumerator e(n, cap);
  Extreme lo(true), hi(false);
  LevelSequence lo_seq, hi_seq;
  std::size_t index = 0;
  while (auto seq = e.next_sequence()) {
    const LevelMatrix m(RootedTree::from_level_sequence(*seq));
    const Spectrum s = compute_spectrum(m);
    const double value = energy ? s.energy : s.rho;
    const std::string enc = encode(*seq);
    lo.offer(value, index, enc);
    hi.offer(value, index, enc);
    if (lo.index == index) lo_seq = *seq;
    if (hi.index == index) hi_seq = *seq;
    ++index;
  }
  const bool several = index > 1;
  return ExtremalTrees{canonicalize(RootedTree::from_level_sequence(lo_seq)), lo.best,
                       several ? lo.gap() : kInf,
                       canonicalize(RootedTree::from_level_sequence(hi_seq)), hi.best,
                       several ? hi.gap() : kInf};
}

}  // namespace

ExtremalTrees verify_extremal_rho(std::size_t n, std::size_t cap) { return sweep(n, cap, false); }
ExtremalTrees verify_extremal_energy(std::size_t n, std::size_t cap) { return sweep(n, cap, true); }

}  // namespace level_spectra
