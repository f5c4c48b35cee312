#include <cmath>

#include "doctest.h"
#include "level_spectra/bounds.hpp"
#include "level_spectra/error.hpp"

using namespace level_spectra;
using doctest::Approx;

namespace {

const std::vector<std::int64_t> kNineVertex{0, 1, 2, 7, 6, 1, 6, 3, 3};

TreeAnalysis nine_vertex() { return analyze_tree(RootedTree::from_parent_list(kNineVertex)); }

}  // namespace

TEST_CASE("make_report semantics") {
  auto r = make_report("x", 1.0, Relation::LessEqual, 2.0);
  CHECK(r.satisfied);
  CHECK(r.slack == 1.0);
  r = make_report("x", 2.0, Relation::LessEqual, 1.0);
  CHECK_FALSE(r.satisfied);
  CHECK(r.slack == -1.0);
  r = make_report("x", 2.0, Relation::GreaterEqual, 1.0);
  CHECK(r.satisfied);
  // equality within tolerance
  r = make_report("x", 1.0, Relation::Equal, 1.0 + 1e-12);
  CHECK(r.satisfied);
  r = make_report("x", 1.0, Relation::Equal, 1.001);
  CHECK_FALSE(r.satisfied);
  // strict demanded
  r = make_report("x", 1.0, Relation::LessEqual, 1.0, false);
  CHECK_FALSE(r.satisfied);
  // equality demanded on an inequality
  r = make_report("x", 1.0, Relation::LessEqual, 1.5, true);
  CHECK_FALSE(r.satisfied);
  r = make_report("x", 1.0, Relation::LessEqual, 1.0, true);
  CHECK(r.satisfied);
  // interval
  r = make_report("x", 0.5, Relation::InInterval, 1.0, std::nullopt, kDefaultBoundTol, -1.0);
  CHECK(r.satisfied);
  CHECK(r.slack == 0.5);
  r = make_report("x", 1.5, Relation::InInterval, 1.0, std::nullopt, kDefaultBoundTol, -1.0);
  CHECK_FALSE(r.satisfied);
  // non-finite never satisfies
  r = make_report("x", NAN, Relation::LessEqual, 1.0);
  CHECK_FALSE(r.satisfied);
}

TEST_CASE("nine-vertex bound values") {
  const auto a = nine_vertex();
  CHECK(check_rho_upper_lmax(a).rhs == 24.0);
  const auto fb = check_rho_row_bounds(a);
  CHECK(fb[0].lhs == Approx(88.0 / 9.0));
  CHECK(fb[0].satisfied);
  CHECK(fb[1].rhs == 17.0);
  CHECK(check_rho_lower_rowsq(a).rhs == Approx(std::sqrt(104.0)));
  CHECK(check_rho_lower_q(a).rhs == Approx(10.3935384266).epsilon(1e-10));
  CHECK(check_quotient_bound(a).rhs == Approx(10.2681578395).epsilon(1e-10));
  CHECK(check_rho_lower_meansq(a).rhs == Approx(160.0 / 9.0));
  CHECK(check_lambda_sq_bound(a).rhs == Approx(8.0 * 160.0 / 9.0));
  CHECK(check_q_sum_identity(a).satisfied);
  CHECK(check_trace_identity(a).satisfied);
  CHECK(check_energy_identity(a).satisfied);
  const auto e = check_energy_bounds(a);
  REQUIRE(e.size() == 3);
  CHECK(e[0].rhs == Approx(std::sqrt(9.0 * 160.0)));
  CHECK(e[1].rhs == Approx(std::sqrt(8.0 * 160.0)));
  const auto intervals = check_eigenvalue_intervals(a);
  REQUIRE(intervals.size() == 9);
  CHECK(intervals[0].index == 1u);
  CHECK(*intervals[0].lower == Approx(std::sqrt(160.0 / 72.0)));
  for (const auto& r : intervals) CHECK(r.satisfied);
}

TEST_CASE("small orders: equalities and preconditions") {
  const auto a2 = analyze_tree(rooted_path(2));
  CHECK(check_rho_upper_lmax(a2).satisfied);
  CHECK(*check_rho_upper_lmax(a2).equality_expected);
  CHECK(check_rho_row_bounds(a2)[0].satisfied);
  CHECK(check_rho_lower_meansq(a2).satisfied);
  CHECK_THROWS_AS(check_eigenvalue_intervals(a2), Error);
  const auto a1 = analyze_tree(rooted_path(1));
  CHECK_THROWS_AS(check_quotient_bound(a1), Error);
  CHECK_THROWS_AS(check_rho_lower_q(a1), Error);
  // paths only get the original energy bound
  CHECK(check_energy_bounds(analyze_tree(rooted_path(5))).size() == 1);
}

TEST_CASE("level-index lower bound is strict above order 2") {
  for (std::size_t n = 3; n <= 9; ++n) {
    for (const auto& t : enumerate_rooted_trees(n)) {
      const auto r = check_rho_row_bounds(analyze_tree(t))[0];
      CHECK(r.satisfied);
      CHECK(r.slack > 1e-6);
    }
  }
}

TEST_CASE("evaluate_bounds selection") {
  const auto a = nine_vertex();
  const auto all = evaluate_bounds(a);
  CHECK(all.skipped.empty());
  CHECK(all.reports.size() == 1 + 1 + 1 + 2 + 1 + 1 + 1 + 2 + 1 + 1 + 9 + 1 + 3 + 1);
  const std::vector<std::string> sel{"rho-upper-lmax", "energy-identity"};
  const auto some = evaluate_bounds(a, sel);
  REQUIRE(some.reports.size() == 2);
  CHECK(some.reports[0].name == "rho-upper-lmax");
  const std::vector<std::string> bad{"nope"};
  try {
    evaluate_bounds(a, bad);
    FAIL("expected UnknownCheck");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownCheck);
  }
  const auto small = evaluate_bounds(analyze_tree(rooted_path(2)));
  CHECK(small.skipped.size() == 1);  // eigenvalue-intervals
  const auto one = evaluate_bounds(analyze_tree(rooted_path(1)));
  CHECK(one.skipped.size() == 4);
}

TEST_CASE("tolerance plumbing") {
  const auto loose = analyze_tree(rooted_star(4), {}, 0.5, 0.5);
  CHECK(check_rho_upper_lmax(loose).tolerance == Approx(0.5 * 3.0));
  CHECK(check_trace_identity(loose).tolerance == Approx(0.5 * 6.0));
}

TEST_CASE("path closed form") {
  CHECK(path_rho_closed_form(3) == Approx(1.0 + std::sqrt(3.0)).epsilon(1e-12));
  CHECK(path_rho_closed_form(10) == Approx(34.3429).epsilon(1e-5));
  CHECK(path_rho_closed_form(50) == Approx(868.122).epsilon(1e-6));
  CHECK(path_rho_closed_form(2) == Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(path_rho_closed_form(1), Error);
}

TEST_CASE("leaf-rooted star cubic") {
  // n = 3: x^3 - 6x - 4
  auto r = leafstar_cubic_roots(3);
  CHECK(r[0] == Approx(1.0 + std::sqrt(3.0)).epsilon(1e-13));
  CHECK(r[1] == Approx(1.0 - std::sqrt(3.0)).epsilon(1e-13));
  CHECK(r[2] == Approx(-2.0).epsilon(1e-13));
  // n = 6: x^3 - 21x - 16
  r = leafstar_cubic_roots(6);
  for (double x : r) CHECK(std::abs(x * x * x - 21 * x - 16) < 1e-9);
  CHECK(r[0] > r[1]);
  CHECK(r[1] > r[2]);
  CHECK_THROWS_AS(leafstar_cubic_roots(2), Error);
}
