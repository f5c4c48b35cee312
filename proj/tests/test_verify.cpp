#include <algorithm>

#include "doctest.h"
#include "level_spectra/error.hpp"
#include "level_spectra/verify.hpp"

using namespace level_spectra;

TEST_CASE("verify small orders end to end") {
  for (std::size_t n = 1; n <= 7; ++n) {
    CAPTURE(n);
    const auto ledger = verify_order(n);
    CHECK(ledger.tree_count == ledger.expected_count);
    for (const auto& v : ledger.violations) MESSAGE(v.check << " [" << v.tree << "] " << v.detail);
    CHECK(ledger.ok());
  }
}

TEST_CASE("ledger is independent of the worker count") {
  VerifyOptions one;
  one.jobs = 1;
  VerifyOptions four;
  four.jobs = 4;
  const auto a = verify_order(8, one);
  const auto b = verify_order(8, four);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].name == b.checks[i].name);
    CHECK(a.checks[i].evaluations == b.checks[i].evaluations);
    CHECK(a.checks[i].worst_slack == b.checks[i].worst_slack);
    CHECK(a.checks[i].worst_tree == b.checks[i].worst_tree);
  }
  REQUIRE(a.extremal.size() == 2);
  CHECK(a.extremal[1].min_tree == b.extremal[1].min_tree);
  CHECK(a.extremal[1].max_gap == b.extremal[1].max_gap);
  CHECK(std::is_sorted(a.checks.begin(), a.checks.end(),
                       [](const auto& x, const auto& y) { return x.name < y.name; }));
}

TEST_CASE("selection") {
  VerifyOptions o;
  o.selection = {"energy-identity"};
  const auto ledger = verify_order(6, o);
  REQUIRE(ledger.checks.size() == 1);
  CHECK(ledger.checks[0].name == "energy-identity");
  CHECK(ledger.checks[0].evaluations == 20);
  o.selection = {"no-such-check"};
  CHECK_THROWS_AS(verify_order(6, o), Error);
}

TEST_CASE("cap and order errors") {
  try {
    verify_order(30);
    FAIL("expected ResourceLimit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ResourceLimit);
  }
  CHECK_THROWS_AS(verify_order(0), Error);
}

TEST_CASE("a too-tight tolerance surfaces as violations") {
  VerifyOptions o;
  o.selection = {"energy-identity"};
  o.identity_tol = 1e-30;
  o.bound_tol = 1e-30;
  // E = 2 rho is computed in floating point; at this tolerance some tree
  // must disagree in the last bits.
  bool any = false;
  for (std::size_t n = 5; n <= 9 && !any; ++n) any = !verify_order(n, o).violations.empty();
  CHECK(any);
}

TEST_CASE("extremal sweeps") {
  for (std::size_t n = 3; n <= 8; ++n) {
    const auto rho = verify_extremal_rho(n);
    CHECK(is_rooted_star(rho.min_tree));
    CHECK(is_rooted_path(rho.max_tree));
    CHECK(rho.min_value == doctest::Approx(std::sqrt(static_cast<double>(n - 1))));
    CHECK(rho.min_gap > 1e-9);
    const auto e = verify_extremal_energy(n);
    CHECK(is_rooted_path(e.max_tree));
    CHECK(e.max_gap > 1e-9);
  }
  CHECK_THROWS_AS(verify_extremal_rho(1), Error);
}

TEST_CASE("single-tree theorem helpers") {
  const auto a = analyze_tree(RootedTree::from_parent_list(std::vector<std::int64_t>{0, 1, 2, 7, 6, 1, 6, 3, 3}));
  std::vector<Violation> v;
  verify_multiplicity_theorems(a, v);
  CHECK(v.empty());
  const double slack = verify_interlacing(a, v);
  CHECK(v.empty());
  CHECK(slack > -1e-8);
}

TEST_CASE("check names") {
  const auto names = all_check_names();
  CHECK(std::find(names.begin(), names.end(), "interlacing") != names.end());
  CHECK(std::find(names.begin(), names.end(), "rho-upper-lmax") != names.end());
}
