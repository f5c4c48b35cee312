#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "level_spectra/report.hpp"

using namespace level_spectra;
using nlohmann::json;

namespace {

const std::vector<std::int64_t> kNineVertex{0, 1, 2, 7, 6, 1, 6, 3, 3};

}  // namespace

TEST_CASE("format_real uses 12 significant digits") {
  CHECK(format_real(10.415812724041192) == "10.415812724");
  CHECK(format_real(-0.0) == "0");
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(format_real(INFINITY) == "inf");
}

TEST_CASE("analysis json") {
  AnalysisOptions o;
  o.charpoly = true;
  const auto report = analyze(RootedTree::from_parent_list(kNineVertex), o);
  std::ostringstream os;
  write_analysis_json(os, report);
  const auto j = json::parse(os.str());
  CHECK(j["n"] == 9);
  CHECK(j["LI"] == 44);
  CHECK(j["H"] == 160);
  CHECK(j["l_max"] == 3);
  CHECK(j["mul_zero_exact"] == 5);
  CHECK(j["rho"].get<double>() == doctest::Approx(10.415812724));
  CHECK(j["charpoly"] == json({"1", "0", "-80", "-276", "-216", "0", "0", "0", "0", "0"}));
  CHECK(j["bounds"].size() == 26);
  for (const auto& b : j["bounds"]) CHECK(b["satisfied"] == true);
  CHECK(j["spectrum"]["clusters"][1]["multiplicity"] == 5);
}

TEST_CASE("bounds csv") {
  AnalysisOptions o;
  o.bounds = {"rho-upper-lmax"};
  const auto report = analyze(rooted_star(4), o);
  std::ostringstream os;
  write_bounds_csv(os, report.bounds.reports);
  CHECK(os.str() ==
        "name,index,lhs,relation,lower,rhs,slack,satisfied,equality_expected\n"
        "rho-upper-lmax,,1.73205080757,<=,,3,1.26794919243,true,\n");
}

TEST_CASE("text report mentions every section") {
  AnalysisOptions o;
  o.charpoly = true;
  const auto report = analyze(rooted_path(3), o);
  std::ostringstream os;
  write_analysis_text(os, report);
  const auto s = os.str();
  CHECK(s.find("charpoly       x^3 - 6x - 4") != std::string::npos);
  CHECK(s.find("rho            2.73205080757") != std::string::npos);
  CHECK(s.find("bounds") != std::string::npos);
}

TEST_CASE("ledger json") {
  VerifyOptions vo;
  vo.selection = {"energy-identity", "tree-count"};
  const auto ledger = verify_order(5, vo);
  std::ostringstream os;
  write_ledger_json(os, ledger);
  const auto j = json::parse(os.str());
  CHECK(j["order"] == 5);
  CHECK(j["tree_count"] == 9);
  CHECK(j["ok"] == true);
  CHECK(j["checks"].size() == 2);
  std::ostringstream text;
  write_ledger_text(text, ledger);
  CHECK(text.str().rfind("order 5: 9 trees (recurrence 9), 0 violations", 0) == 0);
}
