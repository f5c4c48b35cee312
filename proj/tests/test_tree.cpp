#include <set>
#include <sstream>

#include "doctest.h"
#include "level_spectra/error.hpp"
#include "level_spectra/tree.hpp"
#include "oracles.hpp"

using namespace level_spectra;

namespace {

const std::vector<std::int64_t> kNineVertex{0, 1, 2, 7, 6, 1, 6, 3, 3};

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no exception");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("nine-vertex levels") {
  const auto t = RootedTree::from_parent_list(kNineVertex);
  CHECK(t.size() == 9);
  CHECK(t.root() == 0);
  CHECK(levels(t) == LevelVector{0, 1, 2, 3, 2, 1, 2, 3, 3});
  CHECK(max_level(levels(t)) == 3);
  CHECK(t.one_based_parents() == kNineVertex);
}

TEST_CASE("zero-based input") {
  const std::vector<std::int64_t> p{-1, 0, 0, 1};
  const auto t = RootedTree::from_parent_list(p, false);
  CHECK(levels(t) == LevelVector{0, 1, 1, 2});
}

TEST_CASE("validation errors") {
  CHECK(code_of([] { RootedTree::from_parent_list(std::vector<std::int64_t>{1, 2, 1}); }) == ErrorCode::NoRoot);
  CHECK(code_of([] { RootedTree::from_parent_list(std::vector<std::int64_t>{0, 0}); }) == ErrorCode::MultipleRoots);
  CHECK(code_of([] { RootedTree::from_parent_list(std::vector<std::int64_t>{0, 5}); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([] { RootedTree::from_parent_list(std::vector<std::int64_t>{0, 3, 2}); }) == ErrorCode::CycleDetected);
  CHECK(code_of([] { RootedTree::from_parent_list(std::vector<std::int64_t>{}); }) == ErrorCode::NoRoot);
}

TEST_CASE("families") {
  CHECK(levels(rooted_path(4)) == LevelVector{0, 1, 2, 3});
  CHECK(levels(rooted_star(4)) == LevelVector{0, 1, 1, 1});
  CHECK(levels(star_rooted_at_leaf(5)) == LevelVector{0, 1, 2, 2, 2});
  const auto d = complete_dary(2, 3);
  CHECK(d.size() == 15);
  CHECK(max_level(levels(d)) == 3);
  CHECK(complete_dary(3, 0).size() == 1);
  CHECK(is_rooted_path(rooted_path(6)));
  CHECK_FALSE(is_rooted_path(rooted_star(6)));
  CHECK(is_rooted_star(rooted_star(6)));
  CHECK_FALSE(is_rooted_star(star_rooted_at_leaf(6)));
  // n = 2 is both
  CHECK(is_rooted_star(rooted_path(2)));
  CHECK(is_rooted_path(rooted_star(2)));
}

TEST_CASE("leaves exclude the root") {
  CHECK(rooted_path(1).leaves().empty());
  CHECK(rooted_path(3).leaves() == std::vector<Vertex>{2});
  const auto t = RootedTree::from_parent_list(kNineVertex);
  CHECK(t.leaves() == std::vector<Vertex>{3, 4, 7, 8});
}

TEST_CASE("canonical form") {
  const auto t = RootedTree::from_parent_list(kNineVertex);
  const auto seq = canonical_sequence(t);
  CHECK(oracle::ahu_of_levels(seq) == oracle::ahu_of_parents({-1, 0, 1, 6, 5, 0, 5, 2, 2}));
  // idempotent
  CHECK(canonical_sequence(RootedTree::from_level_sequence(seq)) == seq);
  CHECK(canonicalize(canonicalize(t)) == canonicalize(t));
  // relabelling leaves the encoding alone
  const auto relabelled = RootedTree::from_parent_list(std::vector<std::int64_t>{2, 0, 1, 3, 3});
  const auto other = RootedTree::from_parent_list(std::vector<std::int64_t>{0, 1, 2, 3, 3});
  CHECK(canonical_encoding(relabelled) == canonical_encoding(other));
  CHECK(canonical_encoding(rooted_star(4)) == "0 1 1 1");
  CHECK(canonical_encoding(rooted_path(4)) == "0 1 2 3");
}

TEST_CASE("delete leaf") {
  const auto t = RootedTree::from_parent_list(kNineVertex);
  const auto smaller = delete_leaf(t, 3);  // v4 in 1-based terms
  auto lev = levels(smaller);
  std::sort(lev.begin(), lev.end());
  CHECK(lev == LevelVector{0, 1, 1, 2, 2, 2, 3, 3});
  CHECK(code_of([&] { delete_leaf(t, 0); }) == ErrorCode::CannotDeleteRoot);
  CHECK(code_of([&] { delete_leaf(t, 1); }) == ErrorCode::NotALeaf);
  CHECK(code_of([&] { delete_leaf(t, 99); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("enumeration matches the labelled-tree oracle") {
  for (int n = 1; n <= 7; ++n) {
    CAPTURE(n);
    const auto expected = oracle::labelled_tree_classes(n);
    std::set<std::string> seen;
    std::size_t count = 0;
    std::optional<LevelSequence> prev;
    RootedTreeEnumerator e(n);
    while (auto s = e.next_sequence()) {
      ++count;
      CHECK(canonical_sequence(RootedTree::from_level_sequence(*s)) == *s);
      if (prev) CHECK(*s < *prev);  // strictly decreasing
      prev = *s;
      seen.insert(oracle::ahu_of_levels(*s));
    }
    CHECK(count == expected.size());
    CHECK(seen == expected);
  }
}

TEST_CASE("enumeration order ends") {
  const auto all = enumerate_rooted_trees(6);
  REQUIRE(all.size() == 20);
  CHECK(is_rooted_path(all.front()));
  CHECK(is_rooted_star(all.back()));
}

TEST_CASE("counting recurrence agrees with the series oracle") {
  const auto a = oracle::rooted_counts(14);
  for (int n = 1; n <= 14; ++n) CHECK(rooted_tree_count(n) == a[n]);
  CHECK(rooted_tree_count(10) == 719);
  CHECK(rooted_tree_count(20) == 12826228);
  CHECK_THROWS_AS(rooted_tree_count(0), Error);
  CHECK(code_of([] { rooted_tree_count(41); }) == ErrorCode::ResourceLimit);
}

TEST_CASE("enumeration cap") {
  CHECK(code_of([] { RootedTreeEnumerator e(17); }) == ErrorCode::ResourceLimit);
  CHECK(code_of([] { RootedTreeEnumerator e(0); }) == ErrorCode::InvalidOrder);
  RootedTreeEnumerator e(17, 17);  // allowed with a raised cap
  CHECK(e.next_sequence().has_value());
}

TEST_CASE("tree file round trip") {
  const auto t = RootedTree::from_parent_list(kNineVertex);
  std::stringstream ss;
  write_tree_file(ss, t);
  CHECK(ss.str() == "9\n0 1 2 7 6 1 6 3 3\n");
  CHECK(read_tree_file(ss) == t);
}

TEST_CASE("tree file diagnostics") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_tree_file(in);
  };
  try {
    parse("3\n0 1 x\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 2, column 5") != std::string::npos);
  }
  CHECK(code_of([&] { parse("3\n0 1\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { parse(""); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { parse("2\n0 0\n"); }) == ErrorCode::MultipleRoots);
}

TEST_CASE("dot output") {
  std::ostringstream os;
  write_dot(os, rooted_path(2));
  const auto s = os.str();
  CHECK(s.find("digraph") != std::string::npos);
  CHECK(s.find("->") != std::string::npos);
}
