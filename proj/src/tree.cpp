#include "level_spectra/tree.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "level_spectra/error.hpp"

namespace level_spectra {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::MultipleRoots: return "MultipleRoots";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::NotALeaf: return "NotALeaf";
    case ErrorCode::CannotDeleteRoot: return "CannotDeleteRoot";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::AmbiguousCluster: return "AmbiguousCluster";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IndexError: return "IndexError";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::UnknownCheck: return "UnknownCheck";
  }
  return "Unknown";
}

RootedTree::RootedTree(std::vector<Vertex> parent) : parent_(std::move(parent)) {
  const std::size_t n = parent_.size();
  if (n == 0) throw Error(ErrorCode::NoRoot, "empty parent array");

  std::size_t roots = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (parent_[v] == kNoParent) {
      root_ = v;
      ++roots;
    }
  }
  if (roots == 0) throw Error(ErrorCode::NoRoot, "no vertex is marked as root");
  if (roots > 1) throw Error(ErrorCode::MultipleRoots, std::to_string(roots) + " vertices are marked as root");

  children_.assign(n, {});
  for (Vertex v = 0; v < n; ++v) {
    if (v == root_) continue;
    if (parent_[v] >= n) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "vertex " + std::to_string(v) + " has parent " + std::to_string(parent_[v]));
    }
    children_[parent_[v]].push_back(v);
  }

  // Acyclic iff every vertex is reachable from the root along child links.
  std::size_t reached = 0;
  std::vector<Vertex> stack{root_};
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    ++reached;
    for (Vertex c : children_[v]) stack.push_back(c);
  }
  if (reached != n) {
    throw Error(ErrorCode::CycleDetected,
                std::to_string(n - reached) + " vertices do not reach the root");
  }
}

RootedTree RootedTree::from_parent_list(std::span<const std::int64_t> parents, bool one_based) {
  const auto n = static_cast<std::int64_t>(parents.size());
  std::vector<Vertex> parent(parents.size());
  const std::int64_t sentinel = one_based ? 0 : -1;
  const std::int64_t offset = one_based ? 1 : 0;
  for (std::size_t i = 0; i < parents.size(); ++i) {
    const std::int64_t p = parents[i];
    if (p == sentinel) {
      parent[i] = kNoParent;
    } else if (p - offset < 0 || p - offset >= n) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "entry " + std::to_string(i + offset) + " references vertex " + std::to_string(p));
    } else {
      parent[i] = static_cast<Vertex>(p - offset);
    }
  }
  return RootedTree(std::move(parent));
}

RootedTree RootedTree::from_level_sequence(std::span<const int> sequence) {
  if (sequence.empty() || sequence.front() != 0) {
    throw Error(ErrorCode::NoRoot, "level sequence must start with 0");
  }
  std::vector<Vertex> parent(sequence.size(), kNoParent);
  // last[k] = most recent vertex seen at level k
  std::vector<Vertex> last{0};
  for (std::size_t i = 1; i < sequence.size(); ++i) {
    const int level = sequence[i];
    if (level == 0) throw Error(ErrorCode::MultipleRoots, "level 0 repeated in level sequence");
    if (level < 0 || static_cast<std::size_t>(level) > last.size()) {
      throw Error(ErrorCode::IndexOutOfRange, "level sequence jumps to level " + std::to_string(level));
    }
    parent[i] = last[level - 1];
    last.resize(level);
    last.push_back(i);
  }
  return RootedTree(std::move(parent));
}

std::vector<Vertex> RootedTree::leaves() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < size(); ++v) {
    if (children_[v].empty() && v != root_) out.push_back(v);
  }
  return out;
}

std::vector<std::int64_t> RootedTree::one_based_parents() const {
  std::vector<std::int64_t> out(size());
  for (Vertex v = 0; v < size(); ++v) {
    out[v] = parent_[v] == kNoParent ? 0 : static_cast<std::int64_t>(parent_[v]) + 1;
  }
  return out;
}

namespace {

// Parent-before-child order.
std::vector<Vertex> topological_order(const RootedTree& tree) {
  std::vector<Vertex> order;
  order.reserve(tree.size());
  order.push_back(tree.root());
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (Vertex c : tree.children(order[head])) order.push_back(c);
  }
  return order;
}

}  // namespace

LevelVector levels(const RootedTree& tree) {
  LevelVector out(tree.size(), 0);
  for (Vertex v : topological_order(tree)) {
    if (v != tree.root()) out[v] = out[tree.parent(v)] + 1;
  }
  return out;
}

int max_level(const LevelVector& levels) {
  return levels.empty() ? 0 : *std::max_element(levels.begin(), levels.end());
}

RootedTree rooted_path(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidOrder, "rooted path needs n >= 1");
  std::vector<Vertex> parent(n);
  parent[0] = kNoParent;
  for (Vertex v = 1; v < n; ++v) parent[v] = v - 1;
  return RootedTree(std::move(parent));
}

RootedTree rooted_star(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidOrder, "rooted star needs n >= 1");
  std::vector<Vertex> parent(n, 0);
  parent[0] = kNoParent;
  return RootedTree(std::move(parent));
}

RootedTree star_rooted_at_leaf(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::InvalidOrder, "star rooted at a leaf needs n >= 3");
  std::vector<Vertex> parent(n, 1);
  parent[0] = kNoParent;
  parent[1] = 0;
  return RootedTree(std::move(parent));
}

RootedTree complete_dary(std::size_t arity, std::size_t height) {
  if (arity < 1) throw Error(ErrorCode::InvalidOrder, "arity must be >= 1");
  std::size_t n = 1;
  std::size_t width = 1;
  for (std::size_t h = 0; h < height; ++h) {
    width *= arity;
    n += width;
    if (n > (1u << 20)) throw Error(ErrorCode::ResourceLimit, "complete d-ary tree too large");
  }
  // Breadth-first numbering: vertex v > 0 has parent (v - 1) / arity.
  std::vector<Vertex> parent(n);
  parent[0] = kNoParent;
  for (Vertex v = 1; v < n; ++v) parent[v] = (v - 1) / arity;
  return RootedTree(std::move(parent));
}

LevelSequence canonical_sequence(const RootedTree& tree) {
  const auto order = topological_order(tree);
  // Subtree sequences relative to the subtree root, built children-first.
  std::vector<LevelSequence> sub(tree.size());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    std::vector<LevelSequence*> kids;
    for (Vertex c : tree.children(v)) kids.push_back(&sub[c]);
    std::sort(kids.begin(), kids.end(), [](const LevelSequence* a, const LevelSequence* b) { return *a > *b; });
    LevelSequence seq{0};
    for (const LevelSequence* k : kids) {
      for (int level : *k) seq.push_back(level + 1);
    }
    for (Vertex c : tree.children(v)) LevelSequence().swap(sub[c]);
    sub[v] = std::move(seq);
  }
  return std::move(sub[tree.root()]);
}

std::string encode(const LevelSequence& sequence) {
  std::string out;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    if (i) out.push_back(' ');
    out += std::to_string(sequence[i]);
  }
  return out;
}

RootedTree canonicalize(const RootedTree& tree) {
  const auto seq = canonical_sequence(tree);
  return RootedTree::from_level_sequence(seq);
}

bool is_rooted_path(const RootedTree& tree) {
  return static_cast<std::size_t>(max_level(levels(tree))) + 1 == tree.size();
}

bool is_rooted_star(const RootedTree& tree) {
  return tree.size() >= 2 && tree.children(tree.root()).size() + 1 == tree.size();
}

RootedTree delete_leaf(const RootedTree& tree, Vertex v) {
  if (v >= tree.size()) throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(v));
  if (v == tree.root()) throw Error(ErrorCode::CannotDeleteRoot, "the root cannot be deleted");
  if (!tree.is_leaf(v)) throw Error(ErrorCode::NotALeaf, "vertex " + std::to_string(v) + " has children");
  std::vector<Vertex> parent;
  parent.reserve(tree.size() - 1);
  for (Vertex u = 0; u < tree.size(); ++u) {
    if (u == v) continue;
    const Vertex p = tree.parent(u);
    parent.push_back(p == kNoParent ? kNoParent : (p > v ? p - 1 : p));
  }
  return RootedTree(std::move(parent));
}

RootedTreeEnumerator::RootedTreeEnumerator(std::size_t n, std::size_t cap) {
  if (n < 1) throw Error(ErrorCode::InvalidOrder, "enumeration needs n >= 1");
  if (n > cap) {
    throw Error(ErrorCode::ResourceLimit,
                "order " + std::to_string(n) + " exceeds enumeration cap " + std::to_string(cap));
  }
  current_.resize(n);
  for (std::size_t i = 0; i < n; ++i) current_[i] = static_cast<int>(i);
}

std::optional<LevelSequence> RootedTreeEnumerator::next_sequence() {
  if (done_) return std::nullopt;
  LevelSequence out = current_;

  // Successor in decreasing lexicographic order: find the last vertex below
  // level 1, then repeat the block that starts at its nearest ancestor-level
  // predecessor until the sequence is full.
  std::size_t p = current_.size();
  while (p > 0 && current_[p - 1] <= 1) --p;
  if (p == 0) {
    done_ = true;
  } else {
    --p;
    std::size_t q = p;
    while (current_[q - 1] != current_[p] - 1) --q;
    --q;
    const std::size_t shift = p - q;
    for (std::size_t i = p; i < current_.size(); ++i) current_[i] = current_[i - shift];
  }
  return out;
}

std::optional<RootedTree> RootedTreeEnumerator::next() {
  auto seq = next_sequence();
  if (!seq) return std::nullopt;
  return RootedTree::from_level_sequence(*seq);
}

std::vector<RootedTree> enumerate_rooted_trees(std::size_t n, std::size_t cap) {
  RootedTreeEnumerator e(n, cap);
  std::vector<RootedTree> out;
  while (auto t = e.next()) out.push_back(std::move(*t));
  return out;
}

std::uint64_t rooted_tree_count(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidOrder, "count needs n >= 1");
  if (n > 40) throw Error(ErrorCode::ResourceLimit, "count overflows 64 bits beyond n = 40");
  // a(m+1) = (1/m) * sum_{k=1..m} s(k) a(m-k+1),  s(k) = sum_{d | k} d a(d)
  using Wide = boost::multiprecision::uint256_t;
  std::vector<Wide> a(n + 1, 0), s(n + 1, 0);
  a[1] = 1;
  for (std::size_t m = 1; m < n; ++m) {
    s[m] = 0;
    for (std::size_t d = 1; d <= m; ++d) {
      if (m % d == 0) s[m] += Wide(d) * a[d];
    }
    Wide acc = 0;
    for (std::size_t k = 1; k <= m; ++k) acc += s[k] * a[m - k + 1];
    a[m + 1] = acc / m;
  }
  return a[n].convert_to<std::uint64_t>();
}

std::size_t enumeration_cap_from_env() {
  if (const char* env = std::getenv("LEVEL_SPECTRA_CAP")) {
    std::size_t value = 0;
    const std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec == std::errc() && ptr == s.data() + s.size() && value > 0) return value;
  }
  return kDefaultEnumerationCap;
}

namespace {

struct Token {
  std::int64_t value;
  std::size_t line;
  std::size_t column;
};

[[noreturn]] void parse_fail(std::size_t line, std::size_t column, const std::string& msg) {
  throw Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg);
}

std::vector<Token> tokenize_line(const std::string& text, std::size_t line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + j, value);
    if (ec != std::errc() || ptr != text.data() + j) {
      parse_fail(line, i + 1, "expected an integer, got '" + text.substr(i, j - i) + "'");
    }
    out.push_back({value, line, i + 1});
    i = j;
  }
  return out;
}

}  // namespace

RootedTree read_tree_file(std::istream& in) {
  std::string text;
  std::size_t line = 0;
  std::optional<Token> count;
  std::vector<Token> parents;
  while (std::getline(in, text)) {
    ++line;
    auto tokens = tokenize_line(text, line);
    if (tokens.empty()) continue;
    if (!count) {
      if (tokens.size() != 1) parse_fail(line, tokens[1].column, "first line must hold only the vertex count");
      count = tokens[0];
      if (count->value < 1) parse_fail(line, count->column, "vertex count must be positive");
      continue;
    }
    for (const auto& t : tokens) {
      if (parents.size() == static_cast<std::size_t>(count->value)) {
        parse_fail(t.line, t.column, "more parent entries than the declared vertex count");
      }
      parents.push_back(t);
    }
  }
  if (!count) parse_fail(line + 1, 1, "missing vertex count");
  if (parents.size() != static_cast<std::size_t>(count->value)) {
    parse_fail(line + 1, 1,
               "expected " + std::to_string(count->value) + " parent entries, found " + std::to_string(parents.size()));
  }
  for (const auto& t : parents) {
    if (t.value < 0 || t.value > count->value) {
      parse_fail(t.line, t.column, "parent index " + std::to_string(t.value) + " out of range");
    }
  }
  std::vector<std::int64_t> raw;
  raw.reserve(parents.size());
  for (const auto& t : parents) raw.push_back(t.value);
  return RootedTree::from_parent_list(raw, true);
}

void write_tree_file(std::ostream& out, const RootedTree& tree) {
  out << tree.size() << '\n';
  const auto p = tree.one_based_parents();
  for (std::size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << p[i];
  out << '\n';
}

void write_dot(std::ostream& out, const RootedTree& tree) {
  out << "digraph rooted_tree {\n";
  out << "  v" << tree.root() + 1 << " [label=\"v" << tree.root() + 1 << " (root)\", shape=doublecircle];\n";
  for (Vertex v = 0; v < tree.size(); ++v) {
    if (v != tree.root()) out << "  v" << tree.parent(v) + 1 << " -> v" << v + 1 << ";\n";
  }
  out << "}\n";
}

}  // namespace level_spectra
