#pragma once

// Generalized suffix tree built with Ukkonen's online algorithm.
//
// All input strings are concatenated, each followed by its own terminator
// symbol, and a single tree is built over the result. Terminators are unique,
// so any path label containing one ends at a leaf; counting only the
// terminator-free prefix of every edge therefore counts each distinct
// substring of the inputs exactly once.

#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

namespace udscheme {

class GeneralizedSuffixTree {
 public:
  using Symbol = std::int64_t;

  /// Symbols must be non-negative; negative values are reserved for terminators.
  explicit GeneralizedSuffixTree(const std::vector<std::vector<Symbol>>& strings);

  /// Number of distinct non-empty substrings of the input strings.
  std::uint64_t distinct_substrings() const;
  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    std::size_t start = 0;
    std::size_t end = 0;  // exclusive; kOpen for leaves while building
    int link = 0;
    std::map<Symbol, int> next;
  };

  static constexpr std::size_t kOpen = static_cast<std::size_t>(-1);

  std::size_t edge_end(const Node& n) const { return n.end == kOpen ? text_.size() : n.end; }
  int new_node(std::size_t start, std::size_t end);
  void extend(std::size_t pos);

  std::vector<Symbol> text_;
  std::vector<std::size_t> next_terminator_;
  std::vector<Node> nodes_;
  int active_node_ = 0;
  std::size_t active_edge_ = 0;
  std::size_t active_length_ = 0;
  std::size_t remainder_ = 0;
};

std::uint64_t count_distinct_substrings(const std::vector<std::vector<GeneralizedSuffixTree::Symbol>>& strings);
std::uint64_t count_distinct_substrings(std::span<const std::string_view> strings);

}  // namespace udscheme
