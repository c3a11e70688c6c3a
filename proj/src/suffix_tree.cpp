#include "udscheme/suffix_tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace udscheme {

GeneralizedSuffixTree::GeneralizedSuffixTree(const std::vector<std::vector<Symbol>>& strings) {
  std::size_t total = 0;
  for (const auto& s : strings) total += s.size() + 1;
  text_.reserve(total);
  Symbol terminator = -1;
  for (const auto& s : strings) {
    for (Symbol x : s) {
      if (x < 0) throw std::invalid_argument("suffix tree symbols must be non-negative");
      text_.push_back(x);
    }
    text_.push_back(terminator--);
  }
  next_terminator_.assign(text_.size() + 1, text_.size());
  for (std::size_t i = text_.size(); i-- > 0;) {
    next_terminator_[i] = text_[i] < 0 ? i : next_terminator_[i + 1];
  }
  nodes_.reserve(2 * text_.size() + 1);
  new_node(0, 0);
  for (std::size_t pos = 0; pos < text_.size(); ++pos) extend(pos);
}

int GeneralizedSuffixTree::new_node(std::size_t start, std::size_t end) {
  nodes_.push_back(Node{start, end, 0, {}});
  return static_cast<int>(nodes_.size() - 1);
}

void GeneralizedSuffixTree::extend(std::size_t pos) {
  int pending_link = 0;
  auto link_to = [&](int node) {
    if (pending_link > 0) nodes_[static_cast<std::size_t>(pending_link)].link = node;
    pending_link = node;
  };
  ++remainder_;
  while (remainder_ > 0) {
    if (active_length_ == 0) active_edge_ = pos;
    const Symbol edge_symbol = text_[active_edge_];
    auto& children = nodes_[static_cast<std::size_t>(active_node_)].next;
    auto it = children.find(edge_symbol);
    if (it == children.end()) {
      int leaf = new_node(pos, kOpen);
      nodes_[static_cast<std::size_t>(active_node_)].next.emplace(edge_symbol, leaf);
      link_to(active_node_);
    } else {
      const int child = it->second;
      const Node& c = nodes_[static_cast<std::size_t>(child)];
      const std::size_t edge_length = edge_end(c) - c.start;
      if (active_length_ >= edge_length) {
        active_edge_ += edge_length;
        active_length_ -= edge_length;
        active_node_ = child;
        continue;
      }
      if (text_[c.start + active_length_] == text_[pos]) {
        ++active_length_;
        link_to(active_node_);
        break;
      }
      const std::size_t child_start = c.start;
      int split = new_node(child_start, child_start + active_length_);
      nodes_[static_cast<std::size_t>(active_node_)].next[edge_symbol] = split;
      int leaf = new_node(pos, kOpen);
      nodes_[static_cast<std::size_t>(split)].next.emplace(text_[pos], leaf);
      nodes_[static_cast<std::size_t>(child)].start = child_start + active_length_;
      nodes_[static_cast<std::size_t>(split)].next.emplace(text_[child_start + active_length_], child);
      link_to(split);
    }
    --remainder_;
    if (active_node_ == 0 && active_length_ > 0) {
      --active_length_;
      active_edge_ = pos - remainder_ + 1;
    } else {
      active_node_ = nodes_[static_cast<std::size_t>(active_node_)].link;
    }
  }
}

std::uint64_t GeneralizedSuffixTree::distinct_substrings() const {
  std::uint64_t total = 0;
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    const std::size_t end = std::min(edge_end(n), next_terminator_[n.start]);
    if (end > n.start) total += end - n.start;
  }
  return total;
}

std::uint64_t count_distinct_substrings(const std::vector<std::vector<GeneralizedSuffixTree::Symbol>>& strings) {
  return GeneralizedSuffixTree(strings).distinct_substrings();
}

std::uint64_t count_distinct_substrings(std::span<const std::string_view> strings) {
  std::vector<std::vector<GeneralizedSuffixTree::Symbol>> symbols;
  symbols.reserve(strings.size());
  for (auto s : strings) {
    std::vector<GeneralizedSuffixTree::Symbol> v;
    v.reserve(s.size());
    for (unsigned char ch : s) v.push_back(ch);
    symbols.push_back(std::move(v));
  }
  return count_distinct_substrings(symbols);
}

}  // namespace udscheme
