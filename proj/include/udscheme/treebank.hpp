#pragma once

// In-memory dependency trees and CoNLL-U (UD v1) reading/writing.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace udscheme {

/// One word line of a CoNLL-U block. Empty columns (`_`) are stored as "".
struct Token {
  int id = 0;
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos;
  std::string feats;
  int head = -1;  // 0 = artificial root, -1 = unset
  std::string deprel;
  std::string deps;
  std::string misc;

  bool operator==(const Token&) const = default;
};

/// A multiword-token line (`a-b`), kept verbatim so it can be re-emitted.
struct MultiwordRange {
  int first = 0;
  int last = 0;
  std::string form;
  // Columns LEMMA..DEPS as read (usually all "_").
  std::vector<std::string> middle;
  std::string misc;

  bool operator==(const MultiwordRange&) const = default;
};

/// A `#` comment line and the number of word/multiword lines preceding it.
struct Comment {
  std::size_t position = 0;
  std::string text;  // without the leading '#'

  bool operator==(const Comment&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::vector<MultiwordRange> mwt_ranges;
  std::vector<Comment> comments;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }

  // 1-based access, matching CoNLL-U ids.
  Token& at(int id) { return tokens.at(static_cast<std::size_t>(id - 1)); }
  const Token& at(int id) const { return tokens.at(static_cast<std::size_t>(id - 1)); }

  bool operator==(const Sentence&) const = default;
};

/// True when both sentences carry the same head/deprel assignment.
bool same_tree(const Sentence& a, const Sentence& b);

class ConlluError : public std::runtime_error {
 public:
  ConlluError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::vector<Sentence> parse_conllu(std::string_view text);
std::vector<Sentence> read_conllu_file(const std::string& path);

/// Serializes sentences; throws std::invalid_argument if one is not a valid tree.
std::string write_conllu(const std::vector<Sentence>& sentences);
void write_conllu_file(const std::string& path, const std::vector<Sentence>& sentences);

enum class ViolationKind {
  kNoRoot,
  kMultipleRoots,
  kCycle,
  kHeadOutOfRange,
  kSelfLoop,
  kNonContiguousIds,
  kMissingDeprel,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  std::optional<int> token;
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  std::string summary() const;
};

ValidationReport validate_tree(const Sentence& s);

/// Every token strictly inside an arc's span is dominated by the arc's head.
/// Arcs from the artificial root (position 0) are included.
bool is_projective(const Sentence& s);

/// Heads as a plain vector indexed by token id; entry 0 is unused (-1).
std::vector<int> heads_of(const Sentence& s);

/// children[h] lists the dependents of h (0 = root) in increasing order.
std::vector<std::vector<int>> children_of(const Sentence& s);

}  // namespace udscheme
