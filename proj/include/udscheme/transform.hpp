#pragma once

// Rewrites from the UD v1 content-head scheme to function-word-headed
// alternatives. Each rewrite selects arcs by label and re-heads them.

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "udscheme/treebank.hpp"

namespace udscheme {

enum class TransformationId { kCase, kMark, kDet, kMwe, kName, kCopula, kCoordination };

inline constexpr std::array<TransformationId, 7> kAllTransformations = {
    TransformationId::kCase, TransformationId::kMark,   TransformationId::kDet,
    TransformationId::kMwe,  TransformationId::kName,   TransformationId::kCopula,
    TransformationId::kCoordination};

using LabelSet = std::set<std::string, std::less<>>;

std::string_view to_string(TransformationId t);
std::optional<TransformationId> parse_transformation(std::string_view name);

/// Labels whose arcs a transformation rewrites.
const LabelSet& trigger_labels(TransformationId t);

/// Children of a copula predicate that stay on the predicate when the copula
/// is promoted.
const LabelSet& default_copula_noun_labels();

/// Universal part of a relation label: "nmod:poss" -> "nmod".
std::string_view base_relation(std::string_view deprel);

struct TransformOptions {
  LabelSet copula_noun_labels = default_copula_noun_labels();
};

/// Tokens around one head/dependent swap: before the rewrite the tree has
/// grandparent -> old_head -> promoted; afterwards grandparent -> promoted -> old_head.
struct InversionContext {
  int grandparent = 0;
  int old_head = 0;
  int promoted = 0;
  std::vector<int> other_children;  // children of old_head other than promoted
};

struct RewriteStats {
  std::size_t arcs_rewritten = 0;
  std::size_t repairs_applied = 0;
};

// Sentence-level rewrites. Each returns a new sentence; stats are accumulated
// into the optional counter.
Sentence invert_simple(const Sentence& s, const LabelSet& labels, RewriteStats* stats = nullptr);
Sentence repair_projectivity(const Sentence& s, const InversionContext& ctx, std::size_t* repaired = nullptr);
Sentence chain_sequence(const Sentence& s, const LabelSet& labels, RewriteStats* stats = nullptr);
Sentence promote_copula(const Sentence& s, const TransformOptions& options = {}, RewriteStats* stats = nullptr);
Sentence rehead_coordination(const Sentence& s, RewriteStats* stats = nullptr);

Sentence apply_to_sentence(const Sentence& s, TransformationId t, const TransformOptions& options = {},
                           RewriteStats* stats = nullptr);

struct TransformResult {
  std::vector<Sentence> sentences;
  bool changed = false;
  std::size_t arcs_rewritten = 0;
  std::size_t repairs_applied = 0;
  std::size_t sentences_changed = 0;
};

class TransformError : public std::runtime_error {
 public:
  TransformError(std::size_t index, const std::string& what)
      : std::runtime_error("sentence " + std::to_string(index) + ": " + what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

TransformResult apply_transformation(const std::vector<Sentence>& sentences, TransformationId t,
                                     const TransformOptions& options = {});

}  // namespace udscheme
