#pragma once

// Interpolated Witten-Bell trigram language model over string tokens.
//
//   P(w | u v) = l(uv) Pml(w | u v) + (1 - l(uv)) P(w | v)
//   P(w | v)   = l(v)  Pml(w | v)   + (1 - l(v))  P(w)
//   P(w)       = l()   Pml(w)       + (1 - l())   / (|V| + 1)
//
// with l(ctx) = c(ctx) / (c(ctx) + T(ctx)), c the number of tokens observed
// after ctx and T the number of distinct types observed after it (l = 0 for an
// unseen context). V is the set of predicted types (words and the end marker);
// the extra uniform slot is the mass reserved for unseen words.

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace udscheme {

inline constexpr std::string_view kSentenceBegin = "<s>";
inline constexpr std::string_view kSentenceEnd = "</s>";

class WittenBellTrigram {
 public:
  explicit WittenBellTrigram(const std::vector<std::vector<std::string>>& sentences);

  /// Probability of w after the two-token history (u, v). Unknown w gets the
  /// unseen-word share of the uniform floor.
  double probability(std::string_view u, std::string_view v, std::string_view w) const;
  /// Mass left for words outside the vocabulary after (u, v).
  double unseen_mass(std::string_view u, std::string_view v) const;

  /// 2^(-(1/M) sum log2 P) over every word and end marker of the sentences.
  double perplexity(const std::vector<std::vector<std::string>>& sentences) const;

  std::size_t vocabulary_size() const { return vocab_.size() - 1; }  // excludes <s>
  const std::vector<std::string>& vocabulary() const { return words_; }

 private:
  using Id = std::uint32_t;
  static constexpr Id kUnknown = static_cast<Id>(-1);

  struct ContextStats {
    std::uint64_t total = 0;
    std::unordered_map<Id, std::uint64_t> next;
  };

  Id id(std::string_view w) const;
  static std::uint64_t key2(Id a, Id b) { return (static_cast<std::uint64_t>(a) << 32) | b; }
  double unigram(Id w) const;
  double bigram(Id v, Id w) const;
  double trigram(Id u, Id v, Id w) const;
  static double lambda(const ContextStats& ctx);

  std::unordered_map<std::string, Id> vocab_;
  std::vector<std::string> words_;  // predicted types in first-seen order
  ContextStats unigram_;
  std::unordered_map<Id, ContextStats> bigram_;
  std::unordered_map<std::uint64_t, ContextStats> trigram_;
};

}  // namespace udscheme
