#pragma once

// Learnability measures of a treebank: dependency distance, POS
// predictability, derivation perplexity and derivation complexity.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "udscheme/treebank.hpp"

namespace udscheme {

/// Mean |head - dependent| over arcs not from the artificial root; empty when
/// the corpus has no such arc.
std::optional<double> avg_dependency_distance(const std::vector<Sentence>& corpus);

inline constexpr std::string_view kRootTag = "ROOT";

/// H(dependent POS | head POS) in bits; root arcs use the ROOT head tag.
double pos_predictability(const std::vector<Sentence>& corpus);

/// Static-oracle action kinds as letters S, R, L, A.
std::string derivation_string(const Sentence& s);

enum class OrderUnit { kForm, kPos };

/// Words in the order the static oracle attaches them to their heads.
std::vector<std::string> derivation_order(const Sentence& s, OrderUnit unit = OrderUnit::kForm);

/// Self-perplexity of an interpolated Witten-Bell trigram model trained on the
/// attachment-ordered corpus.
double derivation_perplexity(const std::vector<Sentence>& corpus, OrderUnit unit = OrderUnit::kForm);

enum class ComplexityMode {
  kGlobal,         // distinct substrings across all derivations
  kPerSentenceSum  // sum of per-derivation distinct-substring counts
};

std::string_view to_string(ComplexityMode mode);

std::uint64_t derivation_complexity(const std::vector<Sentence>& corpus, ComplexityMode mode = ComplexityMode::kGlobal);

struct MetricOptions {
  OrderUnit perplexity_unit = OrderUnit::kForm;
  ComplexityMode complexity_mode = ComplexityMode::kGlobal;
};

struct MetricReport {
  std::string corpus_id;
  std::optional<double> distance;
  double predictability_bits = 0.0;
  double derivation_perplexity = 1.0;
  std::uint64_t derivation_complexity = 0;
  MetricOptions options;
};

MetricReport compute_metrics(const std::vector<Sentence>& corpus, std::string corpus_id, const MetricOptions& options = {});

/// Metric values in the fixed order distance, predictability, derivation
/// complexity, derivation perplexity; every one reads lower as easier.
inline constexpr std::array<std::string_view, 4> kMetricNames = {"distance", "predictability", "derivation complexity",
                                                                 "derivation perplexity"};
std::array<std::optional<double>, 4> metric_values(const MetricReport& r);

}  // namespace udscheme
