#include "udscheme/eval.hpp"

#include <numeric>

namespace udscheme {

AttachmentCount uas(const Sentence& gold, const Sentence& predicted) {
  if (gold.size() != predicted.size()) {
    throw EvaluationError("token count mismatch: gold " + std::to_string(gold.size()) + ", predicted " +
                          std::to_string(predicted.size()));
  }
  AttachmentCount count;
  for (std::size_t i = 0; i < gold.tokens.size(); ++i) {
    const Token& g = gold.tokens[i];
    const Token& p = predicted.tokens[i];
    if (g.form != p.form) throw EvaluationError("form mismatch at token " + std::to_string(g.id));
    if (g.upos == kPunctuationTag) continue;
    ++count.total;
    if (g.head == p.head) ++count.correct;
  }
  return count;
}

AttachmentCount corpus_uas(const std::vector<Sentence>& gold, const std::vector<Sentence>& predicted) {
  if (gold.size() != predicted.size()) throw EvaluationError("sentence count mismatch");
  AttachmentCount total;
  for (std::size_t i = 0; i < gold.size(); ++i) total += uas(gold[i], predicted[i]);
  return total;
}

ComparisonRow compare_schemes(std::string language, TransformationId t, std::span<const double> ud_seeds,
                              std::span<const double> transformed_seeds) {
  if (ud_seeds.empty() || transformed_seeds.empty()) throw EvaluationError("empty seed list");
  if (ud_seeds.size() != transformed_seeds.size()) throw EvaluationError("unequal seed counts");
  auto mean = [](std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); };
  ComparisonRow row;
  row.language = std::move(language);
  row.transformation = t;
  row.uas_ud = mean(ud_seeds);
  row.uas_transformed = mean(transformed_seeds);
  row.diff = *row.uas_ud - *row.uas_transformed;
  return row;
}

ComparisonRow excluded_row(std::string language, TransformationId t) {
  ComparisonRow row;
  row.language = std::move(language);
  row.transformation = t;
  row.excluded = true;
  return row;
}

Coherence metric_coherence(double metric_ud, double metric_transformed, double uas_ud, double uas_transformed) {
  if (uas_ud == uas_transformed || metric_ud == metric_transformed) return Coherence::kTied;
  const bool metric_prefers_ud = metric_ud < metric_transformed;
  const bool parser_prefers_ud = uas_ud > uas_transformed;
  return metric_prefers_ud == parser_prefers_ud ? Coherence::kCoherent : Coherence::kIncoherent;
}

}  // namespace udscheme
