#pragma once

// Attachment scoring and UD-vs-alternative comparison.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "udscheme/transform.hpp"
#include "udscheme/treebank.hpp"

namespace udscheme {

inline constexpr std::string_view kPunctuationTag = "PUNCT";

struct AttachmentCount {
  long correct = 0;
  long total = 0;

  double percent() const { return total == 0 ? 0.0 : 100.0 * static_cast<double>(correct) / static_cast<double>(total); }
  AttachmentCount& operator+=(const AttachmentCount& o) {
    correct += o.correct;
    total += o.total;
    return *this;
  }
};

class EvaluationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unlabeled attachment over tokens whose gold UPOS is not PUNCT.
AttachmentCount uas(const Sentence& gold, const Sentence& predicted);
AttachmentCount corpus_uas(const std::vector<Sentence>& gold, const std::vector<Sentence>& predicted);

struct ComparisonRow {
  std::string language;
  TransformationId transformation = TransformationId::kCase;
  std::optional<double> uas_ud;
  std::optional<double> uas_transformed;
  std::optional<double> diff;  // uas_ud - uas_transformed; positive favours UD
  bool excluded = false;       // transformation left the corpus unchanged
};

/// Means over seeds on each side; throws EvaluationError on empty or unequal seed lists.
ComparisonRow compare_schemes(std::string language, TransformationId t, std::span<const double> ud_seeds,
                              std::span<const double> transformed_seeds);
ComparisonRow excluded_row(std::string language, TransformationId t);

enum class Coherence { kCoherent, kIncoherent, kTied };

/// Lower metric values are read as "easier to learn". A metric is coherent
/// when the scheme it prefers is the one with the higher UAS.
Coherence metric_coherence(double metric_ud, double metric_transformed, double uas_ud, double uas_transformed);

}  // namespace udscheme
