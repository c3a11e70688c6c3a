#pragma once

// Experiment grid over (treebank x transformation x seed): transform, train on
// both schemes, compare, compute learnability metrics, write reports.
//
// Config file format (line oriented, '#' starts a comment):
//
//   output = results            # relative paths resolve against the config file
//   seeds = 1, 2, 3
//   transformations = case, mark, det, mwe, name, copula, coordination
//   epochs = 10
//   explore_k = 1
//   explore_p = 0.9
//   jobs = 1
//   copula_noun_labels = det, amod, nmod, case, nummod, acl, appos
//   perplexity_unit = form            # form | pos
//   complexity_mode = global          # global | per-sentence-sum
//
//   [treebank en]
//   train = en-ud-train.conllu
//   dev = en-ud-dev.conllu
//   test = en-ud-test.conllu

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "udscheme/eval.hpp"
#include "udscheme/metrics.hpp"
#include "udscheme/parser.hpp"
#include "udscheme/transform.hpp"

namespace udscheme {

struct TreebankSpec {
  std::string language;
  std::filesystem::path train;
  std::filesystem::path dev;
  std::filesystem::path test;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::vector<TreebankSpec> treebanks;
  std::vector<TransformationId> transformations{kAllTransformations.begin(), kAllTransformations.end()};
  std::vector<std::uint64_t> seeds{1, 2, 3};
  Hyperparameters hp;
  TransformOptions transform_options;
  MetricOptions metric_options;
  std::filesystem::path output_dir = "results";
  std::size_t jobs = 1;

  /// Parses the config text; relative paths are resolved against base_dir.
  static ExperimentConfig parse(std::string_view text, const std::filesystem::path& base_dir);
  static ExperimentConfig load(const std::filesystem::path& path);
  /// Throws ConfigError when paths are missing or seeds are empty/duplicated.
  void validate() const;
};

struct CellResult {
  ComparisonRow row;
  std::vector<double> seeds_ud;
  std::vector<double> seeds_transformed;
  std::optional<MetricReport> metrics_ud;
  std::optional<MetricReport> metrics_transformed;
  std::array<std::optional<Coherence>, 4> coherence;  // kMetricNames order
  std::string error;  // non-empty when the cell failed
};

struct CoherenceRow {
  std::string metric;
  std::size_t coherent = 0;
  std::size_t incoherent = 0;
  std::size_t tied = 0;
  double fraction() const {
    auto n = coherent + incoherent;
    return n == 0 ? 0.0 : static_cast<double>(coherent) / static_cast<double>(n);
  }
};

struct Summary {
  std::size_t configurations = 0;  // non-excluded, error-free rows
  std::size_t excluded = 0;
  std::size_t errors = 0;
  std::size_t positive = 0;  // UD better
  std::size_t negative = 0;
  std::size_t ties = 0;
  double fraction_ud_better = 0.0;  // positive / (positive + negative)
  double mean_diff = 0.0;
  double mean_abs_diff = 0.0;
  double max_abs_diff = 0.0;
};

struct ExperimentReport {
  std::vector<CellResult> cells;
  std::vector<CoherenceRow> coherence;
  Summary summary;
  MetricOptions metric_options;
};

struct RunStats {
  std::size_t trainings_executed = 0;
  std::size_t trainings_cached = 0;
};

Summary summarize(const std::vector<CellResult>& cells);
std::vector<CoherenceRow> coherence_table(const std::vector<CellResult>& cells);

ExperimentReport run_experiment(const ExperimentConfig& cfg, RunStats* stats = nullptr);

struct HistogramBin {
  double low = 0.0;
  std::size_t count = 0;
};
inline constexpr double kHistogramBinWidth = 0.5;
std::vector<HistogramBin> diff_histogram(const std::vector<CellResult>& cells);

/// Writes rows.tsv, tables/*.tsv, hist.tsv, hist.svg and summary.json under dir.
void emit_reports(const ExperimentReport& report, const std::filesystem::path& dir);

}  // namespace udscheme
