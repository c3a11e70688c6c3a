// Command-line front end: transform, train, parse, metrics, evaluate, experiment.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "udscheme/eval.hpp"
#include "udscheme/harness.hpp"
#include "udscheme/metrics.hpp"
#include "udscheme/parser.hpp"
#include "udscheme/transform.hpp"
#include "udscheme/treebank.hpp"

using namespace udscheme;
using json = nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

LabelSet parse_label_list(const std::string& csv) {
  LabelSet out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    auto comma = csv.find(',', start);
    std::string item = csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) out.insert(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dependency annotation scheme experiments"};
  app.require_subcommand(1);

  std::string input, output, transformation, copula_labels;
  auto* transform_cmd = app.add_subcommand("transform", "Rewrite a CoNLL-U file with one transformation");
  transform_cmd->add_option("--input", input)->required();
  transform_cmd->add_option("--output", output)->required();
  transform_cmd->add_option("--transformation", transformation, "case|mark|det|mwe|name|copula|coordination")->required();
  transform_cmd->add_option("--copula-noun-labels", copula_labels, "comma-separated labels kept on a copula's noun");

  std::string train_path, dev_path, model_path;
  Hyperparameters hp;
  std::uint64_t seed = 1;
  auto* train_cmd = app.add_subcommand("train", "Train a parser");
  train_cmd->add_option("--train", train_path)->required();
  train_cmd->add_option("--dev", dev_path);
  train_cmd->add_option("--epochs", hp.epochs)->capture_default_str();
  train_cmd->add_option("--seed", seed)->capture_default_str();
  train_cmd->add_option("--explore-k", hp.explore_k)->capture_default_str();
  train_cmd->add_option("--explore-p", hp.explore_p)->capture_default_str();
  train_cmd->add_option("--model", model_path)->required();

  auto* parse_cmd = app.add_subcommand("parse", "Parse a CoNLL-U file with a trained model");
  parse_cmd->add_option("--model", model_path)->required();
  parse_cmd->add_option("--input", input)->required();
  parse_cmd->add_option("--output", output)->required();

  std::string out_format = "json";
  std::string unit = "form", mode = "global";
  auto* metrics_cmd = app.add_subcommand("metrics", "Learnability metrics of a treebank");
  metrics_cmd->add_option("--input", input)->required();
  metrics_cmd->add_option("--out", out_format)->check(CLI::IsMember({"json", "tsv"}))->capture_default_str();
  metrics_cmd->add_option("--perplexity-unit", unit)->check(CLI::IsMember({"form", "pos"}))->capture_default_str();
  metrics_cmd->add_option("--complexity-mode", mode)->check(CLI::IsMember({"global", "per-sentence-sum"}))
      ->capture_default_str();

  std::string gold_path, pred_path;
  auto* eval_cmd = app.add_subcommand("evaluate", "Unlabeled attachment score without punctuation");
  eval_cmd->add_option("--gold", gold_path)->required();
  eval_cmd->add_option("--pred", pred_path)->required();

  std::string config_path;
  auto* exp_cmd = app.add_subcommand("experiment", "Run the full experiment grid");
  exp_cmd->add_option("--config", config_path)->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*transform_cmd) {
      auto t = parse_transformation(transformation);
      if (!t) {
        std::cerr << "unknown transformation: " << transformation << "\n";
        return 2;
      }
      TransformOptions options;
      if (!copula_labels.empty()) options.copula_noun_labels = parse_label_list(copula_labels);
      auto result = apply_transformation(read_conllu_file(input), *t, options);
      write_conllu_file(output, result.sentences);
      std::cout << json{{"changed", result.changed},
                        {"arcs_rewritten", result.arcs_rewritten},
                        {"repairs_applied", result.repairs_applied}}
                       .dump()
                << "\n";
    } else if (*train_cmd) {
      auto train_set = read_conllu_file(train_path);
      std::vector<Sentence> dev_set;
      if (!dev_path.empty()) dev_set = read_conllu_file(dev_path);
      TrainingReport report;
      Model model = train(train_set, dev_set, hp, seed, &report);
      model.save_file(model_path);
      json j{{"best_epoch", report.best_epoch}, {"updates", report.updates}, {"dev_uas", report.dev_uas}};
      std::cout << j.dump() << "\n";
    } else if (*parse_cmd) {
      Model model = Model::load_file(model_path);
      write_conllu_file(output, parse_corpus(model, read_conllu_file(input)));
    } else if (*metrics_cmd) {
      MetricOptions options;
      options.perplexity_unit = unit == "pos" ? OrderUnit::kPos : OrderUnit::kForm;
      options.complexity_mode = mode == "global" ? ComplexityMode::kGlobal : ComplexityMode::kPerSentenceSum;
      auto r = compute_metrics(read_conllu_file(input), input, options);
      if (out_format == "json") {
        std::cout << json{{"distance", optional_number(r.distance)},
                          {"predictability_bits", r.predictability_bits},
                          {"derivation_perplexity", r.derivation_perplexity},
                          {"derivation_complexity", r.derivation_complexity},
                          {"complexity_mode", std::string(to_string(r.options.complexity_mode))}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << "distance\tpredictability_bits\tderivation_perplexity\tderivation_complexity\n";
        if (r.distance) std::cout << *r.distance; else std::cout << "NA";
        std::cout << '\t' << r.predictability_bits << '\t' << r.derivation_perplexity << '\t' << r.derivation_complexity
                  << "\n";
      }
    } else if (*eval_cmd) {
      auto score = corpus_uas(read_conllu_file(gold_path), read_conllu_file(pred_path));
      std::cout << json{{"uas", score.percent()}, {"correct", score.correct}, {"total", score.total}}.dump() << "\n";
    } else if (*exp_cmd) {
      auto cfg = ExperimentConfig::load(config_path);
      RunStats stats;
      auto report = run_experiment(cfg, &stats);
      emit_reports(report, cfg.output_dir);
      const auto& s = report.summary;
      std::cout << json{{"configurations", s.configurations},
                        {"excluded", s.excluded},
                        {"errors", s.errors},
                        {"fraction_ud_better", s.fraction_ud_better},
                        {"trainings_executed", stats.trainings_executed},
                        {"trainings_cached", stats.trainings_cached},
                        {"output", cfg.output_dir.string()}}
                       .dump()
                << "\n";
      return s.errors == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
