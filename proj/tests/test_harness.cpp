#include <doctest.h>

#include <fstream>

#include <json.hpp>

#include "support/trees.hpp"
#include "udscheme/harness.hpp"

using namespace udscheme;
namespace fs = std::filesystem;

namespace {

CellResult row(std::string lang, TransformationId t, std::optional<double> diff) {
  CellResult c;
  if (!diff) {
    c.row = excluded_row(std::move(lang), t);
    return c;
  }
  std::vector<double> ud = {50.0 + *diff}, tr = {50.0};
  c.row = compare_schemes(std::move(lang), t, ud, tr);
  return c;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto dir = testsupport::scratch_dir("config");
  for (auto name : {"tr.conllu", "dv.conllu", "te.conllu"}) write(dir / name, "");
  const std::string text =
      "# grid\n"
      "output = out\n"
      "seeds = 4, 5\n"
      "transformations = case, coordination\n"
      "epochs = 3\n"
      "explore_p = 0.5\n"
      "jobs = 2\n"
      "copula_noun_labels = det, amod\n"
      "perplexity_unit = pos\n"
      "complexity_mode = per-sentence-sum\n"
      "[treebank xx]\n"
      "train = tr.conllu\n"
      "dev = dv.conllu\n"
      "test = te.conllu\n";
  auto cfg = ExperimentConfig::parse(text, dir);
  CHECK(cfg.output_dir == dir / "out");
  CHECK(cfg.seeds == std::vector<std::uint64_t>{4, 5});
  CHECK(cfg.transformations == std::vector<TransformationId>{TransformationId::kCase, TransformationId::kCoordination});
  CHECK(cfg.hp.epochs == 3);
  CHECK(cfg.hp.explore_p == 0.5);
  CHECK(cfg.jobs == 2);
  CHECK(cfg.transform_options.copula_noun_labels == LabelSet{"amod", "det"});
  CHECK(cfg.metric_options.perplexity_unit == OrderUnit::kPos);
  CHECK(cfg.metric_options.complexity_mode == ComplexityMode::kPerSentenceSum);
  REQUIRE(cfg.treebanks.size() == 1);
  CHECK(cfg.treebanks[0].train == dir / "tr.conllu");
  CHECK_NOTHROW(cfg.validate());

  auto defaults = ExperimentConfig::parse("[treebank a]\ntrain=x\ndev=y\ntest=z\n", dir);
  CHECK(defaults.seeds == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(defaults.transformations.size() == 7);
  CHECK_THROWS_AS(defaults.validate(), ConfigError);  // files do not exist

  CHECK_THROWS_AS(ExperimentConfig::parse("bogus = 1\n", dir), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("transformations = verbgroup\n", dir), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("epochs = many\n", dir), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("[corpus a]\n", dir), ConfigError);

  auto dup = cfg;
  dup.seeds = {1, 1};
  CHECK_THROWS_AS(dup.validate(), ConfigError);
  dup.seeds = {};
  CHECK_THROWS_AS(dup.validate(), ConfigError);
}

TEST_CASE("summary counts") {
  std::vector<CellResult> cells = {row("la", TransformationId::kCoordination, 8.12),
                                   row("nl", TransformationId::kCopula, -2.09),
                                   row("en", TransformationId::kDet, 0.0),
                                   row("zh", TransformationId::kMwe, std::nullopt),
                                   row("fr", TransformationId::kCase, 1.0)};
  cells.push_back(CellResult{});
  cells.back().error = "broken";
  auto s = summarize(cells);
  CHECK(s.configurations == 4);
  CHECK(s.excluded == 1);
  CHECK(s.errors == 1);
  CHECK(s.positive == 2);
  CHECK(s.negative == 1);
  CHECK(s.ties == 1);
  CHECK(s.fraction_ud_better == doctest::Approx(2.0 / 3.0));
  CHECK(s.max_abs_diff == doctest::Approx(8.12));
  CHECK(s.mean_diff == doctest::Approx((8.12 - 2.09 + 1.0) / 4));

  std::size_t binned = 0;
  for (const auto& b : diff_histogram(cells)) binned += b.count;
  CHECK(binned == 4);
}

TEST_CASE("reports for a hand-made report") {
  ExperimentReport r;
  r.cells = {row("la", TransformationId::kCoordination, 8.12), row("nl", TransformationId::kCopula, -2.09)};
  r.summary = summarize(r.cells);
  r.coherence = coherence_table(r.cells);
  const auto dir = testsupport::scratch_dir("reports");
  emit_reports(r, dir);
  auto top = testsupport::slurp(dir / "tables" / "top_diffs.tsv");
  CHECK(top.find("ud_better\tla\tcoordination") != std::string::npos);
  CHECK(top.find("transformed_better\tnl\tcopula") != std::string::npos);
  auto hist = testsupport::slurp(dir / "hist.tsv");
  // bins from -2.5 to 8.0 inclusive: 22 rows plus the header
  CHECK(std::count(hist.begin(), hist.end(), '\n') == 23);
  auto summary = nlohmann::json::parse(testsupport::slurp(dir / "summary.json"));
  CHECK(summary["positive_diffs"] == 1);
  CHECK(summary["negative_diffs"] == 1);
}

TEST_CASE("empty report") {
  ExperimentReport r;
  r.coherence = coherence_table(r.cells);
  const auto dir = testsupport::scratch_dir("empty-report");
  CHECK_NOTHROW(emit_reports(r, dir));
  CHECK(diff_histogram(r.cells).empty());
  for (auto f : {"rows.tsv", "hist.tsv", "hist.svg", "summary.json", "tables/ud_wins.tsv", "tables/top_diffs.tsv",
                 "tables/coherence.tsv", "tables/metrics.tsv"}) {
    CHECK(fs::exists(dir / f));
  }
}

TEST_CASE("experiment: UD side shared, cache reused, failures isolated") {
  const auto dir = testsupport::scratch_dir("grid");
  testsupport::write_grammar_treebank(dir / "good", 10);
  fs::create_directories(dir / "bad");
  write(dir / "bad" / "train.conllu", "1\ta\t_\tX\t_\t_\t2\tdep\t_\t_\n2\tb\t_\tX\t_\t_\t1\tdep\t_\t_\n\n");
  fs::copy_file(dir / "good" / "dev.conllu", dir / "bad" / "dev.conllu");
  fs::copy_file(dir / "good" / "test.conllu", dir / "bad" / "test.conllu");

  ExperimentConfig cfg;
  cfg.treebanks = {{"good", dir / "good" / "train.conllu", dir / "good" / "dev.conllu", dir / "good" / "test.conllu"},
                   {"bad", dir / "bad" / "train.conllu", dir / "bad" / "dev.conllu", dir / "bad" / "test.conllu"}};
  cfg.transformations = {TransformationId::kDet, TransformationId::kCase, TransformationId::kMwe};
  cfg.seeds = {1, 2};
  cfg.hp.epochs = 2;
  cfg.output_dir = dir / "out";
  cfg.jobs = 2;

  RunStats first;
  auto report = run_experiment(cfg, &first);
  REQUIRE(report.cells.size() == 6);
  // 2 UD trainings + 2 per changed transformation
  std::size_t changed = 0;
  for (const auto& c : report.cells) {
    if (c.row.language == "good") {
      CHECK(c.error.empty());
      if (!c.row.excluded) ++changed;
    } else {
      CHECK_FALSE(c.error.empty());
    }
  }
  CHECK(changed >= 2);
  CHECK(first.trainings_executed == 2 + 2 * changed);
  CHECK(first.trainings_cached == 0);

  emit_reports(report, cfg.output_dir);
  const auto rows = testsupport::slurp(cfg.output_dir / "rows.tsv");

  RunStats second;
  auto again = run_experiment(cfg, &second);
  CHECK(second.trainings_executed == 0);
  CHECK(second.trainings_cached == first.trainings_executed);
  emit_reports(again, cfg.output_dir);
  CHECK(testsupport::slurp(cfg.output_dir / "rows.tsv") == rows);
}
