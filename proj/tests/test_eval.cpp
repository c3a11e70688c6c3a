#include <doctest.h>

#include "support/trees.hpp"
#include "udscheme/eval.hpp"

using namespace udscheme;
using testsupport::make_sentence;

TEST_CASE("UAS on identical trees") {
  auto s = make_sentence({2, 0, 2}, {"det", "root", "punct"}, {"a", "b", "."}, {"DET", "NOUN", "PUNCT"});
  auto score = uas(s, s);
  CHECK(score.correct == 2);
  CHECK(score.total == 2);
  CHECK(score.percent() == 100.0);
}

TEST_CASE("punctuation errors are invisible") {
  auto gold = read_conllu_file((testsupport::data_dir() / "uas_gold.conllu").string());
  auto pred = read_conllu_file((testsupport::data_dir() / "uas_pred.conllu").string());
  auto score = corpus_uas(gold, pred);
  CHECK(score.correct == 2);
  CHECK(score.total == 3);
  CHECK(score.percent() == doctest::Approx(66.67).epsilon(0.0001));
}

TEST_CASE("all-punctuation sentences contribute nothing") {
  auto s = make_sentence({0, 1}, {"root", "punct"}, {"!", "!"}, {"PUNCT", "PUNCT"});
  auto score = uas(s, s);
  CHECK(score.total == 0);
  CHECK(score.percent() == 0.0);
}

TEST_CASE("mismatched sentences are rejected") {
  auto a = make_sentence({2, 0}, {});
  auto b = make_sentence({0}, {});
  CHECK_THROWS_AS(uas(a, b), EvaluationError);
  auto c = make_sentence({2, 0}, {}, {"x", "y"});
  CHECK_THROWS_AS(uas(a, c), EvaluationError);
  CHECK_THROWS_AS(corpus_uas({a}, {}), EvaluationError);
}

TEST_CASE("compare_schemes: positive diff favours UD") {
  std::vector<double> ud = {60.69, 60.69, 60.69}, tr = {52.57, 52.57, 52.57};
  auto row = compare_schemes("la", TransformationId::kCoordination, ud, tr);
  CHECK(*row.diff == doctest::Approx(8.12));
  CHECK(*row.uas_ud == doctest::Approx(60.69));
  CHECK_FALSE(row.excluded);
  auto same = compare_schemes("x", TransformationId::kCase, ud, ud);
  CHECK(*same.diff == 0.0);
  auto ex = excluded_row("zh", TransformationId::kMwe);
  CHECK(ex.excluded);
  CHECK_FALSE(ex.diff.has_value());
  CHECK_THROWS_AS(compare_schemes("x", TransformationId::kCase, ud, std::vector<double>{1.0}), EvaluationError);
  CHECK_THROWS_AS(compare_schemes("x", TransformationId::kCase, std::vector<double>{}, std::vector<double>{}),
                  EvaluationError);
}

TEST_CASE("metric coherence, lower is better") {
  CHECK(metric_coherence(2.0, 1.5, 80, 82) == Coherence::kCoherent);
  CHECK(metric_coherence(1.5, 2.0, 80, 82) == Coherence::kIncoherent);
  CHECK(metric_coherence(1.5, 2.0, 82, 80) == Coherence::kCoherent);
  CHECK(metric_coherence(1.5, 1.5, 82, 80) == Coherence::kTied);
  CHECK(metric_coherence(1.5, 2.0, 80, 80) == Coherence::kTied);
}
