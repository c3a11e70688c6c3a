#include <doctest.h>

#include <random>

#include "support/trees.hpp"
#include "udscheme/treebank.hpp"

using namespace udscheme;
using testsupport::make_sentence;

namespace {
const char* kTheBook =
    "1\tthe\t_\tDET\t_\t_\t2\tdet\t_\t_\n"
    "2\tbook\t_\tNOUN\t_\t_\t0\troot\t_\t_\n\n";
}

TEST_CASE("parse a two-token block") {
  auto sentences = parse_conllu(kTheBook);
  REQUIRE(sentences.size() == 1);
  const auto& s = sentences[0];
  REQUIRE(s.size() == 2);
  CHECK(s.at(1).form == "the");
  CHECK(s.at(1).head == 2);
  CHECK(s.at(1).deprel == "det");
  CHECK(s.at(1).lemma.empty());
  CHECK(s.at(2).head == 0);
  CHECK(write_conllu(sentences) == kTheBook);
}

TEST_CASE("empty input") {
  CHECK(parse_conllu("").empty());
  CHECK(parse_conllu("\n\n").empty());
  CHECK(write_conllu({}).empty());
}

TEST_CASE("multiword ranges and comments round-trip byte for byte") {
  const std::string text =
      "# sent_id = 7\n"
      "# text = vamos a la playa ya\n"
      "1\tvamos\tir\tVERB\t_\tMood=Ind\t0\troot\t_\t_\n"
      "2\ta\ta\tADP\t_\t_\t4\tcase\t_\t_\n"
      "3-4\tala\t_\t_\t_\t_\t_\t_\t_\tSpaceAfter=No\n"
      "3\tla\tel\tDET\t_\t_\t4\tdet\t_\t_\n"
      "# mid-sentence note\n"
      "4\tplaya\tplaya\tNOUN\t_\t_\t1\tnmod\t_\t_\n"
      "5\tya\tya\tADV\t_\t_\t1\tadvmod\t4:dep\tSpaceAfter=No|Gloss=now\n"
      "\n";
  auto sentences = parse_conllu(text);
  REQUIRE(sentences.size() == 1);
  const auto& s = sentences[0];
  CHECK(s.size() == 5);
  REQUIRE(s.mwt_ranges.size() == 1);
  CHECK(s.mwt_ranges[0].first == 3);
  CHECK(s.mwt_ranges[0].last == 4);
  CHECK(s.mwt_ranges[0].form == "ala");
  CHECK(s.comments.size() == 3);
  CHECK(write_conllu(sentences) == text);
}

TEST_CASE("opaque columns survive round-trips") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Sentence> corpus;
    for (int k = 0; k < 3; ++k) corpus.push_back(testsupport::random_labelled_tree(rng, 1 + trial % 9, trial % 2 == 0));
    auto text = write_conllu(corpus);
    auto back = parse_conllu(text);
    REQUIRE(back.size() == corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) CHECK(back[i] == corpus[i]);
    CHECK(write_conllu(back) == text);
  }
}

TEST_CASE("malformed input is rejected with a line number") {
  CHECK_THROWS_AS(parse_conllu("1\tthe\t_\tDET\n\n"), ConlluError);
  CHECK_THROWS_AS(parse_conllu("1\tthe\t_\tDET\t_\t_\tx\tdet\t_\t_\n\n"), ConlluError);
  CHECK_THROWS_AS(parse_conllu("1.1\tthe\t_\tDET\t_\t_\t_\t_\t_\t_\n\n"), ConlluError);
  // ids must be 1..n in order
  CHECK_THROWS_AS(parse_conllu("2\tthe\t_\tDET\t_\t_\t0\troot\t_\t_\n\n"), ConlluError);
  // cycle without a root
  const std::string cycle =
      "1\ta\t_\tX\t_\t_\t2\tdep\t_\t_\n"
      "2\tb\t_\tX\t_\t_\t1\tdep\t_\t_\n\n";
  try {
    parse_conllu(cycle);
    FAIL("expected a ConlluError");
  } catch (const ConlluError& e) {
    CHECK(e.line() == 1);
  }
}

TEST_CASE("validate_tree") {
  CHECK(validate_tree(make_sentence({2, 0}, {"det", "root"})).ok());

  auto cyc = validate_tree(make_sentence({2, 1}, {"dep", "dep"}));
  CHECK(cyc.has(ViolationKind::kNoRoot));
  CHECK(cyc.has(ViolationKind::kCycle));

  auto two_roots = validate_tree(make_sentence({0, 0, 1}, {"root", "root", "dep"}));
  CHECK(two_roots.has(ViolationKind::kMultipleRoots));

  CHECK(validate_tree(make_sentence({0, 5}, {"root", "dep"})).has(ViolationKind::kHeadOutOfRange));
  CHECK(validate_tree(make_sentence({0, 2}, {"root", "dep"})).has(ViolationKind::kSelfLoop));
  CHECK(validate_tree(make_sentence({0, 1}, {"root", ""})).has(ViolationKind::kMissingDeprel));

  auto gap = make_sentence({0, 1}, {"root", "dep"});
  gap.tokens[1].id = 3;
  CHECK(validate_tree(gap).has(ViolationKind::kNonContiguousIds));
}

TEST_CASE("write_conllu refuses invalid trees") {
  CHECK_THROWS_AS(write_conllu({make_sentence({2, 1}, {"dep", "dep"})}), std::invalid_argument);
}

TEST_CASE("is_projective") {
  CHECK(is_projective(make_sentence({2, 0}, {"det", "root"})));
  // inverted w_i w_j w_k before repair: root->2, 2->1, 1->3
  CHECK_FALSE(is_projective(make_sentence({2, 0, 1}, {"case", "root", "nmod"})));
  for (int n = 1; n <= 8; ++n) {
    std::vector<int> chain;
    for (int i = 1; i <= n; ++i) chain.push_back(i == n ? 0 : i + 1);
    CHECK(is_projective(make_sentence(chain, {})));
  }
}

TEST_CASE("is_projective agrees with a crossing-arc check on every small tree") {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& heads : testsupport::all_trees(n)) {
      CHECK(is_projective(make_sentence(heads, {})) == testsupport::crossing_free(heads));
    }
  }
}

TEST_CASE("heads_of and children_of") {
  auto s = make_sentence({2, 0, 2}, {});
  auto heads = heads_of(s);
  CHECK(heads == std::vector<int>{-1, 2, 0, 2});
  auto kids = children_of(s);
  CHECK(kids[0] == std::vector<int>{2});
  CHECK(kids[2] == std::vector<int>{1, 3});
}
