#include "golden.hpp"

#include <stdexcept>

#include "trees.hpp"

namespace testsupport {

const std::vector<GoldenCase>& golden_cases() {
  static const std::vector<GoldenCase> cases = {
      {"mark_to_read", true},        {"det_the_book", true},  {"name_john_jr_doe", true},
      {"case_of_earth", true},       {"coordination_me_and_you", true},
      {"copula_is_nice", true},      {"repair_ijk", false},   {"repair_kji", false},
      {"mwe_danish", false},         {"coordination_french", false},
  };
  return cases;
}

GoldenOutcome run_golden(const std::string& name) {
  const auto dir = data_dir() / "golden";
  auto before = udscheme::read_conllu_file((dir / (name + ".before.conllu")).string());
  GoldenOutcome out;
  out.expected = slurp(dir / (name + ".after.conllu"));
  const std::string key = " transformation = ";
  std::optional<udscheme::TransformationId> t;
  for (const auto& c : before.at(0).comments) {
    if (c.text.rfind(key, 0) == 0) t = udscheme::parse_transformation(c.text.substr(key.size()));
  }
  if (!t) throw std::runtime_error(name + ": no transformation comment");
  out.actual = udscheme::write_conllu(udscheme::apply_transformation(before, *t).sentences);
  out.match = out.actual == out.expected;
  return out;
}

bool preserves_tokens(const udscheme::Sentence& in, const udscheme::Sentence& out) {
  if (!udscheme::validate_tree(out).ok() || in.size() != out.size()) return false;
  if (in.mwt_ranges != out.mwt_ranges || in.comments != out.comments) return false;
  for (std::size_t i = 0; i < in.size(); ++i) {
    auto a = in.tokens[i], b = out.tokens[i];
    a.head = b.head = 0;
    a.deprel = b.deprel = "";
    if (!(a == b)) return false;
  }
  return true;
}

}  // namespace testsupport
