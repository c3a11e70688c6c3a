#include "udscheme/metrics.hpp"

#include <cmath>
#include <cstdlib>
#include <map>

#include "udscheme/oracle.hpp"
#include "udscheme/suffix_tree.hpp"
#include "udscheme/witten_bell.hpp"

namespace udscheme {

std::optional<double> avg_dependency_distance(const std::vector<Sentence>& corpus) {
  long total = 0;
  long arcs = 0;
  for (const auto& s : corpus) {
    for (const auto& t : s.tokens) {
      if (t.head <= 0) continue;
      total += std::abs(t.head - t.id);
      ++arcs;
    }
  }
  if (arcs == 0) return std::nullopt;
  return static_cast<double>(total) / static_cast<double>(arcs);
}

double pos_predictability(const std::vector<Sentence>& corpus) {
  std::map<std::string, std::map<std::string, long>> joint;
  long arcs = 0;
  for (const auto& s : corpus) {
    for (const auto& t : s.tokens) {
      const std::string& head_tag = t.head == 0 ? std::string(kRootTag) : s.at(t.head).upos;
      joint[head_tag][t.upos]++;
      ++arcs;
    }
  }
  if (arcs == 0) return 0.0;
  double entropy = 0.0;
  for (const auto& [head, deps] : joint) {
    long head_count = 0;
    for (const auto& [dep, c] : deps) head_count += c;
    for (const auto& [dep, c] : deps) {
      const double p_joint = static_cast<double>(c) / static_cast<double>(arcs);
      const double p_cond = static_cast<double>(c) / static_cast<double>(head_count);
      entropy -= p_joint * std::log2(p_cond);
    }
  }
  return entropy;
}

std::string derivation_string(const Sentence& s) {
  std::string out;
  for (const auto& a : static_oracle_derivation(s).actions) out += action_symbol(a.kind);
  return out;
}

std::vector<std::string> derivation_order(const Sentence& s, OrderUnit unit) {
  const Derivation d = static_oracle_derivation(s);
  auto word = [&](int id) { return unit == OrderUnit::kForm ? s.at(id).form : s.at(id).upos; };
  std::vector<std::string> out;
  std::vector<bool> emitted(s.size() + 1, false);
  Configuration c = initial_config(s);
  for (const auto& a : d.actions) {
    int attached = -1;
    if (a.kind == ActionKind::kLeftArc) attached = c.stack_top();
    if (a.kind == ActionKind::kRightArc) attached = c.buffer_front();
    apply_in_place(c, a);
    if (attached > 0) {
      out.push_back(word(attached));
      emitted[static_cast<std::size_t>(attached)] = true;
    }
  }
  // Tokens a non-projective derivation leaves headless come last, in surface order.
  for (const auto& t : s.tokens) {
    if (!emitted[static_cast<std::size_t>(t.id)]) out.push_back(word(t.id));
  }
  return out;
}

double derivation_perplexity(const std::vector<Sentence>& corpus, OrderUnit unit) {
  std::vector<std::vector<std::string>> reordered;
  reordered.reserve(corpus.size());
  for (const auto& s : corpus) reordered.push_back(derivation_order(s, unit));
  return WittenBellTrigram(reordered).perplexity(reordered);
}

std::string_view to_string(ComplexityMode mode) {
  return mode == ComplexityMode::kGlobal ? "global-distinct" : "per-sentence-sum";
}

std::uint64_t derivation_complexity(const std::vector<Sentence>& corpus, ComplexityMode mode) {
  std::vector<std::vector<GeneralizedSuffixTree::Symbol>> derivations;
  derivations.reserve(corpus.size());
  for (const auto& s : corpus) {
    std::vector<GeneralizedSuffixTree::Symbol> seq;
    for (const auto& a : static_oracle_derivation(s).actions) seq.push_back(static_cast<int>(a.kind));
    derivations.push_back(std::move(seq));
  }
  if (mode == ComplexityMode::kGlobal) return count_distinct_substrings(derivations);
  std::uint64_t sum = 0;
  for (const auto& d : derivations) sum += count_distinct_substrings({d});
  return sum;
}

MetricReport compute_metrics(const std::vector<Sentence>& corpus, std::string corpus_id, const MetricOptions& options) {
  MetricReport r;
  r.corpus_id = std::move(corpus_id);
  r.options = options;
  r.distance = avg_dependency_distance(corpus);
  r.predictability_bits = pos_predictability(corpus);
  r.derivation_perplexity = derivation_perplexity(corpus, options.perplexity_unit);
  r.derivation_complexity = derivation_complexity(corpus, options.complexity_mode);
  return r;
}

std::array<std::optional<double>, 4> metric_values(const MetricReport& r) {
  return {r.distance, r.predictability_bits, static_cast<double>(r.derivation_complexity), r.derivation_perplexity};
}

}  // namespace udscheme
