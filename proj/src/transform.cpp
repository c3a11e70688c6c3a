#include "udscheme/transform.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace udscheme {

namespace {

const LabelSet kCaseLabels{"case"};
const LabelSet kMarkLabels{"mark"};
const LabelSet kDetLabels{"det"};
const LabelSet kMweLabels{"mwe", "goeswith"};
const LabelSet kNameLabels{"name"};
const LabelSet kCopulaLabels{"cop", "auxpass"};
const LabelSet kCoordinationLabels{"cc", "conj"};
const LabelSet kCopulaNounLabels{"det", "amod", "nmod", "case", "nummod", "acl", "appos"};

bool has_label(const Token& t, const LabelSet& labels) { return labels.contains(base_relation(t.deprel)); }

bool strictly_between(int x, int a, int b) { return (a < x && x < b) || (b < x && x < a); }

// Children of `head` in the current state of `s`, in surface order.
std::vector<int> current_children(const Sentence& s, int head) {
  std::vector<int> kids;
  for (const Token& t : s.tokens) {
    if (t.head == head) kids.push_back(t.id);
  }
  return kids;
}

// Nearest to `head` by surface distance; ties go to the leftmost.
int nearest(const std::vector<int>& candidates, int head) {
  int best = candidates.front();
  for (int c : candidates) {
    if (std::abs(c - head) < std::abs(best - head)) best = c;
  }
  return best;
}

std::vector<int> triggered_children(const Sentence& s, int head, const LabelSet& labels) {
  std::vector<int> out;
  for (int c : current_children(s, head)) {
    if (has_label(s.at(c), labels)) out.push_back(c);
  }
  return out;
}

// Heads that carry at least one trigger child in the original tree, ordered by
// the surface position of the child that will be promoted.
std::vector<int> inversion_order(const Sentence& s, const LabelSet& labels) {
  std::vector<std::pair<int, int>> keyed;  // (promoted position, head)
  for (const Token& t : s.tokens) {
    auto kids = triggered_children(s, t.id, labels);
    if (!kids.empty()) keyed.emplace_back(nearest(kids, t.id), t.id);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> heads;
  for (auto [pos, h] : keyed) heads.push_back(h);
  return heads;
}

// Swaps old_head and promoted: promoted takes old_head's incoming arc and
// old_head attaches below it with the promoted token's former label.
InversionContext swap_head(Sentence& s, int old_head, int promoted) {
  InversionContext ctx;
  ctx.old_head = old_head;
  ctx.promoted = promoted;
  ctx.grandparent = s.at(old_head).head;
  for (int c : current_children(s, old_head)) {
    if (c != promoted) ctx.other_children.push_back(c);
  }
  Token& h = s.at(old_head);
  Token& d = s.at(promoted);
  std::string trigger = d.deprel;
  d.head = h.head;
  d.deprel = h.deprel;
  h.head = promoted;
  h.deprel = std::move(trigger);
  return ctx;
}

void repair_in_place(Sentence& s, const InversionContext& ctx, std::size_t* repaired) {
  for (int k : ctx.other_children) {
    Token& t = s.at(k);
    if (t.head == ctx.old_head && strictly_between(ctx.promoted, k, ctx.old_head)) {
      t.head = ctx.promoted;
      if (repaired) ++*repaired;
    }
  }
}

void bump(RewriteStats* stats, std::size_t arcs) {
  if (stats) stats->arcs_rewritten += arcs;
}

std::size_t* repairs_slot(RewriteStats* stats) { return stats ? &stats->repairs_applied : nullptr; }

}  // namespace

std::string_view to_string(TransformationId t) {
  switch (t) {
    case TransformationId::kCase: return "case";
    case TransformationId::kMark: return "mark";
    case TransformationId::kDet: return "det";
    case TransformationId::kMwe: return "mwe";
    case TransformationId::kName: return "name";
    case TransformationId::kCopula: return "copula";
    case TransformationId::kCoordination: return "coordination";
  }
  return "unknown";
}

std::optional<TransformationId> parse_transformation(std::string_view name) {
  for (auto t : kAllTransformations) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

const LabelSet& trigger_labels(TransformationId t) {
  switch (t) {
    case TransformationId::kCase: return kCaseLabels;
    case TransformationId::kMark: return kMarkLabels;
    case TransformationId::kDet: return kDetLabels;
    case TransformationId::kMwe: return kMweLabels;
    case TransformationId::kName: return kNameLabels;
    case TransformationId::kCopula: return kCopulaLabels;
    case TransformationId::kCoordination: return kCoordinationLabels;
  }
  return kCaseLabels;
}

const LabelSet& default_copula_noun_labels() { return kCopulaNounLabels; }

std::string_view base_relation(std::string_view deprel) { return deprel.substr(0, deprel.find(':')); }

Sentence repair_projectivity(const Sentence& s, const InversionContext& ctx, std::size_t* repaired) {
  Sentence out = s;
  repair_in_place(out, ctx, repaired);
  return out;
}

Sentence invert_simple(const Sentence& s, const LabelSet& labels, RewriteStats* stats) {
  Sentence out = s;
  for (int head : inversion_order(s, labels)) {
    auto kids = triggered_children(out, head, labels);
    if (kids.empty()) continue;
    int promoted = nearest(kids, head);
    InversionContext ctx = swap_head(out, head, promoted);
    std::size_t moved = 1;
    for (int other : kids) {
      if (other == promoted) continue;
      out.at(other).head = promoted;
      ++moved;
    }
    repair_in_place(out, ctx, repairs_slot(stats));
    bump(stats, moved);
  }
  return out;
}

Sentence chain_sequence(const Sentence& s, const LabelSet& labels, RewriteStats* stats) {
  Sentence out = s;
  const auto kids = children_of(s);
  for (std::size_t f = 1; f < kids.size(); ++f) {
    std::vector<int> flat;
    for (int d : kids[f]) {
      if (d > static_cast<int>(f) && has_label(s.at(d), labels)) flat.push_back(d);
    }
    for (std::size_t i = 1; i < flat.size(); ++i) {
      out.at(flat[i]).head = flat[i - 1];
      bump(stats, 1);
    }
  }
  return out;
}

Sentence promote_copula(const Sentence& s, const TransformOptions& options, RewriteStats* stats) {
  Sentence out = s;
  for (int head : inversion_order(s, kCopulaLabels)) {
    auto kids = triggered_children(out, head, kCopulaLabels);
    if (kids.empty()) continue;
    int promoted = nearest(kids, head);
    InversionContext ctx = swap_head(out, head, promoted);
    std::size_t moved = 1;
    InversionContext stay = ctx;
    stay.other_children.clear();
    for (int c : ctx.other_children) {
      Token& t = out.at(c);
      if (has_label(t, kCopulaLabels)) {
        t.head = promoted;
        ++moved;
      } else if (!options.copula_noun_labels.contains(base_relation(t.deprel))) {
        t.head = promoted;
      } else {
        stay.other_children.push_back(c);
      }
    }
    // Noun-related children stay on the predicate unless they sit on the far
    // side of the copula, where keeping them would cross the new arc.
    repair_in_place(out, stay, repairs_slot(stats));
    bump(stats, moved);
  }
  return out;
}

Sentence rehead_coordination(const Sentence& s, RewriteStats* stats) {
  // Outermost coordinations first: order candidate heads by depth, then position.
  const auto heads = heads_of(s);
  auto depth = [&](int id) {
    int d = 0;
    for (int cur = id; cur > 0; cur = heads[static_cast<std::size_t>(cur)]) ++d;
    return d;
  };
  std::vector<std::pair<int, int>> order;
  for (const Token& t : s.tokens) order.emplace_back(depth(t.id), t.id);
  std::sort(order.begin(), order.end());

  Sentence out = s;
  // A promoted conjunction already heads its coordination; never rewrite it again.
  std::vector<bool> promoted(s.size() + 1, false);
  for (auto [unused, first] : order) {
    if (promoted[static_cast<std::size_t>(first)]) continue;
    std::vector<int> ccs, conjs;
    for (int c : current_children(out, first)) {
      auto rel = base_relation(out.at(c).deprel);
      if (rel == "cc") ccs.push_back(c);
      if (rel == "conj") conjs.push_back(c);
    }
    if (ccs.empty() || conjs.empty()) continue;
    int conjunction = ccs.front();
    promoted[static_cast<std::size_t>(conjunction)] = true;
    InversionContext ctx = swap_head(out, first, conjunction);
    out.at(first).deprel = "conj";
    std::size_t moved = 1;
    InversionContext rest = ctx;
    rest.other_children.clear();
    for (int c : ctx.other_children) {
      auto rel = base_relation(out.at(c).deprel);
      if (rel == "cc" || rel == "conj") {
        out.at(c).head = conjunction;
        ++moved;
      } else {
        rest.other_children.push_back(c);
      }
    }
    repair_in_place(out, rest, repairs_slot(stats));
    bump(stats, moved);
  }
  return out;
}

Sentence apply_to_sentence(const Sentence& s, TransformationId t, const TransformOptions& options,
                           RewriteStats* stats) {
  switch (t) {
    case TransformationId::kCase:
    case TransformationId::kMark:
    case TransformationId::kDet: return invert_simple(s, trigger_labels(t), stats);
    case TransformationId::kMwe:
    case TransformationId::kName: return chain_sequence(s, trigger_labels(t), stats);
    case TransformationId::kCopula: return promote_copula(s, options, stats);
    case TransformationId::kCoordination: return rehead_coordination(s, stats);
  }
  return s;
}

TransformResult apply_transformation(const std::vector<Sentence>& sentences, TransformationId t,
                                     const TransformOptions& options) {
  TransformResult result;
  result.sentences.reserve(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    auto before = validate_tree(sentences[i]);
    if (!before.ok()) throw TransformError(i, "invalid input tree: " + before.summary());
    RewriteStats stats;
    Sentence out = apply_to_sentence(sentences[i], t, options, &stats);
    auto after = validate_tree(out);
    if (!after.ok()) throw TransformError(i, "rewrite produced an invalid tree: " + after.summary());
    if (!same_tree(out, sentences[i])) {
      result.changed = true;
      ++result.sentences_changed;
      result.arcs_rewritten += stats.arcs_rewritten;
      result.repairs_applied += stats.repairs_applied;
    }
    result.sentences.push_back(std::move(out));
  }
  return result;
}

}  // namespace udscheme
