#include "udscheme/oracle.hpp"

#include <algorithm>
#include <limits>

namespace udscheme {

namespace {

constexpr int kForbidden = -1'000'000;

bool gold_arc(const GoldTree& g, int head, int dep) { return dep > 0 && g.heads[static_cast<std::size_t>(dep)] == head; }

// Closed form; exact when the gold tree is projective.
KindCosts projective_costs(const Configuration& c, const GoldTree& g) {
  KindCosts costs{-1, -1, -1, -1};
  const int s = c.stack_top();
  const int b = c.buffer_front();
  const int n = static_cast<int>(c.length());
  const auto& stack = c.stack();
  auto in_buffer_from = [&](int from, auto&& pred) {
    int count = 0;
    for (int k = from; k <= n; ++k) count += pred(k) ? 1 : 0;
    return count;
  };
  if (is_valid(c, ActionKind::kShift)) {
    int lost = 0;
    for (int k : stack) {
      if (gold_arc(g, k, b)) ++lost;
      if (k != 0 && !c.has_head(k) && gold_arc(g, b, k)) ++lost;
    }
    costs[0] = lost;
  }
  if (is_valid(c, ActionKind::kReduce)) {
    costs[1] = in_buffer_from(b, [&](int k) { return gold_arc(g, s, k); });
  }
  if (is_valid(c, ActionKind::kLeftArc)) {
    int lost = in_buffer_from(b + 1, [&](int k) { return gold_arc(g, k, s); });
    lost += in_buffer_from(b, [&](int k) { return gold_arc(g, s, k); });
    costs[2] = lost;
  }
  if (is_valid(c, ActionKind::kRightArc)) {
    int lost = 0;
    for (int k : stack) {
      if (k != s && gold_arc(g, k, b)) ++lost;
      if (k != 0 && !c.has_head(k) && gold_arc(g, b, k)) ++lost;
    }
    lost += in_buffer_from(b + 1, [&](int k) { return gold_arc(g, k, b); });
    costs[3] = lost;
  }
  return costs;
}

// Maximum-weight projective tree over v[0..m) with a virtual root at the right
// end. weight(h, d) returns kForbidden for arcs that cannot be built.
template <typename Weight>
int eisner_right_root(std::size_t m, Weight&& weight) {
  const std::size_t size = m + 1;  // includes virtual root at index m
  auto idx = [size](std::size_t s, std::size_t t) { return s * size + t; };
  std::vector<int> cl(size * size, 0), cr(size * size, 0), il(size * size, kForbidden), ir(size * size, kForbidden);
  auto add = [](int a, int b) { return (a <= kForbidden || b <= kForbidden) ? kForbidden : a + b; };
  for (std::size_t len = 1; len < size; ++len) {
    for (std::size_t s = 0; s + len < size; ++s) {
      const std::size_t t = s + len;
      int best = kForbidden;
      for (std::size_t r = s; r < t; ++r) best = std::max(best, add(cr[idx(s, r)], cl[idx(r + 1, t)]));
      il[idx(s, t)] = add(best, weight(t, s));  // arc t -> s
      ir[idx(s, t)] = add(best, weight(s, t));  // arc s -> t
      int left = kForbidden;
      for (std::size_t r = s; r < t; ++r) left = std::max(left, add(cl[idx(s, r)], il[idx(r, t)]));
      cl[idx(s, t)] = left;
      int right = kForbidden;
      for (std::size_t r = s + 1; r <= t; ++r) right = std::max(right, add(ir[idx(s, r)], cr[idx(r, t)]));
      cr[idx(s, t)] = right;
    }
  }
  return cl[idx(0, m)];
}

}  // namespace

GoldTree GoldTree::from(const Sentence& s, const LabelInventory& labels) {
  GoldTree g;
  g.heads = heads_of(s);
  g.labels.assign(s.size() + 1, -1);
  for (const Token& t : s.tokens) g.labels[static_cast<std::size_t>(t.id)] = labels.id_or_unknown(t.deprel);
  g.projective = is_projective(s);
  return g;
}

int built_gold(const Configuration& c, const GoldTree& g) {
  int count = 0;
  for (std::size_t d = 1; d <= c.length(); ++d) {
    if (c.head(static_cast<int>(d)) >= 0 && c.head(static_cast<int>(d)) == g.heads[d]) ++count;
  }
  return count;
}

int best_reachable_gold(const Configuration& c, const GoldTree& g) {
  // Sequence: stack bottom..top, then the buffer; the virtual root follows.
  std::vector<int> nodes = c.stack();
  const std::size_t stack_size = nodes.size();
  for (int b = c.buffer_front(); b <= static_cast<int>(c.length()); ++b) nodes.push_back(b);
  const std::size_t m = nodes.size();
  auto weight = [&](std::size_t h, std::size_t d) -> int {
    if (d == m) return kForbidden;
    const int dep = nodes[d];
    if (h == m) {
      // Leaving a token unattached; a headed stack token already has its head.
      return (d < stack_size && dep != 0 && c.has_head(dep)) ? kForbidden : 0;
    }
    const int head = nodes[h];
    if (d < stack_size) {
      if (dep == 0) return kForbidden;
      if (c.has_head(dep)) return (h + 1 == d && c.head(dep) == head) ? 0 : kForbidden;
      if (h < stack_size) return kForbidden;
      return gold_arc(g, head, dep) ? 1 : 0;
    }
    return gold_arc(g, head, dep) ? 1 : 0;
  };
  int best = eisner_right_root(m, weight);
  return std::max(best, 0);
}

KindCosts action_costs_exact(const Configuration& c, const GoldTree& g) {
  KindCosts costs{-1, -1, -1, -1};
  const int before = built_gold(c, g) + best_reachable_gold(c, g);
  for (auto k : kActionKinds) {
    if (!is_valid(c, k)) continue;
    Configuration next = apply_action(c, Action{k, 0});
    const int after = built_gold(next, g) + best_reachable_gold(next, g);
    costs[static_cast<std::size_t>(k)] = before - after;
  }
  return costs;
}

KindCosts action_costs(const Configuration& c, const GoldTree& g) {
  return g.projective ? projective_costs(c, g) : action_costs_exact(c, g);
}

int action_cost(const Configuration& c, const Action& a, const GoldTree& gold) {
  return action_costs(c, gold)[static_cast<std::size_t>(a.kind)];
}

int action_cost(const Configuration& c, const Action& a, const Sentence& gold) {
  return action_cost(c, a, GoldTree::from(gold, LabelInventory::from_corpus({gold})));
}

int gold_label_for(const Configuration& c, ActionKind kind, const GoldTree& g) {
  if (kind == ActionKind::kLeftArc) return g.labels[static_cast<std::size_t>(c.stack_top())];
  if (kind == ActionKind::kRightArc) return g.labels[static_cast<std::size_t>(c.buffer_front())];
  return -1;
}

Derivation static_oracle_derivation(const GoldTree& gold) {
  Derivation d;
  d.length = gold.length();
  Configuration c = initial_config(d.length);
  while (!c.terminal()) {
    const KindCosts costs = action_costs(c, gold);
    std::optional<ActionKind> pick;
    for (auto k : kActionKinds) {
      const int cost = costs[static_cast<std::size_t>(k)];
      if (cost < 0) continue;
      if (!pick || cost < costs[static_cast<std::size_t>(*pick)]) pick = k;
    }
    Action a{*pick, gold_label_for(c, *pick, gold)};
    apply_in_place(c, a);
    d.actions.push_back(a);
  }
  return d;
}

Derivation static_oracle_derivation(const Sentence& gold, const LabelInventory& labels) {
  return static_oracle_derivation(GoldTree::from(gold, labels));
}

Derivation static_oracle_derivation(const Sentence& gold) {
  return static_oracle_derivation(gold, LabelInventory::from_corpus({gold}));
}

}  // namespace udscheme
