#pragma once

// Dynamic-oracle costs and static gold derivations for the arc-eager system.
//
// The cost of an action is the number of gold arcs that could still be built
// from the configuration but no longer can after the action (unlabeled). For
// projective gold trees every individually reachable arc is jointly reachable,
// so a closed form suffices. For non-projective gold trees the best completion
// is found exactly with a first-order projective DP over the remaining
// stack/buffer sequence.

#include <array>
#include <vector>

#include "udscheme/transition.hpp"
#include "udscheme/treebank.hpp"

namespace udscheme {

/// Gold heads/labels in the id space of a label inventory.
struct GoldTree {
  std::vector<int> heads;   // index by token id; [0] unused
  std::vector<int> labels;  // label id per token, -1 if not in the inventory
  bool projective = true;

  static GoldTree from(const Sentence& s, const LabelInventory& labels);
  std::size_t length() const { return heads.empty() ? 0 : heads.size() - 1; }
};

/// Cost of each action kind (index by ActionKind); invalid kinds get -1.
using KindCosts = std::array<int, 4>;

KindCosts action_costs(const Configuration& c, const GoldTree& gold);
int action_cost(const Configuration& c, const Action& a, const GoldTree& gold);
int action_cost(const Configuration& c, const Action& a, const Sentence& gold);

/// Gold arcs still buildable from c in the best completion (exact, any tree).
int best_reachable_gold(const Configuration& c, const GoldTree& gold);
/// Gold arcs already present in c.
int built_gold(const Configuration& c, const GoldTree& gold);

/// Exact cost via best_reachable_gold, bypassing the projective closed form.
KindCosts action_costs_exact(const Configuration& c, const GoldTree& gold);

/// Label an arc action would carry if following the gold tree.
int gold_label_for(const Configuration& c, ActionKind kind, const GoldTree& gold);

/// Lowest-cost actions, ties broken SHIFT > REDUCE > LEFT_ARC > RIGHT_ARC, until
/// the buffer is exhausted. Arc actions carry the dependent's gold label.
Derivation static_oracle_derivation(const GoldTree& gold);
Derivation static_oracle_derivation(const Sentence& gold, const LabelInventory& labels);
/// Uses an inventory built from the sentence itself.
Derivation static_oracle_derivation(const Sentence& gold);

}  // namespace udscheme
