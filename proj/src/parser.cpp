#include "udscheme/parser.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <random>

#include "udscheme/eval.hpp"
#include "udscheme/features.hpp"
#include "udscheme/oracle.hpp"

namespace udscheme {

namespace {

bool action_valid(const Configuration& c, const Action& a) { return is_valid(c, a.kind); }

// Highest-scoring action satisfying pred; ties go to the lowest action index.
template <typename Pred>
std::optional<std::size_t> best_action(const std::vector<double>& scores, std::size_t num_labels, Pred&& pred) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!pred(action_from_index(i, num_labels))) continue;
    if (!best || scores[i] > scores[*best]) best = i;
  }
  return best;
}

bool is_gold_arc(const Configuration& c, const Action& a, const GoldTree& g) {
  if (a.kind == ActionKind::kLeftArc) return g.heads[static_cast<std::size_t>(c.stack_top())] == c.buffer_front();
  if (a.kind == ActionKind::kRightArc) return g.heads[static_cast<std::size_t>(c.buffer_front())] == c.stack_top();
  return false;
}

bool root_has_child(const Configuration& c) { return !c.children(0).empty(); }

}  // namespace

Model train(const std::vector<Sentence>& train_set, const std::vector<Sentence>& dev_set, const Hyperparameters& hp,
            std::uint64_t seed, TrainingReport* report) {
  if (train_set.empty()) throw TrainingError("empty training set");
  if (hp.epochs < 1) throw TrainingError("epochs must be at least 1");
  LabelInventory labels = LabelInventory::from_corpus(train_set);
  if (labels.empty()) throw TrainingError("empty label inventory");

  Model model(labels);
  const std::size_t num_labels = labels.size();
  std::vector<GoldTree> gold;
  gold.reserve(train_set.size());
  for (const auto& s : train_set) gold.push_back(GoldTree::from(s, labels));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);

  std::vector<std::uint64_t> keys;
  std::vector<double> scores(model.num_actions());
  TrainingReport local;
  std::optional<Model> best;
  double best_uas = -1.0;

  for (int epoch = 1; epoch <= hp.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t idx : order) {
      const Sentence& s = train_set[idx];
      const GoldTree& g = gold[idx];
      Configuration c = initial_config(s);
      while (!c.terminal()) {
        extract_feature_keys(c, s, labels, keys);
        model.score(keys, scores);
        const KindCosts costs = action_costs(c, g);
        int min_cost = std::numeric_limits<int>::max();
        for (int cost : costs) {
          if (cost >= 0) min_cost = std::min(min_cost, cost);
        }
        auto correct = [&](const Action& a) {
          if (!action_valid(c, a) || costs[static_cast<std::size_t>(a.kind)] != min_cost) return false;
          if (a.is_arc() && is_gold_arc(c, a, g)) {
            const int want = gold_label_for(c, a.kind, g);
            return want < 0 || a.label == want;
          }
          return true;
        };
        const std::size_t predicted = *best_action(scores, num_labels, [&](const Action& a) { return action_valid(c, a); });
        const std::size_t oracle = *best_action(scores, num_labels, correct);
        const Action predicted_action = action_from_index(predicted, num_labels);
        if (!correct(predicted_action)) {
          model.update(keys, oracle, 1.0);
          model.update(keys, predicted, -1.0);
          ++local.updates;
        }
        model.tick();
        bool explore = epoch > hp.explore_k && coin(rng) < hp.explore_p;
        apply_in_place(c, explore ? predicted_action : action_from_index(oracle, num_labels));
      }
    }
    if (!dev_set.empty()) {
      Model snapshot = model.averaged();
      const double dev = corpus_uas(dev_set, parse_corpus(snapshot, dev_set)).percent();
      local.dev_uas.push_back(dev);
      if (dev > best_uas) {
        best_uas = dev;
        best = std::move(snapshot);
        local.best_epoch = epoch;
      }
    }
  }
  if (!best) {
    best = model.averaged();
    local.best_epoch = hp.epochs;
  }
  if (report) *report = std::move(local);
  return std::move(*best);
}

Sentence parse(const Model& model, const Sentence& s) {
  const LabelInventory& labels = model.labels();
  const std::size_t num_labels = labels.size();
  Configuration c = initial_config(s);
  std::vector<std::uint64_t> keys;
  std::vector<double> scores(model.num_actions());
  while (!c.terminal()) {
    extract_feature_keys(c, s, labels, keys);
    model.score(keys, scores);
    // A second arc from the artificial root would give the tree two roots.
    auto allowed = [&](const Action& a) {
      if (!is_valid(c, a.kind)) return false;
      return !(a.kind == ActionKind::kRightArc && c.stack_top() == 0 && root_has_child(c));
    };
    apply_in_place(c, action_from_index(*best_action(scores, num_labels, allowed), num_labels));
  }

  Sentence out = s;
  int root_token = c.children(0).empty() ? 0 : c.children(0).front();
  for (Token& t : out.tokens) {
    if (c.has_head(t.id)) {
      t.head = c.head(t.id);
      t.deprel = labels.name(c.label(t.id));
    } else if (root_token == 0) {
      root_token = t.id;
      t.head = 0;
      t.deprel = "root";
    } else {
      t.head = root_token;
      t.deprel = "dep";
    }
  }
  return out;
}

std::vector<Sentence> parse_corpus(const Model& model, const std::vector<Sentence>& sentences) {
  std::vector<Sentence> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(parse(model, s));
  return out;
}

}  // namespace udscheme
