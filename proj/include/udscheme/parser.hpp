#pragma once

// Greedy arc-eager parser trained with a dynamic oracle and an averaged
// perceptron.

#include <cstdint>
#include <vector>

#include "udscheme/model.hpp"
#include "udscheme/treebank.hpp"

namespace udscheme {

struct Hyperparameters {
  int epochs = 10;
  // After epoch explore_k, follow the model's own prediction with probability explore_p.
  int explore_k = 1;
  double explore_p = 0.9;
};

struct TrainingReport {
  std::vector<double> dev_uas;  // per epoch, empty without a dev set
  int best_epoch = 0;           // 1-based; the last epoch without a dev set
  std::size_t updates = 0;
};

class TrainingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Returns the averaged model (the best dev-UAS epoch when dev is non-empty).
Model train(const std::vector<Sentence>& train_set, const std::vector<Sentence>& dev_set, const Hyperparameters& hp,
            std::uint64_t seed, TrainingReport* report = nullptr);

/// Copy of s with predicted heads and labels; always a valid tree.
Sentence parse(const Model& model, const Sentence& s);
std::vector<Sentence> parse_corpus(const Model& model, const std::vector<Sentence>& sentences);

}  // namespace udscheme
