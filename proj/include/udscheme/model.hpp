#pragma once

// Averaged perceptron weights: one dense row of action weights per hashed
// feature key.
//
// Averaging is lazy. With `ticks` completed training steps, an update of delta
// also adds ticks * delta to a running total; the average over all per-step
// snapshots is then weights - totals / ticks.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "udscheme/transition.hpp"

namespace udscheme {

class Model {
 public:
  Model() = default;
  explicit Model(LabelInventory labels);

  const LabelInventory& labels() const { return labels_; }
  std::size_t num_actions() const { return actions_; }
  std::size_t num_features() const { return index_.size(); }
  std::int64_t ticks() const { return ticks_; }

  /// scores[a] = sum of the rows of all known keys. scores.size() == num_actions().
  void score(std::span<const std::uint64_t> keys, std::span<double> scores) const;

  void update(std::span<const std::uint64_t> keys, std::size_t action, double delta);
  /// Marks the end of one training step.
  void tick() { ++ticks_; }

  double weight(std::uint64_t key, std::size_t action) const;
  /// Running average over all completed steps (the current weight if none).
  double averaged_weight(std::uint64_t key, std::size_t action) const;

  /// Copy whose weights are the averaged weights; its own history is reset.
  Model averaged() const;

  void save(std::ostream& out) const;
  static Model load(std::istream& in);
  void save_file(const std::string& path) const;
  static Model load_file(const std::string& path);

  bool operator==(const Model&) const = default;

 private:
  double* row(std::uint64_t key);
  const double* find_row(std::uint64_t key) const;

  LabelInventory labels_;
  std::size_t actions_ = 0;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::vector<double> weights_;
  std::vector<double> totals_;
  std::int64_t ticks_ = 0;
};

}  // namespace udscheme
