#pragma once

// Arc-eager transition system: configurations, actions, label inventory.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "udscheme/treebank.hpp"

namespace udscheme {

// Declaration order is the tie-break priority used everywhere.
enum class ActionKind : std::uint8_t { kShift = 0, kReduce = 1, kLeftArc = 2, kRightArc = 3 };

inline constexpr std::array<ActionKind, 4> kActionKinds = {ActionKind::kShift, ActionKind::kReduce,
                                                           ActionKind::kLeftArc, ActionKind::kRightArc};

char action_symbol(ActionKind kind);  // S, R, L, A
std::string_view to_string(ActionKind kind);

/// Sorted list of dependency labels; label ids index into it.
class LabelInventory {
 public:
  LabelInventory() = default;
  explicit LabelInventory(std::vector<std::string> labels);

  static LabelInventory from_corpus(const std::vector<Sentence>& corpus);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  const std::string& name(int id) const { return labels_.at(static_cast<std::size_t>(id)); }
  std::optional<int> find(std::string_view label) const;
  /// find() or -1.
  int id_or_unknown(std::string_view label) const;
  const std::vector<std::string>& names() const { return labels_; }

  bool operator==(const LabelInventory&) const = default;

 private:
  std::vector<std::string> labels_;
};

struct Action {
  ActionKind kind = ActionKind::kShift;
  int label = -1;  // set iff kind is an arc action

  static Action shift() { return {ActionKind::kShift, -1}; }
  static Action reduce() { return {ActionKind::kReduce, -1}; }
  static Action left(int label) { return {ActionKind::kLeftArc, label}; }
  static Action right(int label) { return {ActionKind::kRightArc, label}; }

  bool is_arc() const { return kind == ActionKind::kLeftArc || kind == ActionKind::kRightArc; }
  bool operator==(const Action&) const = default;
};

/// Dense action index: SHIFT, REDUCE, LEFT(0..L-1), RIGHT(0..L-1). Index order
/// equals (kind, label) lexicographic order because labels are sorted.
std::size_t action_count(std::size_t num_labels);
std::size_t action_index(const Action& a, std::size_t num_labels);
Action action_from_index(std::size_t index, std::size_t num_labels);

struct Derivation {
  std::vector<Action> actions;
  std::size_t length = 0;  // sentence length
};

/// Set of action kinds, one bit per kind.
class KindSet {
 public:
  void insert(ActionKind k) { bits_ |= bit(k); }
  bool contains(ActionKind k) const { return (bits_ & bit(k)) != 0; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const;
  bool operator==(const KindSet&) const = default;

 private:
  static std::uint8_t bit(ActionKind k) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(k)); }
  std::uint8_t bits_ = 0;
};

struct Arc {
  int head;
  int dependent;
  int label;
  bool operator==(const Arc&) const = default;
};

/// Parser state. The buffer is always a suffix of the sentence, so it is
/// stored as the id of its front token.
class Configuration {
 public:
  explicit Configuration(std::size_t n);

  std::size_t length() const { return n_; }
  const std::vector<int>& stack() const { return stack_; }
  int stack_top() const { return stack_.back(); }

  bool buffer_empty() const { return front_ > static_cast<int>(n_); }
  int buffer_front() const { return front_; }  // > length() when empty
  std::size_t buffer_size() const { return buffer_empty() ? 0 : n_ - static_cast<std::size_t>(front_) + 1; }
  /// Token id at buffer offset i, or -1 past the end.
  int buffer_at(std::size_t i) const;
  std::vector<int> buffer() const;

  bool terminal() const { return buffer_empty(); }

  int head(int id) const { return heads_[static_cast<std::size_t>(id)]; }
  int label(int id) const { return labels_[static_cast<std::size_t>(id)]; }
  bool has_head(int id) const { return heads_[static_cast<std::size_t>(id)] >= 0; }
  /// Dependents of id in surface order.
  const std::vector<int>& children(int id) const { return children_[static_cast<std::size_t>(id)]; }
  std::vector<Arc> arcs() const;

  /// Internal mutation used by apply_action; callers go through apply_action.
  void push_front_to_stack();
  void pop();
  void attach(int head, int dependent, int label);

  bool operator==(const Configuration&) const = default;

 private:
  std::size_t n_;
  std::vector<int> stack_;
  int front_;
  std::vector<int> heads_;
  std::vector<int> labels_;
  std::vector<std::vector<int>> children_;
};

Configuration initial_config(const Sentence& s);
Configuration initial_config(std::size_t n);

KindSet valid_actions(const Configuration& c);
bool is_valid(const Configuration& c, ActionKind kind);

class InvalidAction : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Applies a valid action in place; throws InvalidAction otherwise.
void apply_in_place(Configuration& c, const Action& a);
Configuration apply_action(const Configuration& c, const Action& a);

}  // namespace udscheme
