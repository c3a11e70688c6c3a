#include "udscheme/transition.hpp"

#include <algorithm>
#include <set>

namespace udscheme {

char action_symbol(ActionKind kind) {
  switch (kind) {
    case ActionKind::kShift: return 'S';
    case ActionKind::kReduce: return 'R';
    case ActionKind::kLeftArc: return 'L';
    case ActionKind::kRightArc: return 'A';
  }
  return '?';
}

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::kShift: return "SHIFT";
    case ActionKind::kReduce: return "REDUCE";
    case ActionKind::kLeftArc: return "LEFT_ARC";
    case ActionKind::kRightArc: return "RIGHT_ARC";
  }
  return "?";
}

LabelInventory::LabelInventory(std::vector<std::string> labels) : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end());
  labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
}

LabelInventory LabelInventory::from_corpus(const std::vector<Sentence>& corpus) {
  std::set<std::string> seen;
  for (const auto& s : corpus) {
    for (const auto& t : s.tokens) seen.insert(t.deprel);
  }
  return LabelInventory(std::vector<std::string>(seen.begin(), seen.end()));
}

std::optional<int> LabelInventory::find(std::string_view label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<int>(it - labels_.begin());
}

int LabelInventory::id_or_unknown(std::string_view label) const { return find(label).value_or(-1); }

std::size_t action_count(std::size_t num_labels) { return 2 + 2 * num_labels; }

std::size_t action_index(const Action& a, std::size_t num_labels) {
  switch (a.kind) {
    case ActionKind::kShift: return 0;
    case ActionKind::kReduce: return 1;
    case ActionKind::kLeftArc: return 2 + static_cast<std::size_t>(a.label);
    case ActionKind::kRightArc: return 2 + num_labels + static_cast<std::size_t>(a.label);
  }
  return 0;
}

Action action_from_index(std::size_t index, std::size_t num_labels) {
  if (index == 0) return Action::shift();
  if (index == 1) return Action::reduce();
  if (index < 2 + num_labels) return Action::left(static_cast<int>(index - 2));
  return Action::right(static_cast<int>(index - 2 - num_labels));
}

std::size_t KindSet::size() const {
  std::size_t n = 0;
  for (auto k : kActionKinds) n += contains(k) ? 1 : 0;
  return n;
}

Configuration::Configuration(std::size_t n)
    : n_(n), stack_{0}, front_(1), heads_(n + 1, -1), labels_(n + 1, -1), children_(n + 1) {}

int Configuration::buffer_at(std::size_t i) const {
  auto id = static_cast<std::size_t>(front_) + i;
  return id <= n_ ? static_cast<int>(id) : -1;
}

std::vector<int> Configuration::buffer() const {
  std::vector<int> b;
  for (int i = front_; i <= static_cast<int>(n_); ++i) b.push_back(i);
  return b;
}

std::vector<Arc> Configuration::arcs() const {
  std::vector<Arc> out;
  for (std::size_t d = 1; d <= n_; ++d) {
    if (heads_[d] >= 0) out.push_back({heads_[d], static_cast<int>(d), labels_[d]});
  }
  return out;
}

void Configuration::push_front_to_stack() { stack_.push_back(front_++); }

void Configuration::pop() { stack_.pop_back(); }

void Configuration::attach(int head, int dependent, int label) {
  heads_[static_cast<std::size_t>(dependent)] = head;
  labels_[static_cast<std::size_t>(dependent)] = label;
  auto& kids = children_[static_cast<std::size_t>(head)];
  kids.insert(std::upper_bound(kids.begin(), kids.end(), dependent), dependent);
}

Configuration initial_config(std::size_t n) { return Configuration(n); }

Configuration initial_config(const Sentence& s) { return Configuration(s.size()); }

bool is_valid(const Configuration& c, ActionKind kind) {
  const int top = c.stack_top();
  switch (kind) {
    case ActionKind::kShift: return !c.buffer_empty();
    case ActionKind::kReduce: return top != 0 && c.has_head(top);
    case ActionKind::kLeftArc: return !c.buffer_empty() && top != 0 && !c.has_head(top);
    case ActionKind::kRightArc: return !c.buffer_empty() && !c.stack().empty();
  }
  return false;
}

KindSet valid_actions(const Configuration& c) {
  KindSet set;
  for (auto k : kActionKinds) {
    if (is_valid(c, k)) set.insert(k);
  }
  return set;
}

void apply_in_place(Configuration& c, const Action& a) {
  if (!is_valid(c, a.kind)) throw InvalidAction(std::string(to_string(a.kind)) + " is not valid here");
  switch (a.kind) {
    case ActionKind::kShift: c.push_front_to_stack(); break;
    case ActionKind::kReduce: c.pop(); break;
    case ActionKind::kLeftArc:
      c.attach(c.buffer_front(), c.stack_top(), a.label);
      c.pop();
      break;
    case ActionKind::kRightArc:
      c.attach(c.stack_top(), c.buffer_front(), a.label);
      c.push_front_to_stack();
      break;
  }
}

Configuration apply_action(const Configuration& c, const Action& a) {
  Configuration next = c;
  apply_in_place(next, a);
  return next;
}

}  // namespace udscheme
