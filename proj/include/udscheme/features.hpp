#pragma once

// Rich non-local feature templates for arc-eager parsing (stack top S0,
// buffer N0..N2, heads, leftmost/rightmost children, valency, label sets).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "udscheme/transition.hpp"
#include "udscheme/treebank.hpp"

namespace udscheme {

inline constexpr std::string_view kRootValue = "<ROOT>";
inline constexpr std::string_view kNoneValue = "<NONE>";

/// Number of templates; every configuration yields exactly this many strings.
std::size_t feature_template_count();

/// "name=value" strings in template order.
std::vector<std::string> extract_features(const Configuration& c, const Sentence& s, const LabelInventory& labels);

/// 64-bit FNV-1a; stable across platforms, used as the model key.
std::uint64_t feature_hash(std::string_view text);

/// Hashed form of extract_features, appended to out after clearing it.
void extract_feature_keys(const Configuration& c, const Sentence& s, const LabelInventory& labels,
                          std::vector<std::uint64_t>& out);

}  // namespace udscheme
