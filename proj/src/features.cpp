#include "udscheme/features.hpp"

#include <algorithm>

namespace udscheme {

namespace {

// Views of the configuration needed by the templates.
class Context {
 public:
  Context(const Configuration& c, const Sentence& s, const LabelInventory& labels)
      : c_(c), s_(s), labels_(labels) {
    s0 = c.stack_top();
    n0 = c.buffer_at(0);
    n1 = c.buffer_at(1);
    n2 = c.buffer_at(2);
    s0h = head(s0);
    s0h2 = head(s0h);
    s0l = left_child(s0, 0);
    s0l2 = left_child(s0, 1);
    s0r = right_child(s0, 0);
    s0r2 = right_child(s0, 1);
    n0l = left_child(n0, 0);
    n0l2 = left_child(n0, 1);
  }

  std::string w(int id) const {
    if (id == 0) return std::string(kRootValue);
    if (id < 0) return std::string(kNoneValue);
    return s_.at(id).form;
  }
  std::string p(int id) const {
    if (id == 0) return std::string(kRootValue);
    if (id < 0) return std::string(kNoneValue);
    return s_.at(id).upos;
  }
  std::string l(int id) const {
    if (id <= 0 || !c_.has_head(id)) return std::string(kNoneValue);
    int lab = c_.label(id);
    return lab >= 0 && static_cast<std::size_t>(lab) < labels_.size() ? labels_.name(lab) : std::string(kNoneValue);
  }
  std::string valency_left(int id) const { return id < 0 ? std::string(kNoneValue) : std::to_string(count_side(id, true)); }
  std::string valency_right(int id) const { return id < 0 ? std::string(kNoneValue) : std::to_string(count_side(id, false)); }
  std::string label_set(int id, bool left) const {
    if (id < 0) return std::string(kNoneValue);
    std::vector<std::string> seen;
    for (int k : c_.children(id)) {
      if ((k < id) == left) seen.push_back(l(k));
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    std::string joined;
    for (const auto& x : seen) {
      if (!joined.empty()) joined += ',';
      joined += x;
    }
    return joined;
  }
  std::string distance() const {
    if (s0 < 0 || n0 < 0) return std::string(kNoneValue);
    return std::to_string(std::min(n0 - s0, 10));
  }

  int s0, n0, n1, n2, s0h, s0h2, s0l, s0l2, s0r, s0r2, n0l, n0l2;

 private:
  int head(int id) const { return id > 0 && c_.has_head(id) ? c_.head(id) : -1; }
  int left_child(int id, std::size_t nth) const {
    if (id < 0) return -1;
    const auto& kids = c_.children(id);
    std::size_t seen = 0;
    for (int k : kids) {
      if (k >= id) break;
      if (seen++ == nth) return k;
    }
    return -1;
  }
  int right_child(int id, std::size_t nth) const {
    if (id < 0) return -1;
    const auto& kids = c_.children(id);
    std::size_t seen = 0;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      if (*it <= id) break;
      if (seen++ == nth) return *it;
    }
    return -1;
  }
  int count_side(int id, bool left) const {
    int n = 0;
    for (int k : c_.children(id)) n += ((k < id) == left) ? 1 : 0;
    return n;
  }

  const Configuration& c_;
  const Sentence& s_;
  const LabelInventory& labels_;
};

template <typename Emit>
void for_each_feature(const Configuration& c, const Sentence& s, const LabelInventory& labels, Emit&& emit) {
  const Context x(c, s, labels);
  const auto sep = std::string("\t");
  auto f = [&](std::string_view name, const std::string& value) { emit(name, value); };

  const std::string s0w = x.w(x.s0), s0p = x.p(x.s0);
  const std::string n0w = x.w(x.n0), n0p = x.p(x.n0);
  const std::string n1w = x.w(x.n1), n1p = x.p(x.n1);
  const std::string n2w = x.w(x.n2), n2p = x.p(x.n2);
  const std::string d = x.distance();

  // unigrams
  f("S0w", s0w);
  f("S0p", s0p);
  f("S0wp", s0w + sep + s0p);
  f("N0w", n0w);
  f("N0p", n0p);
  f("N0wp", n0w + sep + n0p);
  f("N1w", n1w);
  f("N1p", n1p);
  f("N1wp", n1w + sep + n1p);
  f("N2w", n2w);
  f("N2p", n2p);
  f("N2wp", n2w + sep + n2p);
  // pairs
  f("S0wpN0wp", s0w + sep + s0p + sep + n0w + sep + n0p);
  f("S0wpN0w", s0w + sep + s0p + sep + n0w);
  f("S0wN0wp", s0w + sep + n0w + sep + n0p);
  f("S0wpN0p", s0w + sep + s0p + sep + n0p);
  f("S0pN0wp", s0p + sep + n0w + sep + n0p);
  f("S0wN0w", s0w + sep + n0w);
  f("S0pN0p", s0p + sep + n0p);
  f("N0pN1p", n0p + sep + n1p);
  // triples
  f("N0pN1pN2p", n0p + sep + n1p + sep + n2p);
  f("S0pN0pN1p", s0p + sep + n0p + sep + n1p);
  f("S0hpS0pN0p", x.p(x.s0h) + sep + s0p + sep + n0p);
  f("S0pS0lpN0p", s0p + sep + x.p(x.s0l) + sep + n0p);
  f("S0pS0rpN0p", s0p + sep + x.p(x.s0r) + sep + n0p);
  f("S0pN0pN0lp", s0p + sep + n0p + sep + x.p(x.n0l));
  // distance
  f("S0wd", s0w + sep + d);
  f("S0pd", s0p + sep + d);
  f("N0wd", n0w + sep + d);
  f("N0pd", n0p + sep + d);
  f("S0wN0wd", s0w + sep + n0w + sep + d);
  f("S0pN0pd", s0p + sep + n0p + sep + d);
  // valency
  f("S0wvr", s0w + sep + x.valency_right(x.s0));
  f("S0pvr", s0p + sep + x.valency_right(x.s0));
  f("S0wvl", s0w + sep + x.valency_left(x.s0));
  f("S0pvl", s0p + sep + x.valency_left(x.s0));
  f("N0wvl", n0w + sep + x.valency_left(x.n0));
  f("N0pvl", n0p + sep + x.valency_left(x.n0));
  // second-order unigrams
  f("S0hw", x.w(x.s0h));
  f("S0hp", x.p(x.s0h));
  f("S0l", x.l(x.s0));
  f("S0lw", x.w(x.s0l));
  f("S0lp", x.p(x.s0l));
  f("S0ll", x.l(x.s0l));
  f("S0rw", x.w(x.s0r));
  f("S0rp", x.p(x.s0r));
  f("S0rl", x.l(x.s0r));
  f("N0lw", x.w(x.n0l));
  f("N0lp", x.p(x.n0l));
  f("N0ll", x.l(x.n0l));
  // third-order
  f("S0h2w", x.w(x.s0h2));
  f("S0h2p", x.p(x.s0h2));
  f("S0hl", x.l(x.s0h));
  f("S0l2w", x.w(x.s0l2));
  f("S0l2p", x.p(x.s0l2));
  f("S0l2l", x.l(x.s0l2));
  f("S0r2w", x.w(x.s0r2));
  f("S0r2p", x.p(x.s0r2));
  f("S0r2l", x.l(x.s0r2));
  f("N0l2w", x.w(x.n0l2));
  f("N0l2p", x.p(x.n0l2));
  f("N0l2l", x.l(x.n0l2));
  f("S0pS0lpS0l2p", s0p + sep + x.p(x.s0l) + sep + x.p(x.s0l2));
  f("S0pS0rpS0r2p", s0p + sep + x.p(x.s0r) + sep + x.p(x.s0r2));
  f("S0pS0hpS0h2p", s0p + sep + x.p(x.s0h) + sep + x.p(x.s0h2));
  f("N0pN0lpN0l2p", n0p + sep + x.p(x.n0l) + sep + x.p(x.n0l2));
  // label sets
  f("S0wsr", s0w + sep + x.label_set(x.s0, false));
  f("S0psr", s0p + sep + x.label_set(x.s0, false));
  f("S0wsl", s0w + sep + x.label_set(x.s0, true));
  f("S0psl", s0p + sep + x.label_set(x.s0, true));
  f("N0wsl", n0w + sep + x.label_set(x.n0, true));
  f("N0psl", n0p + sep + x.label_set(x.n0, true));
  // bias
  f("BIAS", "");
}

}  // namespace

std::size_t feature_template_count() {
  static const std::size_t count = [] {
    Sentence s;
    s.tokens.push_back(Token{1, "x", "", "X", "", "", 0, "root", "", ""});
    std::size_t n = 0;
    Configuration c(1);
    for_each_feature(c, s, LabelInventory{}, [&](std::string_view, const std::string&) { ++n; });
    return n;
  }();
  return count;
}

std::vector<std::string> extract_features(const Configuration& c, const Sentence& s, const LabelInventory& labels) {
  std::vector<std::string> out;
  out.reserve(80);
  for_each_feature(c, s, labels, [&](std::string_view name, const std::string& value) {
    std::string f(name);
    f += '=';
    f += value;
    out.push_back(std::move(f));
  });
  return out;
}

std::uint64_t feature_hash(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

void extract_feature_keys(const Configuration& c, const Sentence& s, const LabelInventory& labels,
                          std::vector<std::uint64_t>& out) {
  out.clear();
  for_each_feature(c, s, labels, [&](std::string_view name, const std::string& value) {
    std::uint64_t h = feature_hash(name);
    h ^= 0x3d;  // '='
    h *= 1099511628211ull;
    for (unsigned char ch : value) {
      h ^= ch;
      h *= 1099511628211ull;
    }
    out.push_back(h);
  });
}

}  // namespace udscheme
