#include "udscheme/treebank.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace udscheme {

namespace {

std::string_view field_or_empty(std::string_view f) { return f == "_" ? std::string_view{} : f; }

std::string column(std::string_view f) { return std::string(field_or_empty(f)); }

std::string_view out(const std::string& s) { return s.empty() ? std::string_view("_") : s; }

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(start));
      break;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cols;
}

std::optional<int> to_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

class BlockBuilder {
 public:
  bool empty() const { return lines_ == 0 && sentence_.comments.empty(); }

  void comment(std::string_view text) {
    sentence_.comments.push_back({lines_, std::string(text)});
  }

  void word_line(std::string_view line, std::size_t lineno) {
    if (start_line_ == 0) start_line_ = lineno;
    auto cols = split_tabs(line);
    if (cols.size() != 10) {
      throw ConlluError(lineno, "expected 10 tab-separated columns, found " + std::to_string(cols.size()));
    }
    std::string_view id = cols[0];
    if (id.find('.') != std::string_view::npos) {
      throw ConlluError(lineno, "empty nodes (id '" + std::string(id) + "') are not part of UD v1");
    }
    if (auto dash = id.find('-'); dash != std::string_view::npos) {
      auto a = to_int(id.substr(0, dash));
      auto b = to_int(id.substr(dash + 1));
      if (!a || !b || *a < 1 || *b < *a) {
        throw ConlluError(lineno, "malformed multiword id '" + std::string(id) + "'");
      }
      MultiwordRange r{*a, *b, column(cols[1]), {}, column(cols[9])};
      for (std::size_t i = 2; i < 9; ++i) r.middle.emplace_back(cols[i]);
      sentence_.mwt_ranges.push_back(std::move(r));
      ++lines_;
      return;
    }
    auto num = to_int(id);
    if (!num) throw ConlluError(lineno, "non-integer id '" + std::string(id) + "'");
    int expected = static_cast<int>(sentence_.tokens.size()) + 1;
    if (*num < expected) throw ConlluError(lineno, "duplicate id " + std::to_string(*num));
    if (*num != expected) {
      throw ConlluError(lineno, "non-contiguous id " + std::to_string(*num) + ", expected " +
                                    std::to_string(expected));
    }
    auto head = to_int(cols[6]);
    if (!head) throw ConlluError(lineno, "non-integer head '" + std::string(cols[6]) + "'");
    if (*head < 0) throw ConlluError(lineno, "head out of range: " + std::to_string(*head));
    Token t;
    t.id = *num;
    t.form = column(cols[1]);
    t.lemma = column(cols[2]);
    t.upos = column(cols[3]);
    t.xpos = column(cols[4]);
    t.feats = column(cols[5]);
    t.head = *head;
    t.deprel = column(cols[7]);
    t.deps = column(cols[8]);
    t.misc = column(cols[9]);
    sentence_.tokens.push_back(std::move(t));
    token_lines_.push_back(lineno);
    ++lines_;
  }

  Sentence finish(std::size_t lineno) {
    if (sentence_.tokens.empty()) throw ConlluError(lineno, "sentence block without word lines");
    const int n = static_cast<int>(sentence_.tokens.size());
    for (std::size_t i = 0; i < sentence_.tokens.size(); ++i) {
      if (sentence_.tokens[i].head > n) {
        throw ConlluError(token_lines_[i], "head out of range: " + std::to_string(sentence_.tokens[i].head));
      }
    }
    for (const auto& r : sentence_.mwt_ranges) {
      if (r.last > n) throw ConlluError(start_line_, "multiword range exceeds sentence length");
    }
    auto report = validate_tree(sentence_);
    if (!report.ok()) throw ConlluError(start_line_, "invalid tree: " + report.summary());
    Sentence done = std::move(sentence_);
    *this = BlockBuilder{};
    return done;
  }

 private:
  Sentence sentence_;
  std::vector<std::size_t> token_lines_;
  std::size_t lines_ = 0;
  std::size_t start_line_ = 0;
};

}  // namespace

bool same_tree(const Sentence& a, const Sentence& b) {
  if (a.tokens.size() != b.tokens.size()) return false;
  for (std::size_t i = 0; i < a.tokens.size(); ++i) {
    if (a.tokens[i].head != b.tokens[i].head || a.tokens[i].deprel != b.tokens[i].deprel) return false;
  }
  return true;
}

std::vector<Sentence> parse_conllu(std::string_view text) {
  std::vector<Sentence> sentences;
  BlockBuilder block;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      if (!block.empty()) sentences.push_back(block.finish(lineno));
      continue;
    }
    if (line.front() == '#') {
      block.comment(line.substr(1));
      continue;
    }
    block.word_line(line, lineno);
  }
  if (!block.empty()) sentences.push_back(block.finish(lineno + 1));
  return sentences;
}

std::vector<Sentence> read_conllu_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_conllu(buf.str());
  } catch (const ConlluError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string write_conllu(const std::vector<Sentence>& sentences) {
  std::string text;
  for (std::size_t si = 0; si < sentences.size(); ++si) {
    const Sentence& s = sentences[si];
    auto report = validate_tree(s);
    if (!report.ok()) {
      throw std::invalid_argument("sentence " + std::to_string(si) + " is not a valid tree: " + report.summary());
    }
    std::size_t emitted = 0;
    std::size_t next_comment = 0;
    auto flush_comments = [&] {
      while (next_comment < s.comments.size() && s.comments[next_comment].position <= emitted) {
        text += '#';
        text += s.comments[next_comment].text;
        text += '\n';
        ++next_comment;
      }
    };
    std::size_t next_range = 0;
    for (const Token& t : s.tokens) {
      while (next_range < s.mwt_ranges.size() && s.mwt_ranges[next_range].first <= t.id) {
        flush_comments();
        const auto& r = s.mwt_ranges[next_range++];
        text += std::to_string(r.first) + "-" + std::to_string(r.last) + "\t";
        text += out(r.form);
        for (const auto& m : r.middle) {
          text += '\t';
          text += m;
        }
        text += '\t';
        text += out(r.misc);
        text += '\n';
        ++emitted;
      }
      flush_comments();
      text += std::to_string(t.id);
      for (std::string_view col : {out(t.form), out(t.lemma), out(t.upos), out(t.xpos), out(t.feats)}) {
        text += '\t';
        text += col;
      }
      text += '\t';
      text += std::to_string(t.head);
      for (std::string_view col : {out(t.deprel), out(t.deps), out(t.misc)}) {
        text += '\t';
        text += col;
      }
      text += '\n';
      ++emitted;
    }
    emitted = static_cast<std::size_t>(-1);
    flush_comments();
    text += '\n';
  }
  return text;
}

void write_conllu_file(const std::string& path, const std::vector<Sentence>& sentences) {
  std::string text = write_conllu(sentences);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kNoRoot: return "no-root";
    case ViolationKind::kMultipleRoots: return "multiple-roots";
    case ViolationKind::kCycle: return "cycle";
    case ViolationKind::kHeadOutOfRange: return "head-out-of-range";
    case ViolationKind::kSelfLoop: return "self-loop";
    case ViolationKind::kNonContiguousIds: return "non-contiguous-ids";
    case ViolationKind::kMissingDeprel: return "missing-deprel";
  }
  return "unknown";
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::summary() const {
  std::string s;
  for (const auto& v : violations) {
    if (!s.empty()) s += "; ";
    s += to_string(v.kind);
    if (v.token) s += " at " + std::to_string(*v.token);
  }
  return s;
}

ValidationReport validate_tree(const Sentence& s) {
  ValidationReport report;
  auto add = [&](std::optional<int> tok, ViolationKind kind, std::string msg) {
    report.violations.push_back({tok, kind, std::move(msg)});
  };
  const int n = static_cast<int>(s.tokens.size());
  int roots = 0;
  bool ranges_ok = true;
  for (int i = 0; i < n; ++i) {
    const Token& t = s.tokens[static_cast<std::size_t>(i)];
    if (t.id != i + 1) {
      add(t.id, ViolationKind::kNonContiguousIds, "expected id " + std::to_string(i + 1));
    }
    if (t.head < 0 || t.head > n) {
      add(t.id, ViolationKind::kHeadOutOfRange, "head " + std::to_string(t.head));
      ranges_ok = false;
      continue;
    }
    if (t.head == i + 1) {
      add(t.id, ViolationKind::kSelfLoop, "token heads itself");
      ranges_ok = false;
    }
    if (t.head == 0) ++roots;
    if (t.deprel.empty()) add(t.id, ViolationKind::kMissingDeprel, "empty deprel");
  }
  if (roots == 0) add(std::nullopt, ViolationKind::kNoRoot, "no token attached to the root");
  if (roots > 1) add(std::nullopt, ViolationKind::kMultipleRoots, std::to_string(roots) + " root tokens");
  if (!ranges_ok) return report;

  // Walk up from each token; a token that cannot reach 0 sits on or under a cycle.
  std::vector<int> state(static_cast<std::size_t>(n + 1), 0);  // 0 unknown, 1 in progress, 2 reaches root
  state[0] = 2;
  bool cyclic = false;
  int first_bad = 0;
  for (int i = 1; i <= n; ++i) {
    std::vector<int> path;
    int cur = i;
    while (state[static_cast<std::size_t>(cur)] == 0) {
      state[static_cast<std::size_t>(cur)] = 1;
      path.push_back(cur);
      cur = s.tokens[static_cast<std::size_t>(cur - 1)].head;
    }
    int verdict = state[static_cast<std::size_t>(cur)] == 2 ? 2 : 3;
    if (verdict == 3 && !cyclic) {
      cyclic = true;
      first_bad = i;
    }
    for (int p : path) state[static_cast<std::size_t>(p)] = verdict;
  }
  if (cyclic) add(first_bad, ViolationKind::kCycle, "token does not reach the root");
  return report;
}

std::vector<int> heads_of(const Sentence& s) {
  std::vector<int> heads(s.tokens.size() + 1, -1);
  for (const Token& t : s.tokens) heads[static_cast<std::size_t>(t.id)] = t.head;
  return heads;
}

std::vector<std::vector<int>> children_of(const Sentence& s) {
  std::vector<std::vector<int>> kids(s.tokens.size() + 1);
  for (const Token& t : s.tokens) {
    if (t.head >= 0 && t.head <= static_cast<int>(s.tokens.size())) kids[static_cast<std::size_t>(t.head)].push_back(t.id);
  }
  return kids;
}

bool is_projective(const Sentence& s) {
  const auto heads = heads_of(s);
  const int n = static_cast<int>(s.tokens.size());
  auto dominated_by = [&](int node, int ancestor) {
    for (int cur = node, steps = 0; cur > 0 && steps <= n; cur = heads[static_cast<std::size_t>(cur)], ++steps) {
      if (cur == ancestor) return true;
    }
    return ancestor == 0;
  };
  for (int d = 1; d <= n; ++d) {
    int h = heads[static_cast<std::size_t>(d)];
    int lo = std::min(h, d), hi = std::max(h, d);
    for (int k = lo + 1; k < hi; ++k) {
      if (!dominated_by(k, h)) return false;
    }
  }
  return true;
}

}  // namespace udscheme
