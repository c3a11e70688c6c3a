#include "trees.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

#ifndef UDSCHEME_TEST_DATA
#error "UDSCHEME_TEST_DATA must point at tests/data"
#endif

namespace testsupport {

using udscheme::ActionKind;

Sentence make_sentence(const std::vector<int>& heads, const std::vector<std::string>& labels,
                       const std::vector<std::string>& forms, const std::vector<std::string>& upos) {
  Sentence s;
  for (std::size_t i = 0; i < heads.size(); ++i) {
    udscheme::Token t;
    t.id = static_cast<int>(i + 1);
    t.form = i < forms.size() ? forms[i] : "w" + std::to_string(i + 1);
    t.upos = i < upos.size() ? upos[i] : "X";
    t.head = heads[i];
    t.deprel = i < labels.size() ? labels[i] : (heads[i] == 0 ? "root" : "dep");
    s.tokens.push_back(std::move(t));
  }
  return s;
}

std::vector<int> random_heads(std::mt19937_64& rng, int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> heads(static_cast<std::size_t>(n), 0);
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    heads[static_cast<std::size_t>(order[static_cast<std::size_t>(i)] - 1)] = order[static_cast<std::size_t>(pick(rng))];
  }
  return heads;
}

std::vector<int> random_projective_heads(std::mt19937_64& rng, int n) {
  std::vector<int> heads(static_cast<std::size_t>(n), 0);
  std::bernoulli_distribution cut(0.5);
  // Builds a projective tree over [l, r] and returns its root.
  std::function<int(int, int)> build = [&](int l, int r) -> int {
    std::uniform_int_distribution<int> pick(l, r);
    const int p = pick(rng);
    auto attach_chunks = [&](int a, int b) {
      int start = a;
      for (int i = a; i <= b; ++i) {
        if (i == b || cut(rng)) {
          heads[static_cast<std::size_t>(build(start, i) - 1)] = p;
          start = i + 1;
        }
      }
    };
    attach_chunks(l, p - 1);
    attach_chunks(p + 1, r);
    return p;
  };
  if (n > 0) heads[static_cast<std::size_t>(build(1, n) - 1)] = 0;
  return heads;
}

std::vector<std::vector<int>> all_trees(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> heads(static_cast<std::size_t>(n), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      if (std::count(heads.begin(), heads.end(), 0) != 1) return;
      for (int t = 1; t <= n; ++t) {  // reject cycles
        int cur = t, steps = 0;
        while (cur != 0 && steps <= n) {
          cur = heads[static_cast<std::size_t>(cur - 1)];
          ++steps;
        }
        if (cur != 0) return;
      }
      out.push_back(heads);
      return;
    }
    for (int h = 0; h <= n; ++h) {
      if (h == i + 1) continue;
      heads[static_cast<std::size_t>(i)] = h;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

Sentence random_labelled_tree(std::mt19937_64& rng, int n, bool projective) {
  static const std::vector<std::string> kLabels = {
      "case", "mark",  "det",   "mwe",  "goeswith", "name",   "cop",   "auxpass", "cc",    "conj",
      "nmod", "amod",  "nsubj", "dobj", "punct",    "advmod", "acl",   "appos",   "nummod", "nmod:poss",
      "conj", "cc",    "case",  "det",  "compound", "xcomp",  "aux",   "name",    "mwe",   "cop"};
  static const std::vector<std::string> kPos = {"NOUN", "VERB", "ADJ", "DET", "ADP", "PRON", "PUNCT", "CONJ", "AUX"};
  auto heads = projective ? random_projective_heads(rng, n) : random_heads(rng, n);
  std::uniform_int_distribution<std::size_t> label(0, kLabels.size() - 1), pos(0, kPos.size() - 1);
  std::uniform_int_distribution<int> digit(0, 9);
  Sentence s;
  for (int i = 0; i < n; ++i) {
    udscheme::Token t;
    t.id = i + 1;
    t.form = "f" + std::to_string(i + 1) + "x" + std::to_string(digit(rng));
    t.lemma = "l" + std::to_string(digit(rng));
    t.upos = kPos[pos(rng)];
    t.feats = digit(rng) < 5 ? "" : "Num=" + std::to_string(digit(rng));
    t.misc = digit(rng) < 5 ? "" : "SpaceAfter=No|k" + std::to_string(digit(rng));
    t.head = heads[static_cast<std::size_t>(i)];
    t.deprel = t.head == 0 ? "root" : kLabels[label(rng)];
    s.tokens.push_back(std::move(t));
  }
  return s;
}

bool crossing_free(const std::vector<int>& heads) {
  const int n = static_cast<int>(heads.size());
  for (int a = 1; a <= n; ++a) {
    const int l1 = std::min(a, heads[static_cast<std::size_t>(a - 1)]), r1 = std::max(a, heads[static_cast<std::size_t>(a - 1)]);
    for (int b = 1; b <= n; ++b) {
      const int l2 = std::min(b, heads[static_cast<std::size_t>(b - 1)]), r2 = std::max(b, heads[static_cast<std::size_t>(b - 1)]);
      if (l1 < l2 && l2 < r1 && r1 < r2) return false;
    }
  }
  return true;
}

// --- brute-force reachability oracle ---

bool BruteForceOracle::State::operator<(const State& o) const {
  return std::tie(front, stack, heads) < std::tie(o.front, o.stack, o.heads);
}

BruteForceOracle::BruteForceOracle(std::vector<int> gold_heads)
    : n_(static_cast<int>(gold_heads.size())), gold_(std::move(gold_heads)) {
  gold_.insert(gold_.begin(), -1);
}

BruteForceOracle::State BruteForceOracle::initial() const {
  State s;
  s.stack = {0};
  s.front = 1;
  s.heads.assign(static_cast<std::size_t>(n_ + 1), -1);
  return s;
}

bool BruteForceOracle::valid(const State& s, ActionKind k) const {
  const bool buffer = s.front <= n_;
  const int top = s.stack.back();
  switch (k) {
    case ActionKind::kShift: return buffer;
    case ActionKind::kReduce: return top != 0 && s.heads[static_cast<std::size_t>(top)] >= 0;
    case ActionKind::kLeftArc: return buffer && top != 0 && s.heads[static_cast<std::size_t>(top)] < 0;
    case ActionKind::kRightArc: return buffer;
  }
  return false;
}

std::pair<BruteForceOracle::State, int> BruteForceOracle::step(const State& s, ActionKind k) const {
  State next = s;
  int gain = 0;
  const int top = s.stack.back();
  switch (k) {
    case ActionKind::kShift:
      next.stack.push_back(next.front++);
      break;
    case ActionKind::kReduce:
      next.stack.pop_back();
      break;
    case ActionKind::kLeftArc:
      next.heads[static_cast<std::size_t>(top)] = s.front;
      gain = gold_[static_cast<std::size_t>(top)] == s.front;
      next.stack.pop_back();
      break;
    case ActionKind::kRightArc:
      next.heads[static_cast<std::size_t>(s.front)] = top;
      gain = gold_[static_cast<std::size_t>(s.front)] == top;
      next.stack.push_back(next.front++);
      break;
  }
  return {std::move(next), gain};
}

int BruteForceOracle::best(const State& s) {
  if (s.front > n_) return 0;
  if (auto it = memo_.find(s); it != memo_.end()) return it->second;
  int result = 0;
  for (auto k : udscheme::kActionKinds) {
    if (!valid(s, k)) continue;
    auto [next, gain] = step(s, k);
    result = std::max(result, gain + best(next));
  }
  memo_.emplace(s, result);
  return result;
}

int BruteForceOracle::cost(const State& s, ActionKind k) {
  if (!valid(s, k)) return -1;
  auto [next, gain] = step(s, k);
  return best(s) - (gain + best(next));
}

std::size_t brute_distinct_substrings(const std::vector<std::string>& strings) {
  std::set<std::string> seen;
  for (const auto& s : strings) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t len = 1; i + len <= s.size(); ++len) seen.insert(s.substr(i, len));
    }
  }
  return seen.size();
}

// --- reference Witten-Bell ---

namespace {
const std::string kBos = "<s>";
const std::string kEos = "</s>";
}  // namespace

ReferenceWittenBell::ReferenceWittenBell(const std::vector<std::vector<std::string>>& corpus) {
  for (const auto& sentence : corpus) {
    std::vector<std::string> padded = {kBos, kBos};
    padded.insert(padded.end(), sentence.begin(), sentence.end());
    padded.push_back(kEos);
    for (std::size_t i = 2; i < padded.size(); ++i) {
      const auto& w = padded[i];
      vocabulary.insert(w);
      counts_[{}][w] += 1;
      counts_[{padded[i - 1]}][w] += 1;
      counts_[{padded[i - 2], padded[i - 1]}][w] += 1;
    }
  }
}

double ReferenceWittenBell::level(const std::vector<std::string>& ctx, const std::string& w) const {
  double lower;
  if (ctx.empty()) {
    lower = 1.0 / (static_cast<double>(vocabulary.size()) + 1.0);
  } else {
    lower = level(std::vector<std::string>(ctx.begin() + 1, ctx.end()), w);
  }
  auto it = counts_.find(ctx);
  if (it == counts_.end()) return lower;
  double total = 0.0;
  for (const auto& [_, c] : it->second) total += c;
  const double types = static_cast<double>(it->second.size());
  const double lambda = total / (total + types);
  auto wc = it->second.find(w);
  const double ml = wc == it->second.end() ? 0.0 : wc->second / total;
  return lambda * ml + (1.0 - lambda) * lower;
}

double ReferenceWittenBell::prob(const std::string& u, const std::string& v, const std::string& w) const {
  return level({u, v}, w);
}

double ReferenceWittenBell::perplexity(const std::vector<std::vector<std::string>>& corpus) const {
  double log_sum = 0.0;
  double m = 0.0;
  for (const auto& sentence : corpus) {
    std::vector<std::string> padded = {kBos, kBos};
    padded.insert(padded.end(), sentence.begin(), sentence.end());
    padded.push_back(kEos);
    for (std::size_t i = 2; i < padded.size(); ++i) {
      log_sum += std::log2(prob(padded[i - 2], padded[i - 1], padded[i]));
      m += 1.0;
    }
  }
  return std::exp2(-log_sum / m);
}

// --- grammar corpus ---

namespace {

struct Builder {
  std::mt19937_64& rng;
  Sentence s;
  std::vector<std::pair<int, std::pair<int, std::string>>> pending;  // dependent -> (head, label)

  int word(const std::string& form, const std::string& pos) {
    udscheme::Token t;
    t.id = static_cast<int>(s.tokens.size()) + 1;
    t.form = form;
    t.lemma = form;
    t.upos = pos;
    s.tokens.push_back(t);
    return t.id;
  }
  void link(int dep, int head, const std::string& label) { pending.push_back({dep, {head, label}}); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng); }
  const std::string& pick(const std::vector<std::string>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  }

  // Returns the head of the phrase; depth bounds recursion.
  int noun_phrase(int depth) {
    static const std::vector<std::string> dets = {"the", "a", "this"};
    static const std::vector<std::string> adjs = {"red", "big", "old", "new", "small", "green"};
    static const std::vector<std::string> nouns = {"dog", "cat", "book", "house", "tree", "car", "city",
                                                   "river", "friend", "table", "garden", "letter"};
    static const std::vector<std::string> names = {"John", "Mary", "Paris", "Doe", "Smith", "Jr."};
    int head;
    if (chance(0.15)) {
      head = word(pick(names), "PROPN");
      const int extra = chance(0.5) ? 2 : 1;
      for (int i = 0; i < extra; ++i) link(word(pick(names), "PROPN"), head, "name");
    } else {
      int det = chance(0.75) ? word(pick(dets), "DET") : 0;
      int adj = chance(0.35) ? word(pick(adjs), "ADJ") : 0;
      head = word(pick(nouns), "NOUN");
      if (det) link(det, head, "det");
      if (adj) link(adj, head, "amod");
    }
    if (depth < 2 && chance(0.25)) {
      int adp = word(chance(0.5) ? "of" : "in", "ADP");
      int obj = noun_phrase(depth + 1);
      link(adp, obj, "case");
      link(obj, head, "nmod");
    }
    if (depth < 1 && chance(0.2)) {
      link(word(chance(0.7) ? "and" : "or", "CONJ"), head, "cc");
      link(noun_phrase(depth + 1), head, "conj");
    }
    return head;
  }

  Sentence sentence() {
    static const std::vector<std::string> verbs = {"sees", "likes", "finds", "takes", "wants", "reads", "builds"};
    static const std::vector<std::string> preds = {"nice", "happy", "large", "quiet"};
    static const std::vector<std::string> participles = {"seen", "taken", "found", "built"};
    const double r = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    int root;
    if (r < 0.2) {  // copula: NP is ADJ
      int subj = noun_phrase(0);
      int cop = word("is", "VERB");
      root = word(pick(preds), "ADJ");
      link(subj, root, "nsubj");
      link(cop, root, "cop");
    } else if (r < 0.3) {  // passive: NP was VERB-ed
      int subj = noun_phrase(0);
      int aux = word("was", "AUX");
      root = word(pick(participles), "VERB");
      link(subj, root, "nsubjpass");
      link(aux, root, "auxpass");
    } else {
      int subj = noun_phrase(0);
      root = word(pick(verbs), "VERB");
      link(subj, root, "nsubj");
      if (chance(0.25)) {  // NP wants to VERB NP
        int to = word("to", "PART");
        int comp = word(pick(verbs), "VERB");
        link(to, comp, "mark");
        link(comp, root, "xcomp");
        link(noun_phrase(0), comp, "dobj");
      } else {
        link(noun_phrase(0), root, "dobj");
      }
    }
    if (chance(0.2)) {  // because of NP / in spite of NP
      const bool three = chance(0.5);
      int first = word(three ? "in" : "because", "ADP");
      int second = word(three ? "spite" : "of", three ? "NOUN" : "ADP");
      int third = three ? word("of", "ADP") : 0;
      int obj = noun_phrase(1);
      link(first, obj, "case");
      link(second, first, "mwe");
      if (third) link(third, first, "mwe");
      link(obj, root, "nmod");
    }
    link(word(".", "PUNCT"), root, "punct");
    link(root, 0, "root");
    for (const auto& [dep, hl] : pending) {
      s.at(dep).head = hl.first;
      s.at(dep).deprel = hl.second;
    }
    return std::move(s);
  }
};

}  // namespace

std::vector<Sentence> grammar_corpus(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<Sentence> out;
  for (std::size_t i = 0; i < count; ++i) {
    Builder b{rng, {}, {}};
    out.push_back(b.sentence());
    out.back().comments.push_back({0, " sent_id = g" + std::to_string(seed) + "-" + std::to_string(i + 1)});
  }
  return out;
}

void write_grammar_treebank(const std::filesystem::path& dir, std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  udscheme::write_conllu_file((dir / "train.conllu").string(), grammar_corpus(seed, 100));
  udscheme::write_conllu_file((dir / "dev.conllu").string(), grammar_corpus(seed + 1000, 30));
  udscheme::write_conllu_file((dir / "test.conllu").string(), grammar_corpus(seed + 2000, 30));
}

std::filesystem::path data_dir() { return UDSCHEME_TEST_DATA; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("udscheme-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testsupport
