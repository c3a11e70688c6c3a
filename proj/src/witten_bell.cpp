#include "udscheme/witten_bell.hpp"

#include <cmath>

namespace udscheme {

WittenBellTrigram::WittenBellTrigram(const std::vector<std::vector<std::string>>& sentences) {
  vocab_.emplace(std::string(kSentenceBegin), 0);
  auto intern = [&](const std::string& w) {
    auto [it, inserted] = vocab_.try_emplace(w, static_cast<Id>(vocab_.size()));
    if (inserted) words_.push_back(w);
    return it->second;
  };
  const std::string end(kSentenceEnd);
  for (const auto& sentence : sentences) {
    Id u = 0, v = 0;
    auto observe = [&](Id w) {
      unigram_.total++;
      unigram_.next[w]++;
      auto& b = bigram_[v];
      b.total++;
      b.next[w]++;
      auto& t = trigram_[key2(u, v)];
      t.total++;
      t.next[w]++;
      u = v;
      v = w;
    };
    for (const auto& w : sentence) observe(intern(w));
    observe(intern(end));
  }
}

WittenBellTrigram::Id WittenBellTrigram::id(std::string_view w) const {
  auto it = vocab_.find(std::string(w));
  return it == vocab_.end() ? kUnknown : it->second;
}

double WittenBellTrigram::lambda(const ContextStats& ctx) {
  if (ctx.total == 0) return 0.0;
  const double c = static_cast<double>(ctx.total);
  return c / (c + static_cast<double>(ctx.next.size()));
}

double WittenBellTrigram::unigram(Id w) const {
  const double floor = 1.0 / (static_cast<double>(vocabulary_size()) + 1.0);
  const double l = lambda(unigram_);
  double ml = 0.0;
  if (w != kUnknown && unigram_.total > 0) {
    auto it = unigram_.next.find(w);
    if (it != unigram_.next.end()) ml = static_cast<double>(it->second) / static_cast<double>(unigram_.total);
  }
  return l * ml + (1.0 - l) * floor;
}

double WittenBellTrigram::bigram(Id v, Id w) const {
  auto ctx = v == kUnknown ? bigram_.end() : bigram_.find(v);
  if (ctx == bigram_.end()) return unigram(w);
  const double l = lambda(ctx->second);
  double ml = 0.0;
  if (auto it = ctx->second.next.find(w); w != kUnknown && it != ctx->second.next.end()) {
    ml = static_cast<double>(it->second) / static_cast<double>(ctx->second.total);
  }
  return l * ml + (1.0 - l) * unigram(w);
}

double WittenBellTrigram::trigram(Id u, Id v, Id w) const {
  auto ctx = (u == kUnknown || v == kUnknown) ? trigram_.end() : trigram_.find(key2(u, v));
  if (ctx == trigram_.end()) return bigram(v, w);
  const double l = lambda(ctx->second);
  double ml = 0.0;
  if (auto it = ctx->second.next.find(w); w != kUnknown && it != ctx->second.next.end()) {
    ml = static_cast<double>(it->second) / static_cast<double>(ctx->second.total);
  }
  return l * ml + (1.0 - l) * bigram(v, w);
}

double WittenBellTrigram::probability(std::string_view u, std::string_view v, std::string_view w) const {
  Id wid = id(w);
  if (wid == 0) wid = kUnknown;  // the begin marker is never predicted
  return trigram(id(u), id(v), wid);
}

double WittenBellTrigram::unseen_mass(std::string_view u, std::string_view v) const {
  return trigram(id(u), id(v), kUnknown);
}

double WittenBellTrigram::perplexity(const std::vector<std::vector<std::string>>& sentences) const {
  double log_sum = 0.0;
  std::size_t positions = 0;
  for (const auto& sentence : sentences) {
    std::string_view u = kSentenceBegin, v = kSentenceBegin;
    auto predict = [&](std::string_view w) {
      log_sum += std::log2(probability(u, v, w));
      ++positions;
      u = v;
      v = w;
    };
    for (const auto& w : sentence) predict(w);
    predict(kSentenceEnd);
  }
  if (positions == 0) return 1.0;
  return std::exp2(-log_sum / static_cast<double>(positions));
}

}  // namespace udscheme
