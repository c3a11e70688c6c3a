#include "udscheme/model.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "udscheme/kernels.hpp"

namespace udscheme {

namespace {

constexpr std::string_view kMagic = "udscheme-model";
constexpr int kFormatVersion = 1;

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

}  // namespace

Model::Model(LabelInventory labels) : labels_(std::move(labels)), actions_(action_count(labels_.size())) {}

double* Model::row(std::uint64_t key) {
  auto [it, inserted] = index_.try_emplace(key, static_cast<std::uint32_t>(index_.size()));
  if (inserted) {
    weights_.resize(weights_.size() + actions_, 0.0);
    totals_.resize(totals_.size() + actions_, 0.0);
  }
  return weights_.data() + static_cast<std::size_t>(it->second) * actions_;
}

const double* Model::find_row(std::uint64_t key) const {
  auto it = index_.find(key);
  return it == index_.end() ? nullptr : weights_.data() + static_cast<std::size_t>(it->second) * actions_;
}

void Model::score(std::span<const std::uint64_t> keys, std::span<double> scores) const {
  std::fill(scores.begin(), scores.end(), 0.0);
  const auto& k = kernels::active();
  for (auto key : keys) {
    if (const double* r = find_row(key)) k.accumulate(scores.data(), r, actions_);
  }
}

void Model::update(std::span<const std::uint64_t> keys, std::size_t action, double delta) {
  for (auto key : keys) {
    double* w = row(key);
    const std::size_t offset = static_cast<std::size_t>(w - weights_.data()) + action;
    weights_[offset] += delta;
    totals_[offset] += static_cast<double>(ticks_) * delta;
  }
}

double Model::weight(std::uint64_t key, std::size_t action) const {
  const double* r = find_row(key);
  return r ? r[action] : 0.0;
}

double Model::averaged_weight(std::uint64_t key, std::size_t action) const {
  auto it = index_.find(key);
  if (it == index_.end()) return 0.0;
  const std::size_t offset = static_cast<std::size_t>(it->second) * actions_ + action;
  if (ticks_ == 0) return weights_[offset];
  return weights_[offset] - totals_[offset] / static_cast<double>(ticks_);
}

Model Model::averaged() const {
  Model out = *this;
  if (ticks_ > 0) {
    kernels::active().average(out.weights_.data(), weights_.data(), totals_.data(), static_cast<double>(ticks_),
                              weights_.size());
  }
  std::fill(out.totals_.begin(), out.totals_.end(), 0.0);
  out.ticks_ = 0;
  return out;
}

void Model::save(std::ostream& out) const {
  out << kMagic << ' ' << kFormatVersion << '\n';
  out << "labels " << labels_.size() << '\n';
  for (const auto& l : labels_.names()) out << l << '\n';
  std::vector<std::pair<std::uint64_t, std::uint32_t>> keys(index_.begin(), index_.end());
  std::sort(keys.begin(), keys.end());
  std::size_t nonzero = 0;
  for (auto [key, r] : keys) {
    for (std::size_t a = 0; a < actions_; ++a) nonzero += weights_[r * actions_ + a] != 0.0 ? 1 : 0;
  }
  out << "weights " << nonzero << '\n';
  for (auto [key, r] : keys) {
    for (std::size_t a = 0; a < actions_; ++a) {
      double w = weights_[r * actions_ + a];
      if (w == 0.0) continue;
      char hex[17];
      auto [p, ec] = std::to_chars(hex, hex + 16, key, 16);
      out << std::string_view(hex, static_cast<std::size_t>(p - hex)) << ' ' << a << ' ' << format_double(w)
          << '\n';
    }
  }
}

Model Model::load(std::istream& in) {
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kMagic) throw std::runtime_error("not a udscheme model file");
  if (version != kFormatVersion) throw std::runtime_error("unsupported model version " + std::to_string(version));
  std::string tag;
  std::size_t count = 0;
  if (!(in >> tag >> count) || tag != "labels") throw std::runtime_error("model file: expected labels");
  std::string line;
  std::getline(in, line);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("model file: truncated label list");
    labels.push_back(line);
  }
  Model m{LabelInventory(std::move(labels))};
  if (m.labels_.size() != count) throw std::runtime_error("model file: duplicate labels");
  if (!(in >> tag >> count) || tag != "weights") throw std::runtime_error("model file: expected weights");
  std::getline(in, line);
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("model file: truncated weights");
    std::istringstream fields(line);
    std::string hex, weight;
    std::size_t action = 0;
    if (!(fields >> hex >> action >> weight) || action >= m.actions_) {
      throw std::runtime_error("model file: bad weight line '" + line + "'");
    }
    std::uint64_t key = 0;
    double w = 0;
    auto r1 = std::from_chars(hex.data(), hex.data() + hex.size(), key, 16);
    auto r2 = std::from_chars(weight.data(), weight.data() + weight.size(), w);
    if (r1.ec != std::errc{} || r2.ec != std::errc{}) throw std::runtime_error("model file: bad number in '" + line + "'");
    m.row(key)[action] = w;
  }
  return m;
}

void Model::save_file(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  save(f);
}

Model Model::load_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return load(f);
}

}  // namespace udscheme
