#include "udscheme/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "udscheme/features.hpp"

namespace udscheme {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    auto item = trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string fmt(double v, int decimals = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v, int decimals = 4) { return v ? fmt(*v, decimals) : "NA"; }

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  // Write-then-rename so an interrupted run never leaves a half-written cache entry.
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
  }
  fs::rename(tmp, p);
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Identifies everything a cached result depends on.
std::uint64_t fingerprint(const TreebankSpec& tb, const ExperimentConfig& cfg) {
  std::string material;
  for (const auto& p : {tb.train, tb.dev, tb.test}) {
    material += read_file(p);
    material += '\x1e';
  }
  material += "epochs=" + std::to_string(cfg.hp.epochs) + ";k=" + std::to_string(cfg.hp.explore_k) +
              ";p=" + fmt(cfg.hp.explore_p, 6) + ";";
  for (const auto& l : cfg.transform_options.copula_noun_labels) material += l + ",";
  material += cfg.metric_options.perplexity_unit == OrderUnit::kForm ? ";form" : ";pos";
  material += std::string(";") + std::string(to_string(cfg.metric_options.complexity_mode));
  return feature_hash(material);
}

json metrics_to_json(const MetricReport& r) {
  json j;
  j["corpus"] = r.corpus_id;
  j["distance"] = r.distance ? json(*r.distance) : json(nullptr);
  j["predictability_bits"] = r.predictability_bits;
  j["derivation_perplexity"] = r.derivation_perplexity;
  j["derivation_complexity"] = r.derivation_complexity;
  return j;
}

MetricReport metrics_from_json(const json& j, const MetricOptions& options) {
  MetricReport r;
  r.corpus_id = j.at("corpus").get<std::string>();
  if (!j.at("distance").is_null()) r.distance = j.at("distance").get<double>();
  r.predictability_bits = j.at("predictability_bits").get<double>();
  r.derivation_perplexity = j.at("derivation_perplexity").get<double>();
  r.derivation_complexity = j.at("derivation_complexity").get<std::uint64_t>();
  r.options = options;
  return r;
}

struct Split {
  std::vector<Sentence> train, dev, test;
};

struct TreebankWork {
  TreebankSpec spec;
  fs::path cache_dir;
  std::string error;
  Split ud;
  std::map<TransformationId, Split> transformed;
  std::map<TransformationId, bool> changed;
  std::map<TransformationId, std::string> transform_error;
};

// Result slot of one training or metrics job.
struct SeedSlot {
  std::optional<AttachmentCount> result;
  std::string error;
};

struct MetricSlot {
  std::optional<MetricReport> result;
  std::string error;
};

void run_parallel(std::vector<std::function<void()>>& tasks, std::size_t jobs) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) tasks[i]();
  };
  const std::size_t n = std::max<std::size_t>(1, std::min(jobs, tasks.size()));
  std::vector<std::jthread> pool;
  for (std::size_t i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::string_view text, const fs::path& base_dir) {
  ExperimentConfig cfg;
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base_dir / p; };
  TreebankSpec* current = nullptr;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  auto fail = [&](const std::string& what) { throw ConfigError("config line " + std::to_string(lineno) + ": " + what); };
  cfg.output_dir = base_dir / "results";
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      std::istringstream words(line.substr(1, line.size() - 2));
      std::string kind, name;
      words >> kind >> name;
      if (kind != "treebank" || name.empty()) fail("expected [treebank <name>]");
      cfg.treebanks.push_back(TreebankSpec{name, {}, {}, {}});
      current = &cfg.treebanks.back();
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      if (current) {
        if (key == "train") current->train = resolve(value);
        else if (key == "dev") current->dev = resolve(value);
        else if (key == "test") current->test = resolve(value);
        else fail("unknown treebank key '" + key + "'");
        continue;
      }
      if (key == "output") {
        cfg.output_dir = resolve(value);
      } else if (key == "seeds") {
        cfg.seeds.clear();
        for (const auto& s : split_csv(value)) cfg.seeds.push_back(std::stoull(s));
      } else if (key == "transformations") {
        cfg.transformations.clear();
        for (const auto& s : split_csv(value)) {
          auto t = parse_transformation(s);
          if (!t) fail("unknown transformation '" + s + "'");
          cfg.transformations.push_back(*t);
        }
      } else if (key == "epochs") {
        cfg.hp.epochs = std::stoi(value);
      } else if (key == "explore_k") {
        cfg.hp.explore_k = std::stoi(value);
      } else if (key == "explore_p") {
        cfg.hp.explore_p = std::stod(value);
      } else if (key == "jobs") {
        cfg.jobs = std::stoul(value);
      } else if (key == "copula_noun_labels") {
        auto labels = split_csv(value);
        cfg.transform_options.copula_noun_labels = LabelSet(labels.begin(), labels.end());
      } else if (key == "perplexity_unit") {
        if (value == "form") cfg.metric_options.perplexity_unit = OrderUnit::kForm;
        else if (value == "pos") cfg.metric_options.perplexity_unit = OrderUnit::kPos;
        else fail("perplexity_unit must be form or pos");
      } else if (key == "complexity_mode") {
        if (value == "global" || value == "global-distinct") cfg.metric_options.complexity_mode = ComplexityMode::kGlobal;
        else if (value == "per-sentence-sum") cfg.metric_options.complexity_mode = ComplexityMode::kPerSentenceSum;
        else fail("complexity_mode must be global or per-sentence-sum");
      } else {
        fail("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      fail("bad value '" + value + "' for " + key);
    } catch (const std::out_of_range&) {
      fail("value out of range for " + key);
    }
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const fs::path& path) {
  auto cfg = parse(read_file(path), path.parent_path());
  return cfg;
}

void ExperimentConfig::validate() const {
  if (seeds.empty()) throw ConfigError("no seeds");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) throw ConfigError("duplicate seeds");
  if (treebanks.empty()) throw ConfigError("no treebanks");
  if (hp.epochs < 1) throw ConfigError("epochs must be at least 1");
  std::set<std::string> names;
  for (const auto& tb : treebanks) {
    if (!names.insert(tb.language).second) throw ConfigError("duplicate treebank " + tb.language);
    for (const auto& p : {tb.train, tb.dev, tb.test}) {
      if (p.empty()) throw ConfigError("treebank " + tb.language + " needs train, dev and test");
      if (!fs::exists(p)) throw ConfigError("missing file " + p.string());
    }
  }
}

Summary summarize(const std::vector<CellResult>& cells) {
  Summary s;
  double sum = 0.0, abs_sum = 0.0;
  for (const auto& c : cells) {
    if (!c.error.empty()) {
      ++s.errors;
      continue;
    }
    if (c.row.excluded) {
      ++s.excluded;
      continue;
    }
    ++s.configurations;
    const double d = *c.row.diff;
    sum += d;
    abs_sum += std::abs(d);
    s.max_abs_diff = std::max(s.max_abs_diff, std::abs(d));
    if (d > 0) ++s.positive;
    else if (d < 0) ++s.negative;
    else ++s.ties;
  }
  if (s.configurations > 0) {
    s.mean_diff = sum / static_cast<double>(s.configurations);
    s.mean_abs_diff = abs_sum / static_cast<double>(s.configurations);
  }
  if (s.positive + s.negative > 0) {
    s.fraction_ud_better = static_cast<double>(s.positive) / static_cast<double>(s.positive + s.negative);
  }
  return s;
}

std::vector<CoherenceRow> coherence_table(const std::vector<CellResult>& cells) {
  std::vector<CoherenceRow> rows;
  for (std::size_t m = 0; m < kMetricNames.size(); ++m) {
    CoherenceRow row{std::string(kMetricNames[m])};
    for (const auto& c : cells) {
      if (!c.error.empty() || c.row.excluded || !c.coherence[m]) continue;
      switch (*c.coherence[m]) {
        case Coherence::kCoherent: ++row.coherent; break;
        case Coherence::kIncoherent: ++row.incoherent; break;
        case Coherence::kTied: ++row.tied; break;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, RunStats* stats) {
  cfg.validate();
  const fs::path cache_root = cfg.output_dir / "cache";
  fs::create_directories(cache_root);

  // Load and transform every treebank up front; these steps are cheap.
  std::vector<TreebankWork> work;
  for (const auto& tb : cfg.treebanks) {
    TreebankWork w;
    w.spec = tb;
    try {
      w.cache_dir = cache_root / (tb.language + "-" + hex64(fingerprint(tb, cfg)));
      w.ud.train = read_conllu_file(tb.train.string());
      w.ud.dev = read_conllu_file(tb.dev.string());
      w.ud.test = read_conllu_file(tb.test.string());
    } catch (const std::exception& e) {
      w.error = e.what();
    }
    if (w.error.empty()) {
      for (auto t : cfg.transformations) {
        try {
          Split out;
          auto a = apply_transformation(w.ud.train, t, cfg.transform_options);
          auto b = apply_transformation(w.ud.dev, t, cfg.transform_options);
          auto c = apply_transformation(w.ud.test, t, cfg.transform_options);
          w.changed[t] = a.changed || b.changed || c.changed;
          out.train = std::move(a.sentences);
          out.dev = std::move(b.sentences);
          out.test = std::move(c.sentences);
          w.transformed[t] = std::move(out);
        } catch (const std::exception& e) {
          w.transform_error[t] = e.what();
        }
      }
    }
    work.push_back(std::move(w));
  }

  std::atomic<std::size_t> trained{0}, cached{0};
  auto train_or_load = [&](const fs::path& file, const Split& split, std::uint64_t seed, SeedSlot& slot) {
    try {
      if (fs::exists(file)) {
        auto j = json::parse(read_file(file));
        slot.result = AttachmentCount{j.at("correct").get<long>(), j.at("total").get<long>()};
        ++cached;
        return;
      }
      Model m = train(split.train, split.dev, cfg.hp, seed);
      AttachmentCount score = corpus_uas(split.test, parse_corpus(m, split.test));
      ++trained;
      write_file(file, json{{"correct", score.correct}, {"total", score.total}}.dump() + "\n");
      slot.result = score;
    } catch (const std::exception& e) {
      slot.error = e.what();
    }
  };
  auto metrics_or_load = [&](const fs::path& file, const std::vector<Sentence>& corpus, const std::string& id,
                             MetricSlot& slot) {
    try {
      if (fs::exists(file)) {
        slot.result = metrics_from_json(json::parse(read_file(file)), cfg.metric_options);
        return;
      }
      MetricReport r = compute_metrics(corpus, id, cfg.metric_options);
      write_file(file, metrics_to_json(r).dump(2) + "\n");
      slot.result = std::move(r);
    } catch (const std::exception& e) {
      slot.error = e.what();
    }
  };

  // Slots are sized before any task runs so references stay valid.
  const std::size_t nseeds = cfg.seeds.size();
  std::vector<std::vector<SeedSlot>> ud_seeds(work.size(), std::vector<SeedSlot>(nseeds));
  std::vector<MetricSlot> ud_metrics(work.size());
  std::vector<std::map<TransformationId, std::vector<SeedSlot>>> tr_seeds(work.size());
  std::vector<std::map<TransformationId, MetricSlot>> tr_metrics(work.size());
  std::vector<std::function<void()>> tasks;
  for (std::size_t w = 0; w < work.size(); ++w) {
    const TreebankWork& tb = work[w];
    if (!tb.error.empty()) continue;
    bool any_changed = false;
    for (auto t : cfg.transformations) {
      if (!tb.transform_error.contains(t) && tb.changed.at(t)) {
        any_changed = true;
        tr_seeds[w][t].resize(nseeds);
        tr_metrics[w][t];
      }
    }
    if (!any_changed) continue;
    for (std::size_t i = 0; i < nseeds; ++i) {
      fs::path file = tb.cache_dir / "ud" / ("seed" + std::to_string(cfg.seeds[i]) + ".json");
      tasks.push_back([&, w, i, file] { train_or_load(file, work[w].ud, cfg.seeds[i], ud_seeds[w][i]); });
    }
    tasks.push_back([&, w] {
      metrics_or_load(work[w].cache_dir / "ud" / "metrics.json", work[w].ud.train, work[w].spec.language + "/ud",
                      ud_metrics[w]);
    });
    for (auto& [t, slots] : tr_seeds[w]) {
      const std::string name(to_string(t));
      for (std::size_t i = 0; i < nseeds; ++i) {
        fs::path file = tb.cache_dir / name / ("seed" + std::to_string(cfg.seeds[i]) + ".json");
        tasks.push_back([&, w, t, i, file] { train_or_load(file, work[w].transformed.at(t), cfg.seeds[i], tr_seeds[w][t][i]); });
      }
      tasks.push_back([&, w, t, name] {
        metrics_or_load(work[w].cache_dir / name / "metrics.json", work[w].transformed.at(t).train,
                        work[w].spec.language + "/" + name, tr_metrics[w].at(t));
      });
    }
  }
  run_parallel(tasks, cfg.jobs);

  ExperimentReport report;
  report.metric_options = cfg.metric_options;
  for (std::size_t w = 0; w < work.size(); ++w) {
    const TreebankWork& tb = work[w];
    for (auto t : cfg.transformations) {
      CellResult cell;
      cell.row.language = tb.spec.language;
      cell.row.transformation = t;
      auto collect = [&](const std::vector<SeedSlot>& slots, std::vector<double>& out) {
        for (const auto& s : slots) {
          if (!s.error.empty()) {
            cell.error = s.error;
            return;
          }
          out.push_back(s.result->percent());
        }
      };
      if (!tb.error.empty()) {
        cell.error = tb.error;
      } else if (auto it = tb.transform_error.find(t); it != tb.transform_error.end()) {
        cell.error = it->second;
      } else if (!tb.changed.at(t)) {
        cell.row = excluded_row(tb.spec.language, t);
      } else {
        collect(ud_seeds[w], cell.seeds_ud);
        if (cell.error.empty()) collect(tr_seeds[w].at(t), cell.seeds_transformed);
        if (cell.error.empty() && !ud_metrics[w].error.empty()) cell.error = ud_metrics[w].error;
        if (cell.error.empty() && !tr_metrics[w].at(t).error.empty()) cell.error = tr_metrics[w].at(t).error;
        if (cell.error.empty()) {
          cell.row = compare_schemes(tb.spec.language, t, cell.seeds_ud, cell.seeds_transformed);
          cell.metrics_ud = ud_metrics[w].result;
          cell.metrics_transformed = tr_metrics[w].at(t).result;
          auto mu = metric_values(*cell.metrics_ud);
          auto mt = metric_values(*cell.metrics_transformed);
          for (std::size_t m = 0; m < mu.size(); ++m) {
            if (mu[m] && mt[m]) cell.coherence[m] = metric_coherence(*mu[m], *mt[m], *cell.row.uas_ud, *cell.row.uas_transformed);
          }
        }
      }
      report.cells.push_back(std::move(cell));
    }
  }
  report.summary = summarize(report.cells);
  report.coherence = coherence_table(report.cells);
  if (stats) {
    stats->trainings_executed = trained;
    stats->trainings_cached = cached;
  }
  return report;
}

std::vector<HistogramBin> diff_histogram(const std::vector<CellResult>& cells) {
  std::map<long, std::size_t> counts;
  for (const auto& c : cells) {
    if (!c.error.empty() || c.row.excluded || !c.row.diff) continue;
    counts[static_cast<long>(std::floor(*c.row.diff / kHistogramBinWidth))]++;
  }
  std::vector<HistogramBin> bins;
  if (counts.empty()) return bins;
  for (long b = counts.begin()->first; b <= counts.rbegin()->first; ++b) {
    auto it = counts.find(b);
    bins.push_back({static_cast<double>(b) * kHistogramBinWidth, it == counts.end() ? 0 : it->second});
  }
  return bins;
}

namespace {

std::string histogram_svg(const std::vector<HistogramBin>& bins) {
  const int width = 640, height = 360, margin = 40;
  std::size_t peak = 1;
  for (const auto& b : bins) peak = std::max(peak, b.count);
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  svg << "<title>UAS(UD) - UAS(transformed); positive favours UD</title>\n";
  svg << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
      << height - margin << "\" stroke=\"black\"/>\n";
  if (!bins.empty()) {
    const double bar = static_cast<double>(width - 2 * margin) / static_cast<double>(bins.size());
    for (std::size_t i = 0; i < bins.size(); ++i) {
      const double h = static_cast<double>(height - 2 * margin) * static_cast<double>(bins[i].count) / static_cast<double>(peak);
      const double x = margin + bar * static_cast<double>(i);
      svg << "<rect x=\"" << fmt(x, 2) << "\" y=\"" << fmt(height - margin - h, 2) << "\" width=\"" << fmt(bar * 0.9, 2)
          << "\" height=\"" << fmt(h, 2) << "\" fill=\"" << (bins[i].low >= 0 ? "#4878a8" : "#a85048") << "\"/>\n";
      svg << "<text x=\"" << fmt(x, 2) << "\" y=\"" << height - margin + 14 << "\" font-size=\"10\">"
          << fmt(bins[i].low, 1) << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

void emit_reports(const ExperimentReport& report, const fs::path& dir) {
  fs::create_directories(dir / "tables");

  std::ostringstream rows;
  rows << "language\ttransformation\texcluded\tuas_ud\tuas_transformed\tdiff\tseeds_ud\tseeds_transformed";
  for (auto m : kMetricNames) rows << "\t" << m << "_ud\t" << m << "_transformed\t" << m << "_coherent";
  rows << "\terror\n";
  auto seed_list = [](const std::vector<double>& v) {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : ",") + fmt(x);
    return s.empty() ? std::string("NA") : s;
  };
  for (const auto& c : report.cells) {
    rows << c.row.language << '\t' << to_string(c.row.transformation) << '\t' << (c.row.excluded ? "yes" : "no") << '\t'
         << fmt_opt(c.row.uas_ud) << '\t' << fmt_opt(c.row.uas_transformed) << '\t' << fmt_opt(c.row.diff) << '\t'
         << seed_list(c.seeds_ud) << '\t' << seed_list(c.seeds_transformed);
    std::array<std::optional<double>, 4> mu{}, mt{};
    if (c.metrics_ud) mu = metric_values(*c.metrics_ud);
    if (c.metrics_transformed) mt = metric_values(*c.metrics_transformed);
    for (std::size_t m = 0; m < kMetricNames.size(); ++m) {
      std::string flag = "NA";
      if (c.coherence[m]) flag = *c.coherence[m] == Coherence::kCoherent ? "yes" : *c.coherence[m] == Coherence::kIncoherent ? "no" : "tie";
      rows << '\t' << fmt_opt(mu[m]) << '\t' << fmt_opt(mt[m]) << '\t' << flag;
    }
    rows << '\t' << (c.error.empty() ? "" : c.error) << '\n';
  }
  write_file(dir / "rows.tsv", rows.str());

  // Share of configurations, per transformation, where UD scores higher.
  std::ostringstream wins;
  wins << "transformation\tud_better\tconfigurations\tpercent\n";
  for (auto t : kAllTransformations) {
    std::size_t better = 0, total = 0;
    for (const auto& c : report.cells) {
      if (c.row.transformation != t || !c.error.empty() || c.row.excluded || *c.row.diff == 0.0) continue;
      ++total;
      if (*c.row.diff > 0) ++better;
    }
    if (total == 0) continue;
    wins << to_string(t) << '\t' << better << '\t' << total << '\t'
         << fmt(100.0 * static_cast<double>(better) / static_cast<double>(total), 2) << '\n';
  }
  write_file(dir / "tables" / "ud_wins.tsv", wins.str());

  // Largest differences in each direction.
  constexpr std::size_t k = 5;
  std::vector<const CellResult*> scored;
  for (const auto& c : report.cells) {
    if (c.error.empty() && !c.row.excluded) scored.push_back(&c);
  }
  auto by_diff = [](const CellResult* a, const CellResult* b) { return *a->row.diff > *b->row.diff; };
  std::stable_sort(scored.begin(), scored.end(), by_diff);
  std::ostringstream top;
  top << "direction\tlanguage\ttransformation\tuas_transformed\tuas_ud\tdiff\n";
  for (std::size_t i = 0; i < scored.size() && i < k && *scored[i]->row.diff > 0; ++i) {
    const auto& r = scored[i]->row;
    top << "ud_better\t" << r.language << '\t' << to_string(r.transformation) << '\t' << fmt(*r.uas_transformed, 2) << '\t'
        << fmt(*r.uas_ud, 2) << '\t' << fmt(*r.diff, 2) << '\n';
  }
  for (std::size_t i = 0; i < scored.size() && i < k && *scored[scored.size() - 1 - i]->row.diff < 0; ++i) {
    const auto& r = scored[scored.size() - 1 - i]->row;
    top << "transformed_better\t" << r.language << '\t' << to_string(r.transformation) << '\t'
        << fmt(*r.uas_transformed, 2) << '\t' << fmt(*r.uas_ud, 2) << '\t' << fmt(*r.diff, 2) << '\n';
  }
  write_file(dir / "tables" / "top_diffs.tsv", top.str());

  std::ostringstream coh;
  coh << "metric\tcoherent\tincoherent\ttied\tpercent\n";
  for (const auto& r : report.coherence) {
    coh << r.metric << '\t' << r.coherent << '\t' << r.incoherent << '\t' << r.tied << '\t' << fmt(100.0 * r.fraction(), 1)
        << '\n';
  }
  write_file(dir / "tables" / "coherence.tsv", coh.str());

  std::ostringstream met;
  met << "corpus\tdistance\tpredictability_bits\tderivation_perplexity\tderivation_complexity\n";
  std::set<std::string> seen;
  for (const auto& c : report.cells) {
    for (const auto* m : {c.metrics_ud ? &*c.metrics_ud : nullptr, c.metrics_transformed ? &*c.metrics_transformed : nullptr}) {
      if (!m || !seen.insert(m->corpus_id).second) continue;
      met << m->corpus_id << '\t' << fmt_opt(m->distance) << '\t' << fmt(m->predictability_bits) << '\t'
          << fmt(m->derivation_perplexity) << '\t' << m->derivation_complexity << '\n';
    }
  }
  write_file(dir / "tables" / "metrics.tsv", met.str());

  const auto bins = diff_histogram(report.cells);
  std::ostringstream hist;
  hist << "bin_low\tbin_high\tcount\n";
  for (const auto& b : bins) hist << fmt(b.low, 1) << '\t' << fmt(b.low + kHistogramBinWidth, 1) << '\t' << b.count << '\n';
  write_file(dir / "hist.tsv", hist.str());
  write_file(dir / "hist.svg", histogram_svg(bins));

  const Summary& s = report.summary;
  json summary;
  summary["configurations"] = s.configurations;
  summary["excluded"] = s.excluded;
  summary["errors"] = s.errors;
  summary["positive_diffs"] = s.positive;
  summary["negative_diffs"] = s.negative;
  summary["tied_diffs"] = s.ties;
  summary["fraction_ud_better"] = s.fraction_ud_better;
  summary["mean_diff"] = s.mean_diff;
  summary["mean_abs_diff"] = s.mean_abs_diff;
  summary["max_abs_diff"] = s.max_abs_diff;
  summary["diff_convention"] = "diff = UAS(UD) - UAS(transformed); positive means UD scored higher";
  summary["perplexity"] = std::string("self-perplexity of the training corpus, unit=") +
                          (report.metric_options.perplexity_unit == OrderUnit::kForm ? "form" : "pos");
  summary["complexity_mode"] = std::string(to_string(report.metric_options.complexity_mode));
  summary["coherence_note"] =
      "all four metrics are read lower-is-better; a metric is coherent when the scheme it ranks as preferable "
      "(lower value) is the scheme with higher UAS; UAS or metric ties are counted separately";
  write_file(dir / "summary.json", summary.dump(2) + "\n");
}

}  // namespace udscheme
