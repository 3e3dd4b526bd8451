#include "vgsynth/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "vgsynth/error.hpp"
#include "vgsynth/metrics.hpp"
#include "vgsynth/rng.hpp"

namespace vgsynth {

void SplitSpec::validate() const {
  if (train <= 0 || validation < 0 || test <= 0 || std::abs(train + validation + test - 1.0) > 1e-9)
    throw ConfigError("split ratios must be positive and sum to 1");
}

const char* to_string(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::validation: return "validation";
    case Split::test: return "test";
  }
  return "?";
}

const MethodResult* EvalReport::find(const std::string& method) const {
  for (const auto& m : methods)
    if (m.method == method) return &m;
  return nullptr;
}

std::map<WindowKey, Split> chronological_split(std::span<const Window> windows, const SplitSpec& spec) {
  spec.validate();
  std::map<std::string, std::vector<std::int64_t>> starts;
  for (const auto& w : windows) starts[w.ticker].push_back(w.start_index);
  std::map<WindowKey, Split> out;
  for (auto& [ticker, s] : starts) {
    std::sort(s.begin(), s.end());
    const auto n = s.size();
    const auto n_train = static_cast<std::size_t>(std::floor(static_cast<double>(n) * spec.train));
    const auto n_val = static_cast<std::size_t>(std::floor(static_cast<double>(n) * spec.validation));
    for (std::size_t i = 0; i < n; ++i) {
      const Split part = i < n_train ? Split::train : i < n_train + n_val ? Split::validation : Split::test;
      out[{ticker, s[i]}] = part;
    }
  }
  return out;
}

std::vector<FeatureRow> rows_from_windows(std::span<const Window> windows) {
  std::vector<FeatureRow> rows;
  rows.reserve(windows.size());
  for (const auto& w : windows) {
    auto row = extract_features(w.raw_values);
    row.origin = Origin::real;
    row.group = w.ticker;
    row.window_start = w.start_index;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<FeatureRow> rows_from_sequences(std::span<const SyntheticSequence> sequences) {
  std::vector<FeatureRow> rows;
  rows.reserve(sequences.size());
  for (const auto& s : sequences) {
    auto row = extract_features(s.values);
    row.origin = Origin::synthetic;
    row.group = s.provenance.ticker;
    row.window_start = s.provenance.window_start;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> score_rows(const Classifier& model, std::span<const FeatureRow> rows) {
  std::vector<double> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out[i] = model.score(rows[i]);
  return out;
}

std::vector<int> labels_of(std::span<const FeatureRow> rows) {
  std::vector<int> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out[i] = rows[i].label;
  return out;
}

namespace {

struct Scores {
  double test;
  double validation;
};

Scores fit_and_score(const Classifier& prototype, std::span<const FeatureRow> train,
                     std::span<const FeatureRow> validation, std::span<const FeatureRow> test) {
  auto model = prototype.fresh();
  model->fit(train);
  const auto test_auc = roc_auc(score_rows(*model, test), labels_of(test));
  double val_auc = std::nan("");
  try {
    if (!validation.empty()) val_auc = roc_auc(score_rows(*model, validation), labels_of(validation));
  } catch (const UndefinedMetric&) {
  }
  return {test_auc, val_auc};
}

}  // namespace

EvalReport run_experiment(std::span<const Window> real_windows,
                          const std::map<std::string, std::vector<SyntheticSequence>>& synthetic,
                          const SplitSpec& split, const Classifier& prototype, std::uint64_t seed) {
  const auto parts = chronological_split(real_windows, split);
  std::vector<Window> train_w, val_w, test_w;
  for (const auto& w : real_windows) {
    switch (parts.at({w.ticker, w.start_index})) {
      case Split::train: train_w.push_back(w); break;
      case Split::validation: val_w.push_back(w); break;
      case Split::test: test_w.push_back(w); break;
    }
  }
  if (train_w.empty() || test_w.empty())
    throw InvalidInput("not enough windows for a chronological train/test split");
  const auto train_rows = rows_from_windows(train_w);
  const auto val_rows = rows_from_windows(val_w);
  const auto test_rows = rows_from_windows(test_w);

  EvalReport report;
  report.seed = seed;
  report.test_rows = test_rows.size();
  report.validation_rows = val_rows.size();
  const auto real = fit_and_score(prototype, train_rows, val_rows, test_rows);

  for (const auto& [method, sequences] : synthetic) {
    MethodResult res;
    res.method = method;
    res.auc_real = real.test;
    res.val_auc_real = real.validation;
    res.real_train_rows = train_rows.size();

    std::vector<SyntheticSequence> usable;
    for (const auto& s : sequences) {
      const auto it = parts.find({s.provenance.ticker, s.provenance.window_start});
      if (it != parts.end() && it->second == Split::train) usable.push_back(s);
    }
    const auto syn_rows = rows_from_sequences(usable);
    res.synthetic_train_rows = syn_rows.size();
    if (syn_rows.empty()) {
      res.skipped = true;
      res.note = "no synthetic sequences derived from training windows";
      report.methods.push_back(std::move(res));
      continue;
    }
    try {
      const auto syn = fit_and_score(prototype, syn_rows, val_rows, test_rows);
      res.auc_synthetic = syn.test;
      res.val_auc_synthetic = syn.validation;
    } catch (const InvalidInput& e) {
      res.skipped = true;
      res.note = std::string("synthetic training failed: ") + e.what();
      report.methods.push_back(std::move(res));
      continue;
    }
    std::vector<FeatureRow> mixed = train_rows;
    mixed.insert(mixed.end(), syn_rows.begin(), syn_rows.end());
    const auto mix = fit_and_score(prototype, mixed, val_rows, test_rows);
    res.auc_mixed = mix.test;
    res.val_auc_mixed = mix.validation;
    report.methods.push_back(std::move(res));
  }
  return report;
}

namespace {

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  k = std::min(k, n);
  for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + uniform_index(rng, n - i)]);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

OverlapResult assess_overlap(std::span<const Window> real_windows,
                             std::span<const SyntheticSequence> synthetic, std::size_t per_origin,
                             const EmbedParams& params, std::size_t mixing_k) {
  if (real_windows.empty() || synthetic.empty())
    throw UndefinedMetric("overlap needs both real and synthetic data");
  Rng rng(mix_seed(params.seed, 0x6f7665726c6170ULL));
  const std::size_t per = std::min({per_origin, real_windows.size(), synthetic.size()});
  const auto real_idx = sample_indices(real_windows.size(), per, rng);
  const auto syn_idx = sample_indices(synthetic.size(), per, rng);

  const std::size_t dims = real_windows[real_idx.front()].raw_values.size();
  kernels::Matrix points(2 * per, dims);
  OverlapResult out;
  std::size_t r = 0;
  auto put = [&](const std::vector<double>& values, Origin origin) {
    if (values.size() != dims) throw InvalidInput("overlap inputs must share one length");
    std::copy(values.begin(), values.end(), points.row(r++));
    out.origins.push_back(origin);
  };
  for (auto i : real_idx) put(real_windows[i].raw_values, Origin::real);
  for (auto i : syn_idx) put(synthetic[i].values, Origin::synthetic);

  EmbedParams p = params;
  p.perplexity = std::min(p.perplexity, (static_cast<double>(points.rows) - 1.0) / 3.0);
  out.embedding = embed_2d(points, p);
  std::vector<Origin> kept_origins;
  for (auto i : out.embedding.kept) kept_origins.push_back(out.origins[i]);
  out.origins = std::move(kept_origins);
  out.mixing_score = mixing_score(out.embedding.coords, out.origins, mixing_k);
  return out;
}

}  // namespace vgsynth
