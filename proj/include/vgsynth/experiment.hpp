#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vgsynth/classifier.hpp"
#include "vgsynth/embed.hpp"
#include "vgsynth/features.hpp"
#include "vgsynth/generate.hpp"
#include "vgsynth/ingest.hpp"
#include "vgsynth/runtime.hpp"

namespace vgsynth {

struct SplitSpec {
  double train = 0.70;
  double validation = 0.15;
  double test = 0.15;

  void validate() const;
};

enum class Split { train, validation, test };
const char* to_string(Split s);

using WindowKey = std::pair<std::string, std::int64_t>;  // (ticker, window start)

// Per ticker, windows ordered by start: the first floor(n * train) go to
// train, the next floor(n * validation) to validation, the rest to test.
std::map<WindowKey, Split> chronological_split(std::span<const Window> windows, const SplitSpec& spec);

std::vector<FeatureRow> rows_from_windows(std::span<const Window> windows);
std::vector<FeatureRow> rows_from_sequences(std::span<const SyntheticSequence> sequences);

std::vector<double> score_rows(const Classifier& model, std::span<const FeatureRow> rows);
std::vector<int> labels_of(std::span<const FeatureRow> rows);

struct MethodResult {
  std::string method;
  bool skipped = false;
  std::string note;
  double auc_real = 0.0;
  double auc_synthetic = 0.0;
  double auc_mixed = 0.0;
  double val_auc_real = 0.0;
  double val_auc_synthetic = 0.0;
  double val_auc_mixed = 0.0;
  std::size_t real_train_rows = 0;
  std::size_t synthetic_train_rows = 0;
  std::optional<double> mixing_score;
};

struct EvalReport {
  std::vector<MethodResult> methods;
  std::size_t test_rows = 0;
  std::size_t validation_rows = 0;
  std::map<std::string, RuntimeTotal> runtime_totals;
  std::uint64_t seed = 0;
  std::string config_snapshot;  // JSON text of the producing configuration

  const MethodResult* find(const std::string& method) const;
};

// Trains `prototype`-style models on real, synthetic and mixed training sets
// and scores all of them on the same real test split. Only synthetic
// sequences derived from training windows are used.
EvalReport run_experiment(std::span<const Window> real_windows,
                          const std::map<std::string, std::vector<SyntheticSequence>>& synthetic,
                          const SplitSpec& split, const Classifier& prototype, std::uint64_t seed);

struct OverlapResult {
  Embedding embedding;
  std::vector<Origin> origins;
  double mixing_score = 0.0;
};

// Balanced sample of real windows and synthetic sequences (raw values),
// embedded in 2D and scored for neighbour mixing.
OverlapResult assess_overlap(std::span<const Window> real_windows,
                             std::span<const SyntheticSequence> synthetic, std::size_t per_origin,
                             const EmbedParams& params, std::size_t mixing_k);

}  // namespace vgsynth
