#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "vgsynth/generate.hpp"
#include "vgsynth/ingest.hpp"
#include "vgsynth/runtime.hpp"

namespace vgsynth {

enum class Method { nvg, hvg, nvmg, vrp };
const char* to_string(Method m);
Method parse_method(std::string_view s);  // throws ConfigError listing valid names
std::vector<Method> parse_methods(std::string_view comma_list);

struct GenerateOptions {
  std::size_t window_length = 20;
  std::size_t stride = 20;
  std::vector<Method> methods = {Method::nvg, Method::hvg, Method::nvmg, Method::vrp};
  WalkConfig walk;  // target_length 0 means "window length"; seed is ignored
  std::size_t sequences_per_window = 10;
  DownsampleMode downsample_mode = DownsampleMode::DS;
  std::size_t downsample_k = 1;
  double similar_value_epsilon = 0.01;
  std::uint64_t master_seed = 42;
};

struct GeneratedSet {
  // Per method, sorted by (ticker, window start, candidate order).
  std::map<std::string, std::vector<SyntheticSequence>> sequences;
  std::vector<RuntimeRecord> runtime;
  std::size_t short_pools = 0;  // windows whose candidate pool was smaller than k
};

// Scaled, valid windows of every series, sorted by (ticker, start).
std::vector<Window> prepare_windows(std::span<const TimeSeries> series, std::size_t length,
                                    std::size_t stride);

// Fans per-ticker (nvg, hvg, vrp) and per-segment (nvmg) units out over the
// OpenMP team. Every unit draws from seeds derived from (master seed, ticker,
// window start, method), so the output does not depend on scheduling.
GeneratedSet generate_all(std::span<const Window> windows, const GenerateOptions& options);

namespace serial {
// Same units executed one after another. Reference for generate_all.
GeneratedSet generate_all(std::span<const Window> windows, const GenerateOptions& options);
}  // namespace serial

// Synthetic sequence records:
//   {"ticker","window_start","method","seed","values":[...]}  (+"scaled" if requested)
void write_sequences_jsonl(std::ostream& out, std::span<const SyntheticSequence> sequences,
                           bool include_scaled = false);
std::vector<SyntheticSequence> read_sequences_jsonl(std::istream& in);

// Seeded desk corpus: geometric random walks whose drift and volatility switch
// between regimes with a Markov chain.
struct CorpusParams {
  std::size_t tickers = 20;
  std::size_t days = 500;
  std::uint64_t seed = 7;
  double regime_switch_prob = 1.0 / 40.0;
  double drift = 0.004;          // daily log drift magnitude in trending regimes
  double calm_volatility = 0.01;
  double turbulent_volatility = 0.02;
  double missing_prob = 0.0;
};
std::vector<TimeSeries> make_corpus(const CorpusParams& params);

}  // namespace vgsynth
