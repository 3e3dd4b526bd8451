#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "vgsynth/classifier.hpp"
#include "vgsynth/embed.hpp"
#include "vgsynth/experiment.hpp"
#include "vgsynth/pipeline.hpp"

namespace vgsynth {

// Everything a run needs. Serialised as one JSON document; see README for the
// schema. Unknown keys are rejected.
struct RunConfig {
  std::string input;
  std::string output_dir = "out";
  GenerateOptions generate;
  bool emit_scaled = false;
  SplitSpec split;
  LogisticParams classifier;
  EmbedParams embedding;
  std::size_t embedding_sample_per_origin = 500;
  std::size_t mixing_k = 10;
  int workers = 0;

  void validate() const;  // throws ConfigError
  std::uint64_t seed() const { return generate.master_seed; }
};

nlohmann::ordered_json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

}  // namespace vgsynth
