#pragma once

#include <iosfwd>
#include <string>

#include "vgsynth/config.hpp"
#include "vgsynth/experiment.hpp"

namespace vgsynth {

// Output directory layout:
//   config.json               configuration snapshot
//   windows.jsonl             real windows (raw values)
//   sequences_<method>.jsonl  synthetic sequences after downsampling
//   runtime.jsonl             per-unit wall-clock records
//   report.json               evaluation report (deterministic)
//   runtime_summary.json      per-method totals in days hh:mm:ss
//   embedding_<method>.csv    x,y,origin
std::string sequences_path(const std::string& out_dir, const std::string& method);

// ingest -> graphs -> walks -> downsample -> files.
GeneratedSet cmd_generate(const RunConfig& config, std::ostream& log);

// Reads the generated files, trains/evaluates, embeds, writes the report.
// Throws InvalidInput naming the path when a generated file is missing.
EvalReport cmd_evaluate(const RunConfig& config, std::ostream& log);

// Prints the AUC table and the runtime summary of a finished run.
void cmd_report(const std::string& out_dir, std::ostream& out);

}  // namespace vgsynth
