#include "vgsynth/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "vgsynth/error.hpp"
#include "vgsynth/kernels.hpp"
#include "vgsynth/report.hpp"

namespace vgsynth {

namespace fs = std::filesystem;

std::string sequences_path(const std::string& out_dir, const std::string& method) {
  return (fs::path(out_dir) / ("sequences_" + method + ".jsonl")).string();
}

namespace {

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + p.string() + "'");
  return out;
}

std::vector<Window> load_windows(const RunConfig& config) {
  if (config.input.empty()) throw ConfigError("no input file configured");
  const auto series = load_series(config.input);
  return prepare_windows(series, config.generate.window_length, config.generate.stride);
}

}  // namespace

GeneratedSet cmd_generate(const RunConfig& config, std::ostream& log) {
  config.validate();
  kernels::set_workers(config.workers);
  const auto windows = load_windows(config);
  fs::create_directories(config.output_dir);
  const fs::path dir(config.output_dir);

  open_out(dir / "config.json") << to_json(config).dump(2) << '\n';
  {
    auto out = open_out(dir / "windows.jsonl");
    write_windows_jsonl(out, windows);
  }

  auto set = generate_all(windows, config.generate);
  for (const auto m : config.generate.methods) {
    const std::string name = to_string(m);
    auto out = open_out(sequences_path(config.output_dir, name));
    write_sequences_jsonl(out, set.sequences[name], config.emit_scaled);
    log << name << ": " << set.sequences[name].size() << " sequences\n";
  }
  {
    auto out = open_out(dir / "runtime.jsonl");
    write_runtime_jsonl(out, set.runtime);
  }
  if (set.short_pools > 0)
    log << "warning: " << set.short_pools << " windows had fewer candidates than k\n";
  log << windows.size() << " windows, " << set.runtime.size() << " timed units\n";
  return set;
}

EvalReport cmd_evaluate(const RunConfig& config, std::ostream& log) {
  config.validate();
  kernels::set_workers(config.workers);
  const auto windows = load_windows(config);
  const fs::path dir(config.output_dir);

  std::map<std::string, std::vector<SyntheticSequence>> synthetic;
  for (const auto m : config.generate.methods) {
    const auto path = sequences_path(config.output_dir, to_string(m));
    std::ifstream in(path);
    if (!in) throw InvalidInput("missing generated file '" + path + "'");
    synthetic[to_string(m)] = read_sequences_jsonl(in);
  }

  const LogisticRegression prototype(config.classifier);
  auto report = run_experiment(windows, synthetic, config.split, prototype, config.seed());
  report.config_snapshot = to_json(config).dump();

  for (auto& result : report.methods) {
    const auto& seqs = synthetic[result.method];
    if (seqs.empty()) continue;
    EmbedParams params = config.embedding;
    params.seed = config.seed();
    const auto overlap =
        assess_overlap(windows, seqs, config.embedding_sample_per_origin, params, config.mixing_k);
    result.mixing_score = overlap.mixing_score;
    auto out = open_out(dir / ("embedding_" + result.method + ".csv"));
    write_embedding_csv(out, overlap.embedding.coords, overlap.origins);
  }

  std::ifstream runtime_in(dir / "runtime.jsonl");
  if (runtime_in) report.runtime_totals = aggregate(read_runtime_jsonl(runtime_in));

  open_out(dir / "report.json") << report_to_json(report).dump(2) << '\n';
  open_out(dir / "runtime_summary.json") << runtime_to_json(report.runtime_totals).dump(2) << '\n';
  log << "wrote " << (dir / "report.json").string() << '\n';
  return report;
}

void cmd_report(const std::string& out_dir, std::ostream& out) {
  const fs::path dir(out_dir);
  std::ifstream in(dir / "report.json");
  if (!in) throw InvalidInput("missing report '" + (dir / "report.json").string() + "'");
  const auto j = nlohmann::json::parse(in);
  const auto problems = validate_report(j);
  if (!problems.empty()) throw SchemaError("report does not match schema: " + problems.front());

  char buf[160];
  std::snprintf(buf, sizeof buf, "%-8s %10s %10s %10s %8s\n", "method", "real", "synthetic", "mixed", "mixing");
  out << buf;
  for (const auto& m : j["methods"]) {
    const std::string mix = m["mixing_score"].is_null() ? "-" : std::to_string(m["mixing_score"].get<double>());
    std::snprintf(buf, sizeof buf, "%-8s %10.5f %10.5f %10.5f %8.8s%s\n", m["method"].get<std::string>().c_str(),
                  m["auc_real"].get<double>(), m["auc_synthetic"].get<double>(), m["auc_mixed"].get<double>(),
                  mix.c_str(), m["skipped"].get<bool>() ? "  (skipped)" : "");
    out << buf;
  }

  std::ifstream runtime_in(dir / "runtime.jsonl");
  if (runtime_in) {
    out << "\nmethod   unit      units  time (days hh:mm:ss)\n";
    for (const auto& [method, t] : aggregate(read_runtime_jsonl(runtime_in))) {
      std::snprintf(buf, sizeof buf, "%-8s %-8s %6zu  %s\n", method.c_str(), to_string(t.unit_kind), t.units,
                    format_duration(t.total_ms).c_str());
      out << buf;
    }
  }
}

}  // namespace vgsynth
