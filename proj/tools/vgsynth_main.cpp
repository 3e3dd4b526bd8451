// vgsynth: synthetic time series from visibility-graph walks.
//
//   vgsynth generate --config run.json [--seed N] [--workers N] [--window 20|60]
//                    [--methods nvg,hvg,nvmg,vrp] [--out DIR] [--input FILE]
//   vgsynth evaluate --config run.json [...same overrides...]
//   vgsynth report   --out DIR
//   vgsynth selftest
//   vgsynth corpus   --file corpus.csv [--tickers 20] [--days 500] [--seed 7]
//
// Exit codes: 0 success, 1 failure, 2 configuration error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "vgsynth/commands.hpp"
#include "vgsynth/error.hpp"
#include "vgsynth/selftest.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::size_t> window;
  std::optional<std::string> methods;
  std::optional<std::string> out;
  std::optional<std::string> input;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Run configuration (JSON)");
    cmd->add_option("--seed", seed, "Master seed");
    cmd->add_option("--workers", workers, "Worker threads (0 = all cores)");
    cmd->add_option("--window", window, "Window length")->check(CLI::IsMember({20, 60}));
    cmd->add_option("--methods", methods, "Comma-separated subset of nvg,hvg,nvmg,vrp");
    cmd->add_option("--out", out, "Output directory");
    cmd->add_option("--input", input, "Input file (date,ticker,close)");
  }

  vgsynth::RunConfig resolve() const {
    vgsynth::RunConfig c;
    if (!config_path.empty()) {
      c = vgsynth::load_config(config_path);
    } else if (out && std::filesystem::exists(std::filesystem::path(*out) / "config.json")) {
      c = vgsynth::load_config((std::filesystem::path(*out) / "config.json").string());
    }
    if (seed) {
      c.generate.master_seed = *seed;
      c.embedding.seed = *seed;
    }
    if (workers) c.workers = *workers;
    if (window) {
      if (c.generate.stride == c.generate.window_length) c.generate.stride = *window;
      c.generate.window_length = *window;
    }
    if (methods) c.generate.methods = vgsynth::parse_methods(*methods);
    if (out) c.output_dir = *out;
    if (input) c.input = *input;
    c.validate();
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic financial time series from visibility-graph walks"};
  app.require_subcommand(1);

  Overrides gen_opts, eval_opts;
  auto* gen = app.add_subcommand("generate", "Build graphs, walk them and write synthetic sequences");
  gen_opts.attach(gen);
  auto* eval = app.add_subcommand("evaluate", "Train/test classifiers and embed real vs synthetic");
  eval_opts.attach(eval);

  std::string report_dir = "out";
  auto* rep = app.add_subcommand("report", "Print AUC and runtime tables of a finished run");
  rep->add_option("--out", report_dir, "Output directory of the run");

  auto* self = app.add_subcommand("selftest", "Run the embedded brute-force oracle suites");

  std::string corpus_file;
  vgsynth::CorpusParams corpus;
  auto* corp = app.add_subcommand("corpus", "Write a seeded regime-switching price corpus");
  corp->add_option("--file", corpus_file, "Output CSV")->required();
  corp->add_option("--tickers", corpus.tickers);
  corp->add_option("--days", corpus.days);
  corp->add_option("--seed", corpus.seed);
  corp->add_option("--missing", corpus.missing_prob, "Probability a close is missing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      vgsynth::cmd_generate(gen_opts.resolve(), std::cerr);
    } else if (*eval) {
      vgsynth::cmd_evaluate(eval_opts.resolve(), std::cerr);
    } else if (*rep) {
      vgsynth::cmd_report(report_dir, std::cout);
    } else if (*self) {
      const auto checks = vgsynth::run_selftest();
      vgsynth::print_selftest(std::cout, checks);
      return vgsynth::all_passed(checks) ? 0 : 1;
    } else if (*corp) {
      std::ofstream out(corpus_file);
      if (!out) throw vgsynth::InvalidInput("cannot write '" + corpus_file + "'");
      const auto series = vgsynth::make_corpus(corpus);
      vgsynth::write_series(out, series);
    }
  } catch (const vgsynth::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
