// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "vgsynth/commands.hpp"
#include "vgsynth/config.hpp"
#include "vgsynth/embed.hpp"
#include "vgsynth/experiment.hpp"
#include "vgsynth/features.hpp"
#include "vgsynth/generate.hpp"
#include "vgsynth/graphs.hpp"
#include "vgsynth/kernels.hpp"
#include "vgsynth/metrics.hpp"
#include "vgsynth/oracles.hpp"
#include "vgsynth/pipeline.hpp"
#include "vgsynth/rng.hpp"
#include "vgsynth/runtime.hpp"

using namespace vgsynth;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Window scaled_window(std::vector<double> values, std::string ticker = "X", std::int64_t start = 0) {
  Window w;
  w.ticker = std::move(ticker);
  w.start_index = start;
  w.length = values.size();
  w.raw_values = std::move(values);
  return minmax_scale(std::move(w));
}

std::vector<double> random_values(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = uniform01(rng);
  return v;
}

// 1. Visibility graphs vs brute force, >= 200 windows each of lengths 20 and 60, exact, < 10 s.
Outcome c1_visibility_oracle() {
  Timer t;
  Rng rng(101);
  std::size_t cases = 0;
  for (std::size_t length : {20u, 60u}) {
    for (int i = 0; i < 200; ++i) {
      const auto w = scaled_window(random_values(rng, length));
      if (build_nvg(w).graph.edges() != nvg_bruteforce(w).graph.edges())
        return {false, fmt("NVG mismatch at length %zu window %d", length, i)};
      if (build_hvg(w).graph.edges() != hvg_bruteforce(w).graph.edges())
        return {false, fmt("HVG mismatch at length %zu window %d", length, i)};
      ++cases;
    }
  }
  const double s = t.seconds();
  return {s < 10.0, fmt("%zu windows x {NVG,HVG} exact, %.2f s (limit 10 s)", cases, s)};
}

// 2. DTW vs exponential recursion, >= 500 pairs of length <= 8, 1e-9, < 30 s.
Outcome c2_dtw_oracle() {
  Timer t;
  Rng rng(202);
  double worst = 0.0;
  const int pairs = 600;
  for (int i = 0; i < pairs; ++i) {
    std::vector<double> a(1 + uniform_index(rng, 8)), b(1 + uniform_index(rng, 8));
    for (auto& x : a) x = 20.0 * uniform01(rng) - 10.0;
    for (auto& x : b) x = 20.0 * uniform01(rng) - 10.0;
    worst = std::max(worst, std::abs(dtw_distance(a, b) - oracles::dtw_bruteforce(a, b)));
  }
  const double s = t.seconds();
  return {worst <= 1e-9 && s < 30.0,
          fmt("%d pairs, max |dp - brute| = %.3g (tol 1e-9), %.2f s (limit 30 s)", pairs, worst, s)};
}

// 3. AUC vs pairwise count, >= 1000 inputs of <= 50 points, 1e-12.
Outcome c3_auc_oracle() {
  Rng rng(303);
  double worst = 0.0;
  int done = 0;
  while (done < 1200) {
    const auto n = 2 + uniform_index(rng, 49);
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    const bool coarse = done % 2 == 0;
    for (auto& s : scores) s = coarse ? static_cast<double>(uniform_index(rng, 6)) : uniform01(rng);
    for (auto& l : labels) l = static_cast<int>(uniform_index(rng, 2));
    const auto pos = std::count(labels.begin(), labels.end(), 1);
    if (pos == 0 || pos == static_cast<long>(n)) continue;
    worst = std::max(worst, std::abs(roc_auc(scores, labels) - oracles::auc_pairwise(scores, labels).auc()));
    ++done;
  }
  return {worst <= 1e-12, fmt("%d inputs, max |rank - pairs| = %.3g (tol 1e-12)", done, worst)};
}

struct MethodAucs {
  double real = 0, synthetic = 0, mixed = 0;
};

// 4. Ordinal structure on the 20 x 500 desk corpus, window 20, mean over 5 seeds.
Outcome c4_ordinal() {
  Timer t;
  CorpusParams cp;
  cp.tickers = 20;
  cp.days = 500;
  cp.seed = 7;
  const auto windows = prepare_windows(make_corpus(cp), 20, 20);
  const std::vector<std::string> methods = {"nvg", "hvg", "nvmg", "vrp"};
  std::map<std::string, MethodAucs> mean;
  const int seeds = 5;
  for (int s = 0; s < seeds; ++s) {
    GenerateOptions opt;
    opt.master_seed = 1000 + static_cast<std::uint64_t>(s);
    auto set = generate_all(windows, opt);
    const LogisticRegression proto;
    const auto report = run_experiment(windows, set.sequences, SplitSpec{}, proto, opt.master_seed);
    for (const auto& m : report.methods) {
      mean[m.method].real += m.auc_real / seeds;
      mean[m.method].synthetic += m.auc_synthetic / seeds;
      mean[m.method].mixed += m.auc_mixed / seeds;
    }
  }
  bool pass = true;
  std::string detail;
  for (const auto& name : methods) {
    const auto& a = mean[name];
    const bool real_gt_syn = a.real > a.synthetic;
    const double lo = std::min(a.synthetic, a.real) - 0.02, hi = std::max(a.synthetic, a.real) + 0.02;
    const bool mixed_between = a.mixed >= lo && a.mixed <= hi;
    pass = pass && real_gt_syn && mixed_between;
    detail += fmt("%s r=%.4f s=%.4f m=%.4f%s%s; ", name.c_str(), a.real, a.synthetic, a.mixed,
                  real_gt_syn ? "" : " [real<=syn]", mixed_between ? "" : " [mixed outside]");
  }
  const double graph = 0.5 * (mean["nvg"].synthetic + mean["hvg"].synthetic);
  const bool graph_ge_vrp = graph >= mean["vrp"].synthetic;
  pass = pass && graph_ge_vrp;
  const double s = t.seconds();
  pass = pass && s < 600.0;
  detail += fmt("mean syn NVG/HVG %.4f vs VRP %.4f; %.1f s (limit 600 s)", graph, mean["vrp"].synthetic, s);
  return {pass, detail};
}

// 5. Runtime scale on a 160-ticker corpus: summed per-ticker time < 300 s for NVG and
// for HVG, < 30 s for VRP. Ten years of business days per ticker.
Outcome c5_runtime_scale() {
  CorpusParams cp;
  cp.tickers = 160;
  cp.days = 2520;
  cp.seed = 11;
  const auto windows = prepare_windows(make_corpus(cp), 20, 20);
  GenerateOptions opt;
  opt.methods = {Method::nvg, Method::hvg, Method::vrp};
  const auto set = generate_all(windows, opt);
  const auto totals = aggregate(set.runtime);
  const auto& nvg = totals.at("nvg");
  const auto& hvg = totals.at("hvg");
  const auto& vrp = totals.at("vrp");
  const bool pass = nvg.units == 160 && hvg.units == 160 && vrp.units == 160 &&
                    nvg.total_ms < 300000 && hvg.total_ms < 300000 && vrp.total_ms < 30000;
  return {pass, fmt("%zu windows; NVG %s, HVG %s (limit 0 00:05:00 each), VRP %s (limit 0 00:00:30); "
                    "raw ms %lld / %lld / %lld",
                    windows.size(), format_duration(nvg.total_ms).c_str(),
                    format_duration(hvg.total_ms).c_str(), format_duration(vrp.total_ms).c_str(),
                    static_cast<long long>(nvg.total_ms), static_cast<long long>(hvg.total_ms),
                    static_cast<long long>(vrp.total_ms))};
}

// 6. Mixing sanity: VRP against its real source >= 0.7; two far clouds <= 0.1.
Outcome c6_mixing() {
  CorpusParams cp;
  cp.tickers = 20;
  cp.days = 500;
  cp.seed = 7;
  const auto windows = prepare_windows(make_corpus(cp), 20, 20);
  GenerateOptions opt;
  opt.methods = {Method::vrp};
  const auto set = generate_all(windows, opt);
  EmbedParams ep;
  ep.seed = 42;
  const auto vrp = assess_overlap(windows, set.sequences.at("vrp"), 500, ep, 10);

  Rng rng(606);
  const std::size_t per = 250, dims = 20;
  kernels::Matrix clouds(2 * per, dims);
  std::vector<Origin> origins(2 * per, Origin::real);
  for (std::size_t i = 0; i < 2 * per; ++i) {
    const double centre = i < per ? 0.0 : 50.0;
    for (std::size_t d = 0; d < dims; ++d) clouds(i, d) = centre + standard_normal(rng);
    if (i >= per) origins[i] = Origin::synthetic;
  }
  const auto emb = embed_2d(clouds, ep);
  const double separated = mixing_score(emb.coords, origins, 10);
  const bool pass = vrp.mixing_score >= 0.7 && separated <= 0.1;
  return {pass, fmt("VRP vs real %.4f on %zu points (min 0.7); separated clouds %.4f (max 0.1)",
                    vrp.mixing_score, vrp.embedding.coords.rows, separated)};
}

// 7. Property suites.
Outcome c7_properties() {
  Rng rng(707);
  std::vector<std::string> failures;

  for (int i = 0; i < 1000; ++i) {
    auto values = random_values(rng, 20);
    for (auto& v : values) v = 10.0 + 90.0 * v;
    const auto w = scaled_window(values);
    auto shuffled = vrp_generate(w, static_cast<std::uint64_t>(i)).values;
    std::sort(shuffled.begin(), shuffled.end());
    std::sort(values.begin(), values.end());
    if (shuffled != values) {
      failures.push_back(fmt("VRP multiset differs at window %d", i));
      break;
    }
  }

  std::size_t graphs = 0;
  auto consecutive = [&](const Graph& g, std::size_t n, const char* what) {
    ++graphs;
    for (NodeId k = 0; k + 1 < n; ++k)
      if (!g.has_edge(k, k + 1)) {
        failures.push_back(fmt("%s lacks edge (%u,%u)", what, k, k + 1));
        return;
      }
  };
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = i % 2 ? 60 : 20;
    const auto w = scaled_window(random_values(rng, n));
    const auto nvg = build_nvg(w);
    const auto hvg = build_hvg(w);
    const auto np = nvg.graph.visibility_pairs();
    for (const auto& e : hvg.graph.visibility_pairs())
      if (!std::binary_search(np.begin(), np.end(), e)) {
        failures.push_back(fmt("HVG edge (%u,%u) not in NVG at window %d", e.first, e.second, i));
        break;
      }
    consecutive(nvg.graph, n, "NVG");
    consecutive(hvg.graph, n, "HVG");
  }

  std::size_t merged_values = 0;
  for (int seg = 0; seg < 100; ++seg) {
    std::vector<Window> ws;
    std::vector<double> inputs;
    const std::size_t tickers = 2 + uniform_index(rng, 8);
    for (std::size_t t = 0; t < tickers; ++t) {
      std::vector<double> v(20);
      for (auto& x : v) x = static_cast<double>(uniform_index(rng, 8));
      ws.push_back(scaled_window(v, "T" + std::to_string(t)));
      inputs.insert(inputs.end(), ws.back().scaled_values.begin(), ws.back().scaled_values.end());
    }
    const auto mg = build_multigraph(ws);
    std::vector<double> stored;
    for (const auto& node : mg.graph.nodes()) {
      stored.insert(stored.end(), node.values.begin(), node.values.end());
      merged_values += node.values.size() > 1;
    }
    std::sort(stored.begin(), stored.end());
    std::sort(inputs.begin(), inputs.end());
    if (stored != inputs) failures.push_back(fmt("multigraph lost values in segment %d", seg));
    for (const auto& w : ws) {
      ++graphs;
      for (std::int64_t k = 0; k + 1 < 20; ++k) {
        const auto a = mg.merge_map.at({w.ticker, k});
        const auto b = mg.merge_map.at({w.ticker, k + 1});
        if (a != b && mg.graph.multiplicity(a, b, EdgeKind::visibility) == 0) {
          failures.push_back(fmt("multigraph lacks consecutive edge in segment %d", seg));
          break;
        }
      }
    }
  }

  for (int i = 0; i < 500; ++i) {
    const auto v = random_values(rng, 3 + uniform_index(rng, 60));
    const double r = rsi(v);
    if (!(r >= 0.0 && r <= 100.0)) failures.push_back(fmt("rsi %.6g out of bounds", r));
    auto up = v;
    std::sort(up.begin(), up.end());
    up.erase(std::unique(up.begin(), up.end()), up.end());
    auto down = up;
    std::reverse(down.begin(), down.end());
    if (rsi(up) != 100.0 || rsi(down) != 0.0) failures.push_back("rsi extremes wrong");
    if (!failures.empty()) break;
  }

  // Two full runs (generate + evaluate) into the same directory compare byte-equal.
  const auto dir = fs::temp_directory_path() / "vgsynth_acceptance_rerun";
  fs::remove_all(dir);
  fs::create_directories(dir);
  CorpusParams cp;
  cp.tickers = 6;
  cp.days = 400;
  {
    std::ofstream csv(dir / "prices.csv");
    write_series(csv, make_corpus(cp));
  }
  RunConfig cfg;
  cfg.input = (dir / "prices.csv").string();
  cfg.output_dir = (dir / "out").string();
  cfg.embedding_sample_per_origin = 150;
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const std::vector<std::string> files = {"sequences_nvg.jsonl", "sequences_hvg.jsonl",
                                          "sequences_nvmg.jsonl", "sequences_vrp.jsonl",
                                          "windows.jsonl", "report.json", "embedding_nvg.csv"};
  std::vector<std::string> first;
  for (int run = 0; run < 2; ++run) {
    fs::remove_all(dir / "out");
    std::ostringstream log;
    cmd_generate(cfg, log);
    cmd_evaluate(cfg, log);
    for (std::size_t f = 0; f < files.size(); ++f) {
      const auto bytes = slurp(dir / "out" / files[f]);
      if (run == 0) {
        if (bytes.empty()) failures.push_back("empty " + files[f]);
        first.push_back(bytes);
      } else if (bytes != first[f]) {
        failures.push_back("rerun differs: " + files[f]);
      }
    }
  }
  fs::remove_all(dir);

  std::string detail = fmt("VRP 1000 windows, HVG<=NVG 200 windows, consecutive edges on %zu graphs, "
                           "multigraph conservation 100 segments (%zu merged nodes), RSI 500 windows, "
                           "rerun byte-equal over %zu files",
                           graphs, merged_values, files.size());
  for (const auto& f : failures) detail += "; " + f;
  return {failures.empty(), detail};
}

// 8. Embedding: affinity rows sum to 1 within 1e-9, entropy within 1e-5, KL(1000) <= KL(300)
// on a 500-point Gaussian mixture.
Outcome c8_embedding() {
  Rng rng(808);
  const std::size_t n = 500, dims = 10, clusters = 5;
  kernels::Matrix pts(n, dims);
  std::vector<std::vector<double>> centres(clusters, std::vector<double>(dims));
  for (auto& c : centres)
    for (auto& x : c) x = 6.0 * standard_normal(rng);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t d = 0; d < dims; ++d) pts(i, d) = centres[i % clusters][d] + standard_normal(rng);

  EmbedParams ep;
  ep.seed = 8;
  ep.kl_at = {300, 1000};
  // Same normalisation as embed_2d, so the affinities checked are the ones it uses.
  kernels::Matrix normed = pts;
  double max_abs = 0.0;
  for (std::size_t d = 0; d < dims; ++d) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += normed(i, d);
    mean /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      normed(i, d) -= mean;
      max_abs = std::max(max_abs, std::abs(normed(i, d)));
    }
  }
  for (auto& x : normed.data) x /= max_abs;
  const auto aff = compute_affinities(normed, ep.perplexity, ep.entropy_tolerance);
  double worst_row = 0.0, worst_entropy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += aff.conditional(i, j);
    worst_row = std::max(worst_row, std::abs(row - 1.0));
    worst_entropy = std::max(worst_entropy, aff.entropy_error[i]);
  }

  const auto emb = embed_2d(pts, ep);
  double kl300 = NAN, kl1000 = NAN;
  for (const auto& [it, kl] : emb.kl_trace) {
    if (it == 300) kl300 = kl;
    if (it == 1000) kl1000 = kl;
  }
  const bool pass = worst_row <= 1e-9 && worst_entropy <= 1e-5 && emb.max_entropy_error <= 1e-5 &&
                    std::isfinite(kl300) && std::isfinite(kl1000) && kl1000 <= kl300;
  return {pass, fmt("max |row sum - 1| %.3g (tol 1e-9); max entropy error %.3g (tol 1e-5); "
                    "KL@300 %.5f, KL@1000 %.5f",
                    worst_row, std::max(worst_entropy, emb.max_entropy_error), kl300, kl1000)};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"C1 visibility graph oracle equivalence", c1_visibility_oracle},
      {"C2 DTW oracle", c2_dtw_oracle},
      {"C3 ROC AUC oracle", c3_auc_oracle},
      {"C4 ordinal AUC structure on desk corpus", c4_ordinal},
      {"C5 runtime scale on 160 tickers", c5_runtime_scale},
      {"C6 mixing score sanity", c6_mixing},
      {"C7 property suites", c7_properties},
      {"C8 embedding correctness", c8_embedding},
  };
  std::string only = argc > 1 ? argv[1] : "";
  int failed = 0;
  for (auto& [name, run] : criteria) {
    if (!only.empty() && name.rfind(only, 0) != 0) continue;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
