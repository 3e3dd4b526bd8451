#include "vgsynth/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <tuple>

#include "json.hpp"
#include "vgsynth/error.hpp"
#include "vgsynth/graphs.hpp"
#include "vgsynth/kernels.hpp"
#include "vgsynth/rng.hpp"

namespace vgsynth {

const char* to_string(Method m) {
  switch (m) {
    case Method::nvg: return "nvg";
    case Method::hvg: return "hvg";
    case Method::nvmg: return "nvmg";
    case Method::vrp: return "vrp";
  }
  return "?";
}

Method parse_method(std::string_view s) {
  for (auto m : {Method::nvg, Method::hvg, Method::nvmg, Method::vrp})
    if (s == to_string(m)) return m;
  throw ConfigError("unknown method '" + std::string(s) + "' (valid: nvg, hvg, nvmg, vrp)");
}

std::vector<Method> parse_methods(std::string_view list) {
  std::vector<Method> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const auto comma = std::min(list.find(',', pos), list.size());
    const auto name = list.substr(pos, comma - pos);
    if (!name.empty()) {
      const auto m = parse_method(name);
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    pos = comma + 1;
  }
  if (out.empty()) throw ConfigError("no methods given (valid: nvg, hvg, nvmg, vrp)");
  return out;
}

std::vector<Window> prepare_windows(std::span<const TimeSeries> series, std::size_t length,
                                    std::size_t stride) {
  std::vector<Window> out;
  for (const auto& ts : series)
    for (auto& w : slice_windows(ts, length, stride)) out.push_back(minmax_scale(std::move(w)));
  std::sort(out.begin(), out.end(), [](const Window& a, const Window& b) {
    return std::tie(a.ticker, a.start_index) < std::tie(b.ticker, b.start_index);
  });
  return out;
}

namespace {

struct Unit {
  Method method;
  std::string unit_id;
  std::vector<const Window*> windows;
};

struct UnitOutput {
  std::vector<SyntheticSequence> sequences;
  RuntimeRecord record;
  std::size_t short_pools = 0;
};

std::vector<Unit> plan_units(std::span<const Window> windows, const GenerateOptions& opt) {
  std::vector<Unit> units;
  for (const Method m : opt.methods) {
    std::map<std::string, std::vector<const Window*>> groups;
    for (const auto& w : windows) {
      const auto key = m == Method::nvmg ? std::to_string(w.start_index) : w.ticker;
      groups[key].push_back(&w);
    }
    for (auto& [id, ws] : groups) units.push_back({m, id, std::move(ws)});
  }
  return units;
}

WalkConfig walk_for(const GenerateOptions& opt, const Window& w) {
  WalkConfig cfg = opt.walk;
  if (cfg.target_length == 0) cfg.target_length = w.raw_values.size();
  return cfg;
}

void finish_window(std::vector<SyntheticSequence> candidates, const Window& w, std::uint64_t window_seed,
                   const GenerateOptions& opt, UnitOutput& out) {
  auto picked = downsample(std::move(candidates), w, opt.downsample_k, opt.downsample_mode,
                           mix_seed(window_seed, 0xd5d5d5d5ULL));
  out.short_pools += picked.short_pool;
  for (auto& s : picked.sequences) out.sequences.push_back(std::move(s));
}

void run_graph_window(const Graph& graph, const Window& w, std::optional<NodeId> start,
                      Method method, const GenerateOptions& opt, UnitOutput& out) {
  const auto window_seed = derive_seed(opt.master_seed, w.ticker, w.start_index, to_string(method));
  WalkConfig cfg = walk_for(opt, w);
  if (start) cfg.start_node = start;
  std::vector<SyntheticSequence> candidates;
  candidates.reserve(opt.sequences_per_window);
  for (std::size_t r = 0; r < opt.sequences_per_window; ++r) {
    cfg.seed = mix_seed(window_seed, r);
    auto seq = generate_sequence(graph, cfg, w);
    seq.provenance.method = to_string(method);
    candidates.push_back(std::move(seq));
  }
  finish_window(std::move(candidates), w, window_seed, opt, out);
}

UnitOutput run_unit(const Unit& unit, const GenerateOptions& opt) {
  UnitOutput out;
  const auto kind = unit.method == Method::nvmg ? UnitKind::segment : UnitKind::ticker;
  out.record = time_unit(unit.unit_id, kind, to_string(unit.method), [&] {
    switch (unit.method) {
      case Method::nvg:
      case Method::hvg: {
        const auto vk = unit.method == Method::nvg ? VisibilityKind::NVG : VisibilityKind::HVG;
        for (const Window* w : unit.windows) {
          const auto vg = build_visibility_graph(*w, vk);
          run_graph_window(vg.graph, *w, std::nullopt, unit.method, opt, out);
        }
        break;
      }
      case Method::nvmg: {
        std::vector<Window> segment;
        segment.reserve(unit.windows.size());
        for (const Window* w : unit.windows) segment.push_back(*w);
        const auto mg = build_multigraph(segment, opt.similar_value_epsilon);
        for (const auto& w : segment)
          run_graph_window(mg.graph, w, mg.ticker_start(w.ticker), unit.method, opt, out);
        break;
      }
      case Method::vrp: {
        for (const Window* w : unit.windows) {
          const auto window_seed = derive_seed(opt.master_seed, w->ticker, w->start_index, "vrp");
          std::vector<SyntheticSequence> candidates;
          for (std::size_t r = 0; r < opt.sequences_per_window; ++r)
            candidates.push_back(vrp_generate(*w, mix_seed(window_seed, r)));
          finish_window(std::move(candidates), *w, window_seed, opt, out);
        }
        break;
      }
    }
  });
  return out;
}

void validate(const GenerateOptions& opt) {
  if (opt.methods.empty()) throw ConfigError("no methods requested");
  if (opt.sequences_per_window < 1) throw ConfigError("sequences_per_window must be >= 1");
  if (opt.downsample_k < 1) throw ConfigError("downsample k must be >= 1");
  WalkConfig probe = opt.walk;
  if (probe.target_length == 0) probe.target_length = 1;
  probe.validate();
}

GeneratedSet collect(const std::vector<Unit>& units, std::vector<UnitOutput> outputs) {
  GeneratedSet set;
  for (std::size_t i = 0; i < units.size(); ++i) {
    auto& bucket = set.sequences[to_string(units[i].method)];
    for (auto& s : outputs[i].sequences) bucket.push_back(std::move(s));
    set.runtime.push_back(std::move(outputs[i].record));
    set.short_pools += outputs[i].short_pools;
  }
  for (auto& [method, seqs] : set.sequences) {
    std::stable_sort(seqs.begin(), seqs.end(), [](const auto& a, const auto& b) {
      return std::tie(a.provenance.ticker, a.provenance.window_start) <
             std::tie(b.provenance.ticker, b.provenance.window_start);
    });
  }
  return set;
}

}  // namespace

GeneratedSet generate_all(std::span<const Window> windows, const GenerateOptions& options) {
  validate(options);
  const auto units = plan_units(windows, options);
  std::vector<UnitOutput> outputs(units.size());
  const auto n = static_cast<std::int64_t>(units.size());
  // Exceptions cannot cross the OpenMP region; the first one is rethrown after.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(kernels::workers())
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      outputs[i] = run_unit(units[i], options);
    } catch (...) {
#pragma omp critical(vgsynth_generate_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return collect(units, std::move(outputs));
}

namespace serial {

GeneratedSet generate_all(std::span<const Window> windows, const GenerateOptions& options) {
  validate(options);
  const auto units = plan_units(windows, options);
  std::vector<UnitOutput> outputs;
  outputs.reserve(units.size());
  for (const auto& u : units) outputs.push_back(run_unit(u, options));
  return collect(units, std::move(outputs));
}

}  // namespace serial

void write_sequences_jsonl(std::ostream& out, std::span<const SyntheticSequence> sequences,
                           bool include_scaled) {
  for (const auto& s : sequences) {
    nlohmann::ordered_json j;
    j["ticker"] = s.provenance.ticker;
    j["window_start"] = s.provenance.window_start;
    j["method"] = s.provenance.method;
    j["seed"] = s.provenance.seed;
    j["values"] = s.values;
    if (include_scaled) j["scaled"] = s.scaled;
    out << j.dump() << '\n';
  }
}

std::vector<SyntheticSequence> read_sequences_jsonl(std::istream& in) {
  std::vector<SyntheticSequence> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      SyntheticSequence s;
      s.provenance.ticker = j.at("ticker").get<std::string>();
      s.provenance.window_start = j.at("window_start").get<std::int64_t>();
      s.provenance.method = j.at("method").get<std::string>();
      s.provenance.seed = j.at("seed").get<std::uint64_t>();
      s.values = j.at("values").get<std::vector<double>>();
      if (j.contains("scaled")) s.scaled = j.at("scaled").get<std::vector<double>>();
      out.push_back(std::move(s));
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError("sequence record line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<TimeSeries> make_corpus(const CorpusParams& params) {
  struct Regime {
    double drift;
    double vol;
  };
  const Regime regimes[] = {{0.0, params.calm_volatility},
                            {params.drift, params.calm_volatility},
                            {-params.drift, params.turbulent_volatility}};

  // Business days from 2015-01-01.
  std::vector<Date> dates;
  Date d = parse_date("2015-01-01");
  while (dates.size() < params.days) {
    const std::chrono::weekday wd{d};
    if (wd != std::chrono::Saturday && wd != std::chrono::Sunday) dates.push_back(d);
    d += std::chrono::days{1};
  }

  std::vector<TimeSeries> out;
  for (std::size_t t = 0; t < params.tickers; ++t) {
    char name[16];
    std::snprintf(name, sizeof name, "T%03zu", t);
    Rng rng(mix_seed(params.seed, t));
    TimeSeries ts;
    ts.ticker = name;
    ts.timestamps = dates;
    double log_price = std::log(20.0 + 180.0 * uniform01(rng));
    std::size_t regime = uniform_index(rng, 3);
    for (std::size_t i = 0; i < params.days; ++i) {
      if (i > 0) {
        if (uniform01(rng) < params.regime_switch_prob) regime = (regime + 1 + uniform_index(rng, 2)) % 3;
        log_price += regimes[regime].drift + regimes[regime].vol * standard_normal(rng);
      }
      const double price = std::round(std::exp(log_price) * 100.0) / 100.0;
      const bool missing = params.missing_prob > 0 && uniform01(rng) < params.missing_prob;
      ts.values.push_back(missing ? kMissing : std::max(price, 0.01));
    }
    out.push_back(std::move(ts));
  }
  return out;
}

}  // namespace vgsynth
