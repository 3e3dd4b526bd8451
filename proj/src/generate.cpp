#include "vgsynth/generate.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "vgsynth/error.hpp"
#include "vgsynth/kernels.hpp"

namespace vgsynth {

const char* to_string(NodeStrategy s) {
  switch (s) {
    case NodeStrategy::uniform_random: return "uniform_random";
    case NodeStrategy::random_neighbor: return "random_neighbor";
    case NodeStrategy::random_neighbor_graph_switching: return "random_neighbor_graph_switching";
    case NodeStrategy::restart_random: return "restart_random";
    case NodeStrategy::degree_weighted: return "degree_weighted";
  }
  return "?";
}

const char* to_string(ValuePolicy p) { return p == ValuePolicy::random ? "random" : "round_robin"; }
const char* to_string(RestartBase b) { return b == RestartBase::neighbor ? "neighbor" : "uniform"; }
const char* to_string(DownsampleMode m) { return m == DownsampleMode::DS ? "DS" : "SimDS"; }

NodeStrategy parse_node_strategy(std::string_view s) {
  for (auto v : {NodeStrategy::uniform_random, NodeStrategy::random_neighbor,
                 NodeStrategy::random_neighbor_graph_switching, NodeStrategy::restart_random,
                 NodeStrategy::degree_weighted})
    if (s == to_string(v)) return v;
  throw ConfigError("unknown node strategy '" + std::string(s) + "'");
}

ValuePolicy parse_value_policy(std::string_view s) {
  if (s == "random") return ValuePolicy::random;
  if (s == "round_robin") return ValuePolicy::round_robin;
  throw ConfigError("unknown value policy '" + std::string(s) + "'");
}

RestartBase parse_restart_base(std::string_view s) {
  if (s == "neighbor") return RestartBase::neighbor;
  if (s == "uniform") return RestartBase::uniform;
  throw ConfigError("unknown restart base '" + std::string(s) + "'");
}

DownsampleMode parse_downsample_mode(std::string_view s) {
  if (s == "DS" || s == "ds") return DownsampleMode::DS;
  if (s == "SimDS" || s == "simds") return DownsampleMode::SimDS;
  throw ConfigError("unknown downsample mode '" + std::string(s) + "'");
}

void WalkConfig::validate() const {
  auto prob = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
      throw ConfigError(std::string(name) + " must lie in [0, 1]");
  };
  prob(restart_prob, "restart_prob");
  prob(switch_prob, "switch_prob");
  if (target_length < 1) throw ConfigError("target_length must be >= 1");
}

namespace {

NodeId uniform_node(const Graph& graph, Rng& rng) {
  return static_cast<NodeId>(uniform_index(rng, graph.node_count()));
}

std::span<const Neighbor> neighbors_or_throw(const Graph& graph, NodeId current) {
  const auto nb = graph.neighbors(current);
  if (nb.empty())
    throw IntegrityError("node " + std::to_string(current) + " has no neighbors");
  return nb;
}

NodeId uniform_neighbor(std::span<const Neighbor> nb, Rng& rng) {
  return nb[uniform_index(rng, nb.size())].node;
}

NodeId weighted_neighbor(std::span<const Neighbor> nb, Rng& rng) {
  std::uint64_t total = 0;
  for (const auto& x : nb) total += x.weight;
  auto pick = uniform_index(rng, total);
  for (const auto& x : nb) {
    if (pick < x.weight) return x.node;
    pick -= x.weight;
  }
  return nb.back().node;
}

// Uniform over the neighbors satisfying `pred`; `count` of them exist.
template <class Pred>
NodeId uniform_matching(std::span<const Neighbor> nb, std::size_t count, Pred pred, Rng& rng) {
  auto pick = uniform_index(rng, count);
  for (const auto& x : nb) {
    if (!pred(x)) continue;
    if (pick == 0) return x.node;
    --pick;
  }
  return nb.back().node;
}

NodeId switching_neighbor(std::span<const Neighbor> nb, double switch_prob, Rng& rng) {
  const auto is_cross = [](const Neighbor& x) { return x.cross; };
  const auto is_within = [](const Neighbor& x) { return x.visibility; };
  const auto cross = static_cast<std::size_t>(std::count_if(nb.begin(), nb.end(), is_cross));
  const auto within = static_cast<std::size_t>(std::count_if(nb.begin(), nb.end(), is_within));
  if (cross == 0) return uniform_neighbor(nb, rng);
  const bool jump = uniform01(rng) < switch_prob;
  if (jump || within == 0) return uniform_matching(nb, cross, is_cross, rng);
  return uniform_matching(nb, within, is_within, rng);
}

}  // namespace

NodeId next_node(const Graph& graph, NodeId current, const WalkConfig& config, WalkState& state) {
  if (current >= graph.node_count()) throw InvalidInput("current node not in graph");
  if (graph.node_count() == 1) return current;
  auto& rng = state.rng();
  switch (config.node_strategy) {
    case NodeStrategy::uniform_random:
      return uniform_node(graph, rng);
    case NodeStrategy::random_neighbor:
      return uniform_neighbor(neighbors_or_throw(graph, current), rng);
    case NodeStrategy::random_neighbor_graph_switching:
      return switching_neighbor(neighbors_or_throw(graph, current), config.switch_prob, rng);
    case NodeStrategy::restart_random: {
      const auto nb = neighbors_or_throw(graph, current);
      if (uniform01(rng) < config.restart_prob)
        return config.start_node.value_or(graph.start_node());
      return config.restart_base == RestartBase::neighbor ? uniform_neighbor(nb, rng)
                                                          : uniform_node(graph, rng);
    }
    case NodeStrategy::degree_weighted:
      return weighted_neighbor(neighbors_or_throw(graph, current), rng);
  }
  throw InvalidInput("unknown node strategy");
}

double next_value(const GraphNode& node, ValuePolicy policy, WalkState& state) {
  if (node.values.empty()) throw IntegrityError("node without values");
  if (node.values.size() == 1) return node.values.front();
  if (policy == ValuePolicy::random)
    return node.values[uniform_index(state.rng(), node.values.size())];
  auto& cursor = state.cursor(node.id);
  const double v = node.values[cursor];
  cursor = (cursor + 1) % node.values.size();
  return v;
}

SyntheticSequence generate_sequence(const Graph& graph, const WalkConfig& config,
                                    double scale_min, double scale_max, bool constant) {
  config.validate();
  if (graph.node_count() == 0) throw IntegrityError("empty graph");
  const NodeId start = config.start_node.value_or(graph.start_node());
  if (start >= graph.node_count()) throw ConfigError("start node not in graph");

  WalkState state(graph, config.seed);
  SyntheticSequence seq;
  seq.scaled.reserve(config.target_length);
  NodeId current = start;
  seq.scaled.push_back(next_value(graph.node(current), config.value_policy, state));
  while (seq.scaled.size() < config.target_length) {
    current = next_node(graph, current, config, state);
    seq.scaled.push_back(next_value(graph.node(current), config.value_policy, state));
  }
  seq.scale_min = scale_min;
  seq.scale_max = scale_max;
  seq.constant = constant;
  seq.values = inverse_values(seq.scaled, scale_min, scale_max, constant);
  seq.provenance.seed = config.seed;
  return seq;
}

SyntheticSequence generate_sequence(const Graph& graph, const WalkConfig& config,
                                    const Window& scale_source) {
  auto seq = generate_sequence(graph, config, scale_source.scale_min, scale_source.scale_max,
                               scale_source.constant);
  seq.provenance.ticker = scale_source.ticker;
  seq.provenance.window_start = scale_source.start_index;
  return seq;
}

SyntheticSequence vrp_generate(const Window& window, std::uint64_t seed) {
  Rng rng(seed);
  SyntheticSequence seq;
  seq.values = window.raw_values;
  // Fisher-Yates, high index down.
  for (std::size_t i = seq.values.size(); i > 1; --i) {
    const auto j = uniform_index(rng, i);
    std::swap(seq.values[i - 1], seq.values[j]);
  }
  seq.scale_min = window.scale_min;
  seq.scale_max = window.scale_max;
  seq.constant = window.constant;
  if (window.is_scaled()) {
    seq.scaled.resize(seq.values.size());
    const double span = window.scale_max - window.scale_min;
    for (std::size_t i = 0; i < seq.values.size(); ++i)
      seq.scaled[i] = window.constant ? 0.5 : (seq.values[i] - window.scale_min) / span;
  }
  seq.provenance = {"vrp", window.ticker, window.start_index, seed};
  return seq;
}

double dtw_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InvalidInput("dtw_distance needs non-empty sequences");
  const std::size_t m = b.size();
  // Two rolling rows of the cumulative cost table.
  std::vector<double> prev(m), cur(m);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double cost = std::abs(a[i] - b[j]);
      double best;
      if (i == 0 && j == 0) best = 0.0;
      else if (i == 0) best = cur[j - 1];
      else if (j == 0) best = prev[j];
      else best = std::min({prev[j], prev[j - 1], cur[j - 1]});
      cur[j] = cost + best;
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

DownsampleResult downsample(std::vector<SyntheticSequence> sequences, const Window& reference,
                            std::size_t k, DownsampleMode mode, std::uint64_t seed) {
  DownsampleResult out;
  if (k >= sequences.size()) {
    out.short_pool = k > sequences.size();
    out.sequences = std::move(sequences);
    return out;
  }
  std::vector<std::size_t> chosen;
  if (mode == DownsampleMode::DS) {
    std::vector<std::size_t> idx(sequences.size());
    std::iota(idx.begin(), idx.end(), 0);
    Rng rng(seed);
    for (std::size_t i = 0; i < k; ++i) {
      const auto j = i + uniform_index(rng, idx.size() - i);
      std::swap(idx[i], idx[j]);
    }
    chosen.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(chosen.begin(), chosen.end());
  } else {
    std::vector<std::vector<double>> candidates;
    candidates.reserve(sequences.size());
    for (const auto& s : sequences) candidates.push_back(s.values);
    const auto dist = kernels::dtw_to_reference(candidates, reference.raw_values);
    std::vector<std::size_t> idx(sequences.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
    chosen.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
  }
  out.sequences.reserve(k);
  for (auto i : chosen) out.sequences.push_back(std::move(sequences[i]));
  return out;
}

}  // namespace vgsynth
