#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vgsynth/graphs.hpp"
#include "vgsynth/ingest.hpp"
#include "vgsynth/rng.hpp"

namespace vgsynth {

enum class NodeStrategy {
  uniform_random,
  random_neighbor,
  random_neighbor_graph_switching,
  restart_random,
  degree_weighted,
};

enum class ValuePolicy { random, round_robin };

// What a restart_random walk does when it does not restart.
enum class RestartBase { neighbor, uniform };

const char* to_string(NodeStrategy s);
const char* to_string(ValuePolicy p);
const char* to_string(RestartBase b);
NodeStrategy parse_node_strategy(std::string_view s);
ValuePolicy parse_value_policy(std::string_view s);
RestartBase parse_restart_base(std::string_view s);

struct WalkConfig {
  NodeStrategy node_strategy = NodeStrategy::restart_random;
  double restart_prob = 0.15;
  RestartBase restart_base = RestartBase::neighbor;
  double switch_prob = 0.5;
  ValuePolicy value_policy = ValuePolicy::round_robin;
  std::size_t target_length = 20;
  std::uint64_t seed = 0;
  std::optional<NodeId> start_node;  // default: graph's start node

  void validate() const;  // throws ConfigError
};

struct Provenance {
  std::string method;
  std::string ticker;
  std::int64_t window_start = 0;
  std::uint64_t seed = 0;
};

struct SyntheticSequence {
  std::vector<double> scaled;  // walk output before inverse scaling
  std::vector<double> values;  // in price units
  Provenance provenance;
  double scale_min = 0.0;
  double scale_max = 1.0;
  bool constant = false;
};

// Per-walk mutable state: rng plus one round-robin cursor per node.
class WalkState {
 public:
  WalkState(const Graph& graph, std::uint64_t seed)
      : rng_(seed), cursors_(graph.node_count(), 0) {}
  Rng& rng() { return rng_; }
  std::size_t& cursor(NodeId id) { return cursors_.at(id); }

 private:
  Rng rng_;
  std::vector<std::size_t> cursors_;
};

NodeId next_node(const Graph& graph, NodeId current, const WalkConfig& config, WalkState& state);
double next_value(const GraphNode& node, ValuePolicy policy, WalkState& state);

// Walks from the start node appending one value per step (restarts included)
// until target_length values exist. The scale maps the walk back to prices.
SyntheticSequence generate_sequence(const Graph& graph, const WalkConfig& config,
                                    double scale_min, double scale_max, bool constant);
SyntheticSequence generate_sequence(const Graph& graph, const WalkConfig& config,
                                    const Window& scale_source);

// Uniform random permutation of the window's raw values.
SyntheticSequence vrp_generate(const Window& window, std::uint64_t seed);

// Classic DTW, absolute-difference cost, unconstrained.
double dtw_distance(std::span<const double> a, std::span<const double> b);

enum class DownsampleMode { DS, SimDS };
const char* to_string(DownsampleMode m);
DownsampleMode parse_downsample_mode(std::string_view s);

struct DownsampleResult {
  std::vector<SyntheticSequence> sequences;
  bool short_pool = false;  // fewer candidates than k; all were returned
};

// DS: k uniformly without replacement (kept in generation order).
// SimDS: k smallest DTW distances to the reference's raw values, ties by
// generation order.
DownsampleResult downsample(std::vector<SyntheticSequence> sequences, const Window& reference,
                            std::size_t k, DownsampleMode mode, std::uint64_t seed);

}  // namespace vgsynth
