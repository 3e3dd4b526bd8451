#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vgsynth/ingest.hpp"

namespace vgsynth {

using NodeId = std::uint32_t;

enum class VisibilityKind { NVG, HVG };
enum class EdgeKind : std::uint8_t { visibility, co_occurrence, similar_value };

const char* to_string(VisibilityKind k);
const char* to_string(EdgeKind k);

struct GraphNode {
  NodeId id = 0;
  std::vector<std::int64_t> time_indices;
  std::vector<double> values;
  std::vector<std::string> ticker_tags;
};

// Undirected edge with u < v. Parallel edges of one kind are folded into
// `multiplicity`.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  EdgeKind kind = EdgeKind::visibility;
  std::uint32_t multiplicity = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  NodeId node = 0;
  std::uint32_t weight = 0;  // summed multiplicity over all edge kinds
  bool visibility = false;   // reachable through a visibility edge
  bool cross = false;        // reachable through a co-occurrence or similar-value edge
};

// Immutable node/edge store shared by visibility graphs and multigraphs, with
// a CSR adjacency view for walkers. Safe for concurrent reads.
class Graph {
 public:
  Graph() = default;
  // Edges may arrive in any order and with duplicates; they are canonicalized
  // (u < v, sorted by (u, v, kind), duplicates summed). Self-loops are dropped.
  Graph(std::vector<GraphNode> nodes, std::vector<Edge> edges, NodeId start_node = 0);

  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<GraphNode>& nodes() const { return nodes_; }
  const GraphNode& node(NodeId id) const { return nodes_.at(id); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Neighbor> neighbors(NodeId id) const;
  NodeId start_node() const { return start_node_; }

  bool has_edge(NodeId a, NodeId b) const;
  std::uint32_t multiplicity(NodeId a, NodeId b, EdgeKind kind) const;

  // Visibility edges as sorted (u, v) pairs.
  std::vector<std::pair<NodeId, NodeId>> visibility_pairs() const;

  // Edge list `u v kind multiplicity` followed by the node table.
  void dump(std::ostream& out) const;

 private:
  std::vector<GraphNode> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  NodeId start_node_ = 0;
};

struct WindowRef {
  std::string ticker;
  std::int64_t start_index = 0;
  std::size_t length = 0;
};

struct VisibilityGraph {
  VisibilityKind kind = VisibilityKind::NVG;
  WindowRef source;
  Graph graph;
};

struct MultiGraph {
  std::int64_t segment_start = 0;
  std::size_t segment_length = 0;
  std::vector<std::string> tickers;  // input order
  std::map<std::string, std::vector<NodeId>> per_ticker;
  // (ticker, time index within the segment) -> node id
  std::map<std::pair<std::string, std::int64_t>, NodeId> merge_map;
  Graph graph;

  // Node holding the given ticker's first value; walks for that ticker start here.
  NodeId ticker_start(const std::string& ticker) const;
};

inline constexpr double kDefaultSimilarValueEpsilon = 0.01;

// Scaled values must be in place (see minmax_scale).
VisibilityGraph build_nvg(const Window& window);
VisibilityGraph build_hvg(const Window& window);
VisibilityGraph build_visibility_graph(const Window& window, VisibilityKind kind);
MultiGraph build_multigraph(std::span<const Window> windows,
                            double similar_value_epsilon = kDefaultSimilarValueEpsilon);

// Literal O(n^3) evaluation of each criterion for every pair. Test oracle.
VisibilityGraph nvg_bruteforce(const Window& window);
VisibilityGraph hvg_bruteforce(const Window& window);

// Index-level kernels on a plain value sequence (time index = position).
std::vector<std::pair<NodeId, NodeId>> nvg_edges(std::span<const double> values);
std::vector<std::pair<NodeId, NodeId>> hvg_edges(std::span<const double> values);
std::vector<std::pair<NodeId, NodeId>> nvg_edges_bruteforce(std::span<const double> values);
std::vector<std::pair<NodeId, NodeId>> hvg_edges_bruteforce(std::span<const double> values);

using EdgeBuilder = std::function<std::vector<std::pair<NodeId, NodeId>>(std::span<const double>)>;

}  // namespace vgsynth
