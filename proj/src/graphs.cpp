#include "vgsynth/graphs.hpp"

#include <algorithm>
#include <ostream>
#include <tuple>

#include "vgsynth/error.hpp"
#include "vgsynth/kernels.hpp"

namespace vgsynth {

const char* to_string(VisibilityKind k) { return k == VisibilityKind::NVG ? "NVG" : "HVG"; }

const char* to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::visibility: return "visibility";
    case EdgeKind::co_occurrence: return "co_occurrence";
    case EdgeKind::similar_value: return "similar_value";
  }
  return "?";
}

Graph::Graph(std::vector<GraphNode> nodes, std::vector<Edge> edges, NodeId start_node)
    : nodes_(std::move(nodes)), start_node_(start_node) {
  const auto n = nodes_.size();
  for (std::size_t i = 0; i < n; ++i) nodes_[i].id = static_cast<NodeId>(i);
  if (n > 0 && start_node_ >= n) throw IntegrityError("start node out of range");

  for (auto& e : edges) {
    if (e.u >= n || e.v >= n) throw IntegrityError("edge endpoint out of range");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::erase_if(edges, [](const Edge& e) { return e.u == e.v || e.multiplicity == 0; });
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v, a.kind) < std::tie(b.u, b.v, b.kind);
  });
  for (const auto& e : edges) {
    if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v &&
        edges_.back().kind == e.kind) {
      edges_.back().multiplicity += e.multiplicity;
    } else {
      edges_.push_back(e);
    }
  }

  // Both directions, then fold kinds into one Neighbor per (node, neighbor).
  std::vector<std::pair<NodeId, Neighbor>> half;
  half.reserve(edges_.size() * 2);
  for (const auto& e : edges_) {
    const bool vis = e.kind == EdgeKind::visibility;
    half.push_back({e.u, Neighbor{e.v, e.multiplicity, vis, !vis}});
    half.push_back({e.v, Neighbor{e.u, e.multiplicity, vis, !vis}});
  }
  std::sort(half.begin(), half.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first, a.second.node) < std::tie(b.first, b.second.node);
  });
  std::vector<NodeId> owner;
  for (const auto& [from, nb] : half) {
    if (!owner.empty() && owner.back() == from && adjacency_.back().node == nb.node) {
      auto& last = adjacency_.back();
      last.weight += nb.weight;
      last.visibility = last.visibility || nb.visibility;
      last.cross = last.cross || nb.cross;
    } else {
      owner.push_back(from);
      adjacency_.push_back(nb);
    }
  }
  offsets_.assign(n + 1, 0);
  for (const NodeId from : owner) ++offsets_[from + 1];
  for (std::size_t i = 1; i <= n; ++i) offsets_[i] += offsets_[i - 1];
}

std::span<const Neighbor> Graph::neighbors(NodeId id) const {
  if (id >= nodes_.size()) throw IntegrityError("node id out of range");
  return {adjacency_.data() + offsets_[id], offsets_[id + 1] - offsets_[id]};
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  const auto nb = neighbors(a);
  return std::any_of(nb.begin(), nb.end(), [b](const Neighbor& x) { return x.node == b; });
}

std::uint32_t Graph::multiplicity(NodeId a, NodeId b, EdgeKind kind) const {
  if (a > b) std::swap(a, b);
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{a, b, kind, 0},
                                   [](const Edge& x, const Edge& y) {
                                     return std::tie(x.u, x.v, x.kind) < std::tie(y.u, y.v, y.kind);
                                   });
  return (it != edges_.end() && it->u == a && it->v == b && it->kind == kind) ? it->multiplicity
                                                                              : 0;
}

std::vector<std::pair<NodeId, NodeId>> Graph::visibility_pairs() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (const auto& e : edges_)
    if (e.kind == EdgeKind::visibility) out.emplace_back(e.u, e.v);
  return out;
}

void Graph::dump(std::ostream& out) const {
  out << "# node_u node_v kind multiplicity\n";
  for (const auto& e : edges_)
    out << e.u << ' ' << e.v << ' ' << to_string(e.kind) << ' ' << e.multiplicity << '\n';
  out << "# node_id time_indices values tickers\n";
  auto join = [&out](const auto& xs) {
    for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << xs[i];
  };
  for (const auto& node : nodes_) {
    out << node.id << ' ';
    join(node.time_indices);
    out << ' ';
    join(node.values);
    out << ' ';
    join(node.ticker_tags);
    out << '\n';
  }
}

NodeId MultiGraph::ticker_start(const std::string& ticker) const {
  const auto it = merge_map.find({ticker, 0});
  if (it == merge_map.end()) throw InvalidInput("ticker '" + ticker + "' not in multigraph");
  return it->second;
}

// --- visibility criteria ---------------------------------------------------

namespace {

// Height of the sight line from (i, vi) to (j, vj) at position k.
inline double sight_line(double vi, double vj, std::size_t i, std::size_t j, std::size_t k) {
  return vi + (vj - vi) * static_cast<double>(k - i) / static_cast<double>(j - i);
}

void check_length(std::size_t n) {
  if (n < 2) throw InvalidWindow("visibility graphs need a window of length >= 2");
}

}  // namespace

// For each i the binding obstacle is the intermediate point with the steepest
// slope from i; j is visible iff that point lies strictly below the sight line.
std::vector<std::pair<NodeId, NodeId>> nvg_edges(std::span<const double> v) {
  check_length(v.size());
  std::vector<std::pair<NodeId, NodeId>> edges;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.emplace_back(i, i + 1);
    std::size_t blocker = i + 1;
    double blocker_slope = v[i + 1] - v[i];
    for (std::size_t j = i + 2; j < n; ++j) {
      if (v[blocker] < sight_line(v[i], v[j], i, j, blocker)) edges.emplace_back(i, j);
      const double slope = (v[j] - v[i]) / static_cast<double>(j - i);
      if (slope > blocker_slope) {
        blocker = j;
        blocker_slope = slope;
      }
    }
  }
  return edges;
}

// Scanning right from i, j is visible iff every point in between is below
// min(v[i], v[j]); once some v[j] >= v[i] nothing further can be seen.
std::vector<std::pair<NodeId, NodeId>> hvg_edges(std::span<const double> v) {
  check_length(v.size());
  std::vector<std::pair<NodeId, NodeId>> edges;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.emplace_back(i, i + 1);
    double highest = v[i + 1];
    if (highest >= v[i]) continue;
    for (std::size_t j = i + 2; j < n; ++j) {
      if (highest < std::min(v[i], v[j])) edges.emplace_back(i, j);
      highest = std::max(highest, v[j]);
      if (highest >= v[i]) break;
    }
  }
  return edges;
}

std::vector<std::pair<NodeId, NodeId>> nvg_edges_bruteforce(std::span<const double> v) {
  check_length(v.size());
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      bool visible = true;
      for (std::size_t k = i + 1; k < j && visible; ++k)
        visible = v[k] < sight_line(v[i], v[j], i, j, k);
      if (visible) edges.emplace_back(i, j);
    }
  }
  return edges;
}

std::vector<std::pair<NodeId, NodeId>> hvg_edges_bruteforce(std::span<const double> v) {
  check_length(v.size());
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      bool visible = true;
      for (std::size_t k = i + 1; k < j && visible; ++k) visible = v[k] < std::min(v[i], v[j]);
      if (visible) edges.emplace_back(i, j);
    }
  }
  return edges;
}

namespace {

const std::vector<double>& scaled_or_throw(const Window& w) {
  if (w.length < 2 && w.raw_values.size() < 2)
    throw InvalidWindow("visibility graphs need a window of length >= 2");
  if (w.scaled_values.empty()) throw InvalidWindow("window is not scaled");
  return w.scaled_values;
}

VisibilityGraph assemble(const Window& w, VisibilityKind kind,
                         const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  const auto& values = w.scaled_values;
  std::vector<GraphNode> nodes(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    nodes[i].time_indices = {static_cast<std::int64_t>(i)};
    nodes[i].values = {values[i]};
    nodes[i].ticker_tags = {w.ticker};
  }
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) edges.push_back({a, b, EdgeKind::visibility, 1});
  return {kind, {w.ticker, w.start_index, values.size()}, Graph(std::move(nodes), std::move(edges), 0)};
}

}  // namespace

VisibilityGraph build_nvg(const Window& window) {
  return assemble(window, VisibilityKind::NVG, nvg_edges(scaled_or_throw(window)));
}

VisibilityGraph build_hvg(const Window& window) {
  return assemble(window, VisibilityKind::HVG, hvg_edges(scaled_or_throw(window)));
}

VisibilityGraph build_visibility_graph(const Window& window, VisibilityKind kind) {
  return kind == VisibilityKind::NVG ? build_nvg(window) : build_hvg(window);
}

VisibilityGraph nvg_bruteforce(const Window& window) {
  return assemble(window, VisibilityKind::NVG, nvg_edges_bruteforce(scaled_or_throw(window)));
}

VisibilityGraph hvg_bruteforce(const Window& window) {
  return assemble(window, VisibilityKind::HVG, hvg_edges_bruteforce(scaled_or_throw(window)));
}

// --- multigraph --------------------------------------------------------------

MultiGraph build_multigraph(std::span<const Window> windows, double similar_value_epsilon) {
  if (windows.empty()) throw InvalidInput("multigraph needs at least one window");
  const auto start = windows.front().start_index;
  const auto length = windows.front().scaled_values.size();
  for (const auto& w : windows) {
    scaled_or_throw(w);
    if (w.start_index != start || w.scaled_values.size() != length)
      throw SegmentMismatch("window " + w.ticker + "@" + std::to_string(w.start_index) + "/" +
                            std::to_string(w.scaled_values.size()) + " does not cover segment " +
                            std::to_string(start) + "/" + std::to_string(length));
  }

  MultiGraph mg;
  mg.segment_start = start;
  mg.segment_length = length;
  const std::size_t tickers = windows.size();
  const std::size_t raw_count = tickers * length;
  for (const auto& w : windows) {
    if (std::find(mg.tickers.begin(), mg.tickers.end(), w.ticker) != mg.tickers.end())
      throw InvalidInput("ticker '" + w.ticker + "' appears twice in one segment");
    mg.tickers.push_back(w.ticker);
  }

  // Raw node r = t * length + k. Nodes sharing a time index and an exactly
  // equal scaled value merge; merged ids follow first appearance.
  std::vector<NodeId> merged(raw_count);
  std::vector<GraphNode> nodes;
  std::map<std::pair<std::int64_t, double>, NodeId> by_key;
  for (std::size_t t = 0; t < tickers; ++t) {
    for (std::size_t k = 0; k < length; ++k) {
      const double value = windows[t].scaled_values[k];
      const auto time = static_cast<std::int64_t>(k);
      auto [it, fresh] = by_key.emplace(std::make_pair(time, value), static_cast<NodeId>(nodes.size()));
      if (fresh) {
        GraphNode node;
        node.time_indices = {time};
        nodes.push_back(std::move(node));
      }
      auto& node = nodes[it->second];
      node.values.push_back(value);
      node.ticker_tags.push_back(windows[t].ticker);
      merged[t * length + k] = it->second;
      mg.merge_map[{windows[t].ticker, time}] = it->second;
      auto& ids = mg.per_ticker[windows[t].ticker];
      if (std::find(ids.begin(), ids.end(), it->second) == ids.end()) ids.push_back(it->second);
    }
  }

  std::vector<Edge> edges;
  auto link = [&](std::size_t ra, std::size_t rb, EdgeKind kind) {
    edges.push_back({merged[ra], merged[rb], kind, 1});
  };
  for (std::size_t t = 0; t < tickers; ++t) {
    for (const auto& [a, b] : nvg_edges(windows[t].scaled_values))
      link(t * length + a, t * length + b, EdgeKind::visibility);
  }
  for (std::size_t k = 0; k < length; ++k) {
    for (std::size_t a = 0; a < tickers; ++a)
      for (std::size_t b = a + 1; b < tickers; ++b)
        link(a * length + k, b * length + k, EdgeKind::co_occurrence);
  }
  if (tickers > 1) {
    std::vector<double> values(raw_count);
    std::vector<std::uint32_t> group(raw_count);
    for (std::size_t r = 0; r < raw_count; ++r) {
      values[r] = windows[r / length].scaled_values[r % length];
      group[r] = static_cast<std::uint32_t>(r / length);
    }
    for (const auto& [a, b] : kernels::similar_value_pairs(values, group, similar_value_epsilon))
      link(a, b, EdgeKind::similar_value);
  }

  const NodeId start_node = merged[0];
  mg.graph = Graph(std::move(nodes), std::move(edges), start_node);
  return mg;
}

}  // namespace vgsynth
