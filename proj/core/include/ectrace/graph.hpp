#ifndef ECTRACE_GRAPH_HPP
#define ECTRACE_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ectrace {

// Undirected edge with a reference direction u -> v. u == v is a loop.
struct Edge {
  int u = 0;
  int v = 0;

  bool is_loop() const { return u == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

// One of the two traversal directions of an edge. `positive` agrees with the
// reference direction of the edge.
struct OrientedEdge {
  int edge = 0;
  bool positive = true;

  OrientedEdge inverse() const { return {edge, !positive}; }
  // Index in the 2m ordering e_0..e_{m-1}, e_0^-1..e_{m-1}^-1.
  int index(int edge_count) const { return positive ? edge : edge + edge_count; }
  static OrientedEdge from_index(int index, int edge_count) {
    return index < edge_count ? OrientedEdge{index, true}
                              : OrientedEdge{index - edge_count, false};
  }
  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

// Connected finite multigraph with loops. Immutable after construction.
// Edge order is the index order and the reference orientation.
class MultiGraph {
 public:
  // Throws Error(kParse) on out-of-range endpoints and
  // Error(kPrecondition) when the graph is empty or disconnected.
  MultiGraph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int genus() const { return edge_count() - vertex_count() + 1; }

  const Edge& edge(int i) const { return edges_[static_cast<std::size_t>(i)]; }
  std::span<const Edge> edges() const { return edges_; }

  int initial(OrientedEdge e) const {
    return e.positive ? edge(e.edge).u : edge(e.edge).v;
  }
  int terminal(OrientedEdge e) const {
    return e.positive ? edge(e.edge).v : edge(e.edge).u;
  }

  // Loops count twice.
  int degree(int v) const { return degree_[static_cast<std::size_t>(v)]; }

  // Oriented edges leaving v, in increasing oriented-edge index order.
  // A loop at v contributes both of its directions.
  std::span<const OrientedEdge> outgoing(int v) const {
    return outgoing_[static_cast<std::size_t>(v)];
  }

  // Edge indices incident to v, increasing, each listed once.
  std::span<const int> incident_edges(int v) const {
    return incident_[static_cast<std::size_t>(v)];
  }

  int loop_count() const;

  // Same graph with the reference direction of each flagged edge reversed.
  MultiGraph reoriented(const std::vector<bool>& flips) const;

 private:
  int vertex_count_;
  std::vector<Edge> edges_;
  std::vector<int> degree_;
  std::vector<std::vector<OrientedEdge>> outgoing_;
  std::vector<std::vector<int>> incident_;
};

struct SpanningTree {
  std::vector<int> tree_edges;    // increasing
  std::vector<int> cotree_edges;  // increasing; size == genus

  bool contains(int edge) const;
};

// BFS from vertex 0, scanning incident edges in increasing index order.
SpanningTree default_spanning_tree(const MultiGraph& g);

// Validates that `tree_edges` is a spanning tree of g.
SpanningTree make_spanning_tree(const MultiGraph& g, std::vector<int> tree_edges);

bool is_eulerian(const MultiGraph& g);
bool is_bipartite(const MultiGraph& g);

struct Walk {
  std::vector<OrientedEdge> steps;

  std::size_t length() const { return steps.size(); }
  Walk reversed() const;
};

// Consecutive steps are incident.
bool is_walk(const MultiGraph& g, const Walk& w);
bool is_closed(const MultiGraph& g, const Walk& w);
// Closed, no backtrack, no tail.
bool is_circuit(const MultiGraph& g, const Walk& w);

// `e` feeds into `f`: terminal(e) == initial(f) and f != e^-1.
inline bool feeds_into(const MultiGraph& g, OrientedEdge e, OrientedEdge f) {
  return g.terminal(e) == g.initial(f) && f != e.inverse();
}

// Graph text format:
//   <n> <m>
//   <u> <v>            (m lines)
//   tree <i_1> ...     (optional, n-1 edge indices)
// Lines starting with '#' are comments.
struct GraphFile {
  MultiGraph graph;
  std::optional<std::vector<int>> tree;
};

GraphFile parse_graph_file(std::string_view text);
MultiGraph parse_graph(std::string_view text);
GraphFile load_graph_file(const std::string& path);
std::string format_graph(const MultiGraph& g,
                         const std::optional<std::vector<int>>& tree = {});

}  // namespace ectrace

#endif  // ECTRACE_GRAPH_HPP
