#include "ectrace/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>

#include "ectrace/error.hpp"

namespace ectrace {

namespace {

// Union-find over vertices, used for connectivity and tree validation.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

MultiGraph::MultiGraph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  require(vertex_count_ >= 1, ErrorKind::kPrecondition,
          "graph must have at least one vertex");
  require(!edges_.empty(), ErrorKind::kPrecondition,
          "graph must have at least one edge");
  const auto n = static_cast<std::size_t>(vertex_count_);
  degree_.assign(n, 0);
  outgoing_.assign(n, {});
  incident_.assign(n, {});

  DisjointSets components(vertex_count_);
  int merged = 0;
  for (int i = 0; i < edge_count(); ++i) {
    const Edge& e = edges_[static_cast<std::size_t>(i)];
    if (e.u < 0 || e.u >= vertex_count_ || e.v < 0 || e.v >= vertex_count_) {
      fail(ErrorKind::kParse, "edge " + std::to_string(i) +
                                  " has an endpoint out of range");
    }
    degree_[e.u] += 1;
    degree_[e.v] += 1;
    incident_[e.u].push_back(i);
    if (!e.is_loop()) incident_[e.v].push_back(i);
    if (components.unite(e.u, e.v)) ++merged;
  }
  require(merged == vertex_count_ - 1, ErrorKind::kPrecondition,
          "graph not connected");

  const int m = edge_count();
  for (int k = 0; k < 2 * m; ++k) {
    const OrientedEdge oe = OrientedEdge::from_index(k, m);
    outgoing_[initial(oe)].push_back(oe);
  }
}

int MultiGraph::loop_count() const {
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(),
                                        [](const Edge& e) { return e.is_loop(); }));
}

MultiGraph MultiGraph::reoriented(const std::vector<bool>& flips) const {
  require(flips.size() == edges_.size(), ErrorKind::kPrecondition,
          "orientation length must equal the edge count");
  std::vector<Edge> edges = edges_;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (flips[i]) std::swap(edges[i].u, edges[i].v);
  }
  return MultiGraph(vertex_count_, std::move(edges));
}

bool SpanningTree::contains(int edge) const {
  return std::binary_search(tree_edges.begin(), tree_edges.end(), edge);
}

namespace {

SpanningTree from_tree_edges(const MultiGraph& g, std::vector<int> tree_edges) {
  std::sort(tree_edges.begin(), tree_edges.end());
  SpanningTree tree;
  tree.tree_edges = std::move(tree_edges);
  for (int i = 0; i < g.edge_count(); ++i) {
    if (!tree.contains(i)) tree.cotree_edges.push_back(i);
  }
  return tree;
}

}  // namespace

SpanningTree default_spanning_tree(const MultiGraph& g) {
  std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
  std::vector<int> tree_edges;
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (int i : g.incident_edges(v)) {
      const Edge& e = g.edge(i);
      const int w = e.u == v ? e.v : e.u;
      if (seen[w]) continue;
      seen[w] = true;
      tree_edges.push_back(i);
      frontier.push(w);
    }
  }
  return from_tree_edges(g, std::move(tree_edges));
}

SpanningTree make_spanning_tree(const MultiGraph& g, std::vector<int> tree_edges) {
  require(static_cast<int>(tree_edges.size()) == g.vertex_count() - 1,
          ErrorKind::kPrecondition,
          "spanning tree needs exactly n-1 edges");
  DisjointSets components(g.vertex_count());
  std::vector<bool> used(static_cast<std::size_t>(g.edge_count()), false);
  for (int i : tree_edges) {
    require(i >= 0 && i < g.edge_count(), ErrorKind::kPrecondition,
            "tree edge index out of range: " + std::to_string(i));
    require(!used[i], ErrorKind::kPrecondition,
            "duplicate tree edge: " + std::to_string(i));
    used[i] = true;
    const Edge& e = g.edge(i);
    require(components.unite(e.u, e.v), ErrorKind::kPrecondition,
            "tree edges contain a cycle at edge " + std::to_string(i));
  }
  return from_tree_edges(g, std::move(tree_edges));
}

bool is_eulerian(const MultiGraph& g) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) % 2 != 0) return false;
  }
  return true;
}

bool is_bipartite(const MultiGraph& g) {
  std::vector<int> color(static_cast<std::size_t>(g.vertex_count()), -1);
  std::queue<int> frontier;
  color[0] = 0;
  frontier.push(0);
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (int i : g.incident_edges(v)) {
      const Edge& e = g.edge(i);
      if (e.is_loop()) return false;
      const int w = e.u == v ? e.v : e.u;
      if (color[w] < 0) {
        color[w] = 1 - color[v];
        frontier.push(w);
      } else if (color[w] == color[v]) {
        return false;
      }
    }
  }
  return true;
}

Walk Walk::reversed() const {
  Walk r;
  r.steps.reserve(steps.size());
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    r.steps.push_back(it->inverse());
  }
  return r;
}

bool is_walk(const MultiGraph& g, const Walk& w) {
  for (const OrientedEdge& s : w.steps) {
    if (s.edge < 0 || s.edge >= g.edge_count()) return false;
  }
  for (std::size_t i = 1; i < w.steps.size(); ++i) {
    if (g.terminal(w.steps[i - 1]) != g.initial(w.steps[i])) return false;
  }
  return true;
}

bool is_closed(const MultiGraph& g, const Walk& w) {
  if (w.steps.empty() || !is_walk(g, w)) return false;
  return g.terminal(w.steps.back()) == g.initial(w.steps.front());
}

bool is_circuit(const MultiGraph& g, const Walk& w) {
  if (!is_closed(g, w)) return false;
  for (std::size_t i = 1; i < w.steps.size(); ++i) {
    if (w.steps[i] == w.steps[i - 1].inverse()) return false;
  }
  return w.steps.back() != w.steps.front().inverse();
}

// ---------------------------------------------------------------- parsing

namespace {

std::vector<long long> parse_integers(std::string_view line, int line_no) {
  std::vector<long long> out;
  std::istringstream in{std::string(line)};
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) {
      fail(ErrorKind::kParse, "line " + std::to_string(line_no) +
                                  ": expected integer, got '" + token + "'");
    }
    out.push_back(value);
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

GraphFile parse_graph_file(std::string_view text) {
  std::vector<std::pair<int, std::string_view>> lines;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    const auto raw = text.substr(pos, end == std::string_view::npos ? text.size() - pos
                                                                    : end - pos);
    ++line_no;
    const auto line = trim(raw);
    if (!line.empty() && line.front() != '#') lines.emplace_back(line_no, line);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  require(!lines.empty(), ErrorKind::kParse, "empty graph file");

  const auto header = parse_integers(lines[0].second, lines[0].first);
  require(header.size() == 2, ErrorKind::kParse,
          "line " + std::to_string(lines[0].first) + ": expected '<n> <m>'");
  require(header[0] >= 1 && header[0] <= 1'000'000 && header[1] >= 1 &&
              header[1] <= 1'000'000,
          ErrorKind::kParse, "vertex and edge counts must be positive");
  const auto n = static_cast<int>(header[0]);
  const auto m = static_cast<std::size_t>(header[1]);

  std::vector<Edge> edges;
  std::optional<std::vector<int>> tree;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto [no, line] = lines[k];
    if (line.starts_with("tree")) {
      require(!tree, ErrorKind::kParse, "line " + std::to_string(no) + ": duplicate tree line");
      require(edges.size() == m, ErrorKind::kParse,
              "line " + std::to_string(no) + ": tree line must follow all edges");
      std::vector<int> indices;
      for (long long i : parse_integers(line.substr(4), no)) {
        require(i >= 0 && i < static_cast<long long>(m), ErrorKind::kParse,
                "line " + std::to_string(no) + ": tree edge index out of range");
        indices.push_back(static_cast<int>(i));
      }
      tree = std::move(indices);
      continue;
    }
    require(!tree, ErrorKind::kParse,
            "line " + std::to_string(no) + ": unexpected content after tree line");
    require(edges.size() < m, ErrorKind::kParse,
            "line " + std::to_string(no) + ": more edges than declared");
    const auto ends = parse_integers(line, no);
    require(ends.size() == 2, ErrorKind::kParse,
            "line " + std::to_string(no) + ": expected '<u> <v>'");
    for (long long x : ends) {
      require(x >= 0 && x < n, ErrorKind::kParse,
              "line " + std::to_string(no) + ": vertex index out of range");
    }
    edges.push_back({static_cast<int>(ends[0]), static_cast<int>(ends[1])});
  }
  require(edges.size() == m, ErrorKind::kParse,
          "expected " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));

  GraphFile file{MultiGraph(n, std::move(edges)), std::move(tree)};
  if (file.tree) make_spanning_tree(file.graph, *file.tree);
  return file;
}

MultiGraph parse_graph(std::string_view text) { return parse_graph_file(text).graph; }

GraphFile load_graph_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::kUsage, "cannot open graph file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_graph_file(buffer.str());
}

std::string format_graph(const MultiGraph& g, const std::optional<std::vector<int>>& tree) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  if (tree) {
    out << "tree";
    for (int i : *tree) out << ' ' << i;
    out << '\n';
  }
  return out.str();
}

}  // namespace ectrace
