#include "ectrace/homology.hpp"

#include <algorithm>
#include <queue>

#include "ectrace/error.hpp"

namespace ectrace {

namespace {

int normalize(long long value, int modulus) {
  const long long r = value % modulus;
  return static_cast<int>(r < 0 ? r + modulus : r);
}

void check_modulus(int modulus) {
  require(modulus >= 2, ErrorKind::kPrecondition, "modulus t must be at least 2");
}

}  // namespace

Chain::Chain(int modulus, std::size_t edge_count)
    : modulus_(modulus), coeffs_(edge_count, 0) {
  check_modulus(modulus);
}

Chain::Chain(int modulus, std::vector<int> coeffs)
    : modulus_(modulus), coeffs_(std::move(coeffs)) {
  check_modulus(modulus);
  for (int& c : coeffs_) c = normalize(c, modulus_);
}

Chain Chain::ones(int modulus, std::size_t edge_count) {
  return Chain(modulus, std::vector<int>(edge_count, 1));
}

Chain Chain::indicator(int modulus, std::size_t edge_count, std::span<const int> edges) {
  Chain c(modulus, edge_count);
  for (int i : edges) c.set(static_cast<std::size_t>(i), 1);
  return c;
}

void Chain::set(std::size_t i, long long value) {
  require(i < coeffs_.size(), ErrorKind::kPrecondition, "chain index out of range");
  coeffs_[i] = normalize(value, modulus_);
}

bool Chain::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](int c) { return c == 0; });
}

std::vector<int> Chain::support() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) out.push_back(static_cast<int>(i));
  }
  return out;
}

Chain Chain::restricted(std::span<const int> edges) const {
  Chain out(modulus_, coeffs_.size());
  for (int i : edges) out.coeffs_[static_cast<std::size_t>(i)] = coeffs_[static_cast<std::size_t>(i)];
  return out;
}

bool Chain::supported_on(std::span<const int> edges) const {
  return restricted(edges) == *this;
}

Chain Chain::operator-() const {
  Chain out = *this;
  for (int& c : out.coeffs_) c = normalize(-c, modulus_);
  return out;
}

Chain operator+(const Chain& a, const Chain& b) {
  require(a.modulus_ == b.modulus_ && a.size() == b.size(), ErrorKind::kPrecondition,
          "chain modulus or length mismatch");
  Chain out = a;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.coeffs_[i] = (a.coeffs_[i] + b.coeffs_[i]) % a.modulus_;
  }
  return out;
}

std::size_t ChainHash::operator()(const Chain& c) const noexcept {
  std::size_t h = static_cast<std::size_t>(c.modulus());
  for (int x : c.coeffs()) h = h * 1000003u ^ static_cast<std::size_t>(x);
  return h;
}

Chain abelianization(const MultiGraph& g, const Walk& w, int modulus) {
  Chain c(modulus, static_cast<std::size_t>(g.edge_count()));
  for (const OrientedEdge& s : w.steps) c.add(static_cast<std::size_t>(s.edge), s.positive ? 1 : -1);
  return c;
}

bool is_circulation(const MultiGraph& g, const Chain& c) {
  require(c.size() == static_cast<std::size_t>(g.edge_count()), ErrorKind::kPrecondition,
          "chain length must equal the edge count");
  std::vector<long long> balance(static_cast<std::size_t>(g.vertex_count()), 0);
  for (int i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edge(i);
    balance[e.u] += c[i];
    balance[e.v] -= c[i];
  }
  return std::all_of(balance.begin(), balance.end(),
                     [&](long long b) { return b % c.modulus() == 0; });
}

namespace {

// Tree rooted at vertex 0: parent edge (oriented towards the child) and depth.
struct RootedTree {
  std::vector<int> depth;
  std::vector<OrientedEdge> down;  // oriented edge parent -> v
};

RootedTree root_tree(const MultiGraph& g, const SpanningTree& tree) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  RootedTree r{std::vector<int>(n, -1), std::vector<OrientedEdge>(n)};
  std::queue<int> frontier;
  r.depth[0] = 0;
  frontier.push(0);
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (const OrientedEdge& oe : g.outgoing(v)) {
      if (!tree.contains(oe.edge)) continue;
      const int w = g.terminal(oe);
      if (r.depth[w] >= 0) continue;
      r.depth[w] = r.depth[v] + 1;
      r.down[w] = oe;
      frontier.push(w);
    }
  }
  for (int d : r.depth) {
    require(d >= 0, ErrorKind::kPrecondition, "tree does not span the graph");
  }
  return r;
}

}  // namespace

Walk tree_path(const MultiGraph& g, const SpanningTree& tree, int from, int to) {
  const RootedTree r = root_tree(g, tree);
  std::vector<OrientedEdge> up;    // from `from` towards the meeting point
  std::vector<OrientedEdge> down;  // from `to` towards the meeting point, reversed later
  int a = from;
  int b = to;
  while (a != b) {
    if (r.depth[a] >= r.depth[b]) {
      up.push_back(r.down[a].inverse());
      a = g.initial(r.down[a]);
    } else {
      down.push_back(r.down[b]);
      b = g.initial(r.down[b]);
    }
  }
  Walk w;
  w.steps = std::move(up);
  w.steps.insert(w.steps.end(), down.rbegin(), down.rend());
  return w;
}

Walk fundamental_cycle(const MultiGraph& g, const SpanningTree& tree, int cotree_edge) {
  require(!tree.contains(cotree_edge), ErrorKind::kPrecondition,
          "edge " + std::to_string(cotree_edge) + " is a tree edge");
  const Edge& e = g.edge(cotree_edge);
  Walk w;
  w.steps.push_back({cotree_edge, true});
  const Walk back = tree_path(g, tree, e.v, e.u);
  w.steps.insert(w.steps.end(), back.steps.begin(), back.steps.end());
  return w;
}

Chain rho_inverse(const MultiGraph& g, const SpanningTree& tree, const Chain& beta) {
  require(beta.size() == static_cast<std::size_t>(g.edge_count()), ErrorKind::kPrecondition,
          "chain length must equal the edge count");
  require(beta.supported_on(tree.cotree_edges), ErrorKind::kPrecondition,
          "chain must vanish on tree edges");
  Chain alpha(beta.modulus(), beta.size());
  for (int i : tree.cotree_edges) {
    if (beta[i] == 0) continue;
    for (const OrientedEdge& s : fundamental_cycle(g, tree, i).steps) {
      alpha.add(static_cast<std::size_t>(s.edge), (s.positive ? 1LL : -1LL) * beta[i]);
    }
  }
  return alpha;
}

Chain canonical_element(const MultiGraph& g, const SpanningTree& tree) {
  const RootedTree r = root_tree(g, tree);
  Chain gamma(2, static_cast<std::size_t>(g.edge_count()));
  for (int i : tree.cotree_edges) {
    const Edge& e = g.edge(i);
    // Tree path length parity equals the depth parity difference.
    if ((r.depth[e.u] + r.depth[e.v]) % 2 == 0) gamma.set(static_cast<std::size_t>(i), 1);
  }
  return gamma;
}

int sigma(const Chain& c) {
  long long s = 0;
  for (int x : c.coeffs()) s += x;
  return static_cast<int>(s % c.modulus());
}

int sigma(const Chain& c, std::span<const int> edges) {
  long long s = 0;
  for (int i : edges) s += c[static_cast<std::size_t>(i)];
  return static_cast<int>(s % c.modulus());
}

int pairing(const Chain& a, const Chain& b) {
  require(a.modulus() == b.modulus(), ErrorKind::kPrecondition, "pairing modulus mismatch");
  require(a.size() == b.size(), ErrorKind::kPrecondition, "pairing length mismatch");
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s = (s + static_cast<long long>(a[i]) * b[i]) % a.modulus();
  }
  return static_cast<int>(s);
}

TwistEnumerator::TwistEnumerator(int modulus, std::size_t edge_count, std::vector<int> edges)
    : modulus_(modulus), edge_count_(edge_count), edges_(std::move(edges)) {
  check_modulus(modulus);
  for (int i : edges_) {
    require(i >= 0 && static_cast<std::size_t>(i) < edge_count_, ErrorKind::kPrecondition,
            "edge subset index out of range");
  }
  std::vector<int> sorted = edges_;
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          ErrorKind::kPrecondition, "edge subset has duplicates");
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    if (total > UINT64_MAX / static_cast<std::uint64_t>(modulus_)) return;
    total *= static_cast<std::uint64_t>(modulus_);
  }
  size_ = total;
}

Chain TwistEnumerator::at(std::uint64_t index) const {
  Chain c(modulus_, edge_count_);
  const auto t = static_cast<std::uint64_t>(modulus_);
  for (int i : edges_) {
    c.set(static_cast<std::size_t>(i), static_cast<long long>(index % t));
    index /= t;
  }
  return c;
}

std::uint64_t TwistEnumerator::index_of(const Chain& c) const {
  std::uint64_t index = 0;
  for (auto it = edges_.rbegin(); it != edges_.rend(); ++it) {
    index = index * static_cast<std::uint64_t>(modulus_) + static_cast<std::uint64_t>(c[*it]);
  }
  return index;
}

}  // namespace ectrace
