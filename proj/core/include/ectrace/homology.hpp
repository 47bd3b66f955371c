#ifndef ECTRACE_HOMOLOGY_HPP
#define ECTRACE_HOMOLOGY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ectrace/graph.hpp"

namespace ectrace {

// Element of C_1(G, Z/tZ): one residue per positively oriented edge.
// Traversing an edge backwards contributes -1.
class Chain {
 public:
  Chain(int modulus, std::size_t edge_count);
  Chain(int modulus, std::vector<int> coeffs);  // residues are normalized

  static Chain zero(int modulus, std::size_t edge_count) { return {modulus, edge_count}; }
  static Chain ones(int modulus, std::size_t edge_count);
  // 1 on each listed edge, 0 elsewhere.
  static Chain indicator(int modulus, std::size_t edge_count, std::span<const int> edges);

  int modulus() const { return modulus_; }
  std::size_t size() const { return coeffs_.size(); }
  int operator[](std::size_t i) const { return coeffs_[i]; }
  const std::vector<int>& coeffs() const { return coeffs_; }

  void set(std::size_t i, long long value);
  void add(std::size_t i, long long value) { set(i, coeffs_[i] + value); }

  bool is_zero() const;
  // Edge indices with nonzero coefficient.
  std::vector<int> support() const;
  // Zero outside `edges`.
  Chain restricted(std::span<const int> edges) const;
  bool supported_on(std::span<const int> edges) const;

  Chain operator-() const;
  friend Chain operator+(const Chain& a, const Chain& b);
  friend Chain operator-(const Chain& a, const Chain& b) { return a + (-b); }
  friend bool operator==(const Chain&, const Chain&) = default;

 private:
  int modulus_;
  std::vector<int> coeffs_;
};

struct ChainHash {
  std::size_t operator()(const Chain& c) const noexcept;
};

// (#forward - #backward) traversals of each edge, mod t.
Chain abelianization(const MultiGraph& g, const Walk& w, int modulus);

// Balanced at every vertex mod t.
bool is_circulation(const MultiGraph& g, const Chain& c);

// Unique path in the tree from `from` to `to`.
Walk tree_path(const MultiGraph& g, const SpanningTree& tree, int from, int to);

// Cotree edge followed by the tree path back to its start.
Walk fundamental_cycle(const MultiGraph& g, const SpanningTree& tree, int cotree_edge);

// The unique circulation agreeing with `beta` on the cotree.
// `beta` must vanish on tree edges.
Chain rho_inverse(const MultiGraph& g, const SpanningTree& tree, const Chain& beta);

// Z/2 chain marking cotree edges whose tree path has even length.
// Zero iff g is bipartite.
Chain canonical_element(const MultiGraph& g, const SpanningTree& tree);

// Sum of coefficients mod t, over all edges or over a subset.
int sigma(const Chain& c);
int sigma(const Chain& c, std::span<const int> edges);

// sum_i a_i b_i mod t. Throws on modulus or length mismatch.
int pairing(const Chain& a, const Chain& b);

// Mixed-radix enumeration of M_t(F): digit k (base t) is the coefficient of
// edges[k], least significant first.
class TwistEnumerator {
 public:
  TwistEnumerator(int modulus, std::size_t edge_count, std::vector<int> edges);

  // t^|F|, or nullopt when it does not fit in 64 bits.
  std::optional<std::uint64_t> size() const { return size_; }
  Chain at(std::uint64_t index) const;
  std::uint64_t index_of(const Chain& c) const;
  const std::vector<int>& edges() const { return edges_; }
  int modulus() const { return modulus_; }

 private:
  int modulus_;
  std::size_t edge_count_;
  std::vector<int> edges_;
  std::optional<std::uint64_t> size_;
};

}  // namespace ectrace

#endif  // ECTRACE_HOMOLOGY_HPP
