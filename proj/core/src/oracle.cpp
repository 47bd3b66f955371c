#include "ectrace/oracle.hpp"

#include "ectrace/error.hpp"

namespace ectrace::oracle {

namespace {

class WalkSearch {
 public:
  WalkSearch(const MultiGraph& g, int length, WalkKind kind, const Budget& budget)
      : g_(g), length_(length), kind_(kind), budget_(budget) {
    require(length >= 1, ErrorKind::kPrecondition, "length must be at least 1");
    require(length <= budget.max_length, ErrorKind::kBudget,
            "oracle length " + std::to_string(length) + " exceeds budget " +
                std::to_string(budget.max_length));
    walk_.steps.reserve(static_cast<std::size_t>(length));
  }

  // Calls on_closed(walk) for every qualifying closed sequence.
  template <typename Fn>
  void run(Fn&& on_closed) {
    const int m = g_.edge_count();
    for (int k = 0; k < 2 * m; ++k) {
      walk_.steps.assign(1, OrientedEdge::from_index(k, m));
      extend(on_closed);
    }
  }

 private:
  template <typename Fn>
  void extend(Fn& on_closed) {
    const OrientedEdge last = walk_.steps.back();
    if (static_cast<int>(walk_.steps.size()) == length_) {
      const OrientedEdge first = walk_.steps.front();
      if (g_.terminal(last) != g_.initial(first)) return;
      if (kind_ == WalkKind::kCircuits && first == last.inverse()) return;
      on_closed(walk_);
      return;
    }
    for (const OrientedEdge& next : g_.outgoing(g_.terminal(last))) {
      if (kind_ == WalkKind::kCircuits && next == last.inverse()) continue;
      if (++nodes_ > budget_.max_nodes) {
        fail(ErrorKind::kBudget, "oracle node budget exhausted");
      }
      walk_.steps.push_back(next);
      extend(on_closed);
      walk_.steps.pop_back();
    }
  }

  const MultiGraph& g_;
  int length_;
  WalkKind kind_;
  Budget budget_;
  Walk walk_;
  std::uint64_t nodes_ = 0;
};

std::uint64_t count_walks(const MultiGraph& g, int length, WalkKind kind, const Budget& budget,
                          const WalkVisitor& visit) {
  std::uint64_t count = 0;
  WalkSearch(g, length, kind, budget).run([&](const Walk& w) {
    ++count;
    if (visit) visit(w);
  });
  return count;
}

}  // namespace

std::uint64_t enumerate_circuits(const MultiGraph& g, int length, const Budget& budget,
                                 const WalkVisitor& visit) {
  return count_walks(g, length, WalkKind::kCircuits, budget, visit);
}

std::uint64_t enumerate_closed_walks(const MultiGraph& g, int length, const Budget& budget,
                                     const WalkVisitor& visit) {
  return count_walks(g, length, WalkKind::kClosedWalks, budget, visit);
}

std::vector<std::uint64_t> census_oracle_table(const MultiGraph& g, const std::vector<int>& subset,
                                               int modulus, int length, WalkKind kind,
                                               const Budget& budget) {
  require(modulus >= 2, ErrorKind::kPrecondition, "modulus t must be at least 2");
  std::uint64_t classes = 1;
  for (std::size_t k = 0; k < subset.size(); ++k) {
    classes *= static_cast<std::uint64_t>(modulus);
    require(classes <= (std::uint64_t{1} << 24), ErrorKind::kBudget,
            "too many homology classes for the oracle table");
  }
  std::vector<int> position(static_cast<std::size_t>(g.edge_count()), -1);
  for (std::size_t k = 0; k < subset.size(); ++k) position[subset[k]] = static_cast<int>(k);

  std::vector<std::uint64_t> table(classes, 0);
  std::vector<long long> coeff(subset.size());
  WalkSearch(g, length, kind, budget).run([&](const Walk& w) {
    std::fill(coeff.begin(), coeff.end(), 0);
    for (const OrientedEdge& s : w.steps) {
      const int p = position[s.edge];
      if (p >= 0) coeff[p] += s.positive ? 1 : -1;
    }
    std::uint64_t index = 0;
    for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) {
      const long long r = ((*it % modulus) + modulus) % modulus;
      index = index * static_cast<std::uint64_t>(modulus) + static_cast<std::uint64_t>(r);
    }
    ++table[index];
  });
  return table;
}

std::uint64_t census_oracle(const MultiGraph& g, const std::vector<int>& subset,
                            const Chain& alpha, int length, WalkKind kind,
                            const Budget& budget) {
  require(alpha.size() == static_cast<std::size_t>(g.edge_count()), ErrorKind::kPrecondition,
          "alpha length must equal the edge count");
  std::uint64_t count = 0;
  const int t = alpha.modulus();
  WalkSearch(g, length, kind, budget).run([&](const Walk& w) {
    std::vector<long long> coeff(static_cast<std::size_t>(g.edge_count()), 0);
    for (const OrientedEdge& s : w.steps) coeff[s.edge] += s.positive ? 1 : -1;
    for (int i : subset) {
      if (((coeff[i] % t) + t) % t != alpha[static_cast<std::size_t>(i)]) return;
    }
    ++count;
  });
  return count;
}

std::uint64_t count_eulerian_oracle(const MultiGraph& g, const Budget& budget,
                                    const WalkVisitor& visit) {
  const int m = g.edge_count();
  std::vector<bool> used(static_cast<std::size_t>(m), false);
  Walk walk;
  std::uint64_t cycles = 0;
  std::uint64_t nodes = 0;

  const auto extend = [&](const auto& self) -> void {
    const OrientedEdge last = walk.steps.back();
    if (static_cast<int>(walk.steps.size()) == m) {
      if (g.terminal(last) == g.initial(walk.steps.front())) {
        ++cycles;
        if (visit) visit(walk);
      }
      return;
    }
    for (const OrientedEdge& next : g.outgoing(g.terminal(last))) {
      if (used[next.edge]) continue;
      if (++nodes > budget.max_nodes) fail(ErrorKind::kBudget, "oracle node budget exhausted");
      used[next.edge] = true;
      walk.steps.push_back(next);
      self(self);
      walk.steps.pop_back();
      used[next.edge] = false;
    }
  };

  // Every Eulerian cycle has exactly one rotation starting with edge 0.
  for (bool positive : {true, false}) {
    walk.steps.assign(1, OrientedEdge{0, positive});
    used.assign(static_cast<std::size_t>(m), false);
    used[0] = true;
    extend(extend);
  }
  return cycles;
}

}  // namespace ectrace::oracle
