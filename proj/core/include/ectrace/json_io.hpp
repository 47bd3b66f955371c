#ifndef ECTRACE_JSON_IO_HPP
#define ECTRACE_JSON_IO_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ectrace/graph.hpp"
#include "ectrace/homology.hpp"
#include "ectrace/reductions.hpp"
#include "ectrace/trace_sum.hpp"
#include "ectrace/twisted.hpp"

namespace ectrace {

inline constexpr const char* kReportSchema = "ectrace.report/1";

// Chains are arrays of m residues.
nlohmann::json chain_to_json(const Chain& c);
Chain chain_from_json(const nlohmann::json& j, int modulus, std::size_t edge_count);

// Generators file: [{"vertex_perm": [...], "edge_perm": [...], "flip": [...]?}, ...].
// "flip" is optional; it is checked against the incidence and only
// consulted on its own for loops.
std::vector<GraphAutomorphism> generators_from_json(const MultiGraph& g, const nlohmann::json& j);
std::vector<GraphAutomorphism> load_generators(const MultiGraph& g, const std::string& path);
nlohmann::json generators_to_json(const std::vector<GraphAutomorphism>& generators);

// Row-major [re, im] pairs.
nlohmann::json matrix_to_json(const TwistedMatrix& m);

// {count, raw_sum, residual, terms, method, ...}; wall time is added by the caller.
nlohmann::json report_to_json(const CountReport& r);

// Compact "e2+e4" style label for a t = 2 chain; "0" for the zero chain.
// Residues other than 1 are written as coefficients ("2*e1").
std::string chain_label(const Chain& c);

}  // namespace ectrace

#endif  // ECTRACE_JSON_IO_HPP
