#include "ectrace/json_io.hpp"

#include <fstream>

#include "ectrace/error.hpp"

namespace ectrace {

using nlohmann::json;

json chain_to_json(const Chain& c) { return json(c.coeffs()); }

Chain chain_from_json(const json& j, int modulus, std::size_t edge_count) {
  require(j.is_array(), ErrorKind::kParse, "chain must be a JSON array");
  require(j.size() == edge_count, ErrorKind::kParse,
          "chain needs " + std::to_string(edge_count) + " entries, got " +
              std::to_string(j.size()));
  std::vector<int> coeffs;
  for (const auto& x : j) {
    require(x.is_number_integer(), ErrorKind::kParse, "chain entries must be integers");
    coeffs.push_back(x.get<int>());
  }
  return Chain(modulus, std::move(coeffs));
}

std::vector<GraphAutomorphism> generators_from_json(const MultiGraph& g, const json& j) {
  require(j.is_array(), ErrorKind::kParse, "generators file must hold a JSON array");
  std::vector<GraphAutomorphism> out;
  for (const auto& item : j) {
    require(item.is_object() && item.contains("vertex_perm") && item.contains("edge_perm"),
            ErrorKind::kParse, "each generator needs vertex_perm and edge_perm");
    std::vector<bool> flips;
    try {
      if (item.contains("flip")) flips = item.at("flip").get<std::vector<bool>>();
      out.push_back(make_automorphism(g, item.at("vertex_perm").get<std::vector<int>>(),
                                      item.at("edge_perm").get<std::vector<int>>(), flips));
    } catch (const json::exception& e) {
      fail(ErrorKind::kParse, std::string("malformed generator: ") + e.what());
    }
  }
  return out;
}

std::vector<GraphAutomorphism> load_generators(const MultiGraph& g, const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::kUsage, "cannot open generators file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorKind::kParse, std::string("generators file is not valid JSON: ") + e.what());
  }
  return generators_from_json(g, j);
}

json generators_to_json(const std::vector<GraphAutomorphism>& generators) {
  json out = json::array();
  for (const auto& tau : generators) {
    out.push_back({{"vertex_perm", tau.vertex_perm},
                   {"edge_perm", tau.edge_perm},
                   {"flip", tau.flip}});
  }
  return out;
}

json matrix_to_json(const TwistedMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.dim(); ++k) {
      row.push_back({m.entries(i, k).real(), m.entries(i, k).imag()});
    }
    rows.push_back(std::move(row));
  }
  return {{"kind", to_string(m.kind)},
          {"t", m.modulus()},
          {"twist", chain_to_json(m.twist)},
          {"entries", std::move(rows)}};
}

json report_to_json(const CountReport& r) {
  json j = {{"schema", kReportSchema},
            {"formula", r.formula},
            {"count", r.count},
            {"raw_sum", r.raw_sum},
            {"raw_imag", r.raw_imag},
            {"denominator", r.denominator},
            {"residual", r.residual},
            {"terms", r.terms},
            {"method", r.formula == "best" ? "best" : to_string(r.method)},
            {"t", r.modulus},
            {"length", r.length},
            {"subset", r.subset},
            {"exact", r.exact}};
  if (!r.warnings.empty()) j["warnings"] = r.warnings;
  return j;
}

std::string chain_label(const Chain& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += '+';
    if (c[i] != 1) out += std::to_string(c[i]) + "*";
    out += "e" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

}  // namespace ectrace
