#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "quasitree/delta_matroid.hpp"
#include "quasitree/errors.hpp"
#include "quasitree/matrices.hpp"
#include "quasitree/quasi_tree.hpp"
#include "quasitree/ribbon_graph.hpp"
#include "quasitree/signed_rotation.hpp"
#include "quasitree/subset_polynomial.hpp"

namespace quasitree {

inline constexpr int dump_schema_version = 1;

// File format: {"vertices": [[{"edge": int, "end": "a"|"b", "sign": 1|-1},
// ...], ...]} with every (edge, end) pair appearing exactly once.
inline RibbonGraph ribbon_graph_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
    throw Error(errc::malformed_ribbon_graph, "expected an object with a \"vertices\" array");
  std::vector<std::vector<Occurrence>> verts;
  for (const auto& vert : doc["vertices"]) {
    if (!vert.is_array())
      throw Error(errc::malformed_ribbon_graph, "each vertex must be an array of occurrences");
    std::vector<Occurrence> list;
    for (const auto& occ : vert) {
      if (!occ.is_object() || !occ.contains("edge") || !occ.contains("end") ||
          !occ.contains("sign"))
        throw Error(errc::malformed_ribbon_graph,
                    "occurrence needs \"edge\", \"end\" and \"sign\" fields");
      if (!occ["edge"].is_number_integer() || !occ["sign"].is_number_integer() ||
          !occ["end"].is_string())
        throw Error(errc::malformed_ribbon_graph, "occurrence field has the wrong type");
      std::string end = occ["end"].get<std::string>();
      if (end != "a" && end != "b")
        throw Error(errc::malformed_ribbon_graph, "\"end\" must be \"a\" or \"b\"");
      list.push_back({occ["edge"].get<int>(), end == "a" ? End::a : End::b,
                      occ["sign"].get<int>()});
    }
    verts.push_back(std::move(list));
  }
  return RibbonGraph::from_vertices(std::move(verts));
}

inline RibbonGraph parse_ribbon_graph(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(errc::malformed_ribbon_graph, e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
  return ribbon_graph_from_json(doc);
}

inline RibbonGraph load_ribbon_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(errc::malformed_ribbon_graph, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ribbon_graph(buf.str());
}

inline nlohmann::json ribbon_graph_to_json(const RibbonGraph& g) {
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& vert : g.vertices()) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& o : vert)
      list.push_back({{"edge", o.edge}, {"end", std::string(1, end_letter(o.end))},
                      {"sign", o.sign}});
    verts.push_back(std::move(list));
  }
  return {{"schema", dump_schema_version}, {"vertices", std::move(verts)}};
}

// --- renderers --------------------------------------------------------------

namespace detail {

inline std::string symbolic_entry_text(const SymbolicEntry& e) {
  if (e.coef == 0) return "0";
  const char* sep = (e.i > 9 || e.j > 9) ? "," : "";
  std::string var = "x_{" + std::to_string(e.i) + sep + std::to_string(e.j) + "}";
  return e.coef < 0 ? "-" + var : var;
}

inline std::string render_grid(const std::vector<std::vector<std::string>>& cells) {
  std::vector<std::size_t> width;
  for (const auto& row : cells) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c)
      width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  for (const auto& row : cells) {
    out += "[ ";
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += "  ";
      out += row[c];
      out.append(width[c] - row[c].size(), ' ');
    }
    out += " ]\n";
  }
  return out;
}

}  // namespace detail

inline std::string render_matrix(const SymbolicSkewMatrix& m) {
  if (m.n() == 0) return "[]\n";
  std::vector<std::vector<std::string>> cells;
  for (int i = 1; i <= m.n(); ++i) {
    std::vector<std::string> row;
    for (int j = 1; j <= m.n(); ++j) row.push_back(detail::symbolic_entry_text(m.entry(i, j)));
    cells.push_back(std::move(row));
  }
  return detail::render_grid(cells);
}

inline std::string render_matrix(const IntegerSkewMatrix& m) {
  if (m.n() == 0) return "[]\n";
  std::vector<std::vector<std::string>> cells;
  for (int i = 1; i <= m.n(); ++i) {
    std::vector<std::string> row;
    for (int j = 1; j <= m.n(); ++j) row.push_back(std::to_string(m.entry(i, j)));
    cells.push_back(std::move(row));
  }
  return detail::render_grid(cells);
}

inline std::string render_matrix(const BinaryMatrix& m) {
  if (m.n() == 0) return "[]\n";
  std::vector<std::vector<std::string>> cells;
  for (int i = 1; i <= m.n(); ++i) {
    std::vector<std::string> row;
    for (int j = 1; j <= m.n(); ++j) row.push_back(m.get(i, j) ? "1" : "0");
    cells.push_back(std::move(row));
  }
  return detail::render_grid(cells);
}

// --- structured dumps -------------------------------------------------------

inline nlohmann::json matrices_to_json(const SymbolicSkewMatrix& s, const IntegerSkewMatrix& u,
                                       const BinaryMatrix& m) {
  nlohmann::json sym = nlohmann::json::array();
  for (int i = 1; i <= s.n(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 1; j <= s.n(); ++j) row.push_back(detail::symbolic_entry_text(s.entry(i, j)));
    sym.push_back(std::move(row));
  }
  nlohmann::json uns = nlohmann::json::array();
  for (int i = 1; i <= u.n(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 1; j <= u.n(); ++j) row.push_back(u.entry(i, j));
    uns.push_back(std::move(row));
  }
  nlohmann::json adj = nlohmann::json::array();
  for (int i = 1; i <= m.n(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 1; j <= m.n(); ++j) row.push_back(m.get(i, j) ? 1 : 0);
    adj.push_back(std::move(row));
  }
  return {{"schema", dump_schema_version},
          {"n", s.n()},
          {"symbolic", std::move(sym)},
          {"unsymbolic", std::move(uns)},
          {"adjacency", std::move(adj)}};
}

inline nlohmann::json subset_to_json(EdgeSubset x) {
  nlohmann::json arr = nlohmann::json::array();
  for (int i : x.elements()) arr.push_back(i);
  return arr;
}

// [subset-array, coefficient] pairs in canonical order.
inline nlohmann::json polynomial_to_json(const SubsetPolynomial& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [x, c] : p.terms()) arr.push_back({subset_to_json(x), c});
  return arr;
}

inline nlohmann::json set_system_to_json(const SetSystem& d) {
  nlohmann::json family = nlohmann::json::array();
  for (EdgeSubset x : d.family()) family.push_back(subset_to_json(x));
  return {{"schema", dump_schema_version}, {"ground", d.ground()}, {"family", std::move(family)}};
}

inline nlohmann::json report_to_json(const QuasiTreeReport& rep) {
  nlohmann::json out = {{"schema", dump_schema_version},
                        {"n", rep.n},
                        {"method", method_name(rep.method)},
                        {"tau", rep.tau}};
  nlohmann::json feasible = nlohmann::json::array();
  for (EdgeSubset x : rep.feasible) feasible.push_back(subset_to_json(x));
  out["feasible"] = std::move(feasible);
  out["mod2"] = polynomial_to_json(rep.mod2_poly);
  if (rep.integer_poly) out["integer"] = polynomial_to_json(*rep.integer_poly);
  return out;
}

}  // namespace quasitree
