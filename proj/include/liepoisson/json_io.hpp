#pragma once

// JSON schemas for the file formats: algebras as sparse i<j coefficient
// lists, Hamiltonians, spectrum reports, check reports, catalog rows, CRE
// solutions, and figure datasets.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "liepoisson/algebra.hpp"
#include "liepoisson/bianchi.hpp"
#include "liepoisson/cre.hpp"
#include "liepoisson/figures.hpp"
#include "liepoisson/poisson.hpp"
#include "liepoisson/version.hpp"

namespace lp::io {

using nlohmann::json;

/// { "dim": n, "c": [ {"k":.., "i":.., "j":.., "value":..}, ... ] } with
/// 1-based indices and only i < j entries; the antisymmetric completion is
/// automatic.
inline algebra::StructureConstants algebra_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("c"))
    throw SchemaError("algebra JSON needs fields 'dim' and 'c'");
  if (!j["dim"].is_number_integer()) throw SchemaError("'dim' must be an integer");
  const int dim = j["dim"].get<int>();
  if (dim < 1 || dim > algebra::kMaxDim) throw SchemaError("'dim' must be in 1..8");
  if (!j["c"].is_array()) throw SchemaError("'c' must be an array of entries");

  const auto n = static_cast<std::size_t>(dim);
  std::vector<double> c(n * n * n, 0.0);
  std::vector<bool> seen(n * n * n, false);
  for (const auto& e : j["c"]) {
    if (!e.is_object() || !e.contains("k") || !e.contains("i") || !e.contains("j") ||
        !e.contains("value"))
      throw SchemaError("each 'c' entry needs fields k, i, j, value");
    int k = e["k"].get<int>(), i = e["i"].get<int>(), jj = e["j"].get<int>();
    double v = e["value"].get<double>();
    if (k < 1 || k > dim || i < 1 || i > dim || jj < 1 || jj > dim)
      throw SchemaError("entry indices must be in 1..dim");
    if (i >= jj) throw SchemaError("entries must satisfy i < j (completion is automatic)");
    if (!std::isfinite(v)) throw SchemaError("entry value must be finite");
    std::size_t idx = (static_cast<std::size_t>(k - 1) * n + static_cast<std::size_t>(i - 1)) * n +
                      static_cast<std::size_t>(jj - 1);
    if (seen[idx]) throw SchemaError("duplicate entry (k,i,j)");
    seen[idx] = true;
    c[idx] = v;
    c[(static_cast<std::size_t>(k - 1) * n + static_cast<std::size_t>(jj - 1)) * n +
      static_cast<std::size_t>(i - 1)] = -v;
  }
  return algebra::StructureConstants::from_array(c, dim);
}

inline json algebra_to_json(const algebra::StructureConstants& alg) {
  json entries = json::array();
  const int n = alg.dim();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int jj = i + 1; jj < n; ++jj)
        if (alg.c(k, i, jj) != 0.0)
          entries.push_back({{"k", k + 1}, {"i", i + 1}, {"j", jj + 1}, {"value", alg.c(k, i, jj)}});
  return {{"dim", n}, {"c", entries}};
}

/// { "type": "quadratic", "q": [[..]] } or { "type": "linear", "zeta": [..] }.
inline poisson::Hamiltonian hamiltonian_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type")) throw SchemaError("hamiltonian JSON needs 'type'");
  const std::string type = j["type"].get<std::string>();
  if (type == "quadratic") {
    if (!j.contains("q") || !j["q"].is_array()) throw SchemaError("quadratic needs matrix 'q'");
    const auto& rows = j["q"];
    int n = static_cast<int>(rows.size());
    Mat q(n, n);
    for (int i = 0; i < n; ++i) {
      if (!rows[static_cast<std::size_t>(i)].is_array() ||
          static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
        throw SchemaError("'q' must be square");
      for (int k = 0; k < n; ++k) q(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<double>();
    }
    return poisson::Hamiltonian::quadratic(std::move(q));
  }
  if (type == "linear") {
    if (!j.contains("zeta") || !j["zeta"].is_array()) throw SchemaError("linear needs 'zeta'");
    Vec zeta = j["zeta"].get<Vec>();
    return poisson::Hamiltonian::linear(std::move(zeta));
  }
  throw SchemaError("hamiltonian 'type' must be 'quadratic' or 'linear'");
}

inline json hamiltonian_to_json(const poisson::Hamiltonian& h) {
  if (h.kind == poisson::Hamiltonian::Kind::Linear) return {{"type", "linear"}, {"zeta", h.zeta}};
  json rows = json::array();
  for (int i = 0; i < h.q.rows; ++i) {
    json row = json::array();
    for (int k = 0; k < h.q.cols; ++k) row.push_back(h.q(i, k));
    rows.push_back(row);
  }
  return {{"type", "quadratic"}, {"q", rows}};
}

inline json check_report_to_json(const poisson::CheckReport& r) {
  return {{"check", r.check}, {"residual", r.residual}, {"path", r.path}, {"samples", r.samples}};
}

inline json spectrum_to_json(const algebra::SpectrumReport& rep) {
  json eigs = json::array();
  for (const auto& z : rep.eigenvalues) eigs.push_back({{"re", z.real()}, {"im", z.imag()}});
  json matrix = json::array();
  for (int i = 0; i < rep.operator_matrix.rows; ++i) {
    json row = json::array();
    for (int k = 0; k < rep.operator_matrix.cols; ++k) row.push_back(rep.operator_matrix(i, k));
    matrix.push_back(row);
  }
  json out{{"matrix", matrix}, {"eigenvalues", eigs}, {"residual", rep.residual}};
  if (rep.max_real_nonzero)
    out["max_real_nonzero"] = *rep.max_real_nonzero;
  else
    out["max_real_nonzero"] = nullptr;
  return out;
}

inline json type_to_json(const bianchi::BianchiType& t) {
  json out{{"type", t.name()}};
  if (t.has_parameter()) out["h"] = t.h;
  return out;
}

inline json catalog_entry_to_json(const bianchi::CatalogEntry& e) {
  json m = json::array();
  for (int i = 0; i < 3; ++i) {
    json row = json::array();
    for (int k = 0; k < 3; ++k) row.push_back(e.em.m(i, k));
    m.push_back(row);
  }
  json casimirs = json::array();
  for (const auto& c : e.casimirs) casimirs.push_back(c.name);
  json out = type_to_json(e.type);
  out["m"] = m;
  out["a"] = e.em.a;
  out["algebra"] = algebra_to_json(e.constants);
  out["casimirs"] = casimirs;
  out["class"] = std::string(1, e.klass);
  out["cre"] = e.cre;
  return out;
}

inline json cre_to_json(const cre::ConformalRelativeEquilibrium& s) {
  return {{"x", s.x}, {"xi", s.xi}, {"residual", s.residual}, {"trivial", s.trivial}};
}

inline json figure_to_json(const figures::FigureData& fig) {
  json surface{{"vertices", fig.surface.vertices}, {"triangles", fig.surface.triangles}};
  json curves = json::array();
  for (const auto& c : fig.curves)
    curves.push_back({{"level", c.level}, {"closed", c.closed}, {"points", c.points}});
  json rays = json::array();
  for (const auto& r : fig.rays)
    rays.push_back({{"sigma2", r.sigma2},
                    {"sigma3", r.sigma3},
                    {"xi_per_t", r.xi_per_t},
                    {"points", r.points}});
  return {{"surface", surface}, {"curves", curves}, {"equilibria", fig.equilibria}, {"rays", rays}};
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
  return j;
}

} // namespace lp::io
