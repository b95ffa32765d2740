#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "modlie/geom.hpp"
#include "modlie/lie_algebra.hpp"
#include "modlie/matrix.hpp"
#include "modlie/module.hpp"
#include "modlie/report.hpp"

namespace modlie {

using json = nlohmann::json;

/// Canonical text: sorted keys, two-space indent, integers only, trailing newline.
inline std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

inline json to_json(const Field& f) { return {{"p", f.p()}, {"k", f.k()}, {"modulus", f.modulus()}}; }

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row_vec(i));
  return rows;
}

inline json to_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}});
  return checks;
}

inline json to_json(const Functional& chi) {
  return {{"field", to_json(*chi.field())}, {"values", chi.values()}};
}

inline json to_json(const LieElement& x) { return {{"field", to_json(*x.field())}, {"coeffs", x.coeffs()}, {"str", x.str()}}; }

/// Name, basis, structure constants c_{ij}^k (flattened (i * n + j) * n + k) and p-map images.
inline json to_json(const RestrictedLieAlgebra& l) {
  return {{"name", l.name()},         {"dim", l.dim()},
          {"field", to_json(*l.base())}, {"basis", l.basis_names()},
          {"structure_constants", l.structure_constants()}, {"pbasis", l.pbasis()}};
}

/// Dimension and action matrices (one per basis vector of the algebra).
inline json to_json(const FdModule& m) {
  json acts = json::array();
  for (const auto& a : m.actions()) acts.push_back(to_json(a));
  return {{"algebra", m.algebra()->name()}, {"basis", m.algebra()->basis_names()}, {"dim", m.dim()},
          {"field", to_json(*m.field())},   {"chi", m.chi().values()},                {"actions", acts}};
}

inline json to_json(const FiberSample& s) {
  json pts = json::array();
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const auto& pv = s.provenance[i];
    json prov = {{"kind", pv.kind}};
    if (pv.kind == "weyl") {
      prov["perm"] = pv.perm;
    } else {
      prov["parent"] = pv.parent;
      prov["nilradical"] = pv.nilradical;
      prov["draw"] = pv.draw;
      prov["z"] = to_json(pv.z);
    }
    pts.push_back({{"flag", to_json(s.points[i].flag)}, {"provenance", prov}});
  }
  return {{"chi", to_json(s.chi)}, {"seed", s.seed}, {"weyl_seeds", s.weyl_seeds}, {"draws", s.draws}, {"points", pts}};
}

}  // namespace modlie
