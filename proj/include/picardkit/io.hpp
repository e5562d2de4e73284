#pragma once

// JSON encoding of library values. Objects use sorted keys, so equal values
// always serialize to identical bytes.

#include <string>
#include <vector>

#include "json.hpp"

#include "picardkit/cones.hpp"
#include "picardkit/doublecover.hpp"
#include "picardkit/enumerate.hpp"
#include "picardkit/fibration.hpp"

namespace picardkit::io {

using nlohmann::json;

inline json basis(const SurfaceModel& model) { return model.basis_labels(); }

inline json to_json(const DivisorClass& c) { return c.vector(); }

inline json to_json(const OrbitSignature& s) {
  return {{"degree", s.degree}, {"multiplicities", s.multiplicities}};
}

inline json to_json(const ClassFamily& fam) {
  json members = json::array();
  for (const auto& c : fam) members.push_back(to_json(c));
  return {{"model", fam.model().name()},
          {"basis", basis(fam.model())},
          {"kind", to_string(fam.kind())},
          {"count", fam.size()},
          {"members", members}};
}

inline json to_json(const ReducibleFiber& f) {
  return {{"total", to_json(f.total)}, {"components", {to_json(f.first), to_json(f.second)}}};
}

inline json to_json(const FinitenessReport& r) {
  json contracted = json::array();
  for (const auto& e : r.common_contracted) contracted.push_back(to_json(e));
  return {{"degree", r.degree}, {"common_contracted", contracted}, {"is_finite", r.is_finite}};
}

inline json to_json(const PairClassification& p) {
  return {{"signature_pair", {to_json(p.first), to_json(p.second)}}, {"degree", p.degree}, {"count", p.count}};
}

inline json to_json(const std::vector<IntVector>& rays) {
  json out = json::array();
  for (const auto& r : rays) out.push_back(r);
  return out;
}

inline json to_json(const ConePoly& c) {
  return {{"ambient_dim", c.ambient_dim()},
          {"generators", to_json(c.generators())},
          {"extremal_rays", to_json(extremal_rays(c))},
          {"dimension", c.dimension()}};
}

inline json to_json(const ConeReport& r) {
  return {{"nef", to_json(r.nef)},
          {"psef", to_json(r.psef)},
          {"equal", r.equal},
          {"mori_simplicial", r.mori_simplicial},
          {"picard_number", r.picard_number}};
}

inline json to_json(const DoubleCoverSpec& spec) {
  const auto rho = expected_picard_number(spec);
  return {{"n", spec.n()},
          {"branch_type", spec.branch_type()},
          {"branch_class", to_json(spec.branch_class())},
          {"is_fano", is_fano(spec)},
          {"anticanonical_power", anticanonical_power(spec)},
          {"expected_picard_number", rho ? json(*rho) : json(nullptr)}};
}

/// {"n": int, "multidegree": [int], "terms": [{"exponents": [int x 2n], "coeff": "p/q"}]}
inline MultiHomogPoly poly_from_json(const json& doc) {
  try {
    const int n = doc.at("n").get<int>();
    auto degree = doc.at("multidegree").get<std::vector<int>>();
    if (n < 1 || static_cast<int>(degree.size()) != n) throw ParseError("multidegree must have n >= 1 entries");
    std::vector<std::pair<MultiHomogPoly::Exponents, Rational>> terms;
    for (const auto& t : doc.at("terms")) {
      const auto& coeff = t.at("coeff");
      if (!coeff.is_string()) throw ParseError("coeff must be a rational string such as \"3/4\"");
      terms.emplace_back(t.at("exponents").get<std::vector<int>>(), parse_rational(coeff.get<std::string>()));
    }
    return MultiHomogPoly(std::move(degree), terms);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed branch polynomial: ") + e.what());
  }
}

inline json to_json(const MultiHomogPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exponents", e}, {"coeff", to_string(c)}});
  return {{"n", p.n()}, {"multidegree", p.multidegree()}, {"terms", terms}};
}

inline json to_json(const ProductPoint& pt) {
  json out = json::array();
  for (const auto& [a, b] : pt.coords()) out.push_back({to_string(a), to_string(b)});
  return out;
}

/// Top-level CLI envelope.
inline json envelope(const std::string& command, json params, json result) {
  return {{"command", command}, {"params", std::move(params)}, {"result", std::move(result)}};
}

}  // namespace picardkit::io
