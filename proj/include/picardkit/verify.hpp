#pragma once

// Named verification suites. Each suite recomputes a statement about Del
// Pezzo surfaces or double covers of (P^1)^n from the library and records
// expected/got pairs per case.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "picardkit/cones.hpp"
#include "picardkit/doublecover.hpp"
#include "picardkit/enumerate.hpp"
#include "picardkit/fibration.hpp"
#include "picardkit/io.hpp"

namespace picardkit {

struct VerificationCase {
  std::string name;
  nlohmann::json expected;
  nlohmann::json got;

  bool ok() const { return expected == got; }
};

class VerificationReport {
 public:
  explicit VerificationReport(std::string lemma_id) : lemma_id_(std::move(lemma_id)) {}

  void check(std::string name, nlohmann::json expected, nlohmann::json got) {
    cases_.push_back({std::move(name), std::move(expected), std::move(got)});
  }

  const std::string& lemma_id() const noexcept { return lemma_id_; }

  bool passed() const {
    return std::all_of(cases_.begin(), cases_.end(), [](const VerificationCase& c) { return c.ok(); });
  }

  /// Cases sorted by name.
  std::vector<VerificationCase> details() const {
    auto out = cases_;
    std::stable_sort(out.begin(), out.end(),
                     [](const VerificationCase& a, const VerificationCase& b) { return a.name < b.name; });
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json d = nlohmann::json::array();
    for (const auto& c : details())
      d.push_back({{"case", c.name}, {"expected", c.expected}, {"got", c.got}, {"ok", c.ok()}});
    return {{"lemma_id", lemma_id_}, {"passed", passed()}, {"details", d}};
  }

 private:
  std::string lemma_id_;
  std::vector<VerificationCase> cases_;
};

/// Strict transform class of a plane curve of degree d with the given
/// multiplicities at p_i (1-based point index -> multiplicity).
inline DivisorClass plane_curve(int r, Int degree, const std::map<int, Int>& mult) {
  IntVector m(static_cast<std::size_t>(r), 0);
  for (const auto& [i, k] : mult) {
    if (i < 1 || i > r) throw RangeError("point index out of range");
    m[static_cast<std::size_t>(i - 1)] = k;
  }
  return DivisorClass::from_multiplicities(SurfaceModel::blowup_p2(r), degree, m);
}

/// Exceptional curve over p_i.
inline DivisorClass exceptional_curve(int r, int i) { return DivisorClass::basis(SurfaceModel::blowup_p2(r), i); }

namespace verify {

using nlohmann::json;

inline json classes_json(const std::vector<DivisorClass>& cs) {
  json out = json::array();
  for (const auto& c : cs) out.push_back(c.to_string());
  return out;
}

inline std::set<std::pair<DivisorClass, DivisorClass>> fiber_set(const std::vector<ReducibleFiber>& fibers) {
  std::set<std::pair<DivisorClass, DivisorClass>> out;
  for (const auto& f : fibers) out.insert(std::minmax(f.first, f.second));
  return out;
}

inline json fiber_json(const std::set<std::pair<DivisorClass, DivisorClass>>& fibers) {
  json out = json::array();
  for (const auto& [a, b] : fibers) out.push_back({a.to_string(), b.to_string()});
  return out;
}

inline bool contains_class(const std::vector<DivisorClass>& cs, const DivisorClass& c) {
  return std::find(cs.begin(), cs.end(), c) != cs.end();
}

/// Conic pairs on the degree-2 surface with f1 the pencil of lines through p_1.
inline VerificationReport deg2_pairs(unsigned /*threads*/ = 0) {
  VerificationReport rep("deg2-pairs");
  constexpr int r = 7;
  const auto exc = enumerate_exceptional(r);
  const auto conics = enumerate_conic(r);
  const auto c1 = plane_curve(r, 1, {{1, 1}});

  std::set<std::string> partner_signatures;
  std::map<std::string, std::set<Int>> degrees;
  bool quintic_rule = true;
  for (const auto& c2 : conics) {
    if (c2 == c1) continue;
    const auto f = analyze_pair(FibrationPair(c1, c2), exc);
    if (!f.is_finite) continue;
    const auto sig = orbit_signature(c2).to_string();
    partner_signatures.insert(sig);
    degrees[sig].insert(f.degree);
    if (c2.degree() == 5) quintic_rule = quintic_rule && (f.degree == 4) == (c2.multiplicities()[0] == 1);
  }
  rep.check("finite partner signatures", json{"(3;2,1,1,1,1,1,0)", "(4;2,2,2,1,1,1,1)", "(5;2,2,2,2,2,2,1)"},
            json(partner_signatures));
  rep.check("degrees of cubic partners", json{3}, json(degrees["(3;2,1,1,1,1,1,0)"]));
  rep.check("degrees of quartic partners", json{3}, json(degrees["(4;2,2,2,1,1,1,1)"]));
  rep.check("degrees of quintic partners", json{3, 4}, json(degrees["(5;2,2,2,2,2,2,1)"]));
  rep.check("quintic degree is 4 iff p1 is simple", true, quintic_rule);

  // excluded configurations and the curve both maps contract
  const auto l2 = plane_curve(r, 1, {{1, 1}, {2, 1}});
  const auto f6 = exceptional_curve(r, 6);
  const std::vector<std::pair<std::string, DivisorClass>> with_l2 = {
      {"excluded: lines through p2", plane_curve(r, 1, {{2, 1}})},
      {"excluded: cubics double at p1", plane_curve(r, 3, {{1, 2}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}})},
      {"excluded: cubics double at p2", plane_curve(r, 3, {{1, 1}, {2, 2}, {3, 1}, {4, 1}, {5, 1}, {6, 1}})},
      {"excluded: quartics double at p1,p2,p3",
       plane_curve(r, 4, {{1, 2}, {2, 2}, {3, 2}, {4, 1}, {5, 1}, {6, 1}, {7, 1}})},
  };
  for (const auto& [name, c2] : with_l2) {
    const auto f = analyze_pair(FibrationPair(c1, c2), exc);
    rep.check(name + " contracts l2", json{{"finite", false}, {"contains", true}},
              json{{"finite", f.is_finite}, {"contains", contains_class(f.common_contracted, l2)}});
  }
  for (int skip = 1; skip <= 5; ++skip) {
    std::map<int, Int> m;
    for (int i = 1; i <= 5; ++i)
      if (i != skip) m[i] = 1;
    const auto f = analyze_pair(FibrationPair(c1, plane_curve(r, 2, m)), exc);
    rep.check("excluded: conics missing p" + std::to_string(skip) + " contract F6",
              json{{"finite", false}, {"contains", true}},
              json{{"finite", f.is_finite}, {"contains", contains_class(f.common_contracted, f6)}});
  }

  // the admissible configurations, with their reducible fibers
  const auto cubic = plane_curve(r, 3, {{2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}, {7, 2}});
  const auto quartic = plane_curve(r, 4, {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 2}, {6, 2}, {7, 2}});
  const auto quintic_simple = plane_curve(r, 5, {{1, 1}, {2, 2}, {3, 2}, {4, 2}, {5, 2}, {6, 2}, {7, 2}});
  const auto quintic_double = plane_curve(r, 5, {{1, 2}, {2, 2}, {3, 2}, {4, 2}, {5, 2}, {6, 2}, {7, 1}});
  const std::vector<std::tuple<std::string, DivisorClass, Int>> admissible = {
      {"admissible: cubics double at p7", cubic, 3},
      {"admissible: quartics double at p5,p6,p7", quartic, 3},
      {"admissible: quintics simple at p1", quintic_simple, 4},
      {"admissible: quintics double at p1", quintic_double, 3},
  };
  for (const auto& [name, c2, deg] : admissible) {
    const auto f = analyze_pair(FibrationPair(c1, c2), exc);
    rep.check(name + " is finite", json{{"finite", true}, {"degree", deg}},
              json{{"finite", f.is_finite}, {"degree", f.degree}});
  }

  std::set<std::pair<DivisorClass, DivisorClass>> cubic_fibers;
  cubic_fibers.insert(std::minmax(plane_curve(r, 3, {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}, {7, 2}}),
                                  exceptional_curve(r, 1)));
  for (int m = 2; m <= 6; ++m) {
    std::map<int, Int> conic{{7, 1}};
    for (int i = 2; i <= 6; ++i)
      if (i != m) conic[i] = 1;
    cubic_fibers.insert(std::minmax(plane_curve(r, 2, conic), plane_curve(r, 1, {{m, 1}, {7, 1}})));
  }
  rep.check("cubic pencil reducible fibers", fiber_json(cubic_fibers),
            fiber_json(fiber_set(reducible_fibers(cubic, exc))));

  std::set<std::pair<DivisorClass, DivisorClass>> quartic_fibers;
  for (int i : {5, 6, 7}) {
    std::map<int, Int> m{{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}, {7, 1}};
    m[i] = 2;
    std::map<int, Int> line;
    for (int j : {5, 6, 7})
      if (j != i) line[j] = 1;
    quartic_fibers.insert(std::minmax(plane_curve(r, 3, m), plane_curve(r, 1, line)));
  }
  for (auto [a, b, c, d] : {std::array{1, 2, 3, 4}, std::array{1, 3, 2, 4}, std::array{1, 4, 2, 3}})
    quartic_fibers.insert(std::minmax(plane_curve(r, 2, {{a, 1}, {b, 1}, {5, 1}, {6, 1}, {7, 1}}),
                                      plane_curve(r, 2, {{c, 1}, {d, 1}, {5, 1}, {6, 1}, {7, 1}})));
  rep.check("quartic pencil reducible fibers", fiber_json(quartic_fibers),
            fiber_json(fiber_set(reducible_fibers(quartic, exc))));
  return rep;
}

/// Finite maps S -> P^1 x P^1 exist exactly for K^2 in {1, 2, 4} among blow-ups.
inline VerificationReport quadric_target(unsigned threads = 0) {
  VerificationReport rep("quadric-target");
  std::vector<int> with_pairs;
  for (int r = 1; r <= 8; ++r) {
    const auto groups = classify_finite_pairs(r, threads);
    if (!groups.empty()) with_pairs.push_back(9 - r);
    if (r == 5) {
      std::set<Int> degrees;
      for (const auto& g : groups) degrees.insert(g.degree);
      rep.check("K^2 = 4 finite pair degrees", json{2}, json(degrees));
    }
  }
  std::sort(with_pairs.begin(), with_pairs.end());
  rep.check("K^2 values with finite pairs", json{1, 2, 4}, json(with_pairs));

  const auto exc8 = enumerate_exceptional(8);
  const auto pencil = plane_curve(8, 4, {{2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 2}, {7, 2}, {8, 2}});
  const auto f = analyze_pair(FibrationPair(plane_curve(8, 1, {{1, 1}}), pencil), exc8);
  rep.check("K^2 = 1 lines through p1 and quartic pencil", json{{"finite", true}, {"degree", 4}},
            json{{"finite", f.is_finite}, {"degree", f.degree}});

  // P^1 x P^1: the two rulings meet once and there are no (-1)-curves
  const auto q = SurfaceModel::product_p1(2);
  rep.check("P1xP1 rulings degree", 1, pairing(DivisorClass::basis(q, 0), DivisorClass::basis(q, 1)));
  return rep;
}

/// 2 K^2 (C1.C2) <= (K.C1 + K.C2)^2 = 16 over all conic pairs.
inline VerificationReport hodge_bound_suite(unsigned threads = 0) {
  VerificationReport rep("hodge-bound");
  for (int r = 1; r <= 8; ++r) {
    const auto conics = enumerate_conic(r);
    std::size_t violations = 0;
    Int max_lhs = 0;
    for (std::size_t i = 0; i < conics.size(); ++i)
      for (std::size_t j = i; j < conics.size(); ++j) {
        const auto h = hodge_bound(conics[i], conics[j]);
        if (!h.holds || h.rhs != 16) ++violations;
        max_lhs = std::max(max_lhs, h.lhs);
      }
    rep.check("r=" + std::to_string(r) + " violations", 0, violations);
    Int max_degree = 0;
    for (const auto& p : finite_pairs(conics, enumerate_exceptional(r), threads))
      max_degree = std::max(max_degree, p.degree);
    rep.check("r=" + std::to_string(r) + " finite degree within bound", true,
              max_degree <= max_degree_bound(r) && (9 - r < 3 || max_degree <= 2));
  }
  return rep;
}

/// Nef = Psef exactly for P^2 and P^1 x P^1; -K interior; E_1 separates the cones.
inline VerificationReport cone_dp(unsigned /*threads*/ = 0) {
  VerificationReport rep("cone-dp");
  std::vector<std::string> equal_models;
  std::vector<SurfaceModel> models;
  for (int r = 0; r <= 8; ++r) models.push_back(SurfaceModel::blowup_p2(r));
  models.push_back(SurfaceModel::product_p1(2));
  for (const auto& m : models) {
    const auto report = surface_cone_report(m);
    if (report.equal) {
      equal_models.push_back(m.name());
      rep.check(m.name() + " Mori cone simplicial with rho <= 2", true,
                report.mori_simplicial && report.picard_number <= 2);
    }
    if (m.is_blowup() && m.parameter() >= 1) {
      const auto k = canonical_class(m);
      bool interior = true;
      for (const auto& g : report.psef.generators()) interior = interior && -pairing(m, k.coords(), g) > 0;
      const auto e1 = DivisorClass::basis(m, 1);
      rep.check(m.name() + " -K pairs positively with Psef", true, interior);
      rep.check(m.name() + " E1 in Psef but not Nef", json{true, false},
                json{report.psef.contains(e1.coords()), report.nef.contains(e1.coords())});
    }
  }
  rep.check("models with Nef = Psef", json{"BlowupP2(0)", "ProductP1(2)"}, json(equal_models));
  for (int n = 1; n <= 5; ++n) {
    const auto ne = mori_cone(SurfaceModel::product_p1(n));
    rep.check("(P1)^" + std::to_string(n) + " NE simplicial rays", json{{"simplicial", true}, {"rays", n}},
              json{{"simplicial", is_simplicial(ne)}, {"rays", extremal_rays(ne).size()}});
  }
  return rep;
}

/// (-K_X)^n = 2 n! prod(2 - d_i) and the Fano criterion.
inline VerificationReport double_cover_k(unsigned /*threads*/ = 0) {
  VerificationReport rep("double-cover-k");
  rep.check("(2,2) cover of P1xP1", 4, anticanonical_power(DoubleCoverSpec({1, 1})));
  Int factorial = 1;
  for (int n = 1; n <= 6; ++n) {
    factorial *= n;
    rep.check("(2,..,2) cover, n=" + std::to_string(n), 2 * factorial,
              anticanonical_power(DoubleCoverSpec(IntVector(static_cast<std::size_t>(n), 1))));
  }
  for (int n = 1; n <= 5; ++n) {
    std::size_t disagreements = 0;
    IntVector t(static_cast<std::size_t>(n), 0);
    for (;;) {
      const DoubleCoverSpec spec(t);
      if ((anticanonical_power(spec) > 0) != is_fano(spec)) ++disagreements;
      std::size_t i = 0;
      while (i < t.size() && t[i] == 2) t[i++] = 0;
      if (i == t.size()) break;
      ++t[i];
    }
    rep.check("Fano iff (-K)^n > 0, n=" + std::to_string(n), 0, disagreements);
  }
  rep.check("(2,2,2,2) cover Picard number", 4, *expected_picard_number(DoubleCoverSpec({1, 1, 1, 1})));
  return rep;
}

/// The (2,2,2) branch divisor whose cover is singular over (0:1)^3.
inline VerificationReport branch_singular(unsigned /*threads*/ = 0) {
  VerificationReport rep("branch-singular");
  const auto p = singular_222_example();
  const auto pt = parse_point("0:1,0:1,0:1");
  rep.check("point on branch divisor", "0", to_string(p.evaluate(pt)));
  rep.check("cover singular at (0:1)^3", true, cover_singular_at(p, pt));
  rep.check("cover singular after rescaling", true,
            cover_singular_at(p, pt.rescaled(0, 3).rescaled(1, Rational(-2, 5)).rescaled(2, 7)));
  // restriction to z0 = 0 is x0^2 y0^2
  bool restriction = true;
  for (const auto& [e, c] : p.terms())
    if (e[4] == 0) restriction = restriction && e == std::vector<int>{2, 0, 2, 0, 0, 2} && c == 1;
  rep.check("restriction to z0 = 0 is x0^2 y0^2", true, restriction);
  const auto smooth_pt = parse_point("1:0,0:1,1:1");
  rep.check("smooth point of the cover", false, cover_singular_at(p, smooth_pt));
  return rep;
}

/// Reducible fibers of conic bundles: r - 1 = 8 - K^2 of them.
inline VerificationReport fiber_counts(unsigned /*threads*/ = 0) {
  VerificationReport rep("fiber-counts");
  for (int r = 1; r <= 8; ++r) {
    const auto exc = enumerate_exceptional(r);
    std::map<std::size_t, std::size_t> histogram;
    for (const auto& c : enumerate_conic(r)) ++histogram[reducible_fibers(c, exc).size()];
    json expected = json::object();
    expected[std::to_string(r - 1)] = enumerate_conic(r).size();
    json got = json::object();
    for (const auto& [k, v] : histogram) got[std::to_string(k)] = v;
    rep.check("r=" + std::to_string(r) + " fiber count histogram", expected, got);
  }

  constexpr int r = 8;
  const auto exc = enumerate_exceptional(r);
  const auto pencil = plane_curve(r, 4, {{2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 2}, {7, 2}, {8, 2}});
  std::set<std::pair<DivisorClass, DivisorClass>> expected;
  for (int i : {6, 7, 8}) {
    std::map<int, Int> cubic{{2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}, {7, 1}, {8, 1}};
    cubic[i] = 2;
    std::map<int, Int> line;
    for (int j : {6, 7, 8})
      if (j != i) line[j] = 1;
    expected.insert(std::minmax(plane_curve(r, 3, cubic), plane_curve(r, 1, line)));
  }
  for (auto [a, b, c, d] : {std::array{2, 3, 4, 5}, std::array{2, 4, 3, 5}, std::array{2, 5, 3, 4}})
    expected.insert(std::minmax(plane_curve(r, 2, {{a, 1}, {b, 1}, {6, 1}, {7, 1}, {8, 1}}),
                                plane_curve(r, 2, {{c, 1}, {d, 1}, {6, 1}, {7, 1}, {8, 1}})));
  expected.insert(std::minmax(
      plane_curve(r, 4, {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 2}, {7, 2}, {8, 2}}), exceptional_curve(r, 1)));
  rep.check("K^2 = 1 quartic pencil fibers", fiber_json(expected), fiber_json(fiber_set(reducible_fibers(pencil, exc))));

  std::set<std::pair<DivisorClass, DivisorClass>> lines;
  for (int i = 2; i <= 7; ++i)
    lines.insert(std::minmax(exceptional_curve(7, i), plane_curve(7, 1, {{1, 1}, {i, 1}})));
  rep.check("K^2 = 2 lines through p1 fibers", fiber_json(lines),
            fiber_json(fiber_set(reducible_fibers(plane_curve(7, 1, {{1, 1}}), enumerate_exceptional(7)))));
  return rep;
}

using Suite = std::function<VerificationReport(unsigned)>;

inline const std::map<std::string, Suite>& suites() {
  static const std::map<std::string, Suite> table = {
      {"branch-singular", branch_singular}, {"cone-dp", cone_dp},
      {"deg2-pairs", deg2_pairs},           {"double-cover-k", double_cover_k},
      {"fiber-counts", fiber_counts},       {"hodge-bound", hodge_bound_suite},
      {"quadric-target", quadric_target},
  };
  return table;
}

}  // namespace verify

/// Runs a named suite; throws RangeError for unknown ids.
inline VerificationReport run_verification(const std::string& lemma_id, unsigned threads = 0) {
  const auto& table = verify::suites();
  auto it = table.find(lemma_id);
  if (it == table.end()) throw RangeError("unknown verification suite '" + lemma_id + "'");
  return it->second(threads);
}

}  // namespace picardkit
