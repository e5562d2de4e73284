#pragma once

// Double covers X -> (P^1)^n branched along a divisor B of multidegree
// (2d_1, .., 2d_n). With B in |L^2|, K_X = f^*(K_Y + L), so -K_X pulls back
// the class A = (2 - d_1, .., 2 - d_n) and (-K_X)^n = 2 A^n.
//
// Branch polynomials live in variables x_{i,0}, x_{i,1} per factor; variable
// index 2i + j addresses x_{i,j}.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "picardkit/lattice.hpp"
#include "picardkit/rational.hpp"

namespace picardkit {

class DoubleCoverSpec {
 public:
  explicit DoubleCoverSpec(IntVector branch_type) : branch_type_(std::move(branch_type)) {
    if (branch_type_.empty()) throw RangeError("double cover needs n >= 1 factors");
    for (Int d : branch_type_)
      if (d < 0) throw DomainError("branch type entries must be nonnegative");
  }

  int n() const noexcept { return static_cast<int>(branch_type_.size()); }
  const IntVector& branch_type() const noexcept { return branch_type_; }

  SurfaceModel base() const { return SurfaceModel::product_p1(n()); }

  /// L = (d_1, .., d_n).
  DivisorClass half_branch_class() const { return {base(), branch_type_}; }

  /// B = (2d_1, .., 2d_n).
  DivisorClass branch_class() const { return Int{2} * half_branch_class(); }

  /// -(K_Y + L) = (2 - d_1, .., 2 - d_n); -K_X is its pullback.
  DivisorClass anticanonical_base_class() const {
    IntVector c;
    for (Int d : branch_type_) c.push_back(checked::sub(2, d));
    return {base(), std::move(c)};
  }

 private:
  IntVector branch_type_;
};

/// Q-Fano iff every d_i is 0 or 1.
inline bool is_fano(const DoubleCoverSpec& spec) {
  const auto& t = spec.branch_type();
  return std::all_of(t.begin(), t.end(), [](Int d) { return d == 0 || d == 1; });
}

/// (-K_X)^n = deg(f) * (pullback class)^n = 2 n! prod(2 - d_i).
inline Int anticanonical_power(const DoubleCoverSpec& spec) {
  return checked::mul(2, top_power(spec.anticanonical_base_class()));
}

/// rho(X) = n for smooth covers of type (2,..,2) in dimension >= 3; not
/// determined here otherwise.
inline std::optional<int> expected_picard_number(const DoubleCoverSpec& spec) {
  const auto& t = spec.branch_type();
  if (spec.n() >= 3 && std::all_of(t.begin(), t.end(), [](Int d) { return d == 1; })) return spec.n();
  return std::nullopt;
}

/// One (a_i : b_i) per factor.
class ProductPoint {
 public:
  explicit ProductPoint(std::vector<std::pair<Rational, Rational>> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw RangeError("point needs n >= 1 factors");
    for (const auto& [a, b] : coords_)
      if (a == 0 && b == 0) throw DomainError("projective coordinates (0:0) are not a point");
  }

  int n() const noexcept { return static_cast<int>(coords_.size()); }
  const std::vector<std::pair<Rational, Rational>>& coords() const noexcept { return coords_; }

  /// Value of variable 2i + j.
  const Rational& variable(std::size_t index) const {
    const auto& c = coords_.at(index / 2);
    return index % 2 == 0 ? c.first : c.second;
  }

  /// Same point with factor i scaled by s != 0.
  ProductPoint rescaled(std::size_t factor, const Rational& s) const {
    if (s == 0) throw DomainError("rescaling factor must be nonzero");
    auto out = *this;
    out.coords_.at(factor).first *= s;
    out.coords_.at(factor).second *= s;
    return out;
  }

 private:
  std::vector<std::pair<Rational, Rational>> coords_;
};

/// Multihomogeneous polynomial on (P^1)^n with exact rational coefficients.
/// Zero coefficients are never stored. A factor's degree may be -1 only for
/// the zero polynomial (a derivative that removed the last power).
class MultiHomogPoly {
 public:
  using Exponents = std::vector<int>;

  MultiHomogPoly(std::vector<int> multidegree, const std::vector<std::pair<Exponents, Rational>>& terms)
      : multidegree_(std::move(multidegree)) {
    if (multidegree_.empty()) throw RangeError("polynomial needs n >= 1 factors");
    for (const auto& [e, c] : terms) add_term(e, c);
  }

  int n() const noexcept { return static_cast<int>(multidegree_.size()); }
  const std::vector<int>& multidegree() const noexcept { return multidegree_; }
  const std::map<Exponents, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational evaluate(const ProductPoint& pt) const {
    if (pt.n() != n()) throw DimensionError("point has wrong number of factors");
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
      Rational term = c;
      for (std::size_t v = 0; v < e.size(); ++v)
        for (int k = 0; k < e[v]; ++k) term *= pt.variable(v);
      sum += term;
    }
    return sum;
  }

  friend bool operator==(const MultiHomogPoly&, const MultiHomogPoly&) = default;

 private:
  friend MultiHomogPoly partial_derivative(const MultiHomogPoly&, std::size_t);

  explicit MultiHomogPoly(std::vector<int> multidegree) : multidegree_(std::move(multidegree)) {}

  void add_term(const Exponents& e, const Rational& c) {
    if (e.size() != 2 * multidegree_.size())
      throw DimensionError("exponent tuple must have length 2n = " + std::to_string(2 * multidegree_.size()));
    for (std::size_t i = 0; i < multidegree_.size(); ++i) {
      if (e[2 * i] < 0 || e[2 * i + 1] < 0) throw DomainError("exponents must be nonnegative");
      if (e[2 * i] + e[2 * i + 1] != multidegree_[i])
        throw DomainError("term does not have degree " + std::to_string(multidegree_[i]) + " in factor " +
                          std::to_string(i));
    }
    if (c == 0) return;
    auto& slot = terms_[e];
    slot += c;
    if (slot == 0) terms_.erase(e);
  }

  std::vector<int> multidegree_;
  std::map<Exponents, Rational> terms_;
};

inline MultiHomogPoly partial_derivative(const MultiHomogPoly& p, std::size_t variable) {
  if (variable >= 2 * static_cast<std::size_t>(p.n()))
    throw RangeError("variable index " + std::to_string(variable) + " out of range");
  auto degree = p.multidegree();
  degree[variable / 2] -= 1;
  MultiHomogPoly out(std::move(degree));
  for (const auto& [e, c] : p.terms()) {
    if (e[variable] == 0) continue;
    auto d = e;
    d[variable] -= 1;
    out.add_term(d, c * e[variable]);
  }
  return out;
}

/// The double cover t^2 = p is singular over a point of the branch locus
/// exactly when every partial derivative of p vanishes there.
inline bool cover_singular_at(const MultiHomogPoly& p, const ProductPoint& pt) {
  if (pt.n() != p.n()) throw DimensionError("point has wrong number of factors");
  if (p.evaluate(pt) != 0) throw PreconditionError("point does not lie on the branch divisor");
  for (std::size_t v = 0; v < 2 * static_cast<std::size_t>(p.n()); ++v)
    if (partial_derivative(p, v).evaluate(pt) != 0) return false;
  return true;
}

/// "a:b,c:d,..." with rational entries.
inline ProductPoint parse_point(const std::string& text) {
  std::vector<std::pair<Rational, Rational>> coords;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto colon = part.find(':');
    if (colon == std::string::npos) throw ParseError("point factor '" + part + "' is not of the form a:b");
    coords.emplace_back(parse_rational(part.substr(0, colon)), parse_rational(part.substr(colon + 1)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return ProductPoint(std::move(coords));
}

/// x0^2 y0^2 z1^2 + z0^2 x1^2 y1^2 + z0 z1 (x0 x1 y1^2 + y0 y1 x1^2) on (P^1)^3,
/// a normal branch divisor whose cover is singular over (0:1)^3.
inline MultiHomogPoly singular_222_example() {
  // exponent order: x0 x1 y0 y1 z0 z1
  return MultiHomogPoly({2, 2, 2}, {
                                       {{2, 0, 2, 0, 0, 2}, Rational(1)},
                                       {{0, 2, 0, 2, 2, 0}, Rational(1)},
                                       {{1, 1, 0, 2, 1, 1}, Rational(1)},
                                       {{0, 2, 1, 1, 1, 1}, Rational(1)},
                                   });
}

}  // namespace picardkit
