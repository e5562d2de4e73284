#pragma once

// Picard lattices of the two surface/product models and their intersection
// arithmetic. All arithmetic is on int64 with overflow detection.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "picardkit/checked.hpp"
#include "picardkit/errors.hpp"
#include "picardkit/rational.hpp"

namespace picardkit {

enum class ModelKind { BlowupP2, ProductP1 };

using IntMatrix = std::vector<IntVector>;

/// Blow-up of P^2 at r points (basis H, E_1..E_r) or (P^1)^n (basis H_1..H_n).
class SurfaceModel {
 public:
  static constexpr int kMaxBlowups = 8;

  static SurfaceModel blowup_p2(int r) {
    if (r < 0 || r > kMaxBlowups)
      throw RangeError("BlowupP2 requires 0 <= r <= 8, got " + std::to_string(r));
    return SurfaceModel(ModelKind::BlowupP2, r);
  }

  static SurfaceModel product_p1(int n) {
    if (n < 1) throw RangeError("ProductP1 requires n >= 1, got " + std::to_string(n));
    return SurfaceModel(ModelKind::ProductP1, n);
  }

  ModelKind kind() const noexcept { return kind_; }
  bool is_blowup() const noexcept { return kind_ == ModelKind::BlowupP2; }
  bool is_product() const noexcept { return kind_ == ModelKind::ProductP1; }

  /// r for BlowupP2(r), n for ProductP1(n).
  int parameter() const noexcept { return param_; }

  /// Picard number.
  int rank() const noexcept { return is_blowup() ? param_ + 1 : param_; }

  /// True when a symmetric bilinear pairing is defined on the lattice.
  bool has_pairing() const noexcept { return is_blowup() || param_ == 2; }

  /// Gram matrix of the pairing: diag(1,-1,..,-1) or the hyperbolic plane.
  IntMatrix gram() const {
    if (!has_pairing())
      throw UnsupportedPairingError(name() + " has no bilinear pairing; use top_intersection");
    const auto n = static_cast<std::size_t>(rank());
    IntMatrix g(n, IntVector(n, 0));
    if (is_blowup()) {
      g[0][0] = 1;
      for (std::size_t i = 1; i < n; ++i) g[i][i] = -1;
    } else {
      g[0][1] = g[1][0] = 1;
    }
    return g;
  }

  std::vector<std::string> basis_labels() const {
    std::vector<std::string> out;
    if (is_blowup()) {
      out.emplace_back("H");
      for (int i = 1; i <= param_; ++i) out.push_back("E" + std::to_string(i));
    } else {
      for (int i = 1; i <= param_; ++i) out.push_back("H" + std::to_string(i));
    }
    return out;
  }

  std::string name() const {
    return (is_blowup() ? "BlowupP2(" : "ProductP1(") + std::to_string(param_) + ")";
  }

  friend bool operator==(const SurfaceModel&, const SurfaceModel&) = default;
  friend auto operator<=>(const SurfaceModel&, const SurfaceModel&) = default;

 private:
  SurfaceModel(ModelKind k, int p) : kind_(k), param_(p) {}

  ModelKind kind_;
  int param_;
};

/// An integer class in the basis of a model. For BlowupP2 the coordinates are
/// (d, a_1, .., a_r) for d H + sum a_i E_i; multiplicities are m_i = -a_i.
class DivisorClass {
 public:
  DivisorClass(SurfaceModel model, IntVector coords) : model_(model), coords_(std::move(coords)) {
    if (coords_.size() != static_cast<std::size_t>(model_.rank()))
      throw DimensionError("class has " + std::to_string(coords_.size()) +
                           " coordinates but " + model_.name() + " has rank " +
                           std::to_string(model_.rank()));
  }

  static DivisorClass zero(SurfaceModel model) {
    return {model, IntVector(static_cast<std::size_t>(model.rank()), 0)};
  }

  /// Basis vector i (H = 0, E_i = i on blow-ups; H_{i+1} on products).
  static DivisorClass basis(SurfaceModel model, int i) {
    if (i < 0 || i >= model.rank()) throw RangeError("basis index out of range");
    auto c = zero(model);
    c.coords_[static_cast<std::size_t>(i)] = 1;
    return c;
  }

  /// d H - sum m_i E_i on a blow-up model.
  static DivisorClass from_multiplicities(SurfaceModel model, Int degree,
                                          std::span<const Int> mult) {
    if (!model.is_blowup()) throw DimensionError("multiplicity notation needs a BlowupP2 model");
    if (mult.size() != static_cast<std::size_t>(model.parameter()))
      throw DimensionError("expected " + std::to_string(model.parameter()) + " multiplicities");
    IntVector c{degree};
    for (Int m : mult) c.push_back(checked::neg(m));
    return {model, std::move(c)};
  }

  static DivisorClass from_multiplicities(SurfaceModel model, Int degree,
                                          std::initializer_list<Int> mult) {
    return from_multiplicities(model, degree, std::span<const Int>(mult.begin(), mult.size()));
  }

  const SurfaceModel& model() const noexcept { return model_; }
  std::span<const Int> coords() const noexcept { return coords_; }
  const IntVector& vector() const noexcept { return coords_; }
  std::size_t size() const noexcept { return coords_.size(); }
  Int operator[](std::size_t i) const { return coords_.at(i); }

  /// Coefficient of H on a blow-up model.
  Int degree() const {
    if (!model_.is_blowup()) throw DimensionError("degree is defined on BlowupP2 models only");
    return coords_[0];
  }

  IntVector multiplicities() const {
    if (!model_.is_blowup())
      throw DimensionError("multiplicities are defined on BlowupP2 models only");
    IntVector m;
    m.reserve(coords_.size() - 1);
    for (std::size_t i = 1; i < coords_.size(); ++i) m.push_back(checked::neg(coords_[i]));
    return m;
  }

  DivisorClass& operator+=(const DivisorClass& o) {
    require_same(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = checked::add(coords_[i], o.coords_[i]);
    return *this;
  }
  DivisorClass& operator-=(const DivisorClass& o) {
    require_same(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = checked::sub(coords_[i], o.coords_[i]);
    return *this;
  }
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(Int s, DivisorClass a) {
    for (Int& x : a.coords_) x = checked::mul(s, x);
    return a;
  }
  friend DivisorClass operator-(DivisorClass a) { return Int{-1} * std::move(a); }

  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
  /// Model first, then coordinates lexicographically.
  friend auto operator<=>(const DivisorClass&, const DivisorClass&) = default;

  /// "(d; m_1,..,m_r)" on blow-ups, "(a_1,..,a_n)" on products.
  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    if (model_.is_blowup()) {
      os << coords_[0] << ';';
      for (std::size_t i = 1; i < coords_.size(); ++i) os << (i > 1 ? "," : "") << -coords_[i];
    } else {
      for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? "," : "") << coords_[i];
    }
    os << ')';
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const DivisorClass& c) { return os << c.to_string(); }

 private:
  void require_same(const DivisorClass& o) const {
    if (model_ != o.model_)
      throw DimensionError("classes belong to different models: " + model_.name() + " vs " +
                           o.model_.name());
  }

  SurfaceModel model_;
  IntVector coords_;
};

/// Bilinear pairing of two coordinate vectors under a model's Gram matrix.
inline Int pairing(const SurfaceModel& model, std::span<const Int> a, std::span<const Int> b) {
  const auto n = static_cast<std::size_t>(model.rank());
  if (a.size() != n || b.size() != n) throw DimensionError("vector length does not match model rank");
  if (!model.has_pairing())
    throw UnsupportedPairingError(model.name() + " has no bilinear pairing; use top_intersection");
  if (model.is_product()) return checked::add(checked::mul(a[0], b[1]), checked::mul(a[1], b[0]));
  Int s = checked::mul(a[0], b[0]);
  for (std::size_t i = 1; i < n; ++i) s = checked::sub(s, checked::mul(a[i], b[i]));
  return s;
}

/// Intersection number a.b; both classes must live on `model`.
inline Int pairing(const SurfaceModel& model, const DivisorClass& a, const DivisorClass& b) {
  if (a.model() != model || b.model() != model)
    throw DimensionError("pairing operands do not belong to " + model.name());
  return pairing(model, a.coords(), b.coords());
}

inline Int pairing(const DivisorClass& a, const DivisorClass& b) { return pairing(a.model(), a, b); }

inline Int self_intersection(const DivisorClass& c) { return pairing(c, c); }

/// K = -3H + sum E_i on blow-ups, sum -2 H_i on products.
inline DivisorClass canonical_class(const SurfaceModel& model) {
  IntVector k(static_cast<std::size_t>(model.rank()), model.is_blowup() ? 1 : -2);
  if (model.is_blowup()) k[0] = -3;
  return {model, std::move(k)};
}

/// Arithmetic genus from adjunction: (c^2 + c.K)/2 + 1.
inline Rational adjunction_genus(const SurfaceModel& model, const DivisorClass& c) {
  const Int k = pairing(model, c, canonical_class(model));
  const Int sq = pairing(model, c, c);
  return Rational(checked::add(sq, k), 2) + 1;
}

inline Rational adjunction_genus(const DivisorClass& c) { return adjunction_genus(c.model(), c); }

/// Permanent by Ryser's inclusion-exclusion formula, O(2^n n^2).
inline Int permanent(const IntMatrix& a) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw DimensionError("permanent needs a square matrix");
  if (n == 0) return 1;
  if (n > 20) throw RangeError("permanent limited to n <= 20");
  Int total = 0;
  IntVector row_sums(n);
  for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << n); ++subset) {
    std::fill(row_sums.begin(), row_sums.end(), 0);
    int bits = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(subset >> j & 1U)) continue;
      ++bits;
      for (std::size_t i = 0; i < n; ++i) row_sums[i] = checked::add(row_sums[i], a[i][j]);
    }
    Int prod = 1;
    for (Int s : row_sums) prod = checked::mul(prod, s);
    // sign (-1)^(n - |S|)
    total = ((n - static_cast<std::size_t>(bits)) % 2 == 0) ? checked::add(total, prod)
                                                           : checked::sub(total, prod);
  }
  return total;
}

/// D_1 ... D_n on (P^1)^n: H_{i1}...H_{in} = 1 iff the indices are distinct,
/// so the product is the permanent of the coordinate matrix.
inline Int top_intersection(const SurfaceModel& model, std::span<const DivisorClass> classes) {
  if (!model.is_product())
    throw UnsupportedPairingError("top_intersection is defined on ProductP1 models only");
  const auto n = static_cast<std::size_t>(model.parameter());
  if (classes.size() != n)
    throw ArityError("top_intersection on " + model.name() + " needs " + std::to_string(n) +
                     " classes, got " + std::to_string(classes.size()));
  IntMatrix rows;
  rows.reserve(n);
  for (const auto& c : classes) {
    if (c.model() != model) throw DimensionError("class does not belong to " + model.name());
    rows.push_back(c.vector());
  }
  return permanent(rows);
}

inline Int top_intersection(const SurfaceModel& model, std::initializer_list<DivisorClass> classes) {
  return top_intersection(model, std::span<const DivisorClass>(classes.begin(), classes.size()));
}

/// D^n for a single class on (P^1)^n.
inline Int top_power(const DivisorClass& c) {
  const auto n = static_cast<std::size_t>(c.model().parameter());
  std::vector<DivisorClass> copies(n, c);
  return top_intersection(c.model(), copies);
}

}  // namespace picardkit
