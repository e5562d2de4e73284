#pragma once

// Exact polyhedral cones: double description, duals under a Gram matrix,
// extremal rays, membership by facets and by an exact simplex, and the
// Nef / Psef / Mori cones of the lattice models.
//
// Rays and facet normals are kept as primitive int64 vectors; rational input
// is scaled to its primitive integer direction before use.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "picardkit/checked.hpp"
#include "picardkit/enumerate.hpp"
#include "picardkit/lattice.hpp"
#include "picardkit/rational.hpp"

namespace picardkit {

namespace detail {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void resize(std::size_t n) { words_.resize((n + 63) / 64, 0); }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return words_[i / 64] >> (i % 64) & 1U; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  friend Bits operator&(const Bits& a, const Bits& b) {
    Bits out;
    out.words_.resize(a.words_.size());
    for (std::size_t i = 0; i < a.words_.size(); ++i) out.words_[i] = a.words_[i] & b.words_[i];
    return out;
  }

  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

// Scalar operations for the exact kernels: checked int64, or cpp_int when
// int64 intermediates overflow.
inline Int mul(Int a, Int b) { return checked::mul(a, b); }
inline Int sub(Int a, Int b) { return checked::sub(a, b); }
inline BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt sub(const BigInt& a, const BigInt& b) { return a - b; }
inline Int gcd_abs(Int a, Int b) { return std::gcd(a, b); }
inline BigInt gcd_abs(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

template <typename T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Int dot(const IntVector& a, const IntVector& b) { return checked::dot(a, b); }

template <typename T>
std::vector<T> make_primitive(std::vector<T> v) {
  T g = 0;
  for (const T& x : v) g = gcd_abs(g, x);
  if (g > 1)
    for (T& x : v) x /= g;
  return v;
}

// s * u - t * v, made primitive.
template <typename T>
std::vector<T> combine(const T& s, const std::vector<T>& u, const T& t, const std::vector<T>& v) {
  std::vector<T> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = sub(mul(s, u[i]), mul(t, v[i]));
  return make_primitive(std::move(out));
}

inline std::vector<BigInt> widen(const IntVector& v) { return {v.begin(), v.end()}; }

inline IntVector narrow(const std::vector<BigInt>& v) {
  static const BigInt limit = std::numeric_limits<Int>::max();
  IntVector out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (boost::multiprecision::abs(x) > limit) throw OverflowError("ray coordinate exceeds int64");
    out.push_back(static_cast<Int>(x));
  }
  return out;
}

// Fraction-free row echelon form over T.
template <typename T>
class Echelon {
 public:
  explicit Echelon(std::size_t dim) : dim_(dim) {}

  bool add(std::vector<T> v) {
    for (const auto& [pivot, row] : rows_) {
      if (v[pivot] == 0) continue;
      const T g = gcd_abs(row[pivot], v[pivot]);
      v = combine<T>(row[pivot] / g, v, v[pivot] / g, row);
    }
    for (std::size_t i = 0; i < dim_; ++i) {
      if (v[i] != 0) {
        rows_.emplace_back(i, std::move(v));
        return true;
      }
    }
    return false;
  }

  std::size_t rank() const noexcept { return rows_.size(); }

 private:
  std::size_t dim_;
  std::vector<std::pair<std::size_t, std::vector<T>>> rows_;
};

}  // namespace detail

/// Incremental rank of a set of integer vectors. Elimination runs in int64
/// and replays the independent inputs in cpp_int after an overflow.
class RankAccumulator {
 public:
  explicit RankAccumulator(std::size_t dim) : dim_(dim), small_(dim) {}

  /// Adds v to the span; returns true when the rank grew.
  bool add(const IntVector& v) {
    if (big_) return record(big_->add(detail::widen(v)), v);
    try {
      return record(small_.add(v), v);
    } catch (const OverflowError&) {
      big_.emplace(dim_);
      for (const auto& u : basis_) big_->add(detail::widen(u));
      return record(big_->add(detail::widen(v)), v);
    }
  }

  std::size_t rank() const noexcept { return basis_.size(); }
  bool full() const noexcept { return basis_.size() == dim_; }

 private:
  bool record(bool grew, const IntVector& v) {
    if (grew) basis_.push_back(v);
    return grew;
  }

  std::size_t dim_;
  detail::Echelon<Int> small_;
  std::optional<detail::Echelon<BigInt>> big_;
  std::vector<IntVector> basis_;
};

inline std::size_t rank_of(std::span<const IntVector> vectors, std::size_t dim) {
  RankAccumulator acc(dim);
  for (const auto& v : vectors) {
    acc.add(v);
    if (acc.full()) break;
  }
  return acc.rank();
}

/// {y : a.y >= 0 for every constraint a} = cone(rays) + span(lineality).
struct DoubleDescription {
  std::vector<IntVector> rays;
  std::vector<IntVector> lineality;
};

namespace detail {

/// Double description method with the combinatorial adjacency test.
template <typename T>
DoubleDescription double_description_in(std::size_t dim, std::span<const IntVector> constraints) {
  using Vec = std::vector<T>;
  struct Ray {
    Vec v;
    Bits zero;  // processed constraints vanishing on v
  };
  const std::size_t m = constraints.size();
  std::vector<Vec> lin;
  for (std::size_t i = 0; i < dim; ++i) {
    Vec e(dim, T(0));
    e[i] = 1;
    lin.push_back(std::move(e));
  }
  std::vector<Ray> rays;

  for (std::size_t j = 0; j < m; ++j) {
    if (constraints[j].size() != dim) throw DimensionError("constraint length does not match cone dimension");
    const Vec a(constraints[j].begin(), constraints[j].end());

    // A lineality direction not orthogonal to a becomes a ray; the rest of
    // the lineality space and all rays are projected onto a^perp along it.
    auto pivot = std::find_if(lin.begin(), lin.end(), [&](const Vec& l) { return dot(a, l) != 0; });
    if (pivot != lin.end()) {
      Vec p = std::move(*pivot);
      lin.erase(pivot);
      T ap = dot(a, p);
      if (ap < 0) {
        for (T& x : p) x = -x;
        ap = -ap;
      }
      for (auto& l : lin) {
        const T al = dot(a, l);
        if (al != 0) l = combine(ap, l, al, p);
      }
      for (auto& r : rays) {
        const T ar = dot(a, r.v);
        if (ar != 0) r.v = combine(ap, r.v, ar, p);
        r.zero.set(j);
      }
      Ray pr{std::move(p), Bits(m)};
      for (std::size_t i = 0; i < j; ++i) pr.zero.set(i);
      rays.push_back(std::move(pr));
      continue;
    }

    std::vector<T> value(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      value[i] = dot(a, rays[i].v);
      if (value[i] > 0) pos.push_back(i);
      else if (value[i] < 0) neg.push_back(i);
    }
    if (neg.empty()) {
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (value[i] == 0) rays[i].zero.set(j);
      continue;
    }

    // edge test: |Z| >= (pointed dimension) - 2, and no third ray contains Z
    const std::size_t pointed_dim = dim - lin.size();
    const std::size_t min_common = pointed_dim >= 2 ? pointed_dim - 2 : 0;
    std::vector<Ray> next;
    for (std::size_t p : pos) {
      for (std::size_t n : neg) {
        Bits common = rays[p].zero & rays[n].zero;
        if (common.count() < min_common) continue;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k)
          if (k != p && k != n && common.subset_of(rays[k].zero)) adjacent = false;
        if (!adjacent) continue;
        Ray nr{combine(value[p], rays[n].v, value[n], rays[p].v), std::move(common)};
        nr.zero.set(j);
        next.push_back(std::move(nr));
      }
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (value[i] < 0) continue;
      if (value[i] == 0) rays[i].zero.set(j);
      next.push_back(std::move(rays[i]));
    }
    rays = std::move(next);
  }

  DoubleDescription out;
  for (auto& r : rays) {
    if constexpr (std::is_same_v<T, Int>) {
      out.rays.push_back(std::move(r.v));
    } else {
      out.rays.push_back(narrow(r.v));
    }
  }
  for (auto& l : lin) {
    if constexpr (std::is_same_v<T, Int>) {
      out.lineality.push_back(std::move(l));
    } else {
      out.lineality.push_back(narrow(l));
    }
  }
  std::sort(out.rays.begin(), out.rays.end());
  out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
  return out;
}

}  // namespace detail

/// Generators of {y : a.y >= 0 for all constraints a}. Runs in int64 and
/// repeats in cpp_int when an intermediate ray overflows.
inline DoubleDescription double_description(std::size_t dim, std::span<const IntVector> constraints) {
  try {
    return detail::double_description_in<Int>(dim, constraints);
  } catch (const OverflowError&) {
    return detail::double_description_in<BigInt>(dim, constraints);
  }
}

/// Scales a rational vector to its primitive integer direction.
inline IntVector integer_direction(const RationalVector& v) {
  BigInt lcm = 1;
  for (const auto& q : v) lcm = boost::multiprecision::lcm(lcm, BigInt(denominator(q)));
  std::vector<BigInt> scaled;
  BigInt g = 0;
  for (const auto& q : v) {
    scaled.push_back(numerator(q) * (lcm / denominator(q)));
    g = boost::multiprecision::gcd(g, scaled.back());
  }
  IntVector out;
  const BigInt limit = std::numeric_limits<Int>::max();
  for (auto& x : scaled) {
    if (g > 1) x /= g;
    if (boost::multiprecision::abs(x) > limit) throw OverflowError("ray coordinate exceeds int64");
    out.push_back(static_cast<Int>(x));
  }
  return out;
}

/// Rational polyhedral cone: nonnegative combinations of its generators.
/// Facet normals are computed on first use and shared between copies.
class ConePoly {
 public:
  ConePoly(std::size_t ambient_dim, std::vector<IntVector> generators)
      : dim_(ambient_dim), cache_(std::make_shared<Cache>()) {
    for (auto& g : generators) {
      if (g.size() != dim_) throw DimensionError("generator length does not match ambient dimension");
      if (!is_zero(g)) generators_.push_back(primitive(std::move(g)));
    }
    std::sort(generators_.begin(), generators_.end());
    generators_.erase(std::unique(generators_.begin(), generators_.end()), generators_.end());
  }

  ConePoly(std::size_t ambient_dim, const std::vector<RationalVector>& generators)
      : ConePoly(ambient_dim, to_integer(ambient_dim, generators)) {}

  /// Cone with a known H-representation; `facets` must describe the same cone.
  static ConePoly with_facets(std::size_t ambient_dim, std::vector<IntVector> generators,
                              std::vector<IntVector> facets) {
    ConePoly c(ambient_dim, std::move(generators));
    for (const auto& f : facets)
      if (f.size() != ambient_dim) throw DimensionError("facet length does not match ambient dimension");
    std::call_once(c.cache_->once, [&] { c.cache_->set(std::move(facets)); });
    return c;
  }

  static ConePoly orthant(std::size_t dim) {
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < dim; ++i) {
      IntVector e(dim, 0);
      e[i] = 1;
      gens.push_back(std::move(e));
    }
    return with_facets(dim, gens, gens);
  }

  std::size_t ambient_dim() const noexcept { return dim_; }

  /// Primitive, deduplicated, sorted; zero generators dropped.
  const std::vector<IntVector>& generators() const noexcept { return generators_; }

  /// Normals n with x in cone <=> n.x >= 0 for all n. Equalities of a
  /// lower-dimensional cone appear as opposite pairs.
  const std::vector<IntVector>& facets() const {
    std::call_once(cache_->once, [this] {
      auto dd = double_description(dim_, generators_);
      auto f = std::move(dd.rays);
      for (auto& l : dd.lineality) {
        f.push_back(l);
        for (Int& x : l) x = -x;
        f.push_back(std::move(l));
      }
      std::sort(f.begin(), f.end());
      cache_->set(std::move(f));
    });
    return cache_->facets;
  }

  bool contains(std::span<const Int> x) const {
    if (x.size() != dim_) throw DimensionError("point length does not match ambient dimension");
    const auto& normals = facets();
    Int xmax = 0;
    for (Int v : x) xmax = std::max(xmax, v < 0 ? -v : v);
    // plain int64 dot products are exact when |n| |x| dim stays below 2^62
    const __int128 bound = static_cast<__int128>(cache_->facet_max) * xmax * static_cast<__int128>(dim_);
    if (x.size() > 0 && xmax > 0 && bound < (static_cast<__int128>(1) << 62)) {
      const Int* row = cache_->flat.data();
      for (std::size_t f = 0; f < normals.size(); ++f, row += dim_) {
        Int s = 0;
        for (std::size_t i = 0; i < dim_; ++i) s += row[i] * x[i];
        if (s < 0) return false;
      }
      return true;
    }
    return std::all_of(normals.begin(), normals.end(),
                       [&](const IntVector& n) { return checked::wide_dot(n, x) >= 0; });
  }

  bool contains(const RationalVector& x) const {
    if (x.size() != dim_) throw DimensionError("point length does not match ambient dimension");
    return contains(integer_direction(x));
  }

  bool contains(const ConePoly& other) const {
    if (other.dim_ != dim_) throw DimensionError("cones in different ambient dimensions");
    return std::all_of(other.generators_.begin(), other.generators_.end(),
                       [&](const IntVector& g) { return contains(g); });
  }

  /// Dimension of the linear span.
  std::size_t dimension() const { return rank_of(generators_, dim_); }

  friend bool same_cone(const ConePoly& a, const ConePoly& b) { return a.contains(b) && b.contains(a); }

 private:
  struct Cache {
    std::once_flag once;
    std::vector<IntVector> facets;
    std::vector<Int> flat;  // facets row-major
    Int facet_max = 0;

    void set(std::vector<IntVector> f) {
      facets = std::move(f);
      for (const auto& n : facets) {
        flat.insert(flat.end(), n.begin(), n.end());
        for (Int v : n) facet_max = std::max(facet_max, v < 0 ? checked::neg(v) : v);
      }
    }
  };

  static std::vector<IntVector> to_integer(std::size_t dim, const std::vector<RationalVector>& gens) {
    std::vector<IntVector> out;
    for (const auto& g : gens) {
      if (g.size() != dim) throw DimensionError("generator length does not match ambient dimension");
      out.push_back(integer_direction(g));
    }
    return out;
  }

  std::size_t dim_;
  std::vector<IntVector> generators_;
  std::shared_ptr<Cache> cache_;
};

/// {x : g^T G x >= 0 for every generator g}. The dual carries the transformed
/// generators as its H-representation, pruned to facets when full-dimensional.
inline ConePoly dual_cone(const ConePoly& c, const IntMatrix& form) {
  const std::size_t d = c.ambient_dim();
  if (form.size() != d) throw DimensionError("form size does not match cone dimension");
  std::vector<IntVector> constraints;
  for (const auto& g : c.generators()) {
    IntVector a(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
      if (form[i].size() != d) throw DimensionError("form is not square");
      for (std::size_t k = 0; k < d; ++k) checked::fma(a[k], g[i], form[i][k]);
    }
    if (!is_zero(a)) constraints.push_back(primitive(std::move(a)));
  }
  std::sort(constraints.begin(), constraints.end());
  constraints.erase(std::unique(constraints.begin(), constraints.end()), constraints.end());

  auto dd = double_description(d, constraints);
  std::vector<IntVector> gens = dd.rays;
  for (const auto& l : dd.lineality) {
    gens.push_back(l);
    IntVector minus = l;
    for (Int& x : minus) x = -x;
    gens.push_back(std::move(minus));
  }
  if (!dd.lineality.empty() || rank_of(gens, d) < d) return ConePoly::with_facets(d, gens, constraints);

  // pointed and full-dimensional: a is a facet iff its tight rays have rank d-1
  std::vector<IntVector> facets;
  for (const auto& a : constraints) {
    RankAccumulator acc(d);
    for (const auto& r : dd.rays) {
      if (checked::wide_dot(a, r) == 0) acc.add(r);
      if (acc.rank() == d - 1) break;
    }
    if (acc.rank() == d - 1) facets.push_back(a);
  }
  return ConePoly::with_facets(d, std::move(gens), std::move(facets));
}

inline IntMatrix identity_form(std::size_t d) {
  IntMatrix g(d, IntVector(d, 0));
  for (std::size_t i = 0; i < d; ++i) g[i][i] = 1;
  return g;
}

/// Dual under the standard dot product.
inline ConePoly dual_cone(const ConePoly& c) { return dual_cone(c, identity_form(c.ambient_dim())); }

/// Minimal generating set, each ray primitive with sorted output. For cones
/// containing a line the lineality directions appear with both signs.
inline std::vector<IntVector> extremal_rays(const ConePoly& c) {
  const std::size_t d = c.ambient_dim();
  const auto& facets = c.facets();
  std::vector<IntVector> out;
  if (rank_of(facets, d) == d) {
    // pointed: g is extremal iff its tight facets have rank d-1
    for (const auto& g : c.generators()) {
      RankAccumulator acc(d);
      for (const auto& f : facets) {
        if (checked::wide_dot(f, g) == 0) acc.add(f);
        if (acc.rank() == d - 1) break;
      }
      if (acc.rank() == d - 1) out.push_back(g);
    }
  } else {
    auto dd = double_description(d, facets);
    out = std::move(dd.rays);
    for (auto& l : dd.lineality) {
      out.push_back(l);
      for (Int& x : l) x = -x;
      out.push_back(std::move(l));
    }
  }
  for (auto& r : out) r = primitive(std::move(r));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool is_simplicial(const ConePoly& c) { return extremal_rays(c).size() == c.dimension(); }

/// Exact Phase-I simplex (Bland's rule): is x a nonnegative combination of
/// the generators? Independent of the facet computation.
inline bool in_cone_by_lp(const ConePoly& c, const RationalVector& x) {
  const std::size_t d = c.ambient_dim();
  if (x.size() != d) throw DimensionError("point length does not match ambient dimension");
  const auto& gens = c.generators();
  const std::size_t n = gens.size();
  // tableau rows: [A | I | b] with b >= 0; columns 0..n-1 structural, n..n+d-1 artificial
  const std::size_t cols = n + d;
  std::vector<RationalVector> t(d, RationalVector(cols + 1, Rational(0)));
  std::vector<std::size_t> basis(d);
  for (std::size_t i = 0; i < d; ++i) {
    const bool flip = x[i] < 0;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = flip ? Rational(-gens[j][i]) : Rational(gens[j][i]);
    t[i][n + i] = 1;
    t[i][cols] = flip ? Rational(-x[i]) : x[i];
    basis[i] = n + i;
  }
  // objective: minimise the sum of artificials; reduced costs for structural columns
  RationalVector cost(cols + 1, Rational(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= cols; ++j)
      if (j < n || j == cols) cost[j] -= t[i][j];

  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = d;
    Rational best;
    for (std::size_t i = 0; i < d; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][cols] / t[i][enter];
      if (leave == d || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == d) break;  // unbounded direction cannot occur in Phase I
    const Rational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    const Rational f = cost[enter];
    for (std::size_t j = 0; j <= cols; ++j) cost[j] -= f * t[leave][j];
    basis[leave] = enter;
  }
  // -cost[cols] is the optimal sum of artificials
  return cost[cols] == 0;
}

/// Psef, its dual Nef, and the cone-level checks on a surface model.
struct ConeReport {
  ConePoly nef;
  ConePoly psef;
  bool equal = false;
  bool mori_simplicial = false;
  int picard_number = 0;
};

/// Generators of the effective cone: H on P^2, {E_1, H - E_1} on F_1, all
/// exceptional classes for 2 <= r <= 8, the two rulings on P^1 x P^1.
inline ConePoly psef_cone(const SurfaceModel& model) {
  const auto d = static_cast<std::size_t>(model.rank());
  std::vector<IntVector> gens;
  if (model.is_product()) {
    if (model.parameter() != 2) throw DomainError("psef_cone supports ProductP1(2) only");
    gens = {{1, 0}, {0, 1}};
  } else if (model.parameter() == 0) {
    gens = {{1}};
  } else if (model.parameter() == 1) {
    gens = {{0, 1}, {1, -1}};
  } else {
    for (const auto& e : enumerate_exceptional(model.parameter())) gens.push_back(e.vector());
  }
  return ConePoly(d, std::move(gens));
}

/// Mori cone of curve classes. Surfaces: same space as Psef. (P^1)^n: the
/// orthant spanned by the n coordinate lines.
inline ConePoly mori_cone(const SurfaceModel& model) {
  if (model.is_product() && model.parameter() != 2)
    return ConePoly::orthant(static_cast<std::size_t>(model.parameter()));
  return psef_cone(model);
}

inline ConeReport surface_cone_report(const SurfaceModel& model) {
  if (model.is_product() && model.parameter() != 2)
    throw DomainError("surface_cone_report supports BlowupP2(0..8) and ProductP1(2), got " + model.name());
  const auto gram = model.gram();
  const auto d = static_cast<std::size_t>(model.rank());
  auto nef = dual_cone(psef_cone(model), gram);
  // Psef = dual of Nef under the same form, so its facet normals are G n for
  // the generators n of Nef.
  std::vector<IntVector> psef_facets;
  for (const auto& n : nef.generators()) {
    IntVector f(d, 0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) checked::fma(f[k], n[i], gram[i][k]);
    psef_facets.push_back(primitive(std::move(f)));
  }
  auto psef = ConePoly::with_facets(d, psef_cone(model).generators(), std::move(psef_facets));
  const bool equal = nef.contains(psef) && psef.contains(nef);
  // for surfaces NE and Psef live in the same space and coincide
  const bool simplicial = is_simplicial(psef);
  return ConeReport{std::move(nef), std::move(psef), equal, simplicial, model.rank()};
}

}  // namespace picardkit
