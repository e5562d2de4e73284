#pragma once

// Exhaustive enumeration of exceptional ((-1)-curve) classes and conic-bundle
// classes on blow-ups of P^2 at r <= 8 points, reducible fibers of conic
// bundles, and orbit signatures under renumbering of the blown-up points.
//
// Geometric realizability of the classes (points in general position) is
// assumed; everything here is lattice arithmetic.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "picardkit/lattice.hpp"

namespace picardkit {

enum class FamilyKind { Exceptional, ConicBundle };

inline const char* to_string(FamilyKind k) {
  return k == FamilyKind::Exceptional ? "exceptional" : "conic";
}

/// Enumeration order: degree first, then the multiplicity vector lexicographically.
inline bool family_order(const DivisorClass& a, const DivisorClass& b) {
  const auto ca = a.coords();
  const auto cb = b.coords();
  if (ca[0] != cb[0]) return ca[0] < cb[0];
  // m_i = -a_i, so ascending m is descending coordinate.
  return std::lexicographical_compare(cb.begin() + 1, cb.end(), ca.begin() + 1, ca.end());
}

/// Numerical test c^2 = -1, c.K = -1.
inline bool is_exceptional_class(const DivisorClass& c) {
  if (!c.model().is_blowup()) return false;
  return self_intersection(c) == -1 && pairing(c, canonical_class(c.model())) == -1;
}

/// Numerical test c^2 = 0, c.K = -2.
inline bool is_conic_class(const DivisorClass& c) {
  if (!c.model().is_blowup()) return false;
  return self_intersection(c) == 0 && pairing(c, canonical_class(c.model())) == -2;
}

class ClassFamily {
 public:
  ClassFamily(SurfaceModel model, FamilyKind kind, std::vector<DivisorClass> members)
      : model_(model), kind_(kind), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end(), family_order);
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  const SurfaceModel& model() const noexcept { return model_; }
  FamilyKind kind() const noexcept { return kind_; }
  const std::vector<DivisorClass>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  const DivisorClass& operator[](std::size_t i) const { return members_.at(i); }

  bool contains(const DivisorClass& c) const {
    if (c.model() != model_) return false;
    auto it = std::lower_bound(members_.begin(), members_.end(), c, family_order);
    return it != members_.end() && *it == c;
  }

  /// Position of c in enumeration order, or size() when absent.
  std::size_t index_of(const DivisorClass& c) const {
    if (c.model() != model_) return members_.size();
    auto it = std::lower_bound(members_.begin(), members_.end(), c, family_order);
    if (it == members_.end() || *it != c) return members_.size();
    return static_cast<std::size_t>(it - members_.begin());
  }

 private:
  SurfaceModel model_;
  FamilyKind kind_;
  std::vector<DivisorClass> members_;
};

/// Integer degrees d with (3d - k)^2 <= r (d^2 + q), the Cauchy-Schwarz
/// condition for r multiplicities with sum 3d - k and sum of squares d^2 + q.
/// Returns an empty range (lo > hi) when no degree qualifies.
inline std::pair<Int, Int> cauchy_schwarz_degree_range(int r, Int k, Int q) {
  Int lo = 1, hi = 0;
  bool found = false;
  for (Int d = -64; d <= 64; ++d) {
    const Int lhs = (3 * d - k) * (3 * d - k);
    const Int rhs = r * (d * d + q);
    if (lhs > rhs) continue;
    if (!found) lo = d;
    hi = d;
    found = true;
  }
  return {lo, hi};
}

inline std::pair<Int, Int> exceptional_degree_range(int r) { return cauchy_schwarz_degree_range(r, 1, 1); }
inline std::pair<Int, Int> conic_degree_range(int r) { return cauchy_schwarz_degree_range(r, 2, 0); }

namespace detail {

inline Int isqrt(Int x) {
  if (x <= 0) return 0;
  Int s = 0;
  while ((s + 1) * (s + 1) <= x) ++s;
  return s;
}

// Non-increasing integer tuples of length `slots` with the given sum and
// sum of squares, every entry <= cap.
inline void sorted_tuples(int slots, Int cap, Int sum, Int squares, IntVector& prefix,
                          std::vector<IntVector>& out) {
  if (slots == 0) {
    if (sum == 0 && squares == 0) out.push_back(prefix);
    return;
  }
  if (squares < 0 || sum * sum > slots * squares) return;
  const Int bound = isqrt(squares);
  for (Int v = std::min(cap, bound); v >= -bound; --v) {
    // the remaining slots are all <= v
    if (sum > v * slots) break;
    prefix.push_back(v);
    sorted_tuples(slots - 1, v, sum - v, squares - v * v, prefix, out);
    prefix.pop_back();
  }
}

// All classes d H - sum m_i E_i with sum m = 3d - k, sum m^2 = d^2 + q, passing `accept`.
template <typename Accept>
std::vector<DivisorClass> solve_norm_equations(int r, Int k, Int q, Accept accept) {
  const auto model = SurfaceModel::blowup_p2(r);
  std::vector<DivisorClass> out;
  const auto [lo, hi] = cauchy_schwarz_degree_range(r, k, q);
  for (Int d = lo; d <= hi; ++d) {
    const Int sum = 3 * d - k;
    const Int squares = d * d + q;
    std::vector<IntVector> patterns;
    IntVector prefix;
    sorted_tuples(r, isqrt(squares), sum, squares, prefix, patterns);
    for (auto& pattern : patterns) {
      if (!accept(d, pattern)) continue;
      std::sort(pattern.begin(), pattern.end());
      do {
        out.push_back(DivisorClass::from_multiplicities(model, d, pattern));
      } while (std::next_permutation(pattern.begin(), pattern.end()));
    }
  }
  std::sort(out.begin(), out.end(), family_order);
  return out;
}

inline bool all_nonnegative(const IntVector& m) {
  return std::all_of(m.begin(), m.end(), [](Int x) { return x >= 0; });
}

}  // namespace detail

/// All exceptional classes on BlowupP2(r). Degree-0 solutions are exactly the E_i;
/// positive-degree classes must have nonnegative multiplicities.
inline ClassFamily enumerate_exceptional(int r) {
  const auto model = SurfaceModel::blowup_p2(r);
  auto members = detail::solve_norm_equations(r, 1, 1, [](Int d, const IntVector& m) {
    if (d < 0) return false;
    if (d == 0) {
      // sorted non-increasing: (0,..,0,-1)
      return std::count(m.begin(), m.end(), Int{-1}) == 1 &&
             std::count(m.begin(), m.end(), Int{0}) == static_cast<std::ptrdiff_t>(m.size()) - 1;
    }
    return detail::all_nonnegative(m);
  });
  return {model, FamilyKind::Exceptional, std::move(members)};
}

/// All conic-bundle classes on BlowupP2(r), 1 <= r <= 8.
inline ClassFamily enumerate_conic(int r) {
  if (r < 1 || r > SurfaceModel::kMaxBlowups)
    throw RangeError("conic enumeration requires 1 <= r <= 8, got " + std::to_string(r));
  const auto model = SurfaceModel::blowup_p2(r);
  auto members = detail::solve_norm_equations(
      r, 2, 0, [](Int d, const IntVector& m) { return d >= 1 && detail::all_nonnegative(m); });
  return {model, FamilyKind::ConicBundle, std::move(members)};
}

inline ClassFamily enumerate_family(FamilyKind kind, int r) {
  return kind == FamilyKind::Exceptional ? enumerate_exceptional(r) : enumerate_conic(r);
}

/// A reducible conic: total = first + second with both exceptional and first.second = 1.
struct ReducibleFiber {
  DivisorClass total;
  DivisorClass first;
  DivisorClass second;
};

/// Unordered decompositions of a conic class into two exceptional classes meeting once.
/// Pairs are listed once, `first` preceding `second` in enumeration order.
inline std::vector<ReducibleFiber> reducible_fibers(const DivisorClass& c, const ClassFamily& exceptional) {
  if (exceptional.kind() != FamilyKind::Exceptional)
    throw DomainError("reducible_fibers needs the exceptional family");
  if (c.model() != exceptional.model())
    throw DimensionError("class and family belong to different models");
  if (!is_conic_class(c)) throw DomainError(c.to_string() + " is not a conic-bundle class");
  std::vector<ReducibleFiber> out;
  for (const auto& a : exceptional) {
    // a.(c - a) = a.c + 1
    if (pairing(a, c) != 0) continue;
    auto b = c - a;
    if (!family_order(a, b) || !exceptional.contains(b)) continue;
    if (pairing(a, b) != 1) continue;
    out.push_back({c, a, std::move(b)});
  }
  return out;
}

/// Degree plus the multiplicities sorted in non-increasing order.
struct OrbitSignature {
  Int degree = 0;
  IntVector multiplicities;

  friend bool operator==(const OrbitSignature&, const OrbitSignature&) = default;
  friend auto operator<=>(const OrbitSignature&, const OrbitSignature&) = default;

  std::string to_string() const {
    std::ostringstream os;
    os << '(' << degree << ';';
    for (std::size_t i = 0; i < multiplicities.size(); ++i) os << (i ? "," : "") << multiplicities[i];
    os << ')';
    return os.str();
  }
};

inline OrbitSignature orbit_signature(const DivisorClass& c) {
  OrbitSignature s{c.degree(), c.multiplicities()};
  std::sort(s.multiplicities.begin(), s.multiplicities.end(), std::greater<>());
  return s;
}

}  // namespace picardkit
