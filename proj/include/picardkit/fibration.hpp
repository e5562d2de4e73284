#pragma once

// Pairs of conic-bundle fibrations f1, f2 : S -> P^1 on a blow-up of P^2 and
// the induced map (f1, f2) : S -> P^1 x P^1.

#include <algorithm>
#include <bitset>
#include <exception>
#include <cstddef>
#include <map>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "picardkit/enumerate.hpp"

namespace picardkit {

class FibrationPair {
 public:
  FibrationPair(DivisorClass first, DivisorClass second)
      : first_(std::move(first)), second_(std::move(second)) {
    if (first_.model() != second_.model()) throw DimensionError("fibration classes on different models");
    if (!is_conic_class(first_)) throw DomainError(first_.to_string() + " is not a conic-bundle class");
    if (!is_conic_class(second_)) throw DomainError(second_.to_string() + " is not a conic-bundle class");
    if (first_ == second_) throw DomainError("a fibration pair needs two distinct conic classes");
  }

  const DivisorClass& first() const noexcept { return first_; }
  const DivisorClass& second() const noexcept { return second_; }
  const SurfaceModel& model() const noexcept { return first_.model(); }

 private:
  DivisorClass first_;
  DivisorClass second_;
};

struct FinitenessReport {
  Int degree = 0;
  std::vector<DivisorClass> common_contracted;
  bool is_finite = false;
};

/// Degree of (f1, f2) is c1.c2. A curve contracted by both maps is an
/// exceptional class orthogonal to c1 and c2.
inline FinitenessReport analyze_pair(const FibrationPair& p, const ClassFamily& exceptional) {
  if (exceptional.kind() != FamilyKind::Exceptional || exceptional.model() != p.model())
    throw DomainError("analyze_pair needs the exceptional family of the pair's model");
  FinitenessReport rep;
  rep.degree = pairing(p.first(), p.second());
  for (const auto& e : exceptional)
    if (pairing(e, p.first()) == 0 && pairing(e, p.second()) == 0) rep.common_contracted.push_back(e);
  rep.is_finite = rep.degree > 0 && rep.common_contracted.empty();
  return rep;
}

inline FinitenessReport analyze_pair(const FibrationPair& p) {
  return analyze_pair(p, enumerate_exceptional(p.model().parameter()));
}

/// A conic class forming a finite pair with a fixed one.
struct FinitePartner {
  DivisorClass partner;
  Int degree = 0;
};

/// Every c2 in `conics` with (c1, c2) finite, in family order.
inline std::vector<FinitePartner> finite_partners(const DivisorClass& c1, const ClassFamily& conics,
                                                  const ClassFamily& exceptional) {
  if (conics.kind() != FamilyKind::ConicBundle || conics.model() != c1.model())
    throw DomainError("finite_partners needs the conic family of the class's model");
  std::vector<FinitePartner> out;
  for (const auto& c2 : conics) {
    if (c2 == c1) continue;
    const auto rep = analyze_pair(FibrationPair(c1, c2), exceptional);
    if (rep.is_finite) out.push_back({c2, rep.degree});
  }
  return out;
}

struct HodgeBound {
  Int lhs = 0;
  Int rhs = 0;
  bool holds = false;
};

/// 2 K^2 (c1.c2) <= (K.c1 + K.c2)^2 for classes with c1^2 = c2^2 = 0 on a
/// model with K^2 > 0.
inline HodgeBound hodge_bound(const DivisorClass& c1, const DivisorClass& c2) {
  const auto& model = c1.model();
  if (c2.model() != model) throw DimensionError("classes on different models");
  if (!model.is_blowup()) throw DomainError("hodge_bound needs a BlowupP2 model");
  const auto k = canonical_class(model);
  const Int k2 = pairing(k, k);
  if (k2 <= 0) throw DomainError("hodge_bound needs K^2 > 0");
  if (self_intersection(c1) != 0 || self_intersection(c2) != 0)
    throw DomainError("hodge_bound needs classes of self-intersection 0");
  HodgeBound h;
  h.lhs = checked::mul(checked::mul(2, k2), pairing(c1, c2));
  const Int s = checked::add(pairing(k, c1), pairing(k, c2));
  h.rhs = checked::mul(s, s);
  h.holds = h.lhs <= h.rhs;
  return h;
}

/// floor(8 / K^2): the cap on c1.c2 for conic pairs (K.c_i = -2).
inline Int max_degree_bound(int r) {
  if (r < 1 || r > SurfaceModel::kMaxBlowups)
    throw RangeError("max_degree_bound requires 1 <= r <= 8, got " + std::to_string(r));
  return 8 / (9 - r);
}

/// Index-level view of a finite pair inside a conic family.
struct IndexedPair {
  std::size_t first = 0;  // first < second
  std::size_t second = 0;
  Int degree = 0;
};

namespace detail {

inline unsigned resolve_threads(unsigned requested, std::size_t work) {
  unsigned t = requested ? requested : std::max(1U, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(work, 1)));
}

// Runs body(i) for i in [0, n) across threads, each thread owning a stride of
// indices and its own output slot; slots are merged in index order.
template <typename T, typename Body>
std::vector<T> parallel_collect(std::size_t n, unsigned threads, Body body) {
  threads = resolve_threads(threads, n);
  std::vector<std::vector<T>> by_index(n);
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](unsigned t) {
    try {
      for (std::size_t i = t; i < n; i += threads) by_index[i] = body(i);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<T> out;
  for (auto& v : by_index) out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  return out;
}

}  // namespace detail

/// All unordered finite pairs of a conic family, in (first, second) index order.
inline std::vector<IndexedPair> finite_pairs(const ClassFamily& conics, const ClassFamily& exceptional,
                                             unsigned threads = 0) {
  constexpr std::size_t kMaxExceptional = 240;
  if (exceptional.size() > kMaxExceptional) throw RangeError("exceptional family too large");
  const std::size_t n = conics.size();
  // contracted[i]: exceptional classes orthogonal to conic i
  std::vector<std::bitset<kMaxExceptional>> contracted(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t e = 0; e < exceptional.size(); ++e)
      if (pairing(conics[i], exceptional[e]) == 0) contracted[i].set(e);

  return detail::parallel_collect<IndexedPair>(n, threads, [&](std::size_t i) {
    std::vector<IndexedPair> local;
    for (std::size_t j = i + 1; j < n; ++j) {
      const Int deg = pairing(conics[i], conics[j]);
      if (deg > 0 && (contracted[i] & contracted[j]).none()) local.push_back({i, j, deg});
    }
    return local;
  });
}

struct PairClassification {
  OrbitSignature first;  // first <= second
  OrbitSignature second;
  Int degree = 0;
  std::size_t count = 0;

  friend bool operator==(const PairClassification&, const PairClassification&) = default;
};

/// Finite pairs grouped by unordered signature pair and degree, sorted by that key.
inline std::vector<PairClassification> classify_finite_pairs(int r, unsigned threads = 0) {
  const auto conics = enumerate_conic(r);
  const auto exceptional = enumerate_exceptional(r);
  std::vector<OrbitSignature> sig;
  sig.reserve(conics.size());
  for (const auto& c : conics) sig.push_back(orbit_signature(c));

  std::map<std::tuple<OrbitSignature, OrbitSignature, Int>, std::size_t> groups;
  for (const auto& p : finite_pairs(conics, exceptional, threads)) {
    auto a = sig[p.first];
    auto b = sig[p.second];
    if (b < a) std::swap(a, b);
    ++groups[{std::move(a), std::move(b), p.degree}];
  }
  std::vector<PairClassification> out;
  out.reserve(groups.size());
  for (auto& [key, count] : groups) out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), count});
  return out;
}

}  // namespace picardkit
