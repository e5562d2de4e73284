#include <algorithm>
#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "picardkit/enumerate.hpp"

using namespace picardkit;

namespace {

DivisorClass curve(int r, Int d, IntVector m) {
  return DivisorClass::from_multiplicities(SurfaceModel::blowup_p2(r), d, m);
}

std::set<IntVector> as_set(const ClassFamily& fam) {
  std::set<IntVector> out;
  for (const auto& c : fam) out.insert(c.vector());
  return out;
}

// oracle solutions are (d, m_1..m_r); library coordinates are (d, -m_1..-m_r)
std::set<IntVector> oracle_set(int r, Int k, Int q) {
  std::set<IntVector> out;
  for (auto v : oracle::norm_solutions(r, k, q)) {
    for (std::size_t i = 1; i < v.size(); ++i) v[i] = -v[i];
    out.insert(v);
  }
  return out;
}

}  // namespace

TEST(EnumerateExceptional, SmallCases) {
  const auto f2 = enumerate_exceptional(2);
  ASSERT_EQ(f2.size(), 3u);
  EXPECT_EQ(f2[0], curve(2, 0, {-1, 0}));
  EXPECT_EQ(f2[1], curve(2, 0, {0, -1}));
  EXPECT_EQ(f2[2], curve(2, 1, {1, 1}));
  EXPECT_EQ(enumerate_exceptional(0).size(), 0u);
  EXPECT_THROW(enumerate_exceptional(9), RangeError);
  EXPECT_THROW(enumerate_exceptional(-1), RangeError);
}

TEST(EnumerateExceptional, CountsMatchBruteForce) {
  const std::vector<std::size_t> expected = {0, 1, 3, 6, 10, 16, 27, 56, 240};
  for (int r = 0; r <= 8; ++r) {
    const auto fam = enumerate_exceptional(r);
    EXPECT_EQ(fam.size(), expected[static_cast<std::size_t>(r)]) << "r=" << r;
    EXPECT_EQ(as_set(fam), oracle_set(r, 1, 1)) << "r=" << r;
  }
}

TEST(EnumerateExceptional, MembersSatisfyInvariants) {
  for (int r = 1; r <= 8; ++r) {
    const auto fam = enumerate_exceptional(r);
    EXPECT_EQ(fam.kind(), FamilyKind::Exceptional);
    for (const auto& c : fam) {
      EXPECT_EQ(self_intersection(c), -1);
      EXPECT_EQ(pairing(c, canonical_class(c.model())), -1);
      EXPECT_EQ(adjunction_genus(c), 0);
    }
    EXPECT_TRUE(std::is_sorted(fam.begin(), fam.end(), family_order));
    EXPECT_EQ(as_set(fam).size(), fam.size());
  }
}

TEST(EnumerateExceptional, DegreeBoundForEightPoints) {
  const auto [lo, hi] = exceptional_degree_range(8);
  EXPECT_EQ(hi, 7);
  EXPECT_LE(lo, 0);
  Int top = 0;
  for (const auto& c : enumerate_exceptional(8)) top = std::max(top, c.degree());
  EXPECT_EQ(top, 6);
}

TEST(EnumerateConic, SmallCasesAndErrors) {
  const auto f1 = enumerate_conic(1);
  ASSERT_EQ(f1.size(), 1u);
  EXPECT_EQ(f1[0], curve(1, 1, {1}));
  EXPECT_THROW(enumerate_conic(0), RangeError);
  EXPECT_THROW(enumerate_conic(9), RangeError);
}

TEST(EnumerateConic, CountsMatchBruteForce) {
  const std::vector<std::size_t> expected = {0, 1, 2, 3, 5, 10, 27, 126, 2160};
  for (int r = 1; r <= 8; ++r) {
    const auto fam = enumerate_conic(r);
    EXPECT_EQ(fam.size(), expected[static_cast<std::size_t>(r)]) << "r=" << r;
    EXPECT_EQ(as_set(fam), oracle_set(r, 2, 0)) << "r=" << r;
    for (const auto& c : fam) EXPECT_TRUE(is_conic_class(c));
  }
}

TEST(EnumerateConic, DegreeTwoSurfaceOrbits) {
  const auto fam = enumerate_conic(7);
  EXPECT_TRUE(fam.contains(curve(7, 3, {0, 1, 1, 1, 1, 1, 2})));
  std::map<OrbitSignature, std::size_t> orbits;
  for (const auto& c : fam) ++orbits[orbit_signature(c)];
  ASSERT_EQ(orbits.size(), 5u);
  const std::map<OrbitSignature, Int> sizes = {
      {{1, {1, 0, 0, 0, 0, 0, 0}}, oracle::multinomial({1, 6})},
      {{2, {1, 1, 1, 1, 0, 0, 0}}, oracle::multinomial({4, 3})},
      {{3, {2, 1, 1, 1, 1, 1, 0}}, oracle::multinomial({1, 5, 1})},
      {{4, {2, 2, 2, 1, 1, 1, 1}}, oracle::multinomial({3, 4})},
      {{5, {2, 2, 2, 2, 2, 2, 1}}, oracle::multinomial({6, 1})},
  };
  for (const auto& [sig, size] : sizes) EXPECT_EQ(orbits[sig], static_cast<std::size_t>(size)) << sig.to_string();
}

TEST(OrbitSignature, Examples) {
  const auto s = orbit_signature(curve(7, 1, {1, 0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(s.degree, 1);
  EXPECT_EQ(s.multiplicities, (IntVector{1, 0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(orbit_signature(curve(7, 5, {2, 2, 1, 2, 2, 2, 2})).to_string(), "(5;2,2,2,2,2,2,1)");
}

TEST(OrbitSignature, InvariantUnderPermutation) {
  std::mt19937_64 rng(3);
  for (int r = 2; r <= 8; ++r) {
    const auto fam = enumerate_conic(r);
    for (int trial = 0; trial < 50; ++trial) {
      const auto& c = fam[rng() % fam.size()];
      auto m = c.multiplicities();
      std::shuffle(m.begin(), m.end(), rng);
      const auto permuted = DivisorClass::from_multiplicities(c.model(), c.degree(), m);
      EXPECT_EQ(orbit_signature(permuted), orbit_signature(c));
      EXPECT_TRUE(fam.contains(permuted));
    }
  }
}

TEST(OrbitSignature, SeparatesOrbits) {
  // equal signatures iff related by a permutation: check by sorting multiplicities directly
  const auto fam = enumerate_exceptional(6);
  for (const auto& a : fam)
    for (const auto& b : fam) {
      auto ma = a.multiplicities(), mb = b.multiplicities();
      std::sort(ma.begin(), ma.end());
      std::sort(mb.begin(), mb.end());
      EXPECT_EQ(orbit_signature(a) == orbit_signature(b), a.degree() == b.degree() && ma == mb);
    }
}

TEST(ReducibleFibers, LinesThroughOnePoint) {
  const auto exc7 = enumerate_exceptional(7);
  const auto fibers = reducible_fibers(curve(7, 1, {1, 0, 0, 0, 0, 0, 0}), exc7);
  ASSERT_EQ(fibers.size(), 6u);
  std::set<std::pair<DivisorClass, DivisorClass>> got;
  for (const auto& f : fibers) got.insert(std::minmax(f.first, f.second));
  for (int i = 2; i <= 7; ++i) {
    IntVector m(7, 0);
    m[0] = 1;
    m[static_cast<std::size_t>(i - 1)] = 1;
    EXPECT_TRUE(got.count(std::minmax(DivisorClass::basis(SurfaceModel::blowup_p2(7), i), curve(7, 1, m))));
  }
  EXPECT_TRUE(reducible_fibers(curve(1, 1, {1}), enumerate_exceptional(1)).empty());
}

TEST(ReducibleFibers, QuarticPencilOnEightPoints) {
  const auto exc8 = enumerate_exceptional(8);
  const auto c = curve(8, 4, {0, 1, 1, 1, 1, 2, 2, 2});
  const auto fibers = reducible_fibers(c, exc8);
  ASSERT_EQ(fibers.size(), 7u);
  const auto e1 = DivisorClass::basis(SurfaceModel::blowup_p2(8), 1);
  const auto quartic = curve(8, 4, {1, 1, 1, 1, 1, 2, 2, 2});
  EXPECT_TRUE(std::any_of(fibers.begin(), fibers.end(), [&](const ReducibleFiber& f) {
    return std::minmax(f.first, f.second) == std::minmax(e1, quartic);
  }));
}

TEST(ReducibleFibers, CountsAndComponentInvariants) {
  for (int r = 1; r <= 8; ++r) {
    const auto exc = enumerate_exceptional(r);
    for (const auto& c : enumerate_conic(r)) {
      const auto fibers = reducible_fibers(c, exc);
      EXPECT_EQ(fibers.size(), static_cast<std::size_t>(r - 1)) << c;
      for (const auto& f : fibers) {
        EXPECT_EQ(f.first + f.second, c);
        EXPECT_EQ(pairing(f.first, f.second), 1);
        EXPECT_EQ(self_intersection(f.first), -1);
        EXPECT_EQ(self_intersection(f.second), -1);
        EXPECT_EQ(adjunction_genus(f.first), 0);
        EXPECT_EQ(adjunction_genus(f.second), 0);
        EXPECT_EQ(self_intersection(f.first + f.second), 0);
      }
    }
  }
}

TEST(ReducibleFibers, Errors) {
  const auto exc = enumerate_exceptional(7);
  EXPECT_THROW(reducible_fibers(curve(7, 1, {1, 1, 0, 0, 0, 0, 0}), exc), DomainError);
  EXPECT_THROW(reducible_fibers(curve(7, 1, {1, 0, 0, 0, 0, 0, 0}), enumerate_conic(7)), DomainError);
  EXPECT_THROW(reducible_fibers(curve(6, 1, {1, 0, 0, 0, 0, 0}), exc), DimensionError);
}
