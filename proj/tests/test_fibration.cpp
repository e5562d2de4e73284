#include <algorithm>
#include <bitset>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "picardkit/fibration.hpp"

using namespace picardkit;

namespace {

DivisorClass curve(int r, Int d, IntVector m) {
  return DivisorClass::from_multiplicities(SurfaceModel::blowup_p2(r), d, m);
}

Int raw_pairing(const oracle::Vec& a, const oracle::Vec& b) {
  Int s = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) s -= a[i] * b[i];
  return s;
}

// finite pair count per degree from brute-force solution lists
std::map<Int, std::size_t> oracle_degree_histogram(int r) {
  const auto conics = oracle::norm_solutions(r, 2, 0);
  const auto exc = oracle::norm_solutions(r, 1, 1);
  std::vector<std::bitset<256>> orth(conics.size());
  for (std::size_t i = 0; i < conics.size(); ++i)
    for (std::size_t e = 0; e < exc.size(); ++e) orth[i][e] = raw_pairing(conics[i], exc[e]) == 0;
  std::map<Int, std::size_t> hist;
  for (std::size_t i = 0; i < conics.size(); ++i)
    for (std::size_t j = i + 1; j < conics.size(); ++j) {
      const Int deg = raw_pairing(conics[i], conics[j]);
      if (deg > 0 && (orth[i] & orth[j]).none()) ++hist[deg];
    }
  return hist;
}

std::map<Int, std::size_t> library_degree_histogram(int r, unsigned threads) {
  std::map<Int, std::size_t> hist;
  for (const auto& g : classify_finite_pairs(r, threads)) hist[g.degree] += g.count;
  return hist;
}

}  // namespace

TEST(FibrationPair, Validation) {
  const auto l = curve(7, 1, {1, 0, 0, 0, 0, 0, 0});
  EXPECT_THROW(FibrationPair(l, l), DomainError);
  EXPECT_THROW(FibrationPair(l, curve(7, 1, {1, 1, 0, 0, 0, 0, 0})), DomainError);
  EXPECT_THROW(FibrationPair(l, curve(6, 1, {1, 0, 0, 0, 0, 0})), DimensionError);
  EXPECT_NO_THROW(FibrationPair(l, curve(7, 1, {0, 1, 0, 0, 0, 0, 0})));
}

TEST(AnalyzePair, LinesThroughTwoPointsShareTheirLine) {
  const auto exc = enumerate_exceptional(7);
  const auto rep = analyze_pair(
      FibrationPair(curve(7, 1, {1, 0, 0, 0, 0, 0, 0}), curve(7, 1, {0, 1, 0, 0, 0, 0, 0})), exc);
  EXPECT_EQ(rep.degree, 1);
  EXPECT_FALSE(rep.is_finite);
  // the line through p1 p2 and the exceptional curves over p3..p7
  std::vector<DivisorClass> expected = {curve(7, 1, {1, 1, 0, 0, 0, 0, 0})};
  for (int i = 3; i <= 7; ++i) expected.push_back(DivisorClass::basis(SurfaceModel::blowup_p2(7), i));
  std::sort(expected.begin(), expected.end());
  auto got = rep.common_contracted;
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, expected);
}

TEST(AnalyzePair, QuinticPartnersOnDegreeTwo) {
  const auto c1 = curve(7, 1, {1, 0, 0, 0, 0, 0, 0});
  const auto simple = analyze_pair(FibrationPair(c1, curve(7, 5, {1, 2, 2, 2, 2, 2, 2})));
  EXPECT_TRUE(simple.is_finite);
  EXPECT_EQ(simple.degree, 4);
  const auto dbl = analyze_pair(FibrationPair(c1, curve(7, 5, {2, 2, 2, 2, 2, 2, 1})));
  EXPECT_TRUE(dbl.is_finite);
  EXPECT_EQ(dbl.degree, 3);
}

TEST(AnalyzePair, FamilyMustMatch) {
  const FibrationPair p(curve(7, 1, {1, 0, 0, 0, 0, 0, 0}), curve(7, 1, {0, 1, 0, 0, 0, 0, 0}));
  EXPECT_THROW(analyze_pair(p, enumerate_exceptional(6)), DomainError);
  EXPECT_THROW(analyze_pair(p, enumerate_conic(7)), DomainError);
}

TEST(AnalyzePair, SymmetricInItsArguments) {
  const auto conics = enumerate_conic(6);
  const auto exc = enumerate_exceptional(6);
  for (std::size_t i = 0; i < conics.size(); ++i)
    for (std::size_t j = i + 1; j < conics.size(); ++j) {
      const auto a = analyze_pair(FibrationPair(conics[i], conics[j]), exc);
      const auto b = analyze_pair(FibrationPair(conics[j], conics[i]), exc);
      EXPECT_EQ(a.degree, b.degree);
      EXPECT_EQ(a.is_finite, b.is_finite);
      EXPECT_EQ(a.common_contracted, b.common_contracted);
    }
}

TEST(FinitePartners, PencilOfLinesOnDegreeTwo) {
  const auto c1 = curve(7, 1, {1, 0, 0, 0, 0, 0, 0});
  const auto partners = finite_partners(c1, enumerate_conic(7), enumerate_exceptional(7));
  std::map<OrbitSignature, std::set<Int>> degrees;
  for (const auto& p : partners) degrees[orbit_signature(p.partner)].insert(p.degree);
  const std::map<OrbitSignature, std::set<Int>> expected = {
      {{3, {2, 1, 1, 1, 1, 1, 0}}, {3}},
      {{4, {2, 2, 2, 1, 1, 1, 1}}, {3}},
      {{5, {2, 2, 2, 2, 2, 2, 1}}, {3, 4}},
  };
  EXPECT_EQ(degrees, expected);
  EXPECT_THROW(finite_partners(c1, enumerate_exceptional(7), enumerate_exceptional(7)), DomainError);
}

TEST(FinitePartners, NoneBelowDegreeFour) {
  for (int r : {1, 2, 3, 4, 6}) {
    IntVector m(static_cast<std::size_t>(r), 0);
    m[0] = 1;
    EXPECT_TRUE(finite_partners(curve(r, 1, m), enumerate_conic(r), enumerate_exceptional(r)).empty()) << r;
  }
}

TEST(HodgeBound, Examples) {
  const auto c1 = curve(7, 1, {1, 0, 0, 0, 0, 0, 0});
  const auto h = hodge_bound(c1, curve(7, 5, {1, 2, 2, 2, 2, 2, 2}));
  EXPECT_EQ(h.lhs, 16);
  EXPECT_EQ(h.rhs, 16);
  EXPECT_TRUE(h.holds);
  const auto same = hodge_bound(c1, c1);
  EXPECT_EQ(same.lhs, 0);
  EXPECT_EQ(same.rhs, 16);
}

TEST(HodgeBound, Errors) {
  const auto q = SurfaceModel::product_p1(2);
  EXPECT_THROW(hodge_bound(DivisorClass::basis(q, 0), DivisorClass::basis(q, 1)), DomainError);
  const auto m = SurfaceModel::blowup_p2(3);
  EXPECT_THROW(hodge_bound(DivisorClass::basis(m, 0), DivisorClass::basis(m, 0)), DomainError);
  EXPECT_THROW(hodge_bound(curve(3, 1, {1, 0, 0}), curve(2, 1, {1, 0})), DimensionError);
}

TEST(HodgeBound, HoldsForAllConicPairs) {
  for (int r = 1; r <= 7; ++r) {
    const auto conics = enumerate_conic(r);
    for (const auto& a : conics)
      for (const auto& b : conics) {
        const auto h = hodge_bound(a, b);
        EXPECT_TRUE(h.holds) << a << " " << b;
        EXPECT_EQ(h.rhs, 16);
      }
  }
}

TEST(MaxDegreeBound, Values) {
  const std::vector<Int> expected = {1, 1, 1, 1, 2, 2, 4, 8};
  for (int r = 1; r <= 8; ++r) EXPECT_EQ(max_degree_bound(r), expected[static_cast<std::size_t>(r - 1)]) << r;
  EXPECT_THROW(max_degree_bound(0), RangeError);
  EXPECT_THROW(max_degree_bound(9), RangeError);
}

TEST(ClassifyFinitePairs, OnlyForFiveSevenEight) {
  for (int r = 1; r <= 7; ++r) {
    const auto groups = classify_finite_pairs(r, 2);
    EXPECT_EQ(!groups.empty(), r == 5 || r == 7) << "r=" << r;
    for (const auto& g : groups) {
      EXPECT_LE(g.degree, max_degree_bound(r));
      EXPECT_LE(g.first, g.second);
    }
  }
}

TEST(ClassifyFinitePairs, DegreeFourSurface) {
  const auto groups = classify_finite_pairs(5);
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0].degree, 2);
  EXPECT_EQ(groups[0].first, (OrbitSignature{1, {1, 0, 0, 0, 0}}));
  EXPECT_EQ(groups[0].second, (OrbitSignature{2, {1, 1, 1, 1, 0}}));
  EXPECT_EQ(groups[0].count, 5u);
}

TEST(ClassifyFinitePairs, MatchesBruteForceHistogram) {
  for (int r : {5, 6, 7}) EXPECT_EQ(library_degree_histogram(r, 2), oracle_degree_histogram(r)) << "r=" << r;
}

TEST(ClassifyFinitePairs, EightPointsMatchesBruteForceAndThreadCount) {
  const auto one = classify_finite_pairs(8, 1);
  const auto four = classify_finite_pairs(8, 4);
  EXPECT_EQ(one, four);
  std::map<Int, std::size_t> hist;
  for (const auto& g : one) hist[g.degree] += g.count;
  EXPECT_EQ(hist, oracle_degree_histogram(8));
  EXPECT_EQ(hist.begin()->first, 4);
  EXPECT_EQ(hist.rbegin()->first, 8);
}

TEST(FinitePairs, IndexedPairsAreOrderedAndConsistent) {
  const auto conics = enumerate_conic(7);
  const auto exc = enumerate_exceptional(7);
  const auto pairs = finite_pairs(conics, exc, 3);
  ASSERT_FALSE(pairs.empty());
  for (const auto& p : pairs) {
    ASSERT_LT(p.first, p.second);
    const auto rep = analyze_pair(FibrationPair(conics[p.first], conics[p.second]), exc);
    EXPECT_TRUE(rep.is_finite);
    EXPECT_EQ(rep.degree, p.degree);
  }
}
