#include <random>

#include <gtest/gtest.h>

#include "cone_fixtures.hpp"
#include "picardkit/cones.hpp"

using namespace picardkit;

namespace {

RationalVector to_rational(const IntVector& v) {
  RationalVector out;
  for (Int x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST(DoubleDescription, Orthant) {
  const std::vector<IntVector> cons = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  auto dd = double_description(3, cons);
  std::sort(dd.rays.begin(), dd.rays.end());
  EXPECT_EQ(dd.rays, (std::vector<IntVector>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}));
  EXPECT_TRUE(dd.lineality.empty());
}

TEST(DoubleDescription, HalfSpaceHasLineality) {
  const std::vector<IntVector> cons = {{1, 0}};
  const auto dd = double_description(2, cons);
  EXPECT_EQ(dd.rays, (std::vector<IntVector>{{1, 0}}));
  ASSERT_EQ(dd.lineality.size(), 1u);
  EXPECT_EQ(dd.lineality[0][0], 0);
}

TEST(ConePoly, GeneratorsAreNormalised) {
  const ConePoly c(2, std::vector<IntVector>{{2, 0}, {1, 0}, {0, 0}, {3, 3}});
  EXPECT_EQ(c.generators(), (std::vector<IntVector>{{1, 0}, {1, 1}}));
  EXPECT_THROW(ConePoly(2, std::vector<IntVector>{{1, 0, 0}}), DimensionError);
}

TEST(ConePoly, RationalGenerators) {
  const ConePoly c(2, std::vector<RationalVector>{{Rational(1, 2), Rational(1, 3)}});
  EXPECT_EQ(c.generators(), (std::vector<IntVector>{{3, 2}}));
}

TEST(ConePoly, Membership) {
  const ConePoly c(2, std::vector<IntVector>{{1, 0}, {1, 1}});
  EXPECT_TRUE(c.contains(IntVector{2, 1}));
  EXPECT_TRUE(c.contains(IntVector{1, 1}));
  EXPECT_FALSE(c.contains(IntVector{0, 1}));
  EXPECT_FALSE(c.contains(IntVector{1, -1}));
  EXPECT_TRUE(c.contains(RationalVector{Rational(3, 2), Rational(1, 2)}));
  EXPECT_THROW(c.contains(IntVector{1}), DimensionError);
}

TEST(DualCone, OrthantIsSelfDual) {
  const auto o = ConePoly::orthant(4);
  EXPECT_TRUE(same_cone(dual_cone(o), o));
}

TEST(DualCone, HirzebruchSurface) {
  // F_1: effective cone {E, H - E}; nef cone {H, H - E} under diag(1, -1)
  const ConePoly eff(2, std::vector<IntVector>{{0, 1}, {1, -1}});
  const auto nef = dual_cone(eff, IntMatrix{{1, 0}, {0, -1}});
  EXPECT_EQ(extremal_rays(nef), (std::vector<IntVector>{{1, -1}, {1, 0}}));
}

TEST(ExtremalRays, SquareCone) {
  const ConePoly c(3, std::vector<IntVector>{{1, 1, 1}, {1, -1, 1}, {-1, 1, 1}, {-1, -1, 1}, {0, 0, 1}});
  EXPECT_EQ(extremal_rays(c).size(), 4u);
  EXPECT_EQ(c.facets().size(), 4u);
  EXPECT_FALSE(is_simplicial(c));
}

TEST(ExtremalRays, RedundantGeneratorDropped) {
  const ConePoly c(2, std::vector<IntVector>{{1, 0}, {1, 1}, {0, 1}});
  EXPECT_EQ(extremal_rays(c), (std::vector<IntVector>{{0, 1}, {1, 0}}));
  EXPECT_TRUE(is_simplicial(c));
}

TEST(ExtremalRays, LinealityAppearsWithBothSigns) {
  const ConePoly c(2, std::vector<IntVector>{{1, 0}, {-1, 0}, {0, 1}});
  const auto rays = extremal_rays(c);
  EXPECT_EQ(rays.size(), 3u);
  EXPECT_EQ(c.dimension(), 2u);
}

TEST(SurfaceCones, ExceptionalCurvesSpanExtremalRays) {
  const auto psef = psef_cone(SurfaceModel::blowup_p2(7));
  EXPECT_EQ(extremal_rays(psef).size(), 56u);
  EXPECT_EQ(extremal_rays(psef_cone(SurfaceModel::blowup_p2(6))).size(), 27u);
}

TEST(SurfaceCones, Reports) {
  const auto p2 = surface_cone_report(SurfaceModel::blowup_p2(0));
  EXPECT_TRUE(p2.equal);
  EXPECT_TRUE(p2.mori_simplicial);
  EXPECT_EQ(p2.picard_number, 1);

  const auto f1 = surface_cone_report(SurfaceModel::blowup_p2(1));
  EXPECT_FALSE(f1.equal);
  EXPECT_TRUE(f1.mori_simplicial);

  const auto q = surface_cone_report(SurfaceModel::product_p1(2));
  EXPECT_TRUE(q.equal);
  EXPECT_TRUE(q.mori_simplicial);
  EXPECT_EQ(q.picard_number, 2);

  const auto dp6 = surface_cone_report(SurfaceModel::blowup_p2(3));
  EXPECT_FALSE(dp6.equal);
  EXPECT_FALSE(dp6.mori_simplicial);
  EXPECT_EQ(extremal_rays(dp6.psef).size(), 6u);

  EXPECT_THROW(surface_cone_report(SurfaceModel::product_p1(3)), DomainError);
}

TEST(SurfaceCones, SimplicialOnlyForSmallPicardNumber) {
  for (int r = 0; r <= 7; ++r)
    EXPECT_EQ(surface_cone_report(SurfaceModel::blowup_p2(r)).mori_simplicial, r <= 2) << "r=" << r;
}

TEST(SurfaceCones, NefInsidePsefWithAnticanonicalInterior) {
  for (int r = 1; r <= 8; ++r) {
    const auto m = SurfaceModel::blowup_p2(r);
    const auto rep = surface_cone_report(m);
    EXPECT_TRUE(rep.psef.contains(rep.nef)) << "r=" << r;
    EXPECT_FALSE(rep.equal);
    const auto k = canonical_class(m);
    for (const auto& g : rep.psef.generators()) EXPECT_GT(-pairing(m, k.coords(), g), 0);
    EXPECT_TRUE(rep.nef.contains((-k).coords()));
    const auto e1 = DivisorClass::basis(m, 1);
    EXPECT_TRUE(rep.psef.contains(e1.coords()));
    EXPECT_FALSE(rep.nef.contains(e1.coords()));
  }
}

TEST(SurfaceCones, ProductMoriConeIsOrthant) {
  for (int n = 1; n <= 5; ++n) {
    const auto ne = mori_cone(SurfaceModel::product_p1(n));
    EXPECT_TRUE(is_simplicial(ne));
    EXPECT_EQ(extremal_rays(ne).size(), static_cast<std::size_t>(n));
  }
}

TEST(RandomCones, DoubleDualityAndMembership) {
  std::mt19937_64 rng(20241016);
  for (int trial = 0; trial < 60; ++trial) {
    const auto fx = fixtures::random_cone(rng, 6, 40);
    const auto& c = fx.cone;
    const auto dd = dual_cone(dual_cone(c));
    EXPECT_TRUE(same_cone(dd, c)) << "trial " << trial;
    const auto rays = extremal_rays(c);
    EXPECT_TRUE(same_cone(ConePoly(c.ambient_dim(), rays), c));
    for (const auto& x : fx.probes) EXPECT_EQ(c.contains(x), in_cone_by_lp(c, to_rational(x))) << "trial " << trial;
    for (const auto& g : c.generators()) EXPECT_TRUE(c.contains(g));
  }
}

TEST(RandomCones, FacetsSupportTheCone) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const auto c = fixtures::random_cone(rng, 5, 0).cone;
    for (const auto& f : c.facets())
      for (const auto& g : c.generators()) EXPECT_GE(checked::wide_dot(f, g), 0);
  }
}
