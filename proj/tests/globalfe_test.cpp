#include <gtest/gtest.h>

#include "wfseq/globalfe.hpp"

using namespace wfseq;

TEST(TwoTet, SharedFaceSplit) {
  const TwoTet& g = reference_twotet();
  EXPECT_TRUE(g.t1.validate());
  EXPECT_TRUE(g.t2.validate());
  const Point& m = g.t1.patch().point(SplitComplex::face_point(TwoTet::kFace));
  EXPECT_EQ(m, (Point{frac(1, 3), frac(1, 3), Rational(0)}));
  EXPECT_EQ(m, g.t2.patch().point(SplitComplex::face_point(TwoTet::kFace)));
  EXPECT_EQ(g.face1().frame.n, g.face2().frame.n);
  EXPECT_EQ(g.face1().triangles, g.face2().triangles);
}

TEST(TwoTet, SkewedInteriorPoint) {
  std::array<Point, 3> f{vec(0, 0, 0), vec(1, 0, 0), vec(0, 1, 0)};
  Point z2{frac(2, 5), frac(7, 20), frac(-1, 2)};
  TwoTet g = build_twotet(f, vec(0, 0, 1), vec(1, 1, -2), std::nullopt, z2);
  const Point& m = g.t1.patch().point(SplitComplex::face_point(TwoTet::kFace));
  EXPECT_EQ(sgn(m[2]), 0);
  EXPECT_NE(m, (Point{frac(1, 3), frac(1, 3), Rational(0)}));
  EXPECT_EQ(m, g.t2.patch().point(SplitComplex::face_point(TwoTet::kFace)));
}

TEST(TwoTet, SegmentMissingTheFace) {
  std::array<Point, 3> f{vec(0, 0, 0), vec(1, 0, 0), vec(0, 1, 0)};
  Point z2{Rational(2), Rational(2), Rational(-1)};
  EXPECT_THROW(build_twotet(f, vec(0, 0, 1), vec(4, 4, -4), std::nullopt, z2), Error);
  EXPECT_THROW(build_twotet(f, vec(0, 0, 1), vec(0, 0, 2)), Error);
}

TEST(Theta, VanishesOnGlobalPolynomials) {
  const TwoTet& g = reference_twotet();
  PairLayout l = pair_layout(Family::V3, 3, g);
  std::mt19937_64 rng(9);
  Poly3 p = random_poly(rng, 3);
  std::vector<Rational> u = from_polynomial(l.l1, {p});
  auto u2 = from_polynomial(l.l2, {p});
  u.insert(u.end(), u2.begin(), u2.end());
  for (int k = 0; k < 3; ++k)
    for (const auto& x : theta_matrix(g, k, l).apply(u)) EXPECT_EQ(sgn(x), 0);
}

TEST(Global, Conformity) {
  for (DofLemma l : all_lemmas()) {
    int r = std::max(3, lemma_min_degree(l));
    auto rep = check_global_conformity(l, r, 3, 42);
    EXPECT_TRUE(rep.ok()) << lemma_name(l) << " glued " << rep.glued_dim << " smooth " << rep.smooth_dim;
  }
  EXPECT_EQ(check_global_conformity(DofLemma::S0, 3, 1, 1).glued_dim, 38u);
}

TEST(Global, ThetaProperties) {
  for (const auto& p : check_theta_properties(3, 5, 42)) EXPECT_TRUE(p.ok()) << p.name;
}

TEST(Global, AppendixIdentity) {
  EXPECT_TRUE(check_appendix_identity(2, 8, 42).ok());
  EXPECT_TRUE(check_appendix_identity(3, 8, 42).ok());
}

TEST(Global, TraceLemmas) {
  EXPECT_TRUE(check_tangential_trace_div(2, 5, 42).ok());
  EXPECT_TRUE(check_surface_div_continuity(2, 5, 42).ok());
}

TEST(Global, Extension) {
  EXPECT_TRUE(check_extension(3, 0, 5, 42).ok());
  EXPECT_TRUE(check_extension(3, 1, 5, 42).ok());
}

TEST(Global, GluedComplex) {
  EXPECT_TRUE(check_glued_complex("SLVV", 3).ok());
  EXPECT_TRUE(check_glued_complex("SSLV", 3).ok());
}
