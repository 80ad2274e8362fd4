#include <gtest/gtest.h>

#include "wfseq/pwpoly.hpp"
#include "wfseq/splitgeom.hpp"

using namespace wfseq;

TEST(SplitGeom, ReferenceCounts) {
  auto c = build_worsey_farin(reference_tetrahedron());
  EXPECT_EQ(c.counts(), (std::array<int, 4>{9, 26, 30, 12}));
  EXPECT_EQ(c.interior_counts(), (std::array<int, 4>{1, 8, 18, 12}));
  EXPECT_EQ(c.euler_characteristic(), 1);
  EXPECT_TRUE(c.validate());
  Rational vol = 0;
  for (std::size_t k = 0; k < 12; ++k) vol += c.patch().weight(k);
  EXPECT_EQ(vol, Rational(1, 6));
  EXPECT_EQ(c.volume(), Rational(1, 6));
}

TEST(SplitGeom, FaceTrianglesOnMacroFace) {
  auto c = build_worsey_farin(reference_tetrahedron());
  for (int i = 0; i < 4; ++i) {
    int on = 0;
    for (const auto& s : c.patch().subsimplices(2))
      if (std::all_of(s.v.begin(), s.v.end(), [&](int v) { return c.on_macro_face(v, i); })) ++on;
    EXPECT_EQ(on, 3);
  }
}

TEST(SplitGeom, InteriorPointChecks) {
  SplitOptions o;
  o.z = vec(0, 0, 0) + Rational(1, 3) * vec(1, 1, 0);  // on the face z = 0
  EXPECT_THROW(build_worsey_farin(reference_tetrahedron(), o), Error);
  SplitOptions p;
  p.face_points[3] = Point{Rational(1, 2), Rational(0), Rational(0)};  // on an edge of face 3
  EXPECT_THROW(build_worsey_farin(reference_tetrahedron(), p), Error);
  std::array<Point, 4> flat{vec(0, 0, 0), vec(1, 0, 0), vec(0, 1, 0), vec(1, 1, 0)};
  EXPECT_THROW(build_worsey_farin(flat), Error);
}

TEST(SplitGeom, RandomInteriorPointSameCounts) {
  SplitOptions o;
  o.z = Point{Rational(1, 7), Rational(2, 9), Rational(1, 5)};
  o.face_points[0] = Point{Rational(1, 5), Rational(1, 2), Rational(3, 10)};
  auto c = build_worsey_farin(reference_tetrahedron(), o);
  EXPECT_EQ(c.counts(), (std::array<int, 4>{9, 26, 30, 12}));
  EXPECT_TRUE(c.validate());
  Rational vol = 0;
  for (std::size_t k = 0; k < 12; ++k) vol += c.patch().weight(k);
  EXPECT_EQ(vol, Rational(1, 6));
}

TEST(SplitGeom, EdgeFrames) {
  auto c = build_worsey_farin(reference_tetrahedron());
  for (const auto& f : c.faces()) {
    EXPECT_EQ(sgn(dot(f.frame.n, c.patch().point(f.face) - c.patch().point(f.y[0]))), -1);  // outward
    for (const auto& e : f.edges) {
      EXPECT_EQ(sgn(dot(e.t, f.frame.n)), 0);
      EXPECT_EQ(sgn(dot(e.t, e.s)), 0);
      EXPECT_EQ(e.s, cross(f.frame.n, e.t));
      EXPECT_GT(dot(e.s, e.s), 0);
      EXPECT_EQ(sgn(dot(e.r, e.t)), 0);
      // r lies in the plane of [z, m, y]
      Vec3 nf = cross(c.z() - c.patch().point(e.m), e.t);
      EXPECT_EQ(sgn(dot(e.r, nf)), 0);
      EXPECT_FALSE(is_zero(e.r));
      // t points away from m
      EXPECT_EQ(e.t, c.patch().point(e.y) - c.patch().point(e.m));
    }
    EXPECT_TRUE(f.edges[0].singular);
    EXPECT_EQ(f.edges[0].y, f.y[0]);
  }
  // face z = 0 (opposite x3), edge m_F -> (0,0,0)
  const auto& f3 = c.face(3);
  EXPECT_EQ(f3.edges[0].y, 0);
  EXPECT_EQ(f3.edges[0].t, (Vec3{Rational(-1, 3), Rational(-1, 3), Rational(0)}));
}

TEST(SplitGeom, EfRuleFollowsLabels) {
  SplitOptions o;
  o.labels = {3, 2, 1, 0};
  auto c = build_worsey_farin(reference_tetrahedron(), o);
  EXPECT_EQ(c.face(0).edges[0].y, 3);  // smallest label on face opposite x0 is x3
  auto d = build_worsey_farin(reference_tetrahedron(), o);
  EXPECT_EQ(complex_to_json(c), complex_to_json(d));
}

TEST(SplitGeom, CloughTocherTriangle) {
  auto f = build_clough_tocher({vec(0, 0, 0), vec(1, 0, 0), vec(0, 1, 0)});
  EXPECT_EQ(f.patch.num_cells(), 3u);
  EXPECT_EQ(f.patch.subsimplices(1).size(), 6u);
  int interior = 0;
  for (const auto& e : f.patch.subsimplices(1)) interior += e.interior;
  EXPECT_EQ(interior, 3);
  EXPECT_EQ(f.patch.total_weight(), Rational(1, 2));
  EXPECT_THROW(build_clough_tocher({vec(0, 0, 0), vec(1, 0, 0), vec(0, 1, 0)}, Point{Rational(1, 2), Rational(0), Rational(0)}),
               Error);
}

TEST(SplitGeom, HatFunction) {
  auto c = build_worsey_farin(reference_tetrahedron());
  auto mu = hat_function(c);
  EXPECT_EQ(evaluate(mu, c.z())[0], Rational(1));
  for (const auto& x : c.macro_vertices()) EXPECT_EQ(evaluate(mu, x)[0], Rational(0));
  for (int i = 0; i < 4; ++i) EXPECT_EQ(evaluate(mu, c.patch().point(4 + i))[0], Rational(0));
  // continuity across interior faces: evaluate at three points of each interior face from both sides
  for (const auto& f : c.patch().subsimplices(2)) {
    if (!f.interior) continue;
    const auto& P = c.patch().points();
    std::vector<Point> samples{Rational(1, 3) * (P[f.v[0]] + P[f.v[1]] + P[f.v[2]]),
                               Rational(1, 2) * (P[f.v[0]] + P[f.v[1]]),
                               Rational(1, 5) * P[f.v[0]] + Rational(3, 5) * P[f.v[1]] + Rational(1, 5) * P[f.v[2]]};
    for (const auto& x : samples) EXPECT_EQ(evaluate(mu, x, f.cells[0]), evaluate(mu, x, f.cells[1]));
  }
}
