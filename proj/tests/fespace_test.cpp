#include <gtest/gtest.h>

#include "wfseq/fespace.hpp"

using namespace wfseq;

namespace {

const SplitComplex& ref() {
  static SplitComplex c = build_worsey_farin(reference_tetrahedron());
  return c;
}

const FaceSplit& tri() {
  static FaceSplit f = build_clough_tocher({vec(0, 0, 0), vec(1, 0, 0), vec(0, 1, 0)});
  return f;
}

Domain d3() { return Domain::of(ref()); }
Domain d2() { return Domain::of(tri()); }

}  // namespace

TEST(Fespace, SpotDimensions) {
  EXPECT_EQ(build_space(Family::V3, 0, Bc::None, d3())->dim(), 12u);
  EXPECT_EQ(build_space(Family::CalV2, 1, Bc::Zero, d3())->dim(), 38u);
  EXPECT_EQ(build_space(Family::CalV3, 0, Bc::None, d3())->dim(), 4u);
  EXPECT_EQ(build_space(Family::CalV3, 0, Bc::Zero, d3())->dim(), 3u);
  EXPECT_EQ(build_space(Family::S0, 3, Bc::None, d3())->dim(), 28u);
  EXPECT_EQ(build_space(Family::ctS0, 3, Bc::None, d2())->dim(), 12u);
  EXPECT_EQ(build_space(Family::ctR1, 3, Bc::None, d2())->dim(), 12u);
}

TEST(Fespace, Formulas) {
  EXPECT_EQ(formula_dimension({Family::S0, 5, Bc::Zero}), 12);
  EXPECT_EQ(formula_dimension({Family::ctS0, 3, Bc::None}), 12);
  EXPECT_EQ(formula_dimension({Family::ctR1, 3, Bc::None}), 12);
  EXPECT_EQ(formula_dimension({Family::S1, 2, Bc::Zero}), 0);
  EXPECT_EQ(formula_dimension({Family::V2, -1, Bc::None}), 0);
  EXPECT_FALSE(formula_dimension({Family::CalV2, 2, Bc::None}).has_value());
}

TEST(Fespace, NegativeDegreeIsTrivial) {
  auto s = build_space(Family::L1, -2, Bc::None, d3());
  EXPECT_EQ(s->dim(), 0u);
  EXPECT_EQ(s->layout.size(), 0u);
}

TEST(Fespace, QuadraticsAreC1) {
  auto s = build_space(Family::S0, 2, Bc::None, d3());
  ASSERT_EQ(s->dim(), 10u);
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b <= 2; ++b)
      for (int c = 0; a + b + c <= 2; ++c) {
        auto u = from_polynomial(s->layout, {Poly3{{{a, b, c}, Rational(1)}}});
        EXPECT_TRUE(membership(u, *s));
      }
  EXPECT_EQ(build_space(Family::S1, 1, Bc::None, d3())->dim(), 12u);
}

TEST(Fespace, Membership) {
  auto l0 = build_space(Family::L0, 1, Bc::None, d3());
  auto l0o = build_space(Family::L0, 1, Bc::Zero, d3());
  EXPECT_TRUE(membership(hat_function(ref()).coeffs, *l0));
  EXPECT_TRUE(membership(hat_function(ref()).coeffs, *l0o));
  std::vector<Rational> one(l0->layout.size(), Rational(1));
  EXPECT_TRUE(membership(one, *l0));
  EXPECT_FALSE(membership(one, *l0o));
  const SparseMatrix& b = l0->basis();
  for (std::size_t j = 0; j < b.cols(); ++j) EXPECT_TRUE(membership(b.column(j), *l0));
  EXPECT_THROW(membership(std::vector<Rational>(3), *l0), Error);
}

TEST(Fespace, BasisColumnsSatisfyConstraints) {
  for (Family f : {Family::V1, Family::V2, Family::S1, Family::CalV2, Family::CalV3}) {
    for (Bc bc : {Bc::None, Bc::Zero}) {
      auto s = build_space(f, 2, bc, d3());
      const SparseMatrix& b = s->basis();
      ASSERT_EQ(b.cols(), s->dim());
      EXPECT_EQ((s->ambient * b).nnz(), 0u) << s->spec.name();
      EXPECT_EQ(rank(b), s->dim());
    }
  }
}

TEST(Fespace, Containments) {
  for (int r = 0; r <= 3; ++r) {
    for (Bc bc : {Bc::None, Bc::Zero}) {
      auto l2 = build_space(Family::L2, r, bc, d3());
      auto c2 = build_space(Family::CalV2, r, bc, d3());
      auto v2 = build_space(Family::V2, r, bc, d3());
      auto id = SparseMatrix::identity(l2->layout.size());
      EXPECT_TRUE(maps_into(*l2, id, *c2));
      EXPECT_TRUE(maps_into(*c2, id, *v2));
      auto l3 = build_space(Family::L3, r, bc, d3());
      auto c3 = build_space(Family::CalV3, r, bc, d3());
      auto v3 = build_space(Family::V3, r, bc, d3());
      auto id3 = SparseMatrix::identity(l3->layout.size());
      EXPECT_TRUE(maps_into(*l3, id3, *c3));
      EXPECT_TRUE(maps_into(*c3, id3, *v3));
    }
  }
  auto v2 = build_space(Family::V2, 2, Bc::None, d3());
  auto c2 = build_space(Family::CalV2, 2, Bc::None, d3());
  EXPECT_FALSE(maps_into(*v2, SparseMatrix::identity(v2->layout.size()), *c2));
}

TEST(Fespace, SmoothFamiliesHaveSmoothDerivatives) {
  const int r = 4;
  auto s0 = build_space(Family::S0, r, Bc::None, d3());
  EXPECT_TRUE(maps_into(*s0, diff_matrix(DiffOp::Grad, ref().patch(), r), *build_space(Family::L1, r - 1, Bc::None, d3())));
  auto s1 = build_space(Family::S1, r, Bc::Zero, d3());
  EXPECT_TRUE(maps_into(*s1, diff_matrix(DiffOp::Curl, ref().patch(), r), *build_space(Family::L2, r - 1, Bc::Zero, d3())));
  auto s2 = build_space(Family::S2, r, Bc::None, d3());
  EXPECT_TRUE(maps_into(*s2, diff_matrix(DiffOp::Div, ref().patch(), r), *build_space(Family::L3, r - 1, Bc::None, d3())));
}

TEST(Fespace, PlanarDivCurlIsomorphic) {
  for (int r = 1; r <= 4; ++r)
    for (Bc bc : {Bc::None, Bc::Zero}) {
      EXPECT_EQ(build_space(Family::ctVdiv1, r, bc, d2())->dim(), build_space(Family::ctVcurl1, r, bc, d2())->dim());
      EXPECT_EQ(build_space(Family::ctSdiv1, r, bc, d2())->dim(), build_space(Family::ctScurl1, r, bc, d2())->dim());
    }
}

TEST(Fespace, FamilyNames) {
  EXPECT_EQ(parse_family("CalV2"), Family::CalV2);
  EXPECT_THROW(parse_family("V7"), Error);
  EXPECT_EQ((SpaceSpec{Family::S1, 3, Bc::Zero}.name()), "S1o_3");
  EXPECT_THROW(build_space(Family::ctL0, 1, Bc::None, d3()), Error);
}

TEST(Fespace, FaceOfTetMatchesTriangle) {
  // the same 2D spaces on a macro face of the split
  Domain f = Domain::of(ref().face(2));
  for (int r = 1; r <= 4; ++r) {
    EXPECT_EQ(build_space(Family::ctS0, r, Bc::None, f)->dim(), build_space(Family::ctS0, r, Bc::None, d2())->dim());
    EXPECT_EQ(build_space(Family::ctR1, r, Bc::None, f)->dim(), build_space(Family::ctR1, r, Bc::None, d2())->dim());
  }
}
