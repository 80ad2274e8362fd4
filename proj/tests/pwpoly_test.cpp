#include <gtest/gtest.h>

#include <random>

#include "wfseq/pwpoly.hpp"

using namespace wfseq;

namespace {

std::vector<Rational> random_coeffs(std::mt19937_64& g, std::size_t n) {
  std::vector<Rational> v(n);
  for (auto& x : v) x = random_rational(g);
  return v;
}

bool all_zero(const std::vector<Rational>& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

std::vector<Rational> sub(std::vector<Rational> a, const std::vector<Rational>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

}  // namespace

TEST(Pwpoly, GradOfX) {
  auto c = build_worsey_farin(reference_tetrahedron());
  auto l = FieldLayout::scalar_on(c.patch(), 1);
  auto u = from_polynomial(l, {Poly3{{{1, 0, 0}, Rational(1)}}});
  auto g = grad_matrix(l).apply(u);
  auto expect = from_polynomial(FieldLayout::vector_on(c.patch(), 0), {Poly3{{{0, 0, 0}, Rational(1)}}, {}, {}});
  EXPECT_EQ(g, expect);
}

TEST(Pwpoly, ComplexIdentities) {
  auto c = build_worsey_farin(reference_tetrahedron());
  for (int r = 0; r <= 4; ++r) {
    SparseMatrix cg = diff_matrix(DiffOp::Curl, c.patch(), r) * diff_matrix(DiffOp::Grad, c.patch(), r + 1);
    SparseMatrix dc = diff_matrix(DiffOp::Div, c.patch(), r) * diff_matrix(DiffOp::Curl, c.patch(), r + 1);
    EXPECT_EQ(cg.nnz(), 0u) << r;
    EXPECT_EQ(dc.nnz(), 0u) << r;
  }
}

TEST(Pwpoly, DivOfXSquared) {
  auto c = build_worsey_farin(reference_tetrahedron());
  auto l = FieldLayout::vector_on(c.patch(), 2);
  auto v = from_polynomial(l, {Poly3{{{2, 0, 0}, Rational(1)}}, {}, {}});
  auto d = div_matrix(l).apply(v);
  EXPECT_EQ(d, from_polynomial(FieldLayout::scalar_on(c.patch(), 1), {Poly3{{{1, 0, 0}, Rational(2)}}}));
}

TEST(Pwpoly, Integrals) {
  auto c = build_worsey_farin(reference_tetrahedron());
  auto l = FieldLayout::scalar_on(c.patch(), 0);
  PiecewiseField one{l, std::vector<Rational>(l.size(), Rational(1))};
  EXPECT_EQ(integrate(one), Rational(1, 6));
  EXPECT_EQ(bernstein_product_integral(2, 1, {0, 1, 0, 0}, 1, {0, 0, 1, 0}), Rational(1, 24) * 2);

  // unit triangle: lambda1 lambda2 = B^2_{011} / 2
  Patch tri(2, {vec(0, 0, 0), vec(1, 0, 0), vec(0, 1, 0)}, {{0, 1, 2}});
  auto l2 = FieldLayout::scalar_on(tri, 2);
  PiecewiseField f{l2, std::vector<Rational>(l2.size())};
  f.coeffs[l2.indices().find({0, 1, 1, 0})] = Rational(1, 2);
  ASSERT_EQ(tri.radicand(), Rational(1));
  EXPECT_EQ(integrate(f), Rational(1, 24));
}

TEST(Pwpoly, EdgeTangentialMoment) {
  auto c = build_worsey_farin(reference_tetrahedron());
  const auto& e = c.face(3).edges[1];
  auto l = FieldLayout::vector_on(e.patch, 0);
  std::vector<Rational> w = from_polynomial(l, {Poly3{{{0, 0, 0}, Rational(2)}}, Poly3{{{0, 0, 0}, Rational(-1)}}, {}});
  auto sc = FieldLayout::scalar_on(e.patch, 0);
  auto ut = pointwise(l, sc, dot_with(l, e.t)).apply(w);
  Rational val = integral_row(sc).apply(ut)[0];
  // one-point rule: |e| (w . t) with |e| = weight * sqrt(radicand), t unnormalized
  Rational point = (Rational(2) * e.t[0] - e.t[1]) * e.patch.weight(0);
  EXPECT_EQ(val, point);
}

TEST(Pwpoly, TangentialPartVanishes) {
  auto c = build_worsey_farin(reference_tetrahedron());
  int face = -1;
  for (int i = 0; i < 4; ++i)
    if (is_zero(cross(c.face(i).frame.n, vec(0, 0, 1)))) face = i;
  ASSERT_GE(face, 0);
  auto l = FieldLayout::vector_on(c.patch(), 1);
  auto v = from_polynomial(l, {Poly3{{{0, 0, 1}, Rational(1)}}, {}, {}});
  EXPECT_TRUE(all_zero(face_tangential_trace(l, c.face(face)).apply(v)));
}

TEST(Pwpoly, SurfaceIdentities) {
  auto c = build_worsey_farin(reference_tetrahedron());
  std::mt19937_64 g(7);
  const int r = 3;
  auto vl = FieldLayout::vector_on(c.patch(), r);
  auto sl = FieldLayout::scalar_on(c.patch(), r);
  auto vl1 = FieldLayout::vector_on(c.patch(), r - 1);
  for (int s = 0; s < 25; ++s) {
    auto psi = random_coeffs(g, vl.size());
    auto u = random_coeffs(g, sl.size());
    for (int i = 0; i < 4; ++i) {
      const FaceSplit& f = c.face(i);
      const Vec3& n = f.frame.n;
      auto tan = FieldLayout::tangent_on(f.patch, r, f.frame);
      auto tan1 = FieldLayout::tangent_on(f.patch, r - 1, f.frame);
      auto psiF = face_tangential_trace(vl, f).apply(psi);
      // curl_F psi_F = curl psi . n
      auto lhs = surface_curl(tan, n).apply(psiF);
      auto rhs = face_normal_trace(vl1, f, n).apply(curl_matrix(vl).apply(psi));
      EXPECT_EQ(lhs, rhs);
      // div_F psi_F = div(P psi), P the tangential projector
      RatMatrix proj(3, 3);
      Rational nn = dot(n, n);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) proj(a, b) = (a == b ? Rational(1) : Rational(0)) - n[a] * n[b] / nn;
      auto ppsi = pointwise(vl, vl, proj).apply(psi);
      lhs = surface_div(tan).apply(psiF);
      rhs = face_trace_scalar(FieldLayout::scalar_on(c.patch(), r - 1), f).apply(div_matrix(vl).apply(ppsi));
      EXPECT_EQ(lhs, rhs);
      // grad_F u_F = P grad u
      auto uF = face_trace_scalar(sl, f).apply(u);
      auto gu = grad_matrix(sl).apply(u);
      EXPECT_EQ(surface_grad(FieldLayout::scalar_on(f.patch, r), tan1).apply(uF), face_tangential_trace(vl1, f).apply(gu));
      // rot_F u_F = grad u x n
      auto gxn = pointwise(vl1, vl1, cross_with(vl1, vl1, n)).apply(gu);
      EXPECT_EQ(surface_rot(FieldLayout::scalar_on(f.patch, r), tan1, n).apply(uF), face_tangential_trace(vl1, f).apply(gxn));
    }
  }
}

TEST(Pwpoly, ElevationCommutesWithDerivative) {
  auto c = build_worsey_farin(reference_tetrahedron());
  std::mt19937_64 g(3);
  for (int r = 1; r <= 3; ++r) {
    auto l = FieldLayout::scalar_on(c.patch(), r);
    auto u = random_coeffs(g, l.size());
    auto a = grad_matrix(l.with_degree(r + 1)).apply(elevate_matrix(l, r + 1).apply(u));
    auto b = elevate_matrix(FieldLayout::vector_on(c.patch(), r - 1), r).apply(grad_matrix(l).apply(u));
    EXPECT_EQ(a, b);
  }
}

TEST(Pwpoly, EvaluateMatchesPolynomial) {
  auto c = build_worsey_farin(reference_tetrahedron());
  std::mt19937_64 g(11);
  Poly3 p = random_poly(g, 3);
  auto l = FieldLayout::scalar_on(c.patch(), 3);
  PiecewiseField f{l, from_polynomial(l, {p})};
  for (const Point& x : {vec(0, 0, 0), c.z(), Point{frac(1, 5), frac(1, 7), frac(1, 3)}}) {
    EXPECT_EQ(evaluate(f, x)[0], poly_eval(p, x));
  }
  auto mu = hat_function(c);
  EXPECT_EQ(evaluate(mu, c.z())[0], Rational(1));
  for (int i = 0; i < 4; ++i) EXPECT_EQ(evaluate(mu, c.macro_vertices()[i])[0], Rational(0));
  auto v = elevate_matrix(l, 4).apply(f.coeffs);
  EXPECT_EQ(sub(v, from_polynomial(l.with_degree(4), {p})), std::vector<Rational>(v.size()));
}
