#include "wfseq/globalfe.hpp"

#include <random>

namespace wfseq {

TwoTet build_twotet(const std::array<Point, 3>& f, const Point& apex1, const Point& apex2,
                    const std::optional<Point>& z1in, const std::optional<Point>& z2in) {
  std::array<Point, 4> x1{f[0], f[1], f[2], apex1};
  std::array<Point, 4> x2{f[0], f[1], f[2], apex2};
  Vec3 n = cross(f[1] - f[0], f[2] - f[0]);
  if (is_zero(n)) throw Error(ErrorCode::DegenerateSimplex, "shared face has zero area");
  Rational s1 = dot(n, apex1 - f[0]), s2 = dot(n, apex2 - f[0]);
  if (sgn(s1) == 0 || sgn(s2) == 0) throw Error(ErrorCode::DegenerateSimplex, "apex on the shared face plane");
  if (sgn(s1) == sgn(s2)) throw Error(ErrorCode::ConfigError, "apexes on the same side of the shared face");
  Point z1 = z1in ? *z1in : Rational(1, 4) * (x1[0] + x1[1] + x1[2] + x1[3]);
  Point z2 = z2in ? *z2in : Rational(1, 4) * (x2[0] + x2[1] + x2[2] + x2[3]);

  // [z1, z2] meets the plane of F at m
  Rational d1 = dot(n, z1 - f[0]), d2 = dot(n, z2 - f[0]);
  if (sgn(d1) == 0 || sgn(d2) == 0 || sgn(d1) == sgn(d2))
    throw Error(ErrorCode::PointNotInterior, "segment between the interior points misses the shared face");
  Rational t = d1 / (d1 - d2);
  Point m = z1 + t * (z2 - z1);
  for (int a = 0; a < 3; ++a) {
    Vec3 u = f[(a + 1) % 3] - f[a];
    if (sgn(dot(cross(u, m - f[a]), n)) <= 0)
      throw Error(ErrorCode::PointNotInterior, "segment between the interior points misses the shared face");
  }

  TwoTet g;
  SplitOptions o1;
  o1.z = z1;
  o1.face_points[TwoTet::kFace] = m;
  g.t1 = build_worsey_farin(x1, o1);
  SplitOptions o2;
  o2.z = z2;
  o2.face_points[TwoTet::kFace] = m;
  o2.normal_override[TwoTet::kFace] = g.t1.face(TwoTet::kFace).frame.n;
  g.t2 = build_worsey_farin(x2, o2);
  return g;
}

const TwoTet& reference_twotet() {
  static const TwoTet g = build_twotet({vec(0, 0, 0), vec(1, 0, 0), vec(0, 1, 0)}, vec(0, 0, 1), vec(1, 1, -2));
  return g;
}

PairLayout pair_layout(Family f, int degree, const TwoTet& g) {
  return {layout_for(f, degree, Domain::of(g.t1)), layout_for(f, degree, Domain::of(g.t2))};
}

namespace {

std::vector<int> triangle_cells(const FaceSplit& f) {
  return {f.cell_of_triangle[0], f.cell_of_triangle[1], f.cell_of_triangle[2]};
}

SparseMatrix zeros(std::size_t r, std::size_t c) { return SparseMatrix(r, c); }

PairLayout with_degree(const PairLayout& l, int d, bool scalar) {
  if (scalar) return {FieldLayout::scalar_on(*l.l1.patch, d), FieldLayout::scalar_on(*l.l2.patch, d)};
  return {FieldLayout::vector_on(*l.l1.patch, d), FieldLayout::vector_on(*l.l2.patch, d)};
}

SparseMatrix face_trace(const FieldLayout& l, const FaceSplit& f) {
  return trace_matrix(l, {&f.patch, l.degree, l.frame}, triangle_cells(f));
}

SparseMatrix pair_dot(const PairLayout& l, const Vec3& d) {
  PairLayout sc = with_degree(l, l.l1.degree, true);
  return pair_operator(pointwise(l.l1, sc.l1, dot_with(l.l1, d)), pointwise(l.l2, sc.l2, dot_with(l.l2, d)));
}

PairLayout diff_target(DiffOp op, const PairLayout& l) { return with_degree(l, l.l1.degree - 1, op == DiffOp::Div); }

}  // namespace

SparseMatrix pair_operator(const SparseMatrix& m1, const SparseMatrix& m2) {
  return vstack(hstack(m1, zeros(m1.rows(), m2.cols())), hstack(zeros(m2.rows(), m1.cols()), m2));
}

SparseMatrix pair_diff(DiffOp op, const PairLayout& l) {
  PairLayout out = diff_target(op, l);
  if (l.l1.degree <= 0) return zeros(out.size(), l.size());
  return pair_operator(diff_matrix(op, *l.l1.patch, l.l1.degree), diff_matrix(op, *l.l2.patch, l.l2.degree));
}

SparseMatrix face_difference(const TwoTet& g, const PairLayout& l) {
  return hstack(face_trace(l.l1, g.face1()), scale(face_trace(l.l2, g.face2()), Rational(-1)));
}

SparseMatrix theta_matrix(const TwoTet& g, int k, const PairLayout& l) {
  if (!l.l1.scalar()) throw Error(ErrorCode::DimensionMismatch, "theta acts on scalar fields");
  auto side = [&](const FieldLayout& li, const FaceSplit& f) {
    FieldLayout fs{&f.patch, li.degree, {}};
    const CtEdge& e = f.edges[static_cast<std::size_t>(k)];
    return edge_jump(fs, e.patch, e) * face_trace(li, f);
  };
  if (l.l1.degree < 0) return zeros(0, l.size());
  return hstack(side(l.l1, g.face1()), scale(side(l.l2, g.face2()), Rational(-1)));
}

PairSpace pair_space(const SpaceSpec& spec, const TwoTet& g, const SparseMatrix& rows, const std::string& name) {
  SpacePtr x1 = build_space(spec, Domain::of(g.t1));
  SpacePtr x2 = build_space(spec, Domain::of(g.t2));
  PairSpace p;
  p.name = name;
  p.layout = {x1->layout, x2->layout};
  SparseMatrix b = pair_operator(x1->basis(), x2->basis());
  if (rows.rows() == 0) {
    p.basis = b;
  } else {
    if (rows.cols() != p.layout.size()) throw Error(ErrorCode::DimensionMismatch, "rows do not act on the pair");
    p.basis = b * nullspace(rows * b);
  }
  p.ambient = vstack(pair_operator(x1->ambient, x2->ambient), rows.rows() ? rows : zeros(0, p.layout.size()));
  return p;
}

PairSpace glued_space(DofLemma l, int r, const TwoTet& g) {
  FunctionalSet f1 = build_dofs(l, r, g.t1);
  FunctionalSet f2 = build_dofs(l, r, g.t2);
  std::vector<std::size_t> s1, s2;
  for (std::size_t i = 0; i < f1.functionals.size(); ++i)
    if (on_face(f1.functionals[i], g.t1, TwoTet::kFace)) s1.push_back(i);
  for (std::size_t i = 0; i < f2.functionals.size(); ++i)
    if (on_face(f2.functionals[i], g.t2, TwoTet::kFace)) s2.push_back(i);
  if (s1.size() != s2.size()) throw Error(ErrorCode::InterfaceMismatch, "shared-face DOF counts differ");
  SparseMatrix rows = hstack(f1.rows.select_rows(s1), scale(f2.rows.select_rows(s2), Rational(-1)));
  return pair_space(lemma_target(l, r), g, rows, std::string(lemma_name(l)) + " glued");
}

PairSpace smooth_space(DofLemma l, int r, const TwoTet& g) {
  SpaceSpec spec = lemma_target(l, r);
  PairLayout pl = pair_layout(spec.family, spec.degree, g);
  std::vector<SparseMatrix> rows;
  auto derivative_too = [&](DiffOp op) {
    rows.push_back(face_difference(g, diff_target(op, pl)) * pair_diff(op, pl));
  };
  auto thetas = [&](const SparseMatrix& to_scalar, const PairLayout& sc) {
    for (int k = 0; k < 3; ++k) rows.push_back(theta_matrix(g, k, sc) * to_scalar);
  };
  const Vec3& n = g.face1().frame.n;
  switch (l) {
    case DofLemma::S0: rows.push_back(face_difference(g, pl)); derivative_too(DiffOp::Grad); break;
    case DofLemma::S1: rows.push_back(face_difference(g, pl)); derivative_too(DiffOp::Curl); break;
    case DofLemma::S2: rows.push_back(face_difference(g, pl)); derivative_too(DiffOp::Div); break;
    case DofLemma::L1:
    case DofLemma::L2:
    case DofLemma::L3: rows.push_back(face_difference(g, pl)); break;
    case DofLemma::V2: {
      rows.push_back(hstack(face_normal_trace(pl.l1, g.face1(), n),
                            scale(face_normal_trace(pl.l2, g.face2(), n), Rational(-1))));
      PairLayout sc = with_degree(pl, spec.degree, true);
      for (int k = 0; k < 3; ++k) rows.push_back(theta_matrix(g, k, sc) * pair_dot(pl, g.face1().edges[k].t));
      break;
    }
    case DofLemma::V3a: thetas(SparseMatrix::identity(pl.size()), pl); break;
    case DofLemma::V3: break;
  }
  std::vector<const SparseMatrix*> ptr;
  for (const auto& m : rows) ptr.push_back(&m);
  SparseMatrix all = ptr.empty() ? zeros(0, pl.size()) : vstack(ptr);
  return pair_space(spec, g, all, std::string(lemma_name(l)) + " smooth");
}

namespace {

std::vector<Rational> random_combination(const SparseMatrix& basis, std::mt19937_64& g) {
  std::vector<Rational> w(basis.cols());
  for (auto& x : w) x = random_rational(g);
  return basis.apply(w);
}

bool all_zero(const std::vector<Rational>& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

}  // namespace

ConformityReport check_global_conformity(DofLemma l, int r, int samples, std::uint64_t seed) {
  const TwoTet& g = reference_twotet();
  ConformityReport rep;
  rep.lemma = l;
  rep.r = r;
  rep.samples = samples;
  FunctionalSet f1 = build_dofs(l, r, g.t1);
  for (const auto& fn : f1.functionals) rep.face_dofs += on_face(fn, g.t1, TwoTet::kFace);
  PairSpace glued = glued_space(l, r, g);
  PairSpace smooth = smooth_space(l, r, g);
  rep.glued_dim = glued.dim();
  rep.smooth_dim = smooth.dim();
  rep.contained = (smooth.ambient * glued.basis).nnz() == 0;
  std::mt19937_64 rng(seed ^ std::stoull(fnv1a(lemma_name(l)), nullptr, 16) ^ static_cast<std::uint64_t>(r));
  std::vector<std::vector<Rational>> trace;
  for (int s = 0; s < samples; ++s) {
    auto u = random_combination(glued.basis, rng);
    rep.sample_ok += all_zero(smooth.ambient.apply(u));
    trace.push_back(std::move(u));
  }
  rep.digest = digest_of(trace);
  return rep;
}

std::vector<PropertyReport> check_theta_properties(int r, int samples, std::uint64_t seed) {
  const TwoTet& g = reference_twotet();
  std::mt19937_64 rng(seed ^ 0x7e7aULL ^ static_cast<std::uint64_t>(r));
  std::vector<PropertyReport> out;
  for (DiffOp op : {DiffOp::Curl, DiffOp::Div}) {
    PropertyReport rep;
    rep.r = r;
    rep.samples = samples;
    Family fam = op == DiffOp::Curl ? Family::L1 : Family::L2;
    rep.name = op == DiffOp::Curl ? "theta of curl w . t on continuous L1" : "theta of div v on continuous L2";
    PairLayout pl = pair_layout(fam, r, g);
    PairSpace cont = pair_space({fam, r, Bc::None}, g, face_difference(g, pl), "continuous");
    PairSpace broken = pair_space({fam, r, Bc::None}, g, SparseMatrix(0, pl.size()), "broken");
    SparseMatrix d = pair_diff(op, pl);
    PairLayout dl = diff_target(op, pl);
    std::vector<SparseMatrix> rows;
    for (int k = 0; k < 3; ++k) {
      PairLayout sc = with_degree(dl, dl.l1.degree, true);
      SparseMatrix to_scalar = op == DiffOp::Curl ? pair_dot(dl, g.face1().edges[k].t) : SparseMatrix::identity(dl.size());
      rows.push_back(theta_matrix(g, k, sc) * (to_scalar * d));
    }
    SparseMatrix theta = vstack(vstack(rows[0], rows[1]), rows[2]);
    rep.exact = (theta * cont.basis).nnz() == 0;
    std::vector<std::vector<Rational>> trace;
    for (int s = 0; s < samples; ++s) {
      auto u = random_combination(cont.basis, rng);
      auto th = theta.apply(u);
      rep.held += all_zero(th);
      trace.push_back(std::move(th));
    }
    rep.witness = !all_zero(theta.apply(random_combination(broken.basis, rng)));
    rep.digest = digest_of(trace);
    out.push_back(rep);
  }
  return out;
}

PropertyReport check_appendix_identity(int r, int samples, std::uint64_t seed) {
  const SplitComplex& c = reference_split();
  Domain d = Domain::of(c);
  PropertyReport rep;
  rep.name = "curl jump equals normal-derivative jump";
  rep.r = r;
  rep.samples = samples;
  rep.exact = true;
  std::mt19937_64 rng(seed ^ 0xa1ULL ^ static_cast<std::uint64_t>(r));
  SpacePtr l1 = build_space(Family::L1, r, Bc::None, d);
  const FieldLayout& l = l1->layout;
  FieldLayout lv = FieldLayout::vector_on(c.patch(), r - 1);
  FieldLayout ls = FieldLayout::scalar_on(c.patch(), r);
  FieldLayout ld = FieldLayout::scalar_on(c.patch(), r - 1);
  SparseMatrix curl = r > 0 ? curl_matrix(l) : SparseMatrix(lv.size(), l.size());
  std::vector<SparseMatrix> identity(4);
  std::vector<SpacePtr> constrained(4);
  for (int i = 0; i < 4; ++i) {
    const FaceSplit& f = c.face(i);
    const Vec3& n = f.frame.n;
    SparseMatrix vn = pointwise(l, ls, dot_with(l, n));
    SparseMatrix gvn = r > 0 ? grad_matrix(ls) * vn : SparseMatrix(lv.size(), l.size());
    SparseMatrix rows(0, l.size());
    FieldLayout fs = FieldLayout::scalar_on(f.patch, r - 1);
    for (const CtEdge& e : f.edges) {
      SparseMatrix lhs = scale(pointwise(lv, ld, dot_with(lv, e.t)) * curl, dot(n, n));
      SparseMatrix rhs = pointwise(lv, ld, dot_with(lv, e.s)) * gvn;
      SparseMatrix jump = edge_jump(fs, e.patch, e) * face_trace_scalar(ld, f);
      SparseMatrix m = jump * (lhs - rhs);
      for (std::size_t k = 0; k < m.rows(); ++k) rows.append_row(m.row(k));
    }
    identity[static_cast<std::size_t>(i)] = rows;
    constrained[static_cast<std::size_t>(i)] = subspace_kernel(*l1, face_tangential_trace(l, f), "v x n = 0");
    rep.exact = rep.exact && (rows * constrained[static_cast<std::size_t>(i)]->basis()).nnz() == 0;
  }
  std::vector<std::vector<Rational>> trace;
  for (int s = 0; s < samples; ++s) {
    std::size_t i = static_cast<std::size_t>(s % 4);
    auto v = random_member(*constrained[i], rng);
    rep.held += all_zero(identity[i].apply(v));
    trace.push_back(std::move(v));
  }
  // on a face whose interior faces through e are perpendicular to it the identity needs no
  // constraint, so the witness may use any face
  auto v = random_member(*l1, rng);
  for (const auto& m : identity) rep.witness = rep.witness || !all_zero(m.apply(v));
  rep.digest = digest_of(trace);
  return rep;
}

PropertyReport check_tangential_trace_div(int r, int samples, std::uint64_t seed) {
  const SplitComplex& c = reference_split();
  PropertyReport rep;
  rep.name = "ring V2 tangential trace is div-conforming";
  rep.r = r;
  rep.samples = samples;
  std::mt19937_64 rng(seed ^ 0xb1ULL ^ static_cast<std::uint64_t>(r));
  SpacePtr ring = build_space(Family::V2, r, Bc::Zero, Domain::of(c));
  SpacePtr full = build_space(Family::V2, r, Bc::None, Domain::of(c));
  SparseMatrix rows(0, ring->layout.size());
  for (int i = 0; i < 4; ++i) {
    const FaceSplit& f = c.face(i);
    SpacePtr vdiv = build_space(Family::ctVdiv1, r, Bc::None, Domain::of(f));
    SparseMatrix m = vdiv->ambient * face_tangential_trace(ring->layout, f);
    for (std::size_t k = 0; k < m.rows(); ++k) rows.append_row(m.row(k));
  }
  rep.exact = (rows * ring->basis()).nnz() == 0;
  std::vector<std::vector<Rational>> trace;
  for (int s = 0; s < samples; ++s) {
    auto v = random_member(*ring, rng);
    rep.held += all_zero(rows.apply(v));
    trace.push_back(std::move(v));
  }
  rep.witness = !all_zero(rows.apply(random_member(*full, rng)));
  rep.digest = digest_of(trace);
  return rep;
}

PropertyReport check_surface_div_continuity(int r, int samples, std::uint64_t seed) {
  const SplitComplex& c = reference_split();
  Domain d = Domain::of(c);
  PropertyReport rep;
  rep.name = "surface divergence continuity";
  rep.r = r;
  rep.samples = samples;
  std::mt19937_64 rng(seed ^ 0xb2ULL ^ static_cast<std::uint64_t>(r));
  SpacePtr base = intersect(*build_space(Family::L2, r, Bc::None, d), *build_space(Family::V2, r, Bc::Zero, d));
  const FieldLayout& l = base->layout;
  FieldLayout ld = FieldLayout::scalar_on(c.patch(), r - 1);
  SparseMatrix div = r > 0 ? div_matrix(l) : SparseMatrix(ld.size(), l.size());
  SparseMatrix hyp(0, l.size()), concl(0, l.size());
  for (int i = 0; i < 4; ++i) {
    const FaceSplit& f = c.face(i);
    FieldLayout fs = FieldLayout::scalar_on(f.patch, r - 1);
    FieldLayout ft = FieldLayout::tangent_on(f.patch, r, f.frame);
    SparseMatrix h = lagrange_rows(fs) * (face_trace_scalar(ld, f) * div);
    SparseMatrix sd = r > 0 ? surface_div(ft) * face_tangential_trace(l, f) : SparseMatrix(fs.size(), l.size());
    SparseMatrix k = lagrange_rows(fs) * sd;
    for (std::size_t j = 0; j < h.rows(); ++j) hyp.append_row(h.row(j));
    for (std::size_t j = 0; j < k.rows(); ++j) concl.append_row(k.row(j));
  }
  SpacePtr s = subspace_kernel(*base, hyp, "continuous div trace");
  rep.exact = (concl * s->basis()).nnz() == 0;
  std::vector<std::vector<Rational>> trace;
  for (int t = 0; t < samples; ++t) {
    auto v = random_member(*s, rng);
    rep.held += all_zero(concl.apply(v));
    trace.push_back(std::move(v));
  }
  rep.witness = !all_zero(concl.apply(random_member(*base, rng)));
  rep.digest = digest_of(trace);
  return rep;
}

namespace {

// Bernstein polynomial B^r_a at barycentric coordinates lam.
Rational bernstein(int r, const MultiIndex& a, const std::vector<Rational>& lam) {
  Rational v = factorial(r);
  for (std::size_t i = 0; i < lam.size(); ++i) {
    v /= factorial(a[i]);
    for (int k = 0; k < a[i]; ++k) v *= lam[i];
  }
  return v;
}

// Coefficients on cell c2 of p2 of the polynomials given on cell c1 of p1.
RatMatrix cell_extension(const Patch& p1, std::size_t c1, const Patch& p2, std::size_t c2, int r) {
  const IndexSet& is = index_set(4, r);
  const std::size_t n = is.size();
  RatMatrix e(n, n), col(n, n);
  for (std::size_t b = 0; b < n; ++b) {
    Point x = vec(0, 0, 0);
    std::vector<Rational> lam2(4);
    for (int i = 0; i < 4; ++i) {
      lam2[i] = r == 0 ? Rational(1, 4) : frac(is[b][i], r);
      x = x + lam2[i] * p2.point(p2.cell(c2)[i]);
    }
    std::vector<Rational> lam1 = p1.barycentric(c1, x);
    for (std::size_t a = 0; a < n; ++a) {
      e(b, a) = bernstein(r, is[a], lam1);
      col(b, a) = bernstein(r, is[a], lam2);
    }
  }
  return inverse(col) * e;
}

// Extension from the cells of t1 at F to the cells of t2 at F; other t2 cells get zero.
SparseMatrix extension_matrix(const TwoTet& g, const FieldLayout& l1, const FieldLayout& l2) {
  TripletBuilder t(l2.size(), l1.size());
  for (int c1 : g.t1.alfeld_cells(TwoTet::kFace)) {
    const auto& ids = g.t1.patch().cell(static_cast<std::size_t>(c1));
    int c2 = g.t2.patch().cell_containing(ids);
    RatMatrix m = cell_extension(g.t1.patch(), static_cast<std::size_t>(c1), g.t2.patch(), static_cast<std::size_t>(c2),
                                 l1.degree);
    for (std::size_t b = 0; b < l2.nbasis(); ++b)
      for (std::size_t a = 0; a < l1.nbasis(); ++a)
        if (sgn(m(b, a)) != 0)
          for (int j = 0; j < l1.ncomp(); ++j)
            t.add(l2.index(static_cast<std::size_t>(c2), b, j), l1.index(static_cast<std::size_t>(c1), a, j), m(b, a));
  }
  return t.build();
}

// Rows on a t2 field: agreement of the two one-sided traces on each interior face [z, m_F, y].
SparseMatrix interior_face_agreement(const TwoTet& g, const FieldLayout& l) {
  const Patch& p = g.t2.patch();
  const int m = SplitComplex::face_point(TwoTet::kFace);
  SparseMatrix rows(0, l.size());
  for (int y : g.face2().y) {
    std::vector<int> ids{y, m, SplitComplex::kZ};
    std::sort(ids.begin(), ids.end());
    std::vector<int> cells;
    for (int c : g.t2.alfeld_cells(TwoTet::kFace)) {
      const auto& cv = p.cell(static_cast<std::size_t>(c));
      if (std::find(cv.begin(), cv.end(), y) != cv.end()) cells.push_back(c);
    }
    Patch tri(2, p.points(), {ids});
    FieldLayout tl{&tri, l.degree, l.frame};
    SparseMatrix m0 = trace_matrix(l, tl, {cells[0]}) - trace_matrix(l, tl, {cells[1]});
    for (std::size_t k = 0; k < m0.rows(); ++k) rows.append_row(m0.row(k));
  }
  return rows;
}

}  // namespace

PropertyReport check_extension(int r, int smoothness, int samples, std::uint64_t seed) {
  const TwoTet& g = reference_twotet();
  PropertyReport rep;
  rep.name = smoothness == 1 ? "C1 extension across F" : "C0 extension across F";
  rep.r = r;
  rep.samples = samples;
  std::mt19937_64 rng(seed ^ 0xe1ULL ^ static_cast<std::uint64_t>(r) ^ static_cast<std::uint64_t>(smoothness));
  Family fam = smoothness == 1 ? Family::S0 : Family::V0;
  Family weaker = smoothness == 1 ? Family::V0 : Family::V3;
  SpacePtr x = build_space(fam, r, Bc::None, Domain::of(g.t1));
  SpacePtr w = build_space(weaker, r, Bc::None, Domain::of(g.t1));
  const FieldLayout& l1 = x->layout;
  FieldLayout l2 = layout_for(fam, r, Domain::of(g.t2));
  SparseMatrix ext = extension_matrix(g, l1, l2);
  SparseMatrix rows = interior_face_agreement(g, l2);
  if (smoothness == 1 && r > 0) {
    FieldLayout lg = FieldLayout::vector_on(g.t2.patch(), r - 1);
    rows = vstack(rows, interior_face_agreement(g, lg) * grad_matrix(l2));
  }
  SparseMatrix check = rows * ext;
  rep.exact = (check * x->basis()).nnz() == 0;
  std::vector<std::vector<Rational>> trace;
  for (int s = 0; s < samples; ++s) {
    auto v = random_member(*x, rng);
    rep.held += all_zero(check.apply(v));
    trace.push_back(ext.apply(v));
  }
  rep.witness = !all_zero(check.apply(random_member(*w, rng)));
  rep.digest = digest_of(trace);
  return rep;
}

bool GluedComplexReport::ok() const {
  if (maps_into.size() != 3 || !composes_zero) return false;
  for (bool b : maps_into)
    if (!b) return false;
  return true;
}

GluedComplexReport check_glued_complex(const std::string& diagram, int r) {
  const TwoTet& g = reference_twotet();
  GluedComplexReport rep;
  rep.diagram = diagram;
  rep.r = r;
  auto lemmas = diagram_lemmas(diagram);
  std::vector<PairSpace> sp;
  for (DofLemma l : lemmas) {
    sp.push_back(glued_space(l, r, g));
    rep.dims.push_back(sp.back().dim());
  }
  const DiffOp ops[] = {DiffOp::Grad, DiffOp::Curl, DiffOp::Div};
  rep.composes_zero = true;
  std::vector<SparseMatrix> img;
  for (int k = 0; k < 3; ++k) {
    SparseMatrix d = pair_diff(ops[k], sp[k].layout);
    SparseMatrix im = d * sp[k].basis;
    rep.maps_into.push_back((sp[k + 1].ambient * im).nnz() == 0);
    if (k < 2) {
      SparseMatrix next = pair_diff(ops[k + 1], sp[k + 1].layout);
      rep.composes_zero = rep.composes_zero && (next * im).nnz() == 0;
    }
  }
  return rep;
}

}  // namespace wfseq
