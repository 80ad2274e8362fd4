#include "wfseq/dofproj.hpp"

#include <map>
#include <mutex>
#include <random>
#include <tuple>

namespace wfseq {

const char* lemma_name(DofLemma l) {
  switch (l) {
    case DofLemma::S0: return "S0";
    case DofLemma::L1: return "L1";
    case DofLemma::V2: return "V2";
    case DofLemma::V3: return "V3";
    case DofLemma::S1: return "S1";
    case DofLemma::L2: return "L2";
    case DofLemma::V3a: return "V3a";
    case DofLemma::S2: return "S2";
    case DofLemma::L3: return "L3";
  }
  return "?";
}

std::vector<DofLemma> all_lemmas() {
  using D = DofLemma;
  return {D::S0, D::L1, D::V2, D::V3, D::S1, D::L2, D::V3a, D::S2, D::L3};
}

DofLemma parse_lemma(const std::string& s) {
  for (DofLemma l : all_lemmas())
    if (s == lemma_name(l)) return l;
  throw Error(ErrorCode::UnknownFamily, "unknown DOF set " + s);
}

SpaceSpec lemma_target(DofLemma l, int r) {
  using F = Family;
  switch (l) {
    case DofLemma::S0: return {F::S0, r, Bc::None};
    case DofLemma::L1: return {F::L1, r - 1, Bc::None};
    case DofLemma::V2: return {F::V2, r - 2, Bc::None};
    case DofLemma::V3: return {F::V3, r - 3, Bc::None};
    case DofLemma::S1: return {F::S1, r - 1, Bc::None};
    case DofLemma::L2: return {F::L2, r - 2, Bc::None};
    case DofLemma::V3a: return {F::V3, r - 3, Bc::None};
    case DofLemma::S2: return {F::S2, r - 2, Bc::None};
    case DofLemma::L3: return {F::L3, r - 3, Bc::None};
  }
  return {};
}

int lemma_min_degree(DofLemma l) { return l == DofLemma::S2 || l == DofLemma::L3 ? 4 : 3; }

bool on_face(const Functional& f, const SplitComplex& c, int i) {
  switch (f.kind) {
    case Carrier::Vertex: return c.on_macro_face(f.carrier, i);
    case Carrier::Edge: {
      const MacroEdge& e = c.macro_edges()[static_cast<std::size_t>(f.carrier)];
      return c.on_macro_face(e.a, i) && c.on_macro_face(e.b, i);
    }
    case Carrier::FaceEdge: return f.carrier / 3 == i;
    case Carrier::Face: return f.carrier == i;
    case Carrier::Cell: return false;
  }
  return false;
}

long FunctionalSet::printed_total() const {
  long t = 0;
  for (const auto& c : classes) t += c.printed;
  return t;
}

namespace {

// A field derived linearly from the input coefficients.
struct Field {
  FieldLayout layout;
  SparseMatrix map;  // layout.size() x input size
};

Field derive(const Field& f, const FieldLayout& out, const std::function<SparseMatrix()>& op) {
  if (f.layout.size() == 0 || out.size() == 0) return {out, SparseMatrix(out.size(), f.map.cols())};
  return {out, op() * f.map};
}

Field grad(const Field& f) {
  return derive(f, FieldLayout::vector_on(*f.layout.patch, f.layout.degree - 1), [&] { return grad_matrix(f.layout); });
}
Field curl(const Field& f) {
  return derive(f, FieldLayout::vector_on(*f.layout.patch, f.layout.degree - 1), [&] { return curl_matrix(f.layout); });
}
Field div(const Field& f) {
  return derive(f, FieldLayout::scalar_on(*f.layout.patch, f.layout.degree - 1), [&] { return div_matrix(f.layout); });
}
Field dot(const Field& f, const Vec3& d) {
  FieldLayout out = FieldLayout::scalar_on(*f.layout.patch, f.layout.degree);
  return derive(f, out, [&] { return pointwise(f.layout, out, dot_with(f.layout, d)); });
}

std::vector<int> triangle_cells(const FaceSplit& f) {
  return {f.cell_of_triangle[0], f.cell_of_triangle[1], f.cell_of_triangle[2]};
}

// Restriction to the face patch, components unchanged.
Field on_face(const Field& f, const FaceSplit& face) {
  FieldLayout out{&face.patch, f.layout.degree, f.layout.frame};
  return derive(f, out, [&] { return trace_matrix(f.layout, out, triangle_cells(face)); });
}
Field normal_on_face(const Field& f, const FaceSplit& face) {
  FieldLayout out = FieldLayout::scalar_on(face.patch, f.layout.degree);
  return derive(f, out, [&] { return face_normal_trace(f.layout, face, face.frame.n); });
}
Field tangential_on_face(const Field& f, const FaceSplit& face) {
  FieldLayout out = FieldLayout::tangent_on(face.patch, f.layout.degree, face.frame);
  return derive(f, out, [&] { return face_tangential_trace(f.layout, face); });
}
Field on_edge(const Field& f, const Patch& edge) {
  FieldLayout out{&edge, f.layout.degree, f.layout.frame};
  return derive(f, out, [&] { return trace_matrix(f.layout, out); });
}

struct Tests {
  FieldLayout layout;
  SparseMatrix basis;  // columns in layout coordinates
};

Tests space_tests(const SpacePtr& s) { return {s->layout, s->basis()}; }

// Independent columns of d * basis(s).
Tests image_tests(const SpacePtr& s, const FieldLayout& out, const std::function<SparseMatrix()>& d) {
  if (s->dim() == 0 || out.size() == 0) return {out, SparseMatrix(out.size(), 0)};
  SparseMatrix img = d() * s->basis();
  return {out, img.select_cols(independent_columns(img))};
}

class Builder {
 public:
  Builder(FunctionalSet& s, const std::string& prefix) : s_(s), prefix_(prefix) {}

  void open(const std::string& tag, long printed) {
    DofClass c;
    c.tag = prefix_ + ":" + tag;
    c.printed = std::max(0L, printed);
    c.begin = rows_.size();
    s_.classes.push_back(c);
  }

  void add(const SparseMatrix& m, Carrier kind, int carrier) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      rows_.push_back(m.row(i));
      s_.functionals.push_back({s_.classes.size() - 1, kind, carrier, static_cast<int>(i)});
      s_.classes.back().end = rows_.size();
    }
    s_.classes.back().end = rows_.size();
  }

  void finish(std::size_t cols) {
    SparseMatrix m(0, cols);
    for (auto& r : rows_) m.append_row(std::move(r));
    s_.rows = std::move(m);
  }

 private:
  FunctionalSet& s_;
  std::string prefix_;
  std::vector<SparseVec> rows_;
};

// rows = tests^T M(test, field) field.map
SparseMatrix moments(const Field& f, const Tests& t) {
  if (t.basis.cols() == 0) return SparseMatrix(0, f.map.cols());
  if (f.layout.size() == 0) return SparseMatrix(t.basis.cols(), f.map.cols());
  return t.basis.transpose() * (mass_matrix(t.layout, f.layout) * f.map);
}

// Moments against all of P_k (scalar) or [P_k]^3 on the field's patch.
SparseMatrix full_moments(const Field& f, int k) {
  if (k < 0) return SparseMatrix(0, f.map.cols());
  FieldLayout tl{f.layout.patch, k, f.layout.frame};
  return moments(f, {tl, SparseMatrix::identity(tl.size())});
}

void vertex_values(Builder& b, const Field& f) {
  const Patch& p = *f.layout.patch;
  for (int a = 0; a < 4; ++a) {
    SparseMatrix m(0, f.map.cols());
    for (int j = 0; j < f.layout.ncomp(); ++j) {
      if (f.layout.degree < 0) {
        m.append_row({});
        continue;
      }
      int cell = p.cell_containing({a});
      const auto& cv = p.cell(cell);
      MultiIndex idx{};
      idx[std::find(cv.begin(), cv.end(), a) - cv.begin()] = f.layout.degree;
      auto bi = static_cast<std::size_t>(f.layout.indices().find(idx));
      m.append_row(f.map.row(f.layout.index(cell, bi, j)));
    }
    b.add(m, Carrier::Vertex, a);
  }
}

void edge_moments(Builder& b, const SplitComplex& c, const Field& f, int k) {
  const auto& edges = c.macro_edges();
  for (std::size_t e = 0; e < edges.size(); ++e) b.add(full_moments(on_edge(f, edges[e].patch), k), Carrier::Edge, static_cast<int>(e));
}

void edge_normal_moments(Builder& b, const SplitComplex& c, const Field& g, int k) {
  const auto& edges = c.macro_edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    Field ge = on_edge(g, edges[e].patch);
    b.add(full_moments(dot(ge, edges[e].n_plus), k), Carrier::Edge, static_cast<int>(e));
    b.add(full_moments(dot(ge, edges[e].n_minus), k), Carrier::Edge, static_cast<int>(e));
  }
}

void jump_moments(Builder& b, const SplitComplex& c, const Field& f, bool along_edge, int k_eF, int k_other) {
  for (int i = 0; i < 4; ++i) {
    const FaceSplit& face = c.face(i);
    Field g = on_face(f, face);
    SparseMatrix rows = g.layout.size() == 0
                            ? SparseMatrix(0, f.map.cols())
                            : jump_moment_rows(g.layout, face, along_edge, k_eF, k_other) * g.map;
    if (g.layout.size() == 0) {
      // identically zero field: zero functionals, one per test function
      for (int k = 0; k < 3; ++k) {
        int deg = face.edges[k].singular ? k_eF : k_other;
        for (int j = 0; j <= deg; ++j) rows.append_row({});
      }
    }
    b.add(rows, Carrier::FaceEdge, 3 * i);
  }
}

template <class FieldOnFace, class TestsOnFace>
void face_moments(Builder& b, const SplitComplex& c, FieldOnFace field, TestsOnFace tests) {
  for (int i = 0; i < 4; ++i) b.add(moments(field(c.face(i)), tests(c.face(i))), Carrier::Face, i);
}

void integral(Builder& b, const Field& f) {
  SparseMatrix m(0, f.map.cols());
  if (f.layout.size() == 0) m.append_row({});
  else m = integral_row(f.layout) * f.map;
  b.add(m, Carrier::Cell, -1);
}

// ------------------------------------------------------------------ test spaces

Domain face_domain(const FaceSplit& f) { return Domain::of(f); }

Tests grad_f_ring_s0(const FaceSplit& f, int r) {
  auto s = build_space(Family::ctS0, r, Bc::Zero, face_domain(f));
  FieldLayout out = FieldLayout::tangent_on(f.patch, r - 1, f.frame);
  return image_tests(s, out, [&] { return surface_grad(s->layout, out); });
}

Tests face_space(const FaceSplit& f, Family fam, int r, Bc bc = Bc::None) {
  return space_tests(build_space(fam, r, bc, face_domain(f)));
}

Tests mean_zero_l0(const FaceSplit& f, int r) {
  auto s = build_space(Family::ctL0, r, Bc::None, face_domain(f));
  if (s->dim() == 0) return space_tests(s);
  return space_tests(subspace_kernel(*s, integral_row(s->layout), "mean zero"));
}

Tests grad_of(const SplitComplex& c, Family fam, int r, Bc bc) {
  auto s = build_space(fam, r, bc, Domain::of(c));
  FieldLayout out = FieldLayout::vector_on(c.patch(), r - 1);
  return image_tests(s, out, [&] { return grad_matrix(s->layout); });
}
Tests curl_of(const SplitComplex& c, Family fam, int r, Bc bc) {
  auto s = build_space(fam, r, bc, Domain::of(c));
  FieldLayout out = FieldLayout::vector_on(c.patch(), r - 1);
  return image_tests(s, out, [&] { return curl_matrix(s->layout); });
}
Tests div_of(const SplitComplex& c, Family fam, int r, Bc bc) {
  auto s = build_space(fam, r, bc, Domain::of(c));
  FieldLayout out = FieldLayout::scalar_on(c.patch(), r - 1);
  return image_tests(s, out, [&] { return div_matrix(s->layout); });
}
Tests cell_space(const SplitComplex& c, Family fam, int r, Bc bc) {
  return space_tests(build_space(fam, r, bc, Domain::of(c)));
}

// ------------------------------------------------------------------ the nine sets

void dofs_s0(Builder& b, const SplitComplex& c, const Field& q, int r) {
  Field g = grad(q);
  b.open("a vertex value", 4);
  vertex_values(b, q);
  b.open("b vertex gradient", 12);
  vertex_values(b, g);
  b.open("c edge moment", 6L * (r - 3));
  edge_moments(b, c, q, r - 4);
  b.open("d edge normal-derivative moment", 12L * (r - 2));
  edge_normal_moments(b, c, g, r - 3);
  b.open("e face surface-gradient moment", 6L * (r - 2) * (r - 3));
  face_moments(b, c, [&](const FaceSplit& f) { return tangential_on_face(g, f); },
               [&](const FaceSplit& f) { return grad_f_ring_s0(f, r); });
  b.open("f face normal-derivative moment", 6L * (r - 2) * (r - 3));
  face_moments(b, c, [&](const FaceSplit& f) { return normal_on_face(g, f); },
               [&](const FaceSplit& f) { return face_space(f, Family::ctR0, r - 1); });
  b.open("g interior gradient moment", 2L * (r - 2) * (r - 3) * (r - 4));
  b.add(moments(g, grad_of(c, Family::S0, r, Bc::Zero)), Carrier::Cell, -1);
}

void dofs_l1(Builder& b, const SplitComplex& c, const Field& v, int r) {
  Field cv = curl(v);
  b.open("a vertex value", 12);
  vertex_values(b, v);
  b.open("b edge moment", 18L * (r - 2));
  edge_moments(b, c, v, r - 3);
  b.open("c/d internal-edge curl-jump moment", 8L * (r - 2) + 4L * (r - 1));
  jump_moments(b, c, cv, true, r - 2, r - 3);
  b.open("e face normal moment", 6L * (r - 2) * (r - 3));
  face_moments(b, c, [&](const FaceSplit& f) { return normal_on_face(v, f); },
               [&](const FaceSplit& f) { return face_space(f, Family::ctR0, r - 1); });
  b.open("f face surface-curl moment", 6L * r * r - 6L * r - 4);
  face_moments(b, c, [&](const FaceSplit& f) { return normal_on_face(cv, f); },
               [&](const FaceSplit& f) { return face_space(f, Family::ctV2, r - 2, Bc::Zero); });
  b.open("g face tangential moment", 6L * (r - 2) * (r - 3));
  face_moments(b, c, [&](const FaceSplit& f) { return tangential_on_face(v, f); },
               [&](const FaceSplit& f) { return grad_f_ring_s0(f, r); });
  b.open("h interior curl moment", 4L * r * r * r - 9L * r * r - 7L * r + 21);
  b.add(moments(cv, curl_of(c, Family::L1, r - 1, Bc::Zero)), Carrier::Cell, -1);
  b.open("i interior moment", 2L * (r - 2) * (r - 3) * (r - 4));
  b.add(moments(v, grad_of(c, Family::S0, r, Bc::Zero)), Carrier::Cell, -1);
}

void dofs_v2(Builder& b, const SplitComplex& c, const Field& w, int r) {
  b.open("a/b internal-edge tangential-jump moment", 8L * (r - 2) + 4L * (r - 1));
  jump_moments(b, c, w, true, r - 2, r - 3);
  b.open("c face normal moment", 6L * r * (r - 1));
  face_moments(b, c, [&](const FaceSplit& f) { return normal_on_face(w, f); },
               [&](const FaceSplit& f) { return face_space(f, Family::ctV2, r - 2); });
  b.open("d interior divergence moment", 2L * r * r * r - 6L * r * r + 4L * r - 1);
  b.add(moments(div(w), cell_space(c, Family::V3, r - 3, Bc::Zero)), Carrier::Cell, -1);
  b.open("e interior moment", 4L * r * r * r - 9L * r * r - 7L * r + 21);
  b.add(moments(w, curl_of(c, Family::L1, r - 1, Bc::Zero)), Carrier::Cell, -1);
}

void dofs_v3(Builder& b, const SplitComplex& c, const Field& p, int r) {
  b.open("a mean", 1);
  integral(b, p);
  b.open("b interior moment", 2L * r * (r - 1) * (r - 2) - 1);
  b.add(moments(p, cell_space(c, Family::V3, r - 3, Bc::Zero)), Carrier::Cell, -1);
}

void dofs_s1(Builder& b, const SplitComplex& c, const Field& v, int r) {
  Field cv = curl(v);
  b.open("a vertex value", 12);
  vertex_values(b, v);
  b.open("b vertex curl", 12);
  vertex_values(b, cv);
  b.open("c edge moment", 18L * (r - 2));
  edge_moments(b, c, v, r - 3);
  b.open("d edge curl moment", 18L * (r - 3));
  edge_moments(b, c, cv, r - 4);
  b.open("e face surface-curl moment", 6L * r * r - 30L * r + 36);
  face_moments(b, c, [&](const FaceSplit& f) { return normal_on_face(cv, f); },
               [&](const FaceSplit& f) { return mean_zero_l0(f, r - 3); });
  b.open("f face normal moment", 6L * (r - 2) * (r - 3));
  face_moments(b, c, [&](const FaceSplit& f) { return normal_on_face(v, f); },
               [&](const FaceSplit& f) { return face_space(f, Family::ctR0, r - 1); });
  b.open("g face tangential moment", 6L * r * r - 30L * r + 36);
  face_moments(b, c, [&](const FaceSplit& f) { return tangential_on_face(v, f); },
               [&](const FaceSplit& f) { return grad_f_ring_s0(f, r); });
  b.open("h face tangential curl moment", 12L * (r - 3) * (r - 3));
  face_moments(b, c, [&](const FaceSplit& f) { return tangential_on_face(cv, f); },
               [&](const FaceSplit& f) { return face_space(f, Family::ctR1, r - 2); });
  b.open("i interior curl moment", (4L * r - 11) * (r - 3) * (r - 4));
  b.add(moments(cv, curl_of(c, Family::S1, r - 1, Bc::Zero)), Carrier::Cell, -1);
  b.open("j interior moment", 2L * (r - 2) * (r - 3) * (r - 4));
  b.add(moments(v, grad_of(c, Family::S0, r, Bc::Zero)), Carrier::Cell, -1);
}

void dofs_l2(Builder& b, const SplitComplex& c, const Field& w, int r) {
  Field dw = div(w);
  b.open("a vertex value", 12);
  vertex_values(b, w);
  b.open("b edge moment", 18L * (r - 3));
  edge_moments(b, c, w, r - 4);
  b.open("c face normal moment", 6L * (r - 2) * (r - 3) + 4);
  face_moments(b, c, [&](const FaceSplit& f) { return normal_on_face(w, f); },
               [&](const FaceSplit& f) { return face_space(f, Family::ctL0, r - 3); });
  b.open("d/e internal-edge divergence-jump moment", 8L * (r - 2) + 4L * (r - 3));
  jump_moments(b, c, dw, false, r - 4, r - 3);
  b.open("f face tangential moment", 12L * (r - 3) * (r - 3));
  face_moments(b, c, [&](const FaceSplit& f) { return tangential_on_face(w, f); },
               [&](const FaceSplit& f) { return face_space(f, Family::ctR1, r - 2); });
  b.open("g interior divergence moment", 2L * (r - 3) * (r - 2) * (r + 2) + 3);
  b.add(moments(dw, div_of(c, Family::L2, r - 2, Bc::Zero)), Carrier::Cell, -1);
  b.open("h interior moment", (4L * r - 11) * (r - 3) * (r - 4));
  b.add(moments(w, curl_of(c, Family::S1, r - 1, Bc::Zero)), Carrier::Cell, -1);
}

void dofs_v3a(Builder& b, const SplitComplex& c, const Field& p, int r) {
  b.open("a/b internal-edge jump moment", 8L * (r - 2) + 4L * (r - 3));
  jump_moments(b, c, p, false, r - 4, r - 3);
  b.open("c mean", 1);
  integral(b, p);
  b.open("d interior moment", 2L * r * r * r - 6L * r * r - 8L * r + 27);
  b.add(moments(p, cell_space(c, Family::CalV3, r - 3, Bc::Zero)), Carrier::Cell, -1);
}

void dofs_s2(Builder& b, const SplitComplex& c, const Field& w, int r) {
  Field dw = div(w);
  b.open("a vertex value", 12);
  vertex_values(b, w);
  b.open("b vertex divergence", 4);
  vertex_values(b, dw);
  b.open("c edge moment", 18L * (r - 3));
  edge_moments(b, c, w, r - 4);
  b.open("d edge divergence moment", 6L * (r - 4));
  edge_moments(b, c, dw, r - 5);
  b.open("e face normal moment", 6L * (r - 2) * (r - 3) + 4);
  face_moments(b, c, [&](const FaceSplit& f) { return normal_on_face(w, f); },
               [&](const FaceSplit& f) { return face_space(f, Family::ctL0, r - 3); });
  b.open("f face tangential moment", 12L * (r - 3) * (r - 3));
  face_moments(b, c, [&](const FaceSplit& f) { return tangential_on_face(w, f); },
               [&](const FaceSplit& f) { return face_space(f, Family::ctR1, r - 2); });
  b.open("g face divergence moment", 6L * (r - 3) * (r - 4) + 4);
  face_moments(b, c, [&](const FaceSplit& f) { return on_face(dw, f); },
               [&](const FaceSplit& f) { return face_space(f, Family::ctL2, r - 4); });
  b.open("i interior divergence moment", (r - 4L) * (2L * r * r - 13L * r + 23));
  b.add(moments(dw, cell_space(c, Family::L3, r - 3, Bc::Zero)), Carrier::Cell, -1);
  b.open("j interior moment", (4L * r - 11) * (r - 3) * (r - 4));
  b.add(moments(w, curl_of(c, Family::S1, r - 1, Bc::Zero)), Carrier::Cell, -1);
}

void dofs_l3(Builder& b, const SplitComplex& c, const Field& p, int r) {
  b.open("a vertex value", 4);
  vertex_values(b, p);
  b.open("b edge moment", 6L * (r - 4));
  edge_moments(b, c, p, r - 5);
  b.open("c face moment", 6L * (r - 3) * (r - 4) + 4);
  face_moments(b, c, [&](const FaceSplit& f) { return on_face(p, f); },
               [&](const FaceSplit& f) { return face_space(f, Family::ctL2, r - 4); });
  b.open("d mean", 1);
  integral(b, p);
  b.open("e interior moment", (r - 4L) * (2L * r * r - 13L * r + 23));
  b.add(moments(p, cell_space(c, Family::L3, r - 3, Bc::Zero)), Carrier::Cell, -1);
}

bool scalar_lemma(DofLemma l) {
  return l == DofLemma::S0 || l == DofLemma::V3 || l == DofLemma::V3a || l == DofLemma::L3;
}

}  // namespace

SparseMatrix jump_moment_rows(const FieldLayout& l, const FaceSplit& f, bool along_edge, int k_eF, int k_other) {
  SparseMatrix out(0, l.size());
  FieldLayout sc = FieldLayout::scalar_on(f.patch, l.degree);
  SparseMatrix to_scalar;
  for (const CtEdge& e : f.edges) {
    int k = e.singular ? k_eF : k_other;
    if (k < 0) continue;
    FieldLayout tl = FieldLayout::scalar_on(e.patch, k);
    SparseMatrix rows;
    if (l.degree < 0) {
      rows = SparseMatrix(tl.size(), l.size());
    } else {
      SparseMatrix s = along_edge ? pointwise(l, sc, dot_with(l, e.t)) : SparseMatrix::identity(l.size());
      if (!along_edge && !l.scalar()) throw Error(ErrorCode::DimensionMismatch, "scalar jump of a vector field");
      rows = mass_matrix(tl, FieldLayout::scalar_on(e.patch, l.degree)) * (edge_jump(sc, e.patch, e) * s);
    }
    for (std::size_t i = 0; i < rows.rows(); ++i) out.append_row(rows.row(i));
  }
  return out;
}

FunctionalSet build_dofs(DofLemma l, int r, const SplitComplex& c, const FieldLayout& input) {
  if (input.patch != &c.patch()) throw Error(ErrorCode::DimensionMismatch, "input does not live on the complex");
  if (input.scalar() != scalar_lemma(l)) throw Error(ErrorCode::DimensionMismatch, "input has the wrong rank");
  if (r < 0) throw Error(ErrorCode::UnsupportedDegree, "negative degree");
  FunctionalSet s;
  s.lemma = l;
  s.r = r;
  s.target = lemma_target(l, r);
  s.input = input;
  Builder b(s, lemma_name(l));
  Field u{input, SparseMatrix::identity(input.size())};
  switch (l) {
    case DofLemma::S0: dofs_s0(b, c, u, r); break;
    case DofLemma::L1: dofs_l1(b, c, u, r); break;
    case DofLemma::V2: dofs_v2(b, c, u, r); break;
    case DofLemma::V3: dofs_v3(b, c, u, r); break;
    case DofLemma::S1: dofs_s1(b, c, u, r); break;
    case DofLemma::L2: dofs_l2(b, c, u, r); break;
    case DofLemma::V3a: dofs_v3a(b, c, u, r); break;
    case DofLemma::S2: dofs_s2(b, c, u, r); break;
    case DofLemma::L3: dofs_l3(b, c, u, r); break;
  }
  b.finish(input.size());
  return s;
}

FunctionalSet build_dofs(DofLemma l, int r, const SplitComplex& c) {
  return build_dofs(l, r, c, layout_for(lemma_target(l, r).family, lemma_target(l, r).degree, Domain::of(c)));
}

UnisolvencyReport check_unisolvency(DofLemma l, int r, const SplitComplex& c) {
  UnisolvencyReport rep;
  rep.lemma = l;
  rep.r = r;
  FunctionalSet s = build_dofs(l, r, c);
  SpacePtr x = build_space(s.target, Domain::of(c));
  rep.count = s.size();
  rep.dim = x->dim();
  rep.printed_total = s.printed_total();
  for (const auto& k : s.classes) rep.class_counts.emplace_back(k.tag, k.count());
  rep.rank = rank(s.rows * x->basis());
  return rep;
}

// ------------------------------------------------------------------ projections

namespace {

struct InverseCache {
  std::mutex mu;
  std::map<std::tuple<int, int, std::uint64_t>, std::shared_ptr<const SparseMatrix>> m;
};

InverseCache& inverse_cache() {
  static InverseCache c;
  return c;
}

// (Phi B)^{-1} as a sparse matrix.
std::shared_ptr<const SparseMatrix> dof_inverse(DofLemma l, int r, const SplitComplex& c, const Space& x) {
  auto key = std::make_tuple(static_cast<int>(l), r, c.patch().uid());
  auto& cache = inverse_cache();
  {
    std::lock_guard<std::mutex> lk(cache.mu);
    auto it = cache.m.find(key);
    if (it != cache.m.end()) return it->second;
  }
  FunctionalSet s = build_dofs(l, r, c);
  if (s.size() != x.dim())
    throw Error(ErrorCode::CardinalityMismatch, std::string(lemma_name(l)) + " has " + std::to_string(s.size()) +
                                                    " functionals for a space of dimension " + std::to_string(x.dim()));
  RatMatrix g = (s.rows * x.basis()).to_dense();
  auto inv = std::make_shared<const SparseMatrix>(SparseMatrix::from_dense(inverse(g)));
  std::lock_guard<std::mutex> lk(cache.mu);
  return cache.m.emplace(key, inv).first->second;
}

}  // namespace

ProjectionOperator projection(DofLemma l, int r, const SplitComplex& c, const FieldLayout& input) {
  ProjectionOperator p;
  p.lemma = l;
  p.r = r;
  p.input = input;
  p.target = build_space(lemma_target(l, r), Domain::of(c));
  p.inverse = dof_inverse(l, r, c, *p.target);
  p.functionals = build_dofs(l, r, c, input).rows;
  return p;
}

ProjectionOperator projection(DofLemma l, int r, const SplitComplex& c) {
  SpaceSpec t = lemma_target(l, r);
  return projection(l, r, c, layout_for(t.family, t.degree, Domain::of(c)));
}

std::vector<DofLemma> diagram_lemmas(const std::string& d) {
  using D = DofLemma;
  if (d == "SLVV") return {D::S0, D::L1, D::V2, D::V3};
  if (d == "SSLV") return {D::S0, D::S1, D::L2, D::V3a};
  if (d == "SSSL") return {D::S0, D::S1, D::S2, D::L3};
  throw Error(ErrorCode::UnknownFamily, "unknown diagram " + d);
}

bool CommuteReport::ok() const {
  if (samples == 0 || passed.size() != identities.size()) return false;
  for (int p : passed)
    if (p != samples) return false;
  return true;
}

CommuteReport check_commute(const std::string& diagram, int r, int samples, std::uint64_t seed, const SplitComplex& c) {
  CommuteReport rep;
  rep.diagram = diagram;
  rep.r = r;
  rep.identities = {"grad", "curl", "div"};
  rep.passed.assign(3, 0);
  auto lemmas = diagram_lemmas(diagram);
  const Patch& patch = c.patch();
  std::mt19937_64 g(seed ^ std::stoull(fnv1a(diagram), nullptr, 16) ^ static_cast<std::uint64_t>(r));

  std::map<std::tuple<int, int>, ProjectionOperator> cache;
  auto proj = [&](int k, const FieldLayout& in) -> const ProjectionOperator& {
    auto key = std::make_tuple(k, in.degree);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, projection(lemmas[k], r, c, in)).first;
    return it->second;
  };
  auto random_vector = [&](int deg) {
    FieldLayout l = FieldLayout::vector_on(patch, deg);
    return from_polynomial(l, {random_poly(g, deg), random_poly(g, deg), random_poly(g, deg)});
  };

  std::vector<std::vector<Rational>> trace;
  for (int s = 0; s < samples; ++s)
    for (int deg : {r, r + 1}) {
      // grad
      {
        FieldLayout in = FieldLayout::scalar_on(patch, deg);
        auto q = from_polynomial(in, {random_poly(g, deg)});
        const auto& p0 = proj(0, in);
        auto lhs = grad_matrix(p0.target->layout).apply(p0.apply(q));
        auto rhs = proj(1, FieldLayout::vector_on(patch, deg - 1)).apply(grad_matrix(in).apply(q));
        rep.passed[0] += lhs == rhs;
        trace.push_back(lhs);
      }
      // curl
      {
        FieldLayout in = FieldLayout::vector_on(patch, deg);
        auto v = random_vector(deg);
        const auto& p1 = proj(1, in);
        auto lhs = curl_matrix(p1.target->layout).apply(p1.apply(v));
        auto rhs = proj(2, FieldLayout::vector_on(patch, deg - 1)).apply(curl_matrix(in).apply(v));
        rep.passed[1] += lhs == rhs;
        trace.push_back(lhs);
      }
      // div
      {
        FieldLayout in = FieldLayout::vector_on(patch, deg);
        auto w = random_vector(deg);
        const auto& p2 = proj(2, in);
        auto lhs = div_matrix(p2.target->layout).apply(p2.apply(w));
        auto rhs = proj(3, FieldLayout::scalar_on(patch, deg - 1)).apply(div_matrix(in).apply(w));
        rep.passed[2] += lhs == rhs;
        trace.push_back(lhs);
      }
    }
  rep.samples = 2 * samples;
  rep.digest = digest_of(trace);
  return rep;
}

const SplitComplex& alternate_reference_split() {
  static const SplitComplex c = [] {
    SplitOptions o;
    o.alternate_frames = true;
    return build_worsey_farin(reference_tetrahedron(), o);
  }();
  return c;
}

bool FrameInvarianceReport::ok() const {
  if (equal.empty()) return false;
  for (const auto& [l, e] : equal)
    if (!e) return false;
  return true;
}

FrameInvarianceReport check_frame_invariance(int r) {
  FrameInvarianceReport rep;
  const SplitComplex& a = reference_split();
  const SplitComplex& b = alternate_reference_split();
  for (DofLemma l : all_lemmas()) {
    int rr = std::max(r, lemma_min_degree(l));
    auto pa = projection(l, rr, a);
    auto pb = projection(l, rr, b);
    rep.equal.emplace_back(l, pa.matrix() == pb.matrix());
  }
  return rep;
}

// ------------------------------------------------------------------ jump lemmas

namespace {

// Samples members of {x in s : rows x = 0}; for the violation half, rows minus one
// row j whose value is then nonzero.
struct JumpProbe {
  std::string name;
  SpacePtr space;
  SparseMatrix rows;
  std::function<bool(const std::vector<Rational>&)> conclusion;
};

JumpLemmaReport run_probe(const JumpProbe& p, int r, int samples, std::mt19937_64& g) {
  JumpLemmaReport rep;
  rep.name = p.name;
  rep.r = r;
  rep.samples = samples;
  auto h = subspace_kernel(*p.space, p.rows, "moments=0");
  for (int s = 0; s < samples; ++s) {
    auto x = random_member(*h, g);
    rep.conclusion_held += p.conclusion(x);
  }
  std::vector<std::size_t> live;
  for (std::size_t j = 0; j < p.rows.rows(); ++j)
    if (!p.rows.row(j).empty()) live.push_back(j);
  for (int s = 0; s < samples && !live.empty(); ++s) {
    std::size_t j = live[static_cast<std::size_t>(s) % live.size()];
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < p.rows.rows(); ++i)
      if (i != j) keep.push_back(i);
    auto hj = subspace_kernel(*p.space, p.rows.select_rows(keep), "moments=0 but one");
    SparseMatrix one = p.rows.select_rows({j});
    for (int attempt = 0; attempt < 3; ++attempt) {
      auto x = random_member(*hj, g);
      if (sgn(one.apply(x)[0]) == 0) continue;
      rep.violation_caught += !p.conclusion(x);
      break;
    }
  }
  return rep;
}

}  // namespace

std::vector<JumpLemmaReport> check_jump_lemmas(int r, int samples, std::uint64_t seed) {
  std::vector<JumpLemmaReport> out;
  std::mt19937_64 g(seed ^ static_cast<std::uint64_t>(r));
  const SplitComplex& c = reference_split();

  {
    // tangential jumps on a face split: divergence-conforming -> continuous
    const FaceSplit& f = reference_triangle();
    Domain d = Domain::of(f);
    JumpProbe p;
    p.name = "face tangential jump";
    p.space = build_space(Family::ctVdiv1, r, Bc::None, d);
    p.rows = jump_moment_rows(p.space->layout, f, true, r, r - 1);
    auto l1 = build_space(Family::ctL1, r, Bc::None, d);
    p.conclusion = [l1](const std::vector<Rational>& x) { return membership(x, *l1); };
    out.push_back(run_probe(p, r, samples, g));
  }
  {
    // ring V2 with the tangential jump moments on every face -> ring CalV2
    JumpProbe p;
    p.name = "ring V2 tangential jump";
    p.space = build_space(Family::V2, r, Bc::Zero, Domain::of(c));
    const FieldLayout& l = p.space->layout;
    SparseMatrix rows(0, l.size());
    for (int i = 0; i < 4; ++i) {
      const FaceSplit& f = c.face(i);
      FieldLayout fl{&f.patch, r, l.frame};
      SparseMatrix m = jump_moment_rows(fl, f, true, r, r - 1) * trace_matrix(l, fl, triangle_cells(f));
      for (std::size_t k = 0; k < m.rows(); ++k) rows.append_row(m.row(k));
    }
    p.rows = rows;
    auto cv = build_space(Family::CalV2, r, Bc::Zero, Domain::of(c));
    p.conclusion = [cv](const std::vector<Rational>& x) { return membership(x, *cv); };
    out.push_back(run_probe(p, r, samples, g));
  }
  {
    // scalar jumps on one face -> the face trace is continuous
    const FaceSplit& f = c.face(0);
    JumpProbe p;
    p.name = "scalar jump";
    p.space = build_space(Family::V3, r, Bc::None, Domain::of(c));
    const FieldLayout& l = p.space->layout;
    SparseMatrix tr = face_trace_scalar(l, f);
    p.rows = jump_moment_rows(FieldLayout::scalar_on(f.patch, r), f, false, r - 1, r) * tr;
    auto cont = build_space(Family::ctL2, r, Bc::None, Domain::of(f));
    p.conclusion = [cont, tr](const std::vector<Rational>& x) { return membership(tr.apply(x), *cont); };
    out.push_back(run_probe(p, r, samples, g));
  }
  return out;
}

}  // namespace wfseq
