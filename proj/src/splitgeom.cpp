#include "wfseq/splitgeom.hpp"

#include <algorithm>
#include <map>
#include "json.hpp"
#include <numeric>
#include <set>

namespace wfseq {

std::string to_string(const Vec3& v) {
  return "(" + to_string(v[0]) + "," + to_string(v[1]) + "," + to_string(v[2]) + ")";
}

namespace {

bool rational_sqrt(const Rational& q, Rational& out) {
  if (sgn(q) < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return false;
  Integer a, b;
  mpz_sqrt(a.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(b.get_mpz_t(), q.get_den_mpz_t());
  out = Rational(a, b);
  out.canonicalize();
  return true;
}

// Ratio a / b for parallel vectors; throws if not parallel.
Rational parallel_ratio(const Vec3& a, const Vec3& b) {
  if (!is_zero(cross(a, b))) throw Error(ErrorCode::DegenerateSimplex, "cells of a patch are not coplanar");
  for (int k = 0; k < 3; ++k)
    if (sgn(b[k]) != 0) return a[k] / b[k];
  throw Error(ErrorCode::DegenerateSimplex, "zero reference vector");
}

}  // namespace

// ---------------------------------------------------------------- Patch

Patch::Patch(int dim, std::vector<Point> points, std::vector<std::vector<int>> cells)
    : dim_(dim), points_(std::move(points)), cells_(std::move(cells)) {
  if (dim < 1 || dim > 3) throw Error(ErrorCode::DimensionMismatch, "patch dimension must be 1..3");
  Vec3 ref{};
  for (std::size_t k = 0; k < cells_.size(); ++k) {
    auto& c = cells_[k];
    if (static_cast<int>(c.size()) != dim + 1) throw Error(ErrorCode::DimensionMismatch, "cell vertex count");
    std::sort(c.begin(), c.end());
    std::vector<Vec3> e;
    for (int i = 1; i <= dim; ++i) e.push_back(points_[c[i]] - points_[c[0]]);
    int orient = 1;
    Rational w;
    if (dim == 3) {
      Rational d = det3(e[0], e[1], e[2]);
      if (sgn(d) == 0) throw Error(ErrorCode::DegenerateSimplex, "zero-volume cell");
      orient = sgn(d);
      w = abs(d) / 6;
    } else {
      Vec3 m = dim == 2 ? cross(e[0], e[1]) : e[0];
      if (is_zero(m)) throw Error(ErrorCode::DegenerateSimplex, "zero-measure cell");
      if (k == 0) ref = m;
      w = abs(parallel_ratio(m, ref));
      if (dim == 2) w /= 2;
    }
    weight_.push_back(w);
    orient_.push_back(orient);
    // grad lambda_i = E G^{-1} e_i, grad lambda_0 = -sum
    RatMatrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) g(i, j) = dot(e[i], e[j]);
    RatMatrix gi = inverse(g);
    std::vector<Vec3> gr(dim + 1, Vec3{});
    for (int i = 0; i < dim; ++i) {
      Vec3 v{};
      for (int j = 0; j < dim; ++j) v = v + gi(j, i) * e[j];
      gr[i + 1] = v;
      gr[0] = gr[0] - v;
    }
    grad_.push_back(std::move(gr));
  }
  if (dim < 3 && !cells_.empty()) {
    Rational q = dot(ref, ref), s;
    if (rational_sqrt(q, s)) {
      for (auto& w : weight_) w *= s;
      radicand_ = 1;
    } else {
      radicand_ = q;
    }
  }
  // sub-simplices with incidence
  std::array<std::map<std::vector<int>, std::vector<int>>, 4> inc;
  for (std::size_t k = 0; k < cells_.size(); ++k) {
    const auto& c = cells_[k];
    const int n = dim + 1;
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<int> s;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) s.push_back(c[i]);
      inc[s.size() - 1][s].push_back(static_cast<int>(k));
    }
  }
  std::set<std::vector<int>> boundary_facets;
  for (auto& [s, cs] : inc[dim - 1])
    if (cs.size() == 1) boundary_facets.insert(s);
  for (int d = 0; d <= dim; ++d) {
    for (auto& [s, cs] : inc[d]) {
      Simplex sx;
      sx.v = s;
      sx.cells = cs;
      sx.interior = true;
      if (d < dim)
        for (const auto& f : boundary_facets)
          if (std::includes(f.begin(), f.end(), s.begin(), s.end())) {
            sx.interior = false;
            break;
          }
      sub_[d].push_back(std::move(sx));
    }
  }
}

Rational Patch::total_weight() const {
  Rational t = 0;
  for (const auto& w : weight_) t += w;
  return t;
}

int Patch::cell_containing(const std::vector<int>& ids) const {
  std::vector<int> s = ids;
  std::sort(s.begin(), s.end());
  for (std::size_t k = 0; k < cells_.size(); ++k)
    if (std::includes(cells_[k].begin(), cells_[k].end(), s.begin(), s.end())) return static_cast<int>(k);
  return -1;
}

int Patch::find_subsimplex(std::vector<int> ids) const {
  std::sort(ids.begin(), ids.end());
  int d = static_cast<int>(ids.size()) - 1;
  if (d < 0 || d > dim_) return -1;
  const auto& list = sub_[d];
  auto it = std::lower_bound(list.begin(), list.end(), ids, [](const Simplex& a, const std::vector<int>& b) { return a.v < b; });
  if (it == list.end() || it->v != ids) return -1;
  return static_cast<int>(it - list.begin());
}

std::vector<Rational> Patch::barycentric(std::size_t k, const Point& p) const {
  const auto& c = cells_[k];
  std::vector<Rational> l(dim_ + 1);
  Vec3 d = p - points_[c[0]];
  Rational s = 0;
  for (int i = 1; i <= dim_; ++i) {
    l[i] = dot(grad_[k][i], d);
    s += l[i];
  }
  l[0] = 1 - s;
  return l;
}

int Patch::locate(const Point& p) const {
  for (std::size_t k = 0; k < cells_.size(); ++k) {
    auto l = barycentric(k, p);
    bool ok = std::all_of(l.begin(), l.end(), [](const Rational& v) { return sgn(v) >= 0; });
    if (!ok) continue;
    Vec3 q{};
    for (int i = 0; i <= dim_; ++i) q = q + l[i] * points_[cells_[k][i]];
    if (q == p) return static_cast<int>(k);
  }
  return -1;
}

// ---------------------------------------------------------------- frames

Vec3 rational_normal_to(const Vec3& t) {
  if (is_zero(t)) throw Error(ErrorCode::DegenerateSimplex, "zero tangent");
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (abs(t[i]) < abs(t[k])) k = i;
  Vec3 e{};
  e[k] = 1;
  return cross(t, e);
}

FaceFrame alternate_frame(const FaceFrame& f) {
  FaceFrame g;
  g.n = Rational(3) * f.n;
  g.tau = f.tau + Rational(2) * f.upsilon;
  g.upsilon = f.upsilon - f.tau;
  return g;
}

static CtEdge make_ct_edge(const std::vector<Point>& pts, int m, int y, const Vec3& n, const std::optional<Point>& z,
                           const std::array<std::vector<int>, 3>& tris) {
  CtEdge e;
  e.m = m;
  e.y = y;
  e.t = pts[y] - pts[m];
  e.s = cross(n, e.t);
  if (z) {
    Vec3 w = *z - pts[m];
    e.r = w - (dot(w, e.t) / dot(e.t, e.t)) * e.t;
  } else {
    e.r = Vec3{};
  }
  std::vector<int> adj;
  for (int q = 0; q < 3; ++q)
    if (std::binary_search(tris[q].begin(), tris[q].end(), m) && std::binary_search(tris[q].begin(), tris[q].end(), y))
      adj.push_back(q);
  e.q1 = adj.at(0);
  e.q2 = adj.at(1);
  e.patch = Patch(1, pts, {{m, y}});
  return e;
}

static void fill_face_split(FaceSplit& f, const std::vector<Point>& pts, const FaceFrame& frame,
                            const std::optional<Point>& z) {
  const auto& y = f.y;
  f.triangles = {std::vector<int>{f.m, y[0], y[1]}, std::vector<int>{f.m, y[0], y[2]},
                 std::vector<int>{f.m, y[1], y[2]}};
  for (auto& t : f.triangles) std::sort(t.begin(), t.end());
  f.frame = frame;
  for (int k = 0; k < 3; ++k) {
    f.edges[k] = make_ct_edge(pts, f.m, y[k], frame.n, z, f.triangles);
    f.edges[k].singular = (k == 0);
  }
  f.patch = Patch(2, pts, {f.triangles[0], f.triangles[1], f.triangles[2]});
}

// ---------------------------------------------------------------- SplitComplex

std::array<Point, 4> reference_tetrahedron() { return {vec(0, 0, 0), vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1)}; }

int SplitComplex::label_of(int id) const { return id < 4 ? labels_[id] : 1000 + id; }

std::vector<int> SplitComplex::alfeld_cells(int i) const {
  std::vector<int> r;
  for (int j = 0; j < 3; ++j) r.push_back(3 * i + j);
  return r;
}

bool SplitComplex::on_macro_face(int id, int i) const {
  if (id < 4) return id != i;
  return id == face_point(i);
}

bool SplitComplex::on_boundary(const std::vector<int>& ids) const {
  for (int i = 0; i < 4; ++i)
    if (std::all_of(ids.begin(), ids.end(), [&](int v) { return on_macro_face(v, i); })) return true;
  return false;
}

std::array<int, 4> SplitComplex::counts() const {
  std::array<int, 4> c{};
  for (int d = 0; d < 4; ++d) c[d] = static_cast<int>(patch_.subsimplices(d).size());
  return c;
}

std::array<int, 4> SplitComplex::interior_counts() const {
  std::array<int, 4> c{};
  for (int d = 0; d < 4; ++d)
    for (const auto& s : patch_.subsimplices(d)) c[d] += s.interior ? 1 : 0;
  return c;
}

int SplitComplex::euler_characteristic() const {
  auto c = counts();
  return c[0] - c[1] + c[2] - c[3];
}

bool SplitComplex::validate() const {
  auto c = counts();
  if (c != std::array<int, 4>{9, 26, 30, 12}) return false;
  if (interior_counts() != std::array<int, 4>{1, 8, 18, 12}) return false;
  const auto& pts = patch_.points();
  for (int d = 1; d <= 2; ++d)
    for (const auto& s : patch_.subsimplices(d)) {
      Vec3 a = pts[s.v[1]] - pts[s.v[0]];
      Vec3 m = d == 1 ? a : cross(a, pts[s.v[2]] - pts[s.v[0]]);
      if (is_zero(m)) return false;
      if (s.interior == on_boundary(s.v)) return false;
    }
  for (std::size_t k = 0; k < patch_.num_cells(); ++k)
    if (sgn(patch_.weight(k)) <= 0) return false;
  return true;
}

SplitComplex build_worsey_farin(const std::array<Point, 4>& x, const SplitOptions& opt) {
  Rational vol6 = det3(x[1] - x[0], x[2] - x[0], x[3] - x[0]);
  if (sgn(vol6) == 0) throw Error(ErrorCode::DegenerateSimplex, "tetrahedron has zero volume");
  {
    std::set<int> l(opt.labels.begin(), opt.labels.end());
    if (l.size() != 4) throw Error(ErrorCode::ConfigError, "vertex labels must be distinct");
  }
  SplitComplex c;
  c.x_ = x;
  c.labels_ = opt.labels;
  c.volume_ = abs(vol6) / 6;

  Point z = opt.z ? *opt.z : Rational(1, 4) * (x[0] + x[1] + x[2] + x[3]);
  {
    // barycentric coordinates of z in T, all strictly positive
    for (int i = 0; i < 4; ++i) {
      std::array<Point, 4> y = x;
      y[i] = z;
      Rational d = det3(y[1] - y[0], y[2] - y[0], y[3] - y[0]);
      if (sgn(d) * sgn(vol6) <= 0) throw Error(ErrorCode::PointNotInterior, "interior point not strictly inside");
    }
  }
  std::vector<Point> pts(9);
  for (int i = 0; i < 4; ++i) pts[i] = x[i];
  for (int i = 0; i < 4; ++i) {
    std::vector<int> f;
    for (int j = 0; j < 4; ++j)
      if (j != i) f.push_back(j);
    Point m = opt.face_points[i] ? *opt.face_points[i] : Rational(1, 3) * (x[f[0]] + x[f[1]] + x[f[2]]);
    Vec3 n = cross(x[f[1]] - x[f[0]], x[f[2]] - x[f[0]]);
    if (sgn(dot(n, m - x[f[0]])) != 0) throw Error(ErrorCode::PointNotInterior, "face point off its face plane");
    for (int a = 0; a < 3; ++a) {
      Vec3 u = x[f[(a + 1) % 3]] - x[f[a]];
      Vec3 w = x[f[(a + 2) % 3]] - x[f[a]];
      if (sgn(dot(cross(u, m - x[f[a]]), n)) * sgn(dot(cross(u, w), n)) <= 0)
        throw Error(ErrorCode::PointNotInterior, "face point not strictly inside its face");
    }
    pts[4 + i] = m;
  }
  pts[SplitComplex::kZ] = z;

  std::vector<std::vector<int>> cells;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      std::vector<int> cell{SplitComplex::kZ, SplitComplex::face_point(i)};
      for (int k = 0; k < 4; ++k)
        if (k != i && k != j) cell.push_back(k);
      cells.push_back(cell);
    }
  c.patch_ = Patch(3, pts, cells);

  for (int i = 0; i < 4; ++i) {
    FaceSplit& f = c.faces_[i];
    f.face = i;
    f.m = SplitComplex::face_point(i);
    std::vector<int> ys;
    for (int j = 0; j < 4; ++j)
      if (j != i) ys.push_back(j);
    std::sort(ys.begin(), ys.end(), [&](int a, int b) { return opt.labels[a] < opt.labels[b]; });
    f.y = {ys[0], ys[1], ys[2]};
    FaceFrame fr;
    fr.n = cross(pts[ys[1]] - pts[ys[0]], pts[ys[2]] - pts[ys[0]]);
    if (sgn(dot(fr.n, pts[i] - pts[ys[0]])) > 0) fr.n = -fr.n;
    if (opt.normal_override[i]) {
      if (!is_zero(cross(*opt.normal_override[i], fr.n)))
        throw Error(ErrorCode::InconsistentFrames, "normal override is not normal to its face");
      fr.n = *opt.normal_override[i];
    }
    fr.tau = pts[ys[1]] - pts[ys[0]];
    fr.upsilon = cross(fr.n, fr.tau);
    if (opt.alternate_frames) fr = alternate_frame(fr);
    fill_face_split(f, pts, fr, z);
    for (int q = 0; q < 3; ++q) f.cell_of_triangle[q] = c.patch_.cell_containing(f.triangles[q]);
  }

  std::vector<int> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](int a, int b) { return opt.labels[a] < opt.labels[b]; });
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      MacroEdge e;
      e.a = order[a];
      e.b = order[b];
      e.t = pts[e.b] - pts[e.a];
      e.n_plus = rational_normal_to(e.t);
      e.n_minus = cross(e.t, e.n_plus);
      if (opt.alternate_frames) {
        Vec3 p = e.n_plus, m = e.n_minus;
        e.n_plus = p + Rational(2) * m;
        e.n_minus = m - p;
      }
      e.patch = Patch(1, pts, {{e.a, e.b}});
      c.macro_edges_.push_back(e);
    }
  return c;
}

FaceSplit build_clough_tocher(const std::array<Point, 3>& y, const std::optional<Point>& m) {
  Vec3 n = cross(y[1] - y[0], y[2] - y[0]);
  if (is_zero(n)) throw Error(ErrorCode::DegenerateSimplex, "triangle has zero area");
  Point mp = m ? *m : Rational(1, 3) * (y[0] + y[1] + y[2]);
  if (sgn(dot(n, mp - y[0])) != 0) throw Error(ErrorCode::PointNotInterior, "split point off the triangle plane");
  for (int a = 0; a < 3; ++a) {
    Vec3 u = y[(a + 1) % 3] - y[a];
    if (sgn(dot(cross(u, mp - y[a]), n)) <= 0) throw Error(ErrorCode::PointNotInterior, "split point not inside");
  }
  std::vector<Point> pts{y[0], y[1], y[2], mp};
  FaceSplit f;
  f.face = -1;
  f.y = {0, 1, 2};
  f.m = 3;
  FaceFrame fr;
  fr.n = n;
  fr.tau = y[1] - y[0];
  fr.upsilon = cross(n, fr.tau);
  fill_face_split(f, pts, fr, std::nullopt);
  for (int q = 0; q < 3; ++q) f.cell_of_triangle[q] = q;
  return f;
}

std::string complex_to_json(const SplitComplex& c) {
  using nlohmann::json;
  const auto& p = c.patch();
  json j;
  json pts = json::array();
  for (std::size_t i = 0; i < p.points().size(); ++i) {
    const auto& q = p.point(static_cast<int>(i));
    pts.push_back({{"id", i}, {"label", c.label_of(static_cast<int>(i))},
                   {"coords", {to_string(q[0]), to_string(q[1]), to_string(q[2])}}});
  }
  j["vertices"] = pts;
  const char* names[] = {"vertex_list", "edges", "faces", "cells"};
  for (int d = 1; d <= 3; ++d) {
    json arr = json::array();
    for (const auto& s : p.subsimplices(d)) arr.push_back({{"ids", s.v}, {"interior", s.interior}});
    j[names[d]] = arr;
  }
  json fs = json::array();
  for (const auto& f : c.faces()) {
    json e = json::array();
    for (const auto& ed : f.edges) e.push_back({{"ids", {ed.m, ed.y}}, {"singular", ed.singular}});
    fs.push_back({{"face", f.face}, {"vertices", f.y}, {"split_point", f.m}, {"triangles", f.triangles},
                  {"normal", to_string(f.frame.n)}, {"ct_edges", e}});
  }
  j["face_splits"] = fs;
  j["euler_characteristic"] = c.euler_characteristic();
  return j.dump(2);
}

}  // namespace wfseq
