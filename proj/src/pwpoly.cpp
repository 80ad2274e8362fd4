#include "wfseq/pwpoly.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <tuple>

namespace wfseq {

// ---------------------------------------------------------------- index sets

IndexSet::IndexSet(int nvars, int degree) : nvars_(nvars), degree_(degree) {
  if (nvars < 1 || nvars > 4) throw Error(ErrorCode::DimensionMismatch, "index set arity");
  if (degree < 0) return;
  MultiIndex a{};
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == nvars - 1) {
      a[i] = left;
      idx_.push_back(a);
      return;
    }
    for (int v = left; v >= 0; --v) {
      a[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, degree);
  std::size_t n = 1;
  for (int i = 0; i < nvars; ++i) n *= static_cast<std::size_t>(degree + 1);
  table_.assign(n, -1);
  for (std::size_t k = 0; k < idx_.size(); ++k) {
    std::size_t code = 0;
    for (int i = 0; i < nvars; ++i) code = code * (degree + 1) + idx_[k][i];
    table_[code] = static_cast<std::int32_t>(k);
  }
}

long IndexSet::find(const MultiIndex& a) const {
  if (degree_ < 0) return -1;
  std::size_t code = 0;
  int sum = 0;
  for (int i = 0; i < nvars_; ++i) {
    if (a[i] < 0 || a[i] > degree_) return -1;
    sum += a[i];
    code = code * (degree_ + 1) + a[i];
  }
  if (sum != degree_) return -1;
  return table_[code];
}

const IndexSet& index_set(int nvars, int degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<IndexSet>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& p = cache[{nvars, degree}];
  if (!p) p = std::make_unique<IndexSet>(nvars, degree);
  return *p;
}

std::size_t FieldLayout::nbasis() const {
  if (degree < 0) return 0;
  return index_set(patch->dim() + 1, degree).size();
}

std::vector<Vec3> dual_frame(const std::vector<Vec3>& frame) {
  const std::size_t n = frame.size();
  RatMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = dot(frame[i], frame[j]);
  RatMatrix gi = inverse(g);
  std::vector<Vec3> d(n, Vec3{});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i] = d[i] + gi(i, j) * frame[j];
  return d;
}

// ---------------------------------------------------------------- polynomials

Rational poly_eval(const Poly3& p, const Point& x) {
  Rational s = 0;
  for (const auto& [e, c] : p) {
    Rational t = c;
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < e[k]; ++i) t *= x[k];
    s += t;
  }
  return s;
}

Poly3 poly_derivative(const Poly3& p, int k) {
  Poly3 d;
  for (const auto& [e, c] : p) {
    if (e[k] == 0) continue;
    auto f = e;
    f[k] -= 1;
    d[f] += c * e[k];
  }
  for (auto it = d.begin(); it != d.end();)
    it = sgn(it->second) == 0 ? d.erase(it) : std::next(it);
  return d;
}

int poly_degree(const Poly3& p) {
  int g = -1;
  for (const auto& [e, c] : p)
    if (sgn(c) != 0) g = std::max(g, e[0] + e[1] + e[2]);
  return g;
}

Rational random_rational(std::mt19937_64& g) {
  // numerator in [-6, 6], denominator in [1, 4]
  long num = static_cast<long>(g() % 13) - 6;
  long den = static_cast<long>(g() % 4) + 1;
  return frac(num, den);
}

Poly3 random_poly(std::mt19937_64& g, int degree) {
  Poly3 p;
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b)
      for (int c = 0; a + b + c <= degree; ++c) {
        Rational q = random_rational(g);
        if (sgn(q) != 0) p[{a, b, c}] = q;
      }
  return p;
}

namespace {

// Homogeneous polynomial in barycentric variables, dense over an index set.
struct Homog {
  int nv, deg;
  std::vector<Rational> c;
};

Homog times_linear(const Homog& h, const std::vector<Rational>& lin) {
  const IndexSet& src = index_set(h.nv, h.deg);
  const IndexSet& dst = index_set(h.nv, h.deg + 1);
  Homog out{h.nv, h.deg + 1, std::vector<Rational>(dst.size())};
  for (std::size_t k = 0; k < src.size(); ++k) {
    if (sgn(h.c[k]) == 0) continue;
    for (int i = 0; i < h.nv; ++i) {
      if (sgn(lin[i]) == 0) continue;
      MultiIndex a = src[k];
      a[i] += 1;
      out.c[dst.find(a)] += h.c[k] * lin[i];
    }
  }
  return out;
}

Rational multinomial_inverse(int r, const MultiIndex& a, int nv) {
  // a! / r!
  Rational q = 1;
  for (int i = 0; i < nv; ++i) q *= factorial(a[i]);
  return q / factorial(r);
}

}  // namespace

std::vector<Rational> from_polynomial(const FieldLayout& l, const std::vector<Poly3>& comps) {
  const Patch& p = *l.patch;
  const int nv = p.dim() + 1;
  std::vector<Rational> out(l.size());
  if (l.degree < 0) return out;
  const IndexSet& is = l.indices();
  std::vector<Vec3> dual = l.scalar() ? std::vector<Vec3>{} : dual_frame(l.frame);
  const std::size_t ncart = l.scalar() ? 1 : 3;
  if (comps.size() < ncart) throw Error(ErrorCode::DimensionMismatch, "polynomial component count");
  for (std::size_t k = 0; k < p.num_cells(); ++k) {
    const auto& cell = p.cell(k);
    std::array<std::vector<Rational>, 3> lin;
    for (int d = 0; d < 3; ++d)
      for (int i = 0; i < nv; ++i) lin[d].push_back(p.point(cell[i])[d]);
    std::vector<Rational> ones(nv, Rational(1));
    std::vector<std::vector<Rational>> bern(ncart, std::vector<Rational>(is.size()));
    for (std::size_t m = 0; m < ncart; ++m) {
      for (const auto& [e, c] : comps[m]) {
        int g = e[0] + e[1] + e[2];
        if (g > l.degree) throw Error(ErrorCode::InputDegreeTooLow, "polynomial degree exceeds layout degree");
        Homog h{nv, 0, {Rational(1)}};
        for (int d = 0; d < 3; ++d)
          for (int t = 0; t < e[d]; ++t) h = times_linear(h, lin[d]);
        for (int t = g; t < l.degree; ++t) h = times_linear(h, ones);
        for (std::size_t b = 0; b < is.size(); ++b) bern[m][b] += c * h.c[b];
      }
      for (std::size_t b = 0; b < is.size(); ++b) bern[m][b] *= multinomial_inverse(l.degree, is[b], nv);
    }
    for (std::size_t b = 0; b < is.size(); ++b) {
      if (l.scalar()) {
        out[l.index(k, b)] = bern[0][b];
      } else {
        for (int j = 0; j < l.ncomp(); ++j) {
          Rational s = 0;
          for (int m = 0; m < 3; ++m) s += dual[j][m] * bern[m][b];
          out[l.index(k, b, j)] = s;
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- differential operators

std::array<SparseMatrix, 3> partials(const FieldLayout& src, const Vec3& sel) {
  const Patch& p = *src.patch;
  const int nv = p.dim() + 1;
  const int r = src.degree;
  FieldLayout dst = FieldLayout::scalar_on(p, r - 1);
  std::array<TripletBuilder, 3> t{TripletBuilder(dst.size(), src.size()), TripletBuilder(dst.size(), src.size()),
                                  TripletBuilder(dst.size(), src.size())};
  std::vector<Rational> cf(src.ncomp(), Rational(1));
  if (!src.scalar())
    for (int j = 0; j < src.ncomp(); ++j) cf[j] = dot(src.frame[j], sel);
  if (r >= 1) {
    const IndexSet& is = src.indices();
    const IndexSet& it = dst.indices();
    for (std::size_t k = 0; k < p.num_cells(); ++k) {
      const auto& g = p.bary_grad(k);
      for (std::size_t b = 0; b < it.size(); ++b) {
        for (int i = 0; i < nv; ++i) {
          MultiIndex a = it[b];
          a[i] += 1;
          std::size_t sa = static_cast<std::size_t>(is.find(a));
          for (int d = 0; d < 3; ++d) {
            if (sgn(g[i][d]) == 0) continue;
            Rational v = g[i][d] * r;
            for (int j = 0; j < src.ncomp(); ++j)
              if (sgn(cf[j]) != 0) t[d].add(dst.index(k, b), src.index(k, sa, j), v * cf[j]);
          }
        }
      }
    }
  }
  return {t[0].build(), t[1].build(), t[2].build()};
}

namespace {

// Interleaves scalar-layout component maps into a Cartesian vector layout.
SparseMatrix interleave(const std::vector<const SparseMatrix*>& comps) {
  const std::size_t n = comps[0]->rows(), nc = comps.size();
  SparseMatrix m(0, comps[0]->cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < nc; ++c) m.append_row(comps[c]->row(i));
  return m;
}

}  // namespace

SparseMatrix grad_matrix(const FieldLayout& src) {
  if (!src.scalar()) throw Error(ErrorCode::DimensionMismatch, "grad of a vector field");
  auto d = partials(src, Vec3{});
  return interleave({&d[0], &d[1], &d[2]});
}

SparseMatrix curl_matrix(const FieldLayout& src) {
  if (src.scalar()) throw Error(ErrorCode::DimensionMismatch, "curl of a scalar field");
  auto j0 = partials(src, vec(1, 0, 0));
  auto j1 = partials(src, vec(0, 1, 0));
  auto j2 = partials(src, vec(0, 0, 1));
  SparseMatrix c0 = j2[1] - j1[2], c1 = j0[2] - j2[0], c2 = j1[0] - j0[1];
  return interleave({&c0, &c1, &c2});
}

SparseMatrix div_matrix(const FieldLayout& src) {
  if (src.scalar()) throw Error(ErrorCode::DimensionMismatch, "div of a scalar field");
  auto j0 = partials(src, vec(1, 0, 0));
  auto j1 = partials(src, vec(0, 1, 0));
  auto j2 = partials(src, vec(0, 0, 1));
  return j0[0] + j1[1] + j2[2];
}

const SparseMatrix& diff_matrix(DiffOp op, const Patch& patch, int r) {
  static std::mutex mu;
  static std::map<std::tuple<int, std::uint64_t, int>, std::unique_ptr<SparseMatrix>> cache;
  auto key = std::make_tuple(static_cast<int>(op), patch.uid(), r);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  SparseMatrix m;
  switch (op) {
    case DiffOp::Grad: m = grad_matrix(FieldLayout::scalar_on(patch, r)); break;
    case DiffOp::Curl: m = curl_matrix(FieldLayout::vector_on(patch, r)); break;
    case DiffOp::Div: m = div_matrix(FieldLayout::vector_on(patch, r)); break;
  }
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[key];
  if (!slot) slot = std::make_unique<SparseMatrix>(std::move(m));
  return *slot;
}

// ---------------------------------------------------------------- pointwise maps

SparseMatrix pointwise(const FieldLayout& src, const FieldLayout& dst, const RatMatrix& k) {
  if (src.patch != dst.patch || src.degree != dst.degree)
    throw Error(ErrorCode::DimensionMismatch, "pointwise map between different layouts");
  if (k.rows() != static_cast<std::size_t>(dst.ncomp()) || k.cols() != static_cast<std::size_t>(src.ncomp()))
    throw Error(ErrorCode::DimensionMismatch, "pointwise coefficient block shape");
  SparseMatrix m(0, src.size());
  const std::size_t nb = src.nbasis();
  for (std::size_t c = 0; c < src.patch->num_cells(); ++c)
    for (std::size_t b = 0; b < nb; ++b)
      for (int i = 0; i < dst.ncomp(); ++i) {
        SparseVec row;
        for (int j = 0; j < src.ncomp(); ++j) row.push(static_cast<std::uint32_t>(src.index(c, b, j)), k(i, j));
        m.append_row(std::move(row));
      }
  return m;
}

RatMatrix frame_change(const FieldLayout& src, const FieldLayout& dst) {
  if (src.scalar() || dst.scalar()) throw Error(ErrorCode::DimensionMismatch, "frame change needs vector layouts");
  auto d = dual_frame(dst.frame);
  RatMatrix k(dst.ncomp(), src.ncomp());
  for (int i = 0; i < dst.ncomp(); ++i)
    for (int j = 0; j < src.ncomp(); ++j) k(i, j) = dot(d[i], src.frame[j]);
  return k;
}

RatMatrix dot_with(const FieldLayout& src, const Vec3& v) {
  RatMatrix k(1, src.ncomp());
  for (int j = 0; j < src.ncomp(); ++j) k(0, j) = dot(src.frame.at(j), v);
  return k;
}

RatMatrix times_vector(const FieldLayout& dst, const Vec3& v) {
  auto d = dual_frame(dst.frame);
  RatMatrix k(dst.ncomp(), 1);
  for (int i = 0; i < dst.ncomp(); ++i) k(i, 0) = dot(d[i], v);
  return k;
}

RatMatrix cross_with(const FieldLayout& src, const FieldLayout& dst, const Vec3& n) {
  auto d = dual_frame(dst.frame);
  RatMatrix k(dst.ncomp(), src.ncomp());
  for (int i = 0; i < dst.ncomp(); ++i)
    for (int j = 0; j < src.ncomp(); ++j) {
      Vec3 f = src.scalar() ? Vec3{} : src.frame[j];
      k(i, j) = dot(d[i], cross(f, n));
    }
  return k;
}

SparseMatrix elevate_matrix(const FieldLayout& src, int to) {
  if (to < src.degree) throw Error(ErrorCode::UnsupportedDegree, "degree reduction");
  SparseMatrix acc = SparseMatrix::identity(src.size());
  const int nv = src.patch->dim() + 1;
  for (int r = src.degree; r < to; ++r) {
    FieldLayout a = src.with_degree(r), b = src.with_degree(r + 1);
    TripletBuilder t(b.size(), a.size());
    if (r >= 0) {
      const IndexSet& ia = a.indices();
      const IndexSet& ib = b.indices();
      for (std::size_t c = 0; c < src.patch->num_cells(); ++c)
        for (std::size_t g = 0; g < ib.size(); ++g)
          for (int i = 0; i < nv; ++i) {
            if (ib[g][i] == 0) continue;
            MultiIndex al = ib[g];
            al[i] -= 1;
            std::size_t s = static_cast<std::size_t>(ia.find(al));
            for (int j = 0; j < src.ncomp(); ++j)
              t.add(b.index(c, g, j), a.index(c, s, j), frac(ib[g][i], r + 1));
          }
    }
    acc = t.build() * acc;
  }
  return acc;
}

// ---------------------------------------------------------------- traces

SparseMatrix trace_matrix(const FieldLayout& src, const FieldLayout& dst, const std::vector<int>& cell_of) {
  if (src.frame != dst.frame) throw Error(ErrorCode::DimensionMismatch, "trace between different frames");
  if (src.degree != dst.degree) throw Error(ErrorCode::DimensionMismatch, "trace changes degree");
  const Patch& ps = *src.patch;
  const Patch& pd = *dst.patch;
  TripletBuilder t(dst.size(), src.size());
  if (src.degree >= 0) {
    const IndexSet& is = src.indices();
    const IndexSet& id = dst.indices();
    for (std::size_t q = 0; q < pd.num_cells(); ++q) {
      const auto& dc = pd.cell(q);
      int k = cell_of.empty() ? ps.cell_containing(dc) : cell_of.at(q);
      if (k < 0) throw Error(ErrorCode::DimensionMismatch, "trace target is not a sub-simplex");
      const auto& sc = ps.cell(k);
      std::vector<int> pos(dc.size());
      for (std::size_t i = 0; i < dc.size(); ++i) {
        auto it = std::find(sc.begin(), sc.end(), dc[i]);
        if (it == sc.end()) throw Error(ErrorCode::DimensionMismatch, "trace cell not contained in source cell");
        pos[i] = static_cast<int>(it - sc.begin());
      }
      for (std::size_t b = 0; b < id.size(); ++b) {
        MultiIndex a{};
        for (std::size_t i = 0; i < dc.size(); ++i) a[pos[i]] = id[b][i];
        std::size_t sa = static_cast<std::size_t>(is.find(a));
        for (int j = 0; j < src.ncomp(); ++j) t.add(dst.index(q, b, j), src.index(k, sa, j), Rational(1));
      }
    }
  }
  return t.build();
}

// ---------------------------------------------------------------- integration

Rational bernstein_product_integral(int dim, int r, const MultiIndex& a, int s, const MultiIndex& b) {
  Rational v = factorial(dim) * factorial(r) * factorial(s) / factorial(r + s + dim);
  for (int i = 0; i <= dim; ++i) v *= binomial(a[i] + b[i], a[i]);
  return v;
}

SparseMatrix mass_matrix(const FieldLayout& test, const FieldLayout& field) {
  if (test.patch != field.patch) throw Error(ErrorCode::DimensionMismatch, "mass matrix on different patches");
  if (test.scalar() != field.scalar()) throw Error(ErrorCode::DimensionMismatch, "mass matrix scalar/vector mix");
  const Patch& p = *test.patch;
  const int dim = p.dim();
  TripletBuilder t(test.size(), field.size());
  if (test.degree >= 0 && field.degree >= 0) {
    const IndexSet& it = test.indices();
    const IndexSet& ifl = field.indices();
    RatMatrix gram(test.ncomp(), field.ncomp());
    for (int i = 0; i < test.ncomp(); ++i)
      for (int j = 0; j < field.ncomp(); ++j) gram(i, j) = test.scalar() ? Rational(1) : dot(test.frame[i], field.frame[j]);
    std::vector<Rational> base(it.size() * ifl.size());
    for (std::size_t a = 0; a < it.size(); ++a)
      for (std::size_t b = 0; b < ifl.size(); ++b)
        base[a * ifl.size() + b] = bernstein_product_integral(dim, test.degree, it[a], field.degree, ifl[b]);
    for (std::size_t k = 0; k < p.num_cells(); ++k)
      for (std::size_t a = 0; a < it.size(); ++a)
        for (std::size_t b = 0; b < ifl.size(); ++b) {
          Rational v = p.weight(k) * base[a * ifl.size() + b];
          for (int i = 0; i < test.ncomp(); ++i)
            for (int j = 0; j < field.ncomp(); ++j)
              if (sgn(gram(i, j)) != 0) t.add(test.index(k, a, i), field.index(k, b, j), v * gram(i, j));
        }
  }
  return t.build();
}

SparseMatrix integral_row(const FieldLayout& l) {
  if (!l.scalar()) throw Error(ErrorCode::DimensionMismatch, "integral of a vector field");
  SparseMatrix m(0, l.size());
  SparseVec row;
  if (l.degree >= 0) {
    Rational per = Rational(1) / binomial(l.degree + l.patch->dim(), l.patch->dim());
    for (std::size_t k = 0; k < l.patch->num_cells(); ++k)
      for (std::size_t b = 0; b < l.nbasis(); ++b) row.push(static_cast<std::uint32_t>(l.index(k, b)), l.patch->weight(k) * per);
  }
  m.append_row(std::move(row));
  return m;
}

Rational integrate(const PiecewiseField& f) { return integral_row(f.layout).apply(f.coeffs)[0]; }

std::vector<Rational> evaluate(const PiecewiseField& f, const Point& x, int cell) {
  const Patch& p = *f.layout.patch;
  if (cell < 0) cell = p.locate(x);
  if (cell < 0) throw Error(ErrorCode::DimensionMismatch, "point outside the patch");
  auto lam = p.barycentric(cell, x);
  for (const auto& l : lam)
    if (sgn(l) < 0) throw Error(ErrorCode::DimensionMismatch, "point outside the hinted cell");
  const int nv = p.dim() + 1;
  const auto& l = f.layout;
  std::vector<Rational> comp(l.ncomp());
  if (l.degree >= 0) {
    const IndexSet& is = l.indices();
    for (std::size_t b = 0; b < is.size(); ++b) {
      Rational B = factorial(l.degree);
      for (int i = 0; i < nv; ++i) {
        B /= factorial(is[b][i]);
        for (int e = 0; e < is[b][i]; ++e) B *= lam[i];
      }
      for (int j = 0; j < l.ncomp(); ++j) comp[j] += B * f.coeffs[l.index(cell, b, j)];
    }
  }
  if (l.scalar()) return comp;
  std::vector<Rational> v(3);
  for (int j = 0; j < l.ncomp(); ++j)
    for (int d = 0; d < 3; ++d) v[d] += comp[j] * l.frame[j][d];
  return v;
}

PiecewiseField hat_function(const SplitComplex& c) {
  PiecewiseField f{FieldLayout::scalar_on(c.patch(), 1), {}};
  f.coeffs.assign(f.layout.size(), Rational(0));
  const IndexSet& is = f.layout.indices();
  for (std::size_t k = 0; k < c.patch().num_cells(); ++k) {
    const auto& cell = c.patch().cell(k);
    for (std::size_t b = 0; b < is.size(); ++b)
      for (int i = 0; i < 4; ++i)
        if (cell[i] == SplitComplex::kZ && is[b][i] == 1) f.coeffs[f.layout.index(k, b)] = 1;
  }
  return f;
}

std::vector<std::pair<int, int>> domain_point_key(const FieldLayout& l, std::size_t cell, std::size_t b) {
  const auto& c = l.patch->cell(cell);
  const auto& a = l.indices()[b];
  std::vector<std::pair<int, int>> key;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (a[i] > 0) key.emplace_back(c[i], a[i]);
  return key;
}

std::vector<std::uint32_t> domain_point_order(const FieldLayout& l) {
  struct Item {
    std::vector<std::pair<int, int>> key;
    std::size_t cell;
    int comp;
    std::uint32_t col;
  };
  std::vector<Item> items;
  items.reserve(l.size());
  for (std::size_t k = 0; k < l.patch->num_cells(); ++k)
    for (std::size_t b = 0; b < l.nbasis(); ++b) {
      auto key = domain_point_key(l, k, b);
      for (int j = 0; j < l.ncomp(); ++j)
        items.push_back({key, k, j, static_cast<std::uint32_t>(l.index(k, b, j))});
    }
  std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
    return std::tie(x.key, x.cell, x.comp) < std::tie(y.key, y.cell, y.comp);
  });
  std::vector<std::uint32_t> order;
  order.reserve(items.size());
  for (const auto& it : items) order.push_back(it.col);
  return order;
}

// ---------------------------------------------------------------- surface operators

SparseMatrix surface_grad(const FieldLayout& src, const FieldLayout& dst) {
  FieldLayout cart = FieldLayout::vector_on(*src.patch, src.degree - 1);
  return pointwise(cart, dst, frame_change(cart, dst)) * grad_matrix(src);
}

SparseMatrix surface_rot(const FieldLayout& src, const FieldLayout& dst, const Vec3& n) {
  FieldLayout cart = FieldLayout::vector_on(*src.patch, src.degree - 1);
  return pointwise(cart, dst, cross_with(cart, dst, n)) * grad_matrix(src);
}

SparseMatrix surface_div(const FieldLayout& src) { return div_matrix(src); }

SparseMatrix surface_curl(const FieldLayout& src, const Vec3& n) {
  FieldLayout cart = FieldLayout::vector_on(*src.patch, src.degree - 1);
  FieldLayout sc = FieldLayout::scalar_on(*src.patch, src.degree - 1);
  return pointwise(cart, sc, dot_with(cart, n)) * curl_matrix(src);
}

static std::vector<int> triangle_cells(const FaceSplit& f) {
  return {f.cell_of_triangle[0], f.cell_of_triangle[1], f.cell_of_triangle[2]};
}

SparseMatrix face_trace_scalar(const FieldLayout& src, const FaceSplit& f) {
  return trace_matrix(src, FieldLayout::scalar_on(f.patch, src.degree), triangle_cells(f));
}

SparseMatrix face_tangential_trace(const FieldLayout& src, const FaceSplit& f) {
  FieldLayout cart{&f.patch, src.degree, src.frame};
  FieldLayout tan = FieldLayout::tangent_on(f.patch, src.degree, f.frame);
  return pointwise(cart, tan, frame_change(cart, tan)) * trace_matrix(src, cart, triangle_cells(f));
}

SparseMatrix face_normal_trace(const FieldLayout& src, const FaceSplit& f, const Vec3& d) {
  FieldLayout cart{&f.patch, src.degree, src.frame};
  FieldLayout sc = FieldLayout::scalar_on(f.patch, src.degree);
  return pointwise(cart, sc, dot_with(cart, d)) * trace_matrix(src, cart, triangle_cells(f));
}

SparseMatrix edge_side_trace(const FieldLayout& face_scalar, const Patch& edge, int triangle) {
  return trace_matrix(face_scalar, FieldLayout::scalar_on(edge, face_scalar.degree), {triangle});
}

SparseMatrix edge_jump(const FieldLayout& face_scalar, const Patch& edge, const CtEdge& e) {
  return edge_side_trace(face_scalar, edge, e.q1) - edge_side_trace(face_scalar, edge, e.q2);
}

}  // namespace wfseq
