#include "wfseq/fespace.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace wfseq {

namespace {

struct FamilyInfo {
  Family f;
  const char* name;
  bool planar;
  bool vector;
};

const FamilyInfo kFamilies[] = {
    {Family::V0, "V0", false, false},        {Family::V1, "V1", false, true},
    {Family::V2, "V2", false, true},         {Family::V3, "V3", false, false},
    {Family::L0, "L0", false, false},        {Family::L1, "L1", false, true},
    {Family::L2, "L2", false, true},         {Family::L3, "L3", false, false},
    {Family::S0, "S0", false, false},        {Family::S1, "S1", false, true},
    {Family::S2, "S2", false, true},         {Family::S3, "S3", false, false},
    {Family::CalV2, "CalV2", false, true},   {Family::CalV3, "CalV3", false, false},
    {Family::ctL0, "ctL0", true, false},     {Family::ctVdiv1, "ctVdiv1", true, true},
    {Family::ctVcurl1, "ctVcurl1", true, true}, {Family::ctV2, "ctV2", true, false},
    {Family::ctL1, "ctL1", true, true},      {Family::ctL2, "ctL2", true, false},
    {Family::ctS0, "ctS0", true, false},     {Family::ctSdiv1, "ctSdiv1", true, true},
    {Family::ctScurl1, "ctScurl1", true, true}, {Family::ctS2, "ctS2", true, false},
    {Family::ctR0, "ctR0", true, false},     {Family::ctR1, "ctR1", true, true},
};

const FamilyInfo& info(Family f) { return kFamilies[static_cast<int>(f)]; }

using Entries = std::vector<std::pair<std::uint32_t, Rational>>;

SparseVec make_row(Entries e) {
  std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec row;
  for (std::size_t i = 0; i < e.size();) {
    std::size_t j = i;
    Rational s = 0;
    while (j < e.size() && e[j].first == e[i].first) s += e[j++].second;
    row.push(e[i].first, s);
    i = j;
  }
  return row;
}

using Key = std::vector<std::pair<int, int>>;

// Domain points grouped by key, in key order.
std::map<Key, std::vector<std::pair<std::size_t, std::size_t>>> domain_groups(const FieldLayout& l) {
  std::map<Key, std::vector<std::pair<std::size_t, std::size_t>>> g;
  for (std::size_t k = 0; k < l.patch->num_cells(); ++k)
    for (std::size_t b = 0; b < l.nbasis(); ++b) g[domain_point_key(l, k, b)].emplace_back(k, b);
  return g;
}

std::set<std::vector<int>> boundary_simplices(const Patch& p) {
  std::set<std::vector<int>> s;
  for (int d = 0; d < p.dim(); ++d)
    for (const auto& x : p.subsimplices(d))
      if (!x.interior) s.insert(x.v);
  return s;
}

std::vector<int> support(const Key& k) {
  std::vector<int> v;
  for (const auto& [id, m] : k) v.push_back(id);
  return v;
}

// Degree-zero points have empty support; a continuous constant reaches the boundary.
bool boundary_key(const std::set<std::vector<int>>& bs, const Key& k) {
  return k.empty() ? !bs.empty() : bs.count(support(k)) > 0;
}

// Local index within cell k of the domain point with the given key.
std::size_t local_index(const FieldLayout& l, std::size_t k, const Key& key) {
  const auto& c = l.patch->cell(k);
  MultiIndex a{};
  for (const auto& [id, m] : key) {
    auto it = std::find(c.begin(), c.end(), id);
    a[it - c.begin()] = m;
  }
  return static_cast<std::size_t>(l.indices().find(a));
}

// Direction vectors for a facet.
std::vector<Vec3> facet_directions(const Patch& p, const std::vector<int>& f, Component c) {
  std::vector<Vec3> e;
  for (std::size_t i = 1; i < f.size(); ++i) e.push_back(p.point(f[i]) - p.point(f[0]));
  if (c == Component::Tangential) return e;
  if (p.dim() == 3) return {cross(e[0], e[1])};
  if (p.dim() == 2) return {cross(patch_normal(p), e[0])};
  return {vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1)};
}

// Domain points (keys) on a facet at degree r.
std::vector<Key> facet_keys(const std::vector<int>& f, int r) {
  std::vector<Key> out;
  if (r < 0) return out;
  const IndexSet& is = index_set(static_cast<int>(f.size()), r);
  for (std::size_t b = 0; b < is.size(); ++b) {
    Key k;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (is[b][i] > 0) k.emplace_back(f[i], is[b][i]);
    out.push_back(k);
  }
  return out;
}

std::vector<Rational> component_weights(const FieldLayout& l, const Vec3& d) {
  std::vector<Rational> w(l.ncomp(), Rational(1));
  if (!l.scalar())
    for (int j = 0; j < l.ncomp(); ++j) w[j] = dot(l.frame[j], d);
  return w;
}

SparseMatrix rows_to_matrix(std::vector<SparseVec> rows, std::size_t cols) {
  SparseMatrix m(0, cols);
  for (auto& r : rows)
    if (!r.empty()) m.append_row(std::move(r));
  return m;
}

}  // namespace

const char* family_name(Family f) { return info(f).name; }

Family parse_family(const std::string& s) {
  for (const auto& i : kFamilies)
    if (s == i.name) return i.f;
  throw Error(ErrorCode::UnknownFamily, "unknown family '" + s + "'");
}

bool is_planar(Family f) { return info(f).planar; }
bool is_vector(Family f) { return info(f).vector; }

std::string SpaceSpec::name() const {
  return std::string(family_name(family)) + (bc == Bc::Zero ? "o" : "") + "_" + std::to_string(degree);
}

bool SpaceSpec::operator<(const SpaceSpec& o) const {
  return std::make_tuple(static_cast<int>(family), degree, static_cast<int>(bc)) <
         std::make_tuple(static_cast<int>(o.family), o.degree, static_cast<int>(o.bc));
}

Vec3 patch_normal(const Patch& p) {
  const auto& c = p.cell(0);
  return cross(p.point(c[1]) - p.point(c[0]), p.point(c[2]) - p.point(c[0]));
}

FieldLayout layout_for(Family f, int degree, const Domain& d) {
  if (is_planar(f) != (d.dim() == 2)) throw Error(ErrorCode::DimensionMismatch, "family does not live on this domain");
  if (!is_vector(f)) return FieldLayout::scalar_on(*d.patch, degree);
  if (d.dim() == 3) return FieldLayout::vector_on(*d.patch, degree);
  return FieldLayout::tangent_on(*d.patch, degree, d.face->frame);
}

// ---------------------------------------------------------------- constraint generators

SparseMatrix lagrange_rows(const FieldLayout& l) {
  std::vector<SparseVec> rows;
  for (const auto& [key, mem] : domain_groups(l))
    for (std::size_t i = 1; i < mem.size(); ++i)
      for (int j = 0; j < l.ncomp(); ++j) {
        auto a = static_cast<std::uint32_t>(l.index(mem[0].first, mem[0].second, j));
        auto b = static_cast<std::uint32_t>(l.index(mem[i].first, mem[i].second, j));
        rows.push_back(make_row({{a, Rational(1)}, {b, Rational(-1)}}));
      }
  return rows_to_matrix(std::move(rows), l.size());
}

bool on_patch_boundary(const FieldLayout& l, std::size_t cell, std::size_t b) {
  auto bs = boundary_simplices(*l.patch);
  return boundary_key(bs, domain_point_key(l, cell, b));
}

SparseMatrix boundary_zero_rows(const FieldLayout& l) {
  auto bs = boundary_simplices(*l.patch);
  std::vector<SparseVec> rows;
  for (std::size_t k = 0; k < l.patch->num_cells(); ++k)
    for (std::size_t b = 0; b < l.nbasis(); ++b)
      if (boundary_key(bs, domain_point_key(l, k, b)))
        for (int j = 0; j < l.ncomp(); ++j) {
          SparseVec r;
          r.push(static_cast<std::uint32_t>(l.index(k, b, j)), Rational(1));
          rows.push_back(std::move(r));
        }
  return rows_to_matrix(std::move(rows), l.size());
}

SparseMatrix facet_continuity_rows(const FieldLayout& l, Component c) {
  const Patch& p = *l.patch;
  std::vector<SparseVec> rows;
  for (const auto& f : p.subsimplices(p.dim() - 1)) {
    if (!f.interior || f.cells.size() != 2) continue;
    const std::size_t k1 = f.cells[0], k2 = f.cells[1];
    for (const Vec3& d : facet_directions(p, f.v, c)) {
      auto w = component_weights(l, d);
      for (const Key& key : facet_keys(f.v, l.degree)) {
        std::size_t b1 = local_index(l, k1, key), b2 = local_index(l, k2, key);
        Entries e;
        for (int j = 0; j < l.ncomp(); ++j) {
          e.emplace_back(static_cast<std::uint32_t>(l.index(k1, b1, j)), w[j]);
          e.emplace_back(static_cast<std::uint32_t>(l.index(k2, b2, j)), -w[j]);
        }
        rows.push_back(make_row(std::move(e)));
      }
    }
  }
  return rows_to_matrix(std::move(rows), l.size());
}

SparseMatrix facet_boundary_rows(const FieldLayout& l, Component c) {
  const Patch& p = *l.patch;
  std::vector<SparseVec> rows;
  for (const auto& f : p.subsimplices(p.dim() - 1)) {
    if (f.interior) continue;
    const std::size_t k = f.cells[0];
    for (const Vec3& d : facet_directions(p, f.v, c)) {
      auto w = component_weights(l, d);
      for (const Key& key : facet_keys(f.v, l.degree)) {
        std::size_t b = local_index(l, k, key);
        Entries e;
        for (int j = 0; j < l.ncomp(); ++j) e.emplace_back(static_cast<std::uint32_t>(l.index(k, b, j)), w[j]);
        rows.push_back(make_row(std::move(e)));
      }
    }
  }
  return rows_to_matrix(std::move(rows), l.size());
}

SparseMatrix lagrange_scatter(const FieldLayout& l, bool interior_only) {
  auto bs = boundary_simplices(*l.patch);
  std::size_t m = 0;
  std::vector<Entries> rows(l.size());
  for (const auto& [key, mem] : domain_groups(l)) {
    if (interior_only && boundary_key(bs, key)) continue;
    for (int j = 0; j < l.ncomp(); ++j) {
      for (const auto& [k, b] : mem) rows[l.index(k, b, j)].emplace_back(static_cast<std::uint32_t>(m), Rational(1));
      ++m;
    }
  }
  SparseMatrix s(0, m);
  for (auto& r : rows) s.append_row(make_row(std::move(r)));
  return s;
}

// ---------------------------------------------------------------- spaces

void Space::finalize() {
  echelon_ = std::make_unique<Echelon>(param.cols(), order);
  echelon_->insert_all(constraints);
  dim_ = param.cols() - echelon_->rank();
}

const SparseMatrix& Space::kernel() const {
  std::call_once(basis_once_, [&] {
    Echelon e = *echelon_;
    kernel_ = e.nullspace();
    basis_ = param * kernel_;
  });
  return kernel_;
}

const SparseMatrix& Space::basis() const {
  kernel();
  return basis_;
}

namespace {

bool lagrange_based(Family f) {
  switch (f) {
    case Family::L0: case Family::L1: case Family::L2: case Family::L3: case Family::V0:
    case Family::S0: case Family::S1: case Family::S2: case Family::S3:
    case Family::ctL0: case Family::ctL1: case Family::ctL2: case Family::ctS0:
    case Family::ctSdiv1: case Family::ctScurl1: case Family::ctS2: case Family::ctR0: case Family::ctR1:
      return true;
    default:
      return false;
  }
}

// Mean-zero is part of the zero-trace variant for these families.
bool mean_zero(Family f, Bc bc) {
  if (bc != Bc::Zero) return false;
  switch (f) {
    case Family::V3: case Family::L3: case Family::S3: case Family::CalV3:
    case Family::ctV2: case Family::ctL2: case Family::ctS2:
      return true;
    default:
      return false;
  }
}

std::unique_ptr<Space> assemble(const SpaceSpec& spec, const Domain& d) {
  auto s = std::make_unique<Space>();
  s->spec = spec;
  s->label = spec.name();
  s->domain = d;
  const int r = spec.degree;
  const Family f = spec.family;
  const bool zero = spec.bc == Bc::Zero;
  s->layout = layout_for(f, r, d);
  const FieldLayout& l = s->layout;
  const std::size_t n = l.size();

  std::vector<SparseMatrix> base;   // ambient rows already encoded by the parametrization
  std::vector<SparseMatrix> extra;  // rows to be enforced on the parameters

  auto target = [&](Family g, int deg, Bc b) { return build_space(g, deg, b, d); };

  if (lagrange_based(f)) {
    bool interior = zero || f == Family::ctR0 || f == Family::ctR1;
    s->param = lagrange_scatter(l, interior);
    base.push_back(lagrange_rows(l));
    if (interior) base.push_back(boundary_zero_rows(l));
  } else {
    s->param = SparseMatrix::identity(n);
  }

  switch (f) {
    case Family::V1:
    case Family::ctVcurl1:
      extra.push_back(facet_continuity_rows(l, Component::Tangential));
      if (zero) extra.push_back(facet_boundary_rows(l, Component::Tangential));
      break;
    case Family::V2:
    case Family::ctVdiv1:
    case Family::CalV2:
      extra.push_back(facet_continuity_rows(l, Component::Normal));
      if (zero) extra.push_back(facet_boundary_rows(l, Component::Normal));
      break;
    default:
      break;
  }

  Bc tb = zero ? Bc::Zero : Bc::None;
  {
    switch (f) {
      case Family::S0:
        extra.push_back(target(Family::L1, r - 1, tb)->ambient * diff_matrix(DiffOp::Grad, *d.patch, r));
        break;
      case Family::S1:
        extra.push_back(target(Family::L2, r - 1, tb)->ambient * diff_matrix(DiffOp::Curl, *d.patch, r));
        break;
      case Family::S2:
        extra.push_back(target(Family::L3, r - 1, tb)->ambient * diff_matrix(DiffOp::Div, *d.patch, r));
        break;
      case Family::ctS0:
      case Family::ctR0: {
        Bc b = f == Family::ctR0 ? Bc::None : tb;
        auto t = target(Family::ctL1, r - 1, b);
        extra.push_back(t->ambient * surface_grad(l, t->layout));
        break;
      }
      case Family::ctScurl1:
        extra.push_back(target(Family::ctL2, r - 1, tb)->ambient * surface_curl(l, d.face->frame.n));
        break;
      case Family::ctSdiv1:
      case Family::ctR1: {
        Bc b = f == Family::ctR1 ? Bc::None : tb;
        extra.push_back(target(Family::ctL2, r - 1, b)->ambient * surface_div(l));
        break;
      }
      default:
        break;
    }
  }

  if (f == Family::CalV2 || f == Family::CalV3) {
    for (const FaceSplit& face : d.wf->faces()) {
      if (f == Family::CalV2) {
        auto tl = FieldLayout::tangent_on(face.patch, r, face.frame);
        extra.push_back(lagrange_rows(tl) * face_tangential_trace(l, face));
      } else {
        auto sl = FieldLayout::scalar_on(face.patch, r);
        extra.push_back(lagrange_rows(sl) * face_trace_scalar(l, face));
      }
    }
  }
  if (mean_zero(f, spec.bc)) extra.push_back(integral_row(l));

  std::vector<const SparseMatrix*> amb, ex;
  for (const auto& m : base) amb.push_back(&m);
  for (const auto& m : extra) {
    amb.push_back(&m);
    ex.push_back(&m);
  }
  s->ambient = amb.empty() ? SparseMatrix(0, n) : vstack(amb);
  SparseMatrix e = ex.empty() ? SparseMatrix(0, n) : vstack(ex);
  if (lagrange_based(f)) {
    s->constraints = e * s->param;
  } else {
    s->constraints = e;
    s->order = domain_point_order(l);
  }
  s->finalize();
  return s;
}

}  // namespace

SpacePtr build_space(const SpaceSpec& spec, const Domain& d) {
  static std::mutex mu;
  static std::map<std::pair<SpaceSpec, std::uint64_t>, SpacePtr> cache;
  auto key = std::make_pair(spec, d.patch->uid());
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  SpacePtr s = assemble(spec, d);
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(key, s);
  return it->second;
}

SpacePtr build_space(Family f, int r, Bc bc, const Domain& d) { return build_space(SpaceSpec{f, r, bc}, d); }

std::optional<long> formula_dimension(const SpaceSpec& spec) {
  const long r = spec.degree;
  const bool z = spec.bc == Bc::Zero;
  if (r < 0) return 0;
  auto pos = [](long v) -> std::optional<long> { return std::max(0L, v); };
  switch (spec.family) {
    case Family::V0:
    case Family::L0:
      return pos(z ? (2 * r - 1) * (r * r - r + 1) : (2 * r + 1) * (r * r + r + 1));
    case Family::V1:
      return pos(z ? 2 * (r + 1) * (3 * r * r + 1) : 2 * (r + 1) * (3 * r * r + 6 * r + 4));
    case Family::V2:
      return pos(z ? 3 * (r + 1) * (r + 2) * (2 * r + 1) : 3 * (r + 1) * (r + 2) * (2 * r + 3));
    case Family::V3:
      return pos(z ? 2 * r * r * r + 12 * r * r + 22 * r + 11 : 2 * (r + 1) * (r + 2) * (r + 3));
    case Family::L1:
    case Family::L2:
      return pos(z ? 3 * (2 * r - 1) * (r * r - r + 1) : 3 * (2 * r + 1) * (r * r + r + 1));
    case Family::L3:
    case Family::S3:
      return pos(z ? (r - 1) * (2 * r * r - r + 2) : (2 * r + 1) * (r * r + r + 1));
    case Family::S0:
      return pos(z ? 2 * (r - 2) * (r - 3) * (r - 4) : 2 * r * r * r - 6 * r * r + 10 * r - 2);
    case Family::S1:
      return pos(z ? 3 * (2 * r - 3) * (r - 2) * (r - 3) : 3 * r * (2 * r * r - 3 * r + 5));
    case Family::S2:
      return pos(z ? 2 * (r - 2) * (3 * r * r - 6 * r + 4) : 6 * r * r * r + 8 * r + 2);
    case Family::CalV2:
      if (!z) return std::nullopt;
      return pos(6 * r * r * r + 21 * r * r + 9 * r + 2);
    case Family::CalV3:
      return pos(z ? 2 * r * r * r + 12 * r * r + 10 * r + 3 : 2 * (r * r * r + 6 * r * r + 5 * r + 2));
    case Family::ctL0:
    case Family::ctS2:
    case Family::ctL2:
      if (spec.family != Family::ctL0 && z) return pos(3 * r * (r - 1) / 2);
      return pos(z ? (3 * r * r - 3 * r + 2) / 2 : (3 * r * r + 3 * r + 2) / 2);
    case Family::ctVdiv1:
    case Family::ctVcurl1:
      return pos(z ? 3 * r * (r + 1) : 3 * (r + 1) * (r + 1));
    case Family::ctV2:
      return pos(3 * (r + 1) * (r + 2) / 2 - (z ? 1 : 0));
    case Family::ctL1:
      return pos(z ? 3 * r * r - 3 * r + 2 : 3 * r * r + 3 * r + 2);
    case Family::ctS0:
      return pos(z ? 3 * (r * r - 5 * r + 6) / 2 : 3 * (r * r - r + 2) / 2);
    case Family::ctSdiv1:
    case Family::ctScurl1:
      return pos(z ? 3 * r * r - 9 * r + 6 : 3 * r * r + 3);
    case Family::ctR0:
      return pos(3 * (r - 1) * (r - 2) / 2);
    case Family::ctR1:
      return pos(3 * (r - 1) * (r - 1));
  }
  return std::nullopt;
}

bool membership(const std::vector<Rational>& coeffs, const Space& s) {
  if (coeffs.size() != s.layout.size()) throw Error(ErrorCode::DimensionMismatch, "field does not match the space layout");
  for (const auto& v : s.ambient.apply(coeffs))
    if (sgn(v) != 0) return false;
  return true;
}

std::size_t restricted_rank(const Space& s, const SparseMatrix& m) {
  if (m.cols() != s.layout.size()) throw Error(ErrorCode::DimensionMismatch, "operator does not act on the space");
  Echelon e = s.echelon();
  e.insert_all(m * s.param);
  return e.rank() - s.echelon().rank();
}

bool maps_into(const Space& s, const SparseMatrix& m, const Space& t) {
  if (m.rows() != t.layout.size()) throw Error(ErrorCode::DimensionMismatch, "operator does not land in the target layout");
  return restricted_rank(s, t.ambient * m) == 0;
}

namespace {

SpacePtr with_rows(const Space& s, const SparseMatrix& rows, const std::string& label) {
  auto out = std::make_shared<Space>();
  out->spec = s.spec;
  out->domain = s.domain;
  out->layout = s.layout;
  out->param = s.param;
  out->constraints = vstack(s.constraints, rows * s.param);
  out->ambient = vstack(s.ambient, rows);
  out->order = s.order;
  out->label = label;
  out->finalize();
  return out;
}

}  // namespace

SpacePtr intersect(const Space& s, const Space& t) {
  if (!(s.layout == t.layout)) throw Error(ErrorCode::DimensionMismatch, "intersection of spaces with different layouts");
  return with_rows(s, t.ambient, s.name() + "&" + t.name());
}

SpacePtr subspace_kernel(const Space& s, const SparseMatrix& m, const std::string& label) {
  if (m.cols() != s.layout.size()) throw Error(ErrorCode::DimensionMismatch, "operator does not act on the space");
  return with_rows(s, m, s.name() + "|" + label);
}

std::vector<Rational> random_member(const Space& s, std::mt19937_64& g) {
  const SparseMatrix& k = s.kernel();
  std::vector<Rational> w(k.cols());
  for (auto& x : w) x = random_rational(g);
  return s.param.apply(k.apply(w));
}

}  // namespace wfseq
