#include "wfseq/derham.hpp"

#include <cstdio>
#include <random>

#include "wfseq/parallel.hpp"

namespace wfseq {

const SplitComplex& reference_split() {
  static const SplitComplex c = build_worsey_farin(reference_tetrahedron());
  return c;
}

const FaceSplit& reference_triangle() {
  static const FaceSplit f = build_clough_tocher({vec(0, 0, 0), vec(1, 0, 0), vec(0, 1, 0)});
  return f;
}

std::string SequenceSpec::label() const {
  std::string s = name;
  if (dim == 2) s += rotated ? "-rot" : "-grad";
  s += bc == Bc::Zero ? "-zero" : "-none";
  s += "-r" + std::to_string(r);
  return s;
}

std::vector<SpaceSpec> sequence_spaces(const SequenceSpec& seq) {
  using F = Family;
  std::vector<F> fam;
  const bool z = seq.bc == Bc::Zero;
  if (seq.dim == 3) {
    if (seq.name == "VVVV") fam = {F::V0, F::V1, F::V2, F::V3};
    else if (seq.name == "SLVV") fam = {F::S0, F::L1, z ? F::CalV2 : F::V2, F::V3};
    else if (seq.name == "SSLV") fam = {F::S0, F::S1, F::L2, z ? F::CalV3 : F::V3};
    else if (seq.name == "SSSL") fam = {F::S0, F::S1, F::S2, F::L3};
  } else if (seq.dim == 2) {
    if (seq.name == "LVV") fam = {F::ctL0, seq.rotated ? F::ctVdiv1 : F::ctVcurl1, F::ctV2};
    else if (seq.name == "SLV") fam = {F::ctS0, F::ctL1, F::ctV2};
    else if (seq.name == "SSL") fam = {F::ctS0, seq.rotated ? F::ctSdiv1 : F::ctScurl1, F::ctL2};
  }
  if (fam.empty()) throw Error(ErrorCode::UnknownFamily, "unknown sequence " + seq.name);
  std::vector<SpaceSpec> out;
  for (std::size_t k = 0; k < fam.size(); ++k) out.push_back({fam[k], seq.r - static_cast<int>(k), seq.bc});
  return out;
}

std::vector<std::string> sequence_operators(const SequenceSpec& seq) {
  if (seq.dim == 3) return {"grad", "curl", "div"};
  if (seq.rotated) return {"rot_F", "div_F"};
  return {"grad_F", "curl_F"};
}

SparseMatrix arrow_matrix(const SequenceSpec& seq, std::size_t k, const Space& src, const Space& dst) {
  const FieldLayout& a = src.layout;
  const FieldLayout& b = dst.layout;
  if (a.size() == 0 || b.size() == 0) return SparseMatrix(b.size(), a.size());
  SparseMatrix m;
  if (seq.dim == 3) {
    static const DiffOp ops[3] = {DiffOp::Grad, DiffOp::Curl, DiffOp::Div};
    m = diff_matrix(ops[k], *a.patch, a.degree);
  } else {
    const Vec3& n = src.domain.face->frame.n;
    if (!seq.rotated) m = k == 0 ? surface_grad(a, b) : surface_curl(a, n);
    else m = k == 0 ? surface_rot(a, b, n) : surface_div(a);
  }
  if (m.rows() != b.size() || m.cols() != a.size())
    throw Error(ErrorCode::DimensionMismatch, "operator layouts do not match " + seq.label());
  return m;
}

ExactnessReport check_exactness(const SequenceSpec& seq) {
  if (seq.dim == 3) return check_exactness(seq, Domain::of(reference_split()));
  return check_exactness(seq, Domain::of(reference_triangle()));
}

ExactnessReport check_exactness(const SequenceSpec& seq, const Domain& d) {
  ExactnessReport rep;
  rep.seq = seq;
  std::vector<SpacePtr> x;
  for (const SpaceSpec& s : sequence_spaces(seq)) x.push_back(build_space(s, d));
  const auto names = sequence_operators(seq);
  const std::size_t n = x.size() - 1;
  std::vector<SparseMatrix> ops;
  for (std::size_t k = 0; k < n; ++k) ops.push_back(arrow_matrix(seq, k, *x[k], *x[k + 1]));

  for (std::size_t k = 0; k <= n; ++k) {
    rep.dims.push_back(x[k]->dim());
    rep.alternating_sum += (k % 2 == 0 ? 1 : -1) * static_cast<long>(x[k]->dim());
  }
  rep.expected_sum = seq.bc == Bc::Zero ? 0 : 1;

  for (std::size_t k = 0; k < n; ++k) {
    ArrowReport a;
    a.op = names[k];
    a.source = x[k]->name();
    a.target = x[k + 1]->name();
    a.source_dim = x[k]->dim();
    a.target_dim = x[k + 1]->dim();
    a.rank = restricted_rank(*x[k], ops[k]);
    a.kernel_dim = a.source_dim - a.rank;
    a.maps_into = maps_into(*x[k], ops[k], *x[k + 1]);
    if (k + 1 < n) a.composes_zero = (ops[k + 1] * ops[k]).nnz() == 0;
    rep.arrows.push_back(a);
  }
  for (std::size_t k = 0; k + 1 < n; ++k)
    rep.arrows[k].image_is_next_kernel = rep.arrows[k].rank == rep.arrows[k + 1].kernel_dim;

  const ArrowReport& first = rep.arrows.front();
  if (seq.bc == Bc::Zero) {
    rep.head_ok = first.kernel_dim == 0;
  } else {
    auto one = from_polynomial(x[0]->layout, {Poly3{{{0, 0, 0}, Rational(1)}}});
    rep.head_ok = first.kernel_dim == 1 && membership(one, *x[0]);
  }
  rep.tail_ok = rep.arrows.back().rank == rep.arrows.back().target_dim;

  rep.exact = rep.head_ok && rep.tail_ok && rep.alternating_sum == rep.expected_sum;
  for (const auto& a : rep.arrows) rep.exact = rep.exact && a.maps_into && a.composes_zero && a.image_is_next_kernel;
  return rep;
}

std::vector<SequenceSpec> all_sequences(int dim, int r) {
  std::vector<SequenceSpec> out;
  for (Bc bc : {Bc::Zero, Bc::None}) {
    if (dim == 3) {
      for (const char* n : {"VVVV", "SLVV", "SSLV", "SSSL"}) out.push_back({n, bc, r, 3, false});
    } else {
      for (bool rot : {false, true})
        for (const char* n : {"LVV", "SLV", "SSL"}) out.push_back({n, bc, r, 2, rot});
    }
  }
  return out;
}

// ------------------------------------------------------------------ potentials

std::vector<Rational> solve_potential(const std::vector<Rational>& target, const Space& hypothesis,
                                      const Space& source, const SparseMatrix& op) {
  if (target.size() != hypothesis.layout.size() || op.rows() != target.size() || op.cols() != source.layout.size())
    throw Error(ErrorCode::DimensionMismatch, "potential solve sizes");
  if (!membership(target, hypothesis))
    throw Error(ErrorCode::HypothesisViolated, "target is not in " + hypothesis.name());
  SparseMatrix sys = vstack(op * source.param, source.constraints);
  std::vector<Rational> rhs(sys.rows());
  std::copy(target.begin(), target.end(), rhs.begin());
  std::vector<Rational> y = solve(sys, rhs);
  std::vector<Rational> x = source.param.apply(y);
  if (op.apply(x) != target) throw Error(ErrorCode::SingularSystem, "potential does not reproduce target");
  return x;
}

namespace {

DiffOp next_op(DiffOp op) { return op == DiffOp::Grad ? DiffOp::Curl : DiffOp::Div; }

}  // namespace

std::vector<PotentialClause> potential_clauses() {
  using F = Family;
  const Bc Z = Bc::Zero, N = Bc::None;
  std::vector<PotentialClause> c = {
      {"div.i", "div onto zero-mean ring CalV3 from ring L2", DiffOp::Div, {F::CalV3, 0, Z}, {F::L2, 0, Z}, false, false},
      {"div.ii", "div onto ring V3 from L2 with zero normal trace", DiffOp::Div, {F::V3, 0, Z}, {F::L2, 0, N}, false, true},
      {"div.iii", "div onto V3 from L2", DiffOp::Div, {F::V3, 0, N}, {F::L2, 0, N}, false, false},
      {"div.iv.zero", "div onto ring L3 from ring S2", DiffOp::Div, {F::L3, 0, Z}, {F::S2, 0, Z}, false, false},
      {"div.iv.none", "div onto L3 from S2", DiffOp::Div, {F::L3, 0, N}, {F::S2, 0, N}, false, false},
      {"curl.i", "curl onto div-free ring CalV2 from ring L1", DiffOp::Curl, {F::CalV2, 0, Z}, {F::L1, 0, Z}, true, false},
      {"curl.ii", "curl onto div-free V2 from L1", DiffOp::Curl, {F::V2, 0, N}, {F::L1, 0, N}, true, false},
      {"curl.iii.zero", "curl onto div-free ring L2 from ring S1", DiffOp::Curl, {F::L2, 0, Z}, {F::S1, 0, Z}, true, false},
      {"curl.iii.none", "curl onto div-free L2 from S1", DiffOp::Curl, {F::L2, 0, N}, {F::S1, 0, N}, true, false},
      {"curl.iv.zero", "curl onto div-free ring S2 from ring S1", DiffOp::Curl, {F::S2, 0, Z}, {F::S1, 0, Z}, true, false},
      {"curl.iv.none", "curl onto div-free S2 from S1", DiffOp::Curl, {F::S2, 0, N}, {F::S1, 0, N}, true, false},
      {"grad.i.zero", "grad onto curl-free ring V1 from ring L0", DiffOp::Grad, {F::V1, 0, Z}, {F::L0, 0, Z}, true, false},
      {"grad.i.none", "grad onto curl-free V1 from L0", DiffOp::Grad, {F::V1, 0, N}, {F::L0, 0, N}, true, false},
      {"grad.ii.zero", "grad onto curl-free ring L1 from ring S0", DiffOp::Grad, {F::L1, 0, Z}, {F::S0, 0, Z}, true, false},
      {"grad.ii.none", "grad onto curl-free L1 from S0", DiffOp::Grad, {F::L1, 0, N}, {F::S0, 0, N}, true, false},
      {"grad.iii.zero", "grad onto curl-free ring S1 from ring S0", DiffOp::Grad, {F::S1, 0, Z}, {F::S0, 0, Z}, true, false},
      {"grad.iii.none", "grad onto curl-free S1 from S0", DiffOp::Grad, {F::S1, 0, N}, {F::S0, 0, N}, true, false},
  };
  return c;
}

SpacePtr hypothesis_space(const PotentialClause& c, int r, const Domain& d) {
  SpacePtr x = build_space(c.data.family, r, c.data.bc, d);
  if (!c.closed) return x;
  const char* label = c.op == DiffOp::Grad ? "curl=0" : "div=0";
  return subspace_kernel(*x, diff_matrix(next_op(c.op), *d.patch, r), label);
}

SpacePtr potential_space(const PotentialClause& c, int r, const Domain& d) {
  SpacePtr w = build_space(c.potential.family, r + 1, c.potential.bc, d);
  if (!c.normal_zero) return w;
  return intersect(*w, *build_space(Family::V2, r + 1, Bc::Zero, d));
}

int smallest_nontrivial_degree(const PotentialClause& c, const Domain& d, int rmin, int rmax) {
  for (int r = rmin; r <= rmax; ++r)
    if (hypothesis_space(c, r, d)->dim() > 0) return r;
  return rmax;
}

PotentialReport certify_potential(const PotentialClause& c, const Domain& d, int r, int trials, std::uint64_t seed) {
  PotentialReport rep;
  rep.clause = c;
  rep.r = r;
  rep.trials = trials;
  SpacePtr h = hypothesis_space(c, r, d);
  SpacePtr w = potential_space(c, r, d);
  const SparseMatrix& op = diff_matrix(c.op, *d.patch, r + 1);
  rep.hypothesis_dim = h->dim();

  std::mt19937_64 g(seed ^ std::stoull(fnv1a(c.id), nullptr, 16));
  std::vector<std::vector<Rational>> found;
  std::vector<Rational> last;
  for (int t = 0; t < trials; ++t) {
    std::vector<Rational> target = random_member(*h, g);
    try {
      auto x = solve_potential(target, *h, *w, op);
      if (membership(x, *w) && op.apply(x) == target) {
        ++rep.solved;
        found.push_back(std::move(x));
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SingularSystem) throw;
    }
    last = std::move(target);
  }
  rep.digest = digest_of(found);

  // a target pushed off the hypothesis set must be refused
  if (h->dim() == h->layout.size() || trials == 0) {
    rep.hypothesis_rejected = true;
  } else {
    for (std::size_t j = 0; j < last.size() && !rep.hypothesis_rejected; ++j) {
      std::vector<Rational> bad = last;
      bad[j] += 1;
      if (membership(bad, *h)) continue;
      try {
        solve_potential(bad, *h, *w, op);
      } catch (const Error& e) {
        rep.hypothesis_rejected = e.code() == ErrorCode::HypothesisViolated;
      }
      break;
    }
  }
  return rep;
}

// ------------------------------------------------------------------ dimension tables

const char* dim_table_name(DimTable t) {
  switch (t) {
    case DimTable::VL: return "VL";
    case DimTable::CT: return "CT";
    case DimTable::Smooth: return "smooth";
    case DimTable::Rings: return "R";
  }
  return "?";
}

void dim_table_range(DimTable t, int& rmin, int& rmax) {
  switch (t) {
    case DimTable::VL: rmin = 0, rmax = 5; break;
    case DimTable::CT: rmin = 1, rmax = 5; break;
    case DimTable::Smooth: rmin = 1, rmax = 4; break;
    case DimTable::Rings: rmin = 2, rmax = 5; break;
  }
}

std::vector<SpaceSpec> dim_table_specs(DimTable t, int rmin, int rmax) {
  using F = Family;
  std::vector<F> fam;
  switch (t) {
    case DimTable::VL: fam = {F::V0, F::V1, F::V2, F::V3, F::L0, F::L1, F::L2, F::L3}; break;
    case DimTable::CT:
      fam = {F::ctL0, F::ctVdiv1, F::ctVcurl1, F::ctV2, F::ctL1, F::ctL2, F::ctS0, F::ctSdiv1, F::ctScurl1, F::ctS2};
      break;
    case DimTable::Smooth: fam = {F::S0, F::S1, F::S2, F::S3, F::CalV2, F::CalV3}; break;
    case DimTable::Rings: fam = {F::ctR0, F::ctR1}; break;
  }
  std::vector<SpaceSpec> out;
  for (F f : fam)
    for (Bc bc : {Bc::None, Bc::Zero}) {
      if (t == DimTable::Rings && bc == Bc::Zero) continue;
      for (int r = rmin; r <= rmax; ++r) {
        SpaceSpec s{f, r, bc};
        if (formula_dimension(s)) out.push_back(s);
      }
    }
  return out;
}

std::vector<DimRow> dim_table(const std::vector<SpaceSpec>& specs) {
  std::vector<DimRow> rows(specs.size());
  parallel_for(specs.size(), [&](std::size_t i) {
    const SpaceSpec& s = specs[i];
    Domain d = is_planar(s.family) ? Domain::of(reference_triangle()) : Domain::of(reference_split());
    rows[i].spec = s;
    rows[i].computed = build_space(s, d)->dim();
    rows[i].formula = formula_dimension(s);
  });
  return rows;
}

std::vector<AlternatingSum> rank_nullity_audit(int r) {
  std::vector<AlternatingSum> out;
  for (Bc bc : {Bc::Zero, Bc::None})
    for (const char* n : {"SLVV", "SSLV", "SSSL"}) {
      AlternatingSum a;
      a.seq = {n, bc, r, 3, false};
      auto specs = sequence_spaces(a.seq);
      for (std::size_t k = 0; k < specs.size(); ++k) {
        std::size_t dim = build_space(specs[k], Domain::of(reference_split()))->dim();
        a.dims.push_back(dim);
        a.sum += (k % 2 == 0 ? 1 : -1) * static_cast<long>(dim);
      }
      a.expected = bc == Bc::Zero ? 0 : 1;
      out.push_back(a);
    }
  return out;
}

std::string fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string digest_of(const std::vector<std::vector<Rational>>& vectors) {
  std::string s;
  for (const auto& v : vectors) {
    for (const auto& q : v) {
      s += to_string(q);
      s += ',';
    }
    s += ';';
  }
  return fnv1a(s);
}

}  // namespace wfseq
