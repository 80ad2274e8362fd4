#include "wfseq/ratlin.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace wfseq {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorCode::PointNotInterior: return "PointNotInterior";
    case ErrorCode::NegativeDegree: return "NegativeDegree";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::UnsupportedRange: return "UnsupportedRange";
    case ErrorCode::CardinalityMismatch: return "CardinalityMismatch";
    case ErrorCode::NotInTargetSpace: return "NotInTargetSpace";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::InputDegreeTooLow: return "InputDegreeTooLow";
    case ErrorCode::NotADofCarrier: return "NotADofCarrier";
    case ErrorCode::InconsistentFrames: return "InconsistentFrames";
    case ErrorCode::InterfaceMismatch: return "InterfaceMismatch";
    case ErrorCode::FaceNotShared: return "FaceNotShared";
    case ErrorCode::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Error";
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error(ErrorCode::ConfigError, "bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------- SparseMatrix

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.nnz();
  return n;
}

void SparseMatrix::append_row(SparseVec r) { rows_.push_back(std::move(r)); }

Rational SparseMatrix::at(std::size_t i, std::size_t j) const {
  const auto& r = rows_[i];
  auto it = std::lower_bound(r.idx.begin(), r.idx.end(), static_cast<std::uint32_t>(j));
  if (it == r.idx.end() || *it != j) return Rational(0);
  return r.val[it - r.idx.begin()];
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.rows_[i].push(static_cast<std::uint32_t>(i), Rational(1));
  return m;
}

SparseMatrix SparseMatrix::from_dense(const RatMatrix& d) {
  SparseMatrix m(d.rows(), d.cols());
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) m.rows_[i].push(static_cast<std::uint32_t>(j), d(i, j));
  return m;
}

RatMatrix SparseMatrix::to_dense() const {
  RatMatrix d(rows(), cols_);
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t k = 0; k < rows_[i].nnz(); ++k) d(i, rows_[i].idx[k]) = rows_[i].val[k];
  return d;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t k = 0; k < rows_[i].nnz(); ++k)
      t.rows_[rows_[i].idx[k]].push(static_cast<std::uint32_t>(i), rows_[i].val[k]);
  return t;
}

std::vector<Rational> SparseMatrix::apply(const std::vector<Rational>& x) const {
  if (x.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "apply: vector length");
  std::vector<Rational> y(rows());
  for (std::size_t i = 0; i < rows(); ++i) {
    Rational s = 0;
    for (std::size_t k = 0; k < rows_[i].nnz(); ++k) s += rows_[i].val[k] * x[rows_[i].idx[k]];
    y[i] = s;
  }
  return y;
}

SparseMatrix SparseMatrix::select_rows(const std::vector<std::size_t>& which) const {
  SparseMatrix m(0, cols_);
  for (auto i : which) m.append_row(rows_.at(i));
  return m;
}

SparseMatrix SparseMatrix::select_cols(const std::vector<std::size_t>& which) const {
  std::vector<std::int64_t> map(cols_, -1);
  for (std::size_t k = 0; k < which.size(); ++k) map[which[k]] = static_cast<std::int64_t>(k);
  SparseMatrix m(rows(), which.size());
  for (std::size_t i = 0; i < rows(); ++i) {
    std::vector<std::pair<std::uint32_t, Rational>> e;
    for (std::size_t k = 0; k < rows_[i].nnz(); ++k)
      if (map[rows_[i].idx[k]] >= 0) e.emplace_back(static_cast<std::uint32_t>(map[rows_[i].idx[k]]), rows_[i].val[k]);
    std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [j, v] : e) m.rows_[i].push(j, v);
  }
  return m;
}

std::vector<Rational> SparseMatrix::column(std::size_t j) const {
  std::vector<Rational> c(rows());
  for (std::size_t i = 0; i < rows(); ++i) c[i] = at(i, j);
  return c;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
  if (cols_ != o.cols_ || rows() != o.rows()) return false;
  for (std::size_t i = 0; i < rows(); ++i)
    if (rows_[i].idx != o.rows_[i].idx || rows_[i].val != o.rows_[i].val) return false;
  return true;
}

namespace {

// Dense scratch accumulator with touched-index tracking.
struct Accumulator {
  std::vector<Rational> v;
  std::vector<char> used;
  std::vector<std::uint32_t> touched;
  explicit Accumulator(std::size_t n) : v(n), used(n, 0) {}
  void add(std::uint32_t j, const Rational& a, const Rational& b) {
    if (!used[j]) {
      used[j] = 1;
      touched.push_back(j);
      mpq_mul(v[j].get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
    } else {
      Rational t;
      mpq_mul(t.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
      v[j] += t;
    }
  }
  void add(std::uint32_t j, const Rational& a) {
    if (!used[j]) {
      used[j] = 1;
      touched.push_back(j);
      v[j] = a;
    } else {
      v[j] += a;
    }
  }
  SparseVec flush() {
    std::sort(touched.begin(), touched.end());
    SparseVec r;
    for (auto j : touched) {
      r.push(j, v[j]);
      used[j] = 0;
    }
    touched.clear();
    return r;
  }
};

}  // namespace

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  SparseMatrix c(0, b.cols());
  Accumulator acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto& ar = a.row(i);
    for (std::size_t k = 0; k < ar.nnz(); ++k) {
      const auto& br = b.row(ar.idx[k]);
      for (std::size_t l = 0; l < br.nnz(); ++l) acc.add(br.idx[l], ar.val[k], br.val[l]);
    }
    c.append_row(acc.flush());
  }
  return c;
}

static SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, int sign) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix sum");
  SparseMatrix c(0, a.cols());
  Accumulator acc(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.row(i).nnz(); ++k) acc.add(a.row(i).idx[k], a.row(i).val[k]);
    for (std::size_t k = 0; k < b.row(i).nnz(); ++k)
      acc.add(b.row(i).idx[k], sign > 0 ? b.row(i).val[k] : Rational(-b.row(i).val[k]));
    c.append_row(acc.flush());
  }
  return c;
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, 1); }
SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, -1); }

SparseMatrix scale(const SparseMatrix& a, const Rational& s) {
  SparseMatrix c(0, a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    SparseVec r;
    for (std::size_t k = 0; k < a.row(i).nnz(); ++k) r.push(a.row(i).idx[k], a.row(i).val[k] * s);
    c.append_row(std::move(r));
  }
  return c;
}

SparseMatrix vstack(const std::vector<const SparseMatrix*>& blocks) {
  std::size_t cols = blocks.empty() ? 0 : blocks.front()->cols();
  SparseMatrix m(0, cols);
  for (auto* b : blocks) {
    if (b->cols() != cols) throw Error(ErrorCode::DimensionMismatch, "vstack");
    for (std::size_t i = 0; i < b->rows(); ++i) m.append_row(b->row(i));
  }
  return m;
}

SparseMatrix vstack(const SparseMatrix& a, const SparseMatrix& b) { return vstack({&a, &b}); }

SparseMatrix hstack(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "hstack");
  SparseMatrix m(0, a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    SparseVec r = a.row(i);
    for (std::size_t k = 0; k < b.row(i).nnz(); ++k)
      r.push(static_cast<std::uint32_t>(b.row(i).idx[k] + a.cols()), b.row(i).val[k]);
    m.append_row(std::move(r));
  }
  return m;
}

SparseMatrix column_matrix(const std::vector<std::vector<Rational>>& columns, std::size_t rows) {
  TripletBuilder t(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw Error(ErrorCode::DimensionMismatch, "column length");
    for (std::size_t i = 0; i < rows; ++i)
      if (sgn(columns[j][i]) != 0) t.add(i, j, columns[j][i]);
  }
  return t.build();
}

void TripletBuilder::add(std::size_t i, std::size_t j, const Rational& v) {
  if (i >= rows_ || j >= cols_) throw Error(ErrorCode::DimensionMismatch, "triplet out of range");
  if (sgn(v) != 0) ent_[i].emplace_back(static_cast<std::uint32_t>(j), v);
}

SparseMatrix TripletBuilder::build() {
  SparseMatrix m(0, cols_);
  for (auto& e : ent_) {
    std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec r;
    for (std::size_t k = 0; k < e.size();) {
      std::size_t l = k;
      Rational s = 0;
      while (l < e.size() && e[l].first == e[k].first) s += e[l++].second;
      r.push(e[k].first, s);
      k = l;
    }
    m.append_row(std::move(r));
  }
  ent_.clear();
  ent_.resize(rows_);
  return m;
}

// ---------------------------------------------------------------- RatMatrix

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "dense product");
  RatMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (sgn(b(k, j)) != 0) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

// ---------------------------------------------------------------- Echelon

Echelon::Echelon(std::size_t ncols, const std::vector<std::uint32_t>& order)
    : ncols_(ncols), pivot_at_(ncols, -1) {
  if (order.empty()) {
    col_of_pos_.resize(ncols);
    std::iota(col_of_pos_.begin(), col_of_pos_.end(), 0u);
  } else {
    if (order.size() != ncols) throw Error(ErrorCode::DimensionMismatch, "column order length");
    col_of_pos_ = order;
  }
  pos_of_col_.assign(ncols, UINT32_MAX);
  for (std::size_t p = 0; p < ncols; ++p) {
    if (col_of_pos_[p] >= ncols || pos_of_col_[col_of_pos_[p]] != UINT32_MAX)
      throw Error(ErrorCode::DimensionMismatch, "column order is not a permutation");
    pos_of_col_[col_of_pos_[p]] = static_cast<std::uint32_t>(p);
  }
}

static void make_primitive(std::vector<Integer>& val) {
  if (val.empty()) return;
  Integer g = abs(val[0]);
  for (std::size_t k = 1; k < val.size() && g != 1; ++k) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), val[k].get_mpz_t());
  if (sgn(val[0]) < 0) g = -g;
  if (g != 1)
    for (auto& v : val) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

void Echelon::reduce(Row& r) const {
  Integer g, ma, mb;
  std::vector<std::uint32_t> npos;
  std::vector<Integer> nval;
  while (!r.pos.empty()) {
    std::int32_t pi = pivot_at_[r.pos[0]];
    if (pi < 0) return;
    const Row& p = rows_[pi];
    mpz_gcd(g.get_mpz_t(), r.val[0].get_mpz_t(), p.val[0].get_mpz_t());
    mpz_divexact(ma.get_mpz_t(), p.val[0].get_mpz_t(), g.get_mpz_t());
    mpz_divexact(mb.get_mpz_t(), r.val[0].get_mpz_t(), g.get_mpz_t());
    bool ma_one = (ma == 1);
    npos.clear();
    nval.clear();
    npos.reserve(r.pos.size() + p.pos.size());
    nval.reserve(r.pos.size() + p.pos.size());
    std::size_t i = 1, j = 1;
    while (i < r.pos.size() || j < p.pos.size()) {
      if (j >= p.pos.size() || (i < r.pos.size() && r.pos[i] < p.pos[j])) {
        npos.push_back(r.pos[i]);
        nval.emplace_back();
        if (ma_one) mpz_swap(nval.back().get_mpz_t(), r.val[i].get_mpz_t());
        else mpz_mul(nval.back().get_mpz_t(), r.val[i].get_mpz_t(), ma.get_mpz_t());
        ++i;
      } else if (i >= r.pos.size() || p.pos[j] < r.pos[i]) {
        npos.push_back(p.pos[j]);
        nval.emplace_back();
        mpz_mul(nval.back().get_mpz_t(), p.val[j].get_mpz_t(), mb.get_mpz_t());
        mpz_neg(nval.back().get_mpz_t(), nval.back().get_mpz_t());
        ++j;
      } else {
        Integer t;
        if (ma_one) mpz_swap(t.get_mpz_t(), r.val[i].get_mpz_t());
        else mpz_mul(t.get_mpz_t(), r.val[i].get_mpz_t(), ma.get_mpz_t());
        mpz_submul(t.get_mpz_t(), p.val[j].get_mpz_t(), mb.get_mpz_t());
        if (sgn(t) != 0) {
          npos.push_back(r.pos[i]);
          nval.push_back(std::move(t));
        }
        ++i;
        ++j;
      }
    }
    std::swap(r.pos, npos);
    std::swap(r.val, nval);
    make_primitive(r.val);
  }
}

bool Echelon::insert_integer(std::vector<std::uint32_t> pos, std::vector<Integer> val) {
  Row r{std::move(pos), std::move(val)};
  reduce(r);
  if (r.pos.empty()) return false;
  pivot_at_[r.pos[0]] = static_cast<std::int32_t>(rows_.size());
  rows_.push_back(std::move(r));
  fully_reduced_ = false;
  return true;
}

bool Echelon::insert(const SparseVec& row) {
  if (row.empty()) return false;
  Integer l = 1;
  for (const auto& v : row.val) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  std::vector<std::pair<std::uint32_t, Integer>> e;
  e.reserve(row.nnz());
  for (std::size_t k = 0; k < row.nnz(); ++k) {
    if (row.idx[k] >= ncols_) throw Error(ErrorCode::DimensionMismatch, "row index out of range");
    Integer x;
    mpz_divexact(x.get_mpz_t(), l.get_mpz_t(), row.val[k].get_den_mpz_t());
    x *= row.val[k].get_num();
    e.emplace_back(pos_of_col_[row.idx[k]], std::move(x));
  }
  std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::uint32_t> pos;
  std::vector<Integer> val;
  pos.reserve(e.size());
  val.reserve(e.size());
  for (auto& [p, v] : e) {
    pos.push_back(p);
    val.push_back(std::move(v));
  }
  make_primitive(val);
  return insert_integer(std::move(pos), std::move(val));
}

void Echelon::insert_all(const SparseMatrix& m) {
  if (m.cols() != ncols_) throw Error(ErrorCode::DimensionMismatch, "insert_all: column count");
  for (std::size_t i = 0; i < m.rows(); ++i) insert(m.row(i));
}

std::vector<std::size_t> Echelon::pivot_columns() const {
  std::vector<std::size_t> c;
  for (std::size_t p = 0; p < ncols_; ++p)
    if (pivot_at_[p] >= 0) c.push_back(col_of_pos_[p]);
  std::sort(c.begin(), c.end());
  return c;
}

void Echelon::back_reduce() {
  if (fully_reduced_) return;
  std::vector<std::size_t> order;
  for (std::size_t p = ncols_; p-- > 0;)
    if (pivot_at_[p] >= 0) order.push_back(static_cast<std::size_t>(pivot_at_[p]));
  Integer g, ma, mb;
  for (auto ri : order) {
    Row& r = rows_[ri];
    for (std::size_t k = 1; k < r.pos.size();) {
      std::int32_t pi = pivot_at_[r.pos[k]];
      if (pi < 0) {
        ++k;
        continue;
      }
      const Row& p = rows_[pi];
      mpz_gcd(g.get_mpz_t(), r.val[k].get_mpz_t(), p.val[0].get_mpz_t());
      mpz_divexact(ma.get_mpz_t(), p.val[0].get_mpz_t(), g.get_mpz_t());
      mpz_divexact(mb.get_mpz_t(), r.val[k].get_mpz_t(), g.get_mpz_t());
      std::map<std::uint32_t, Integer> acc;
      for (std::size_t i = 0; i < r.pos.size(); ++i) acc[r.pos[i]] = r.val[i] * ma;
      for (std::size_t j = 0; j < p.pos.size(); ++j) acc[p.pos[j]] -= p.val[j] * mb;
      r.pos.clear();
      r.val.clear();
      for (auto& [q, v] : acc)
        if (sgn(v) != 0) {
          r.pos.push_back(q);
          r.val.push_back(v);
        }
      make_primitive(r.val);
      k = 1;
      while (k < r.pos.size() && pivot_at_[r.pos[k]] < 0) ++k;
    }
  }
  fully_reduced_ = true;
}

SparseMatrix Echelon::nullspace() {
  back_reduce();
  std::vector<std::int64_t> free_index(ncols_, -1);
  std::size_t nfree = 0;
  for (std::size_t p = 0; p < ncols_; ++p)
    if (pivot_at_[p] < 0) free_index[p] = static_cast<std::int64_t>(nfree++);
  TripletBuilder t(ncols_, nfree);
  for (std::size_t p = 0; p < ncols_; ++p)
    if (pivot_at_[p] < 0) t.add(col_of_pos_[p], free_index[p], Rational(1));
  for (const Row& r : rows_) {
    std::uint32_t lead_col = col_of_pos_[r.pos[0]];
    for (std::size_t k = 1; k < r.pos.size(); ++k) {
      Rational v(r.val[k], r.val[0]);
      v.canonicalize();
      t.add(lead_col, free_index[r.pos[k]], -v);
    }
  }
  return t.build();
}

SparseMatrix Echelon::reduced_rows() {
  back_reduce();
  SparseMatrix m(0, ncols_);
  for (std::size_t p = 0; p < ncols_; ++p) {
    if (pivot_at_[p] < 0) continue;
    const Row& r = rows_[pivot_at_[p]];
    std::vector<std::pair<std::uint32_t, Rational>> e;
    for (std::size_t k = 0; k < r.pos.size(); ++k) {
      Rational v(r.val[k], r.val[0]);
      v.canonicalize();
      e.emplace_back(col_of_pos_[r.pos[k]], v);
    }
    std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec row;
    for (auto& [c, v] : e) row.push(c, v);
    m.append_row(std::move(row));
  }
  return m;
}

// ---------------------------------------------------------------- free functions

std::size_t rank(const SparseMatrix& m, const std::vector<std::uint32_t>& order) {
  Echelon e(m.cols(), order);
  e.insert_all(m);
  return e.rank();
}

SparseMatrix nullspace(const SparseMatrix& m, const std::vector<std::uint32_t>& order) {
  Echelon e(m.cols(), order);
  e.insert_all(m);
  return e.nullspace();
}

EliminationResult eliminate(const RatMatrix& m) {
  Echelon e(m.cols());
  e.insert_all(SparseMatrix::from_dense(m));
  EliminationResult r;
  r.rank = e.rank();
  r.pivot_columns = e.pivot_columns();
  r.reduced = e.reduced_rows().to_dense();
  r.nullspace = e.nullspace().to_dense();
  return r;
}

std::size_t rank(const RatMatrix& m) { return rank(SparseMatrix::from_dense(m)); }
RatMatrix nullspace(const RatMatrix& m) { return nullspace(SparseMatrix::from_dense(m)).to_dense(); }

std::vector<Rational> solve(const SparseMatrix& m, const std::vector<Rational>& b) {
  if (b.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "solve: rhs length");
  const std::size_t n = m.cols();
  Echelon e(n + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    SparseVec r = m.row(i);
    r.push(static_cast<std::uint32_t>(n), b[i]);
    e.insert(r);
  }
  auto piv = e.pivot_columns();
  if (!piv.empty() && piv.back() == n) throw Error(ErrorCode::SingularSystem, "inconsistent linear system");
  SparseMatrix red = e.reduced_rows();
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < red.rows(); ++i) {
    const auto& r = red.row(i);
    if (!r.idx.empty() && r.idx.back() == n) x[r.idx[0]] = r.val.back();
  }
  return x;
}

std::vector<Rational> solve(const RatMatrix& m, const std::vector<Rational>& b) {
  return solve(SparseMatrix::from_dense(m), b);
}

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  Echelon e(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    SparseVec r;
    for (std::size_t j = 0; j < n; ++j) r.push(static_cast<std::uint32_t>(j), m(i, j));
    r.push(static_cast<std::uint32_t>(n + i), Rational(1));
    e.insert(r);
  }
  auto piv = e.pivot_columns();
  if (piv.size() < n || piv[n - 1] != n - 1) throw Error(ErrorCode::SingularSystem, "matrix is singular");
  SparseMatrix red = e.reduced_rows();
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = red.row(i);
    for (std::size_t k = 0; k < r.nnz(); ++k)
      if (r.idx[k] >= n) inv(r.idx[0], r.idx[k] - n) = r.val[k];
  }
  return inv;
}

std::vector<std::size_t> independent_columns(const SparseMatrix& m) {
  // Pivot columns of the row echelon form of m, taken in natural order.
  Echelon e(m.cols());
  e.insert_all(m);
  return e.pivot_columns();
}

std::size_t float_rank(const SparseMatrix& m, double tol) {
  const std::size_t r = m.rows(), c = m.cols();
  std::vector<double> a(r * c, 0.0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < m.row(i).nnz(); ++k) a[i * c + m.row(i).idx[k]] = m.row(i).val[k].get_d();
  double amax = 0;
  for (double v : a) amax = std::max(amax, std::abs(v));
  const double thr = tol * std::max(1.0, amax);
  std::size_t rk = 0;
  for (std::size_t j = 0; j < c && rk < r; ++j) {
    std::size_t best = rk;
    for (std::size_t i = rk; i < r; ++i)
      if (std::abs(a[i * c + j]) > std::abs(a[best * c + j])) best = i;
    if (std::abs(a[best * c + j]) <= thr) continue;
    if (best != rk)
      for (std::size_t k = 0; k < c; ++k) std::swap(a[best * c + k], a[rk * c + k]);
    for (std::size_t i = rk + 1; i < r; ++i) {
      double f = a[i * c + j] / a[rk * c + j];
      if (f == 0) continue;
      for (std::size_t k = j; k < c; ++k) a[i * c + k] -= f * a[rk * c + k];
    }
    ++rk;
  }
  return rk;
}

Rational binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return Rational(0);
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(b);
}

Rational factorial(int n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

}  // namespace wfseq
