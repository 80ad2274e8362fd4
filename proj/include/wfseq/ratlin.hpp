#ifndef WFSEQ_RATLIN_HPP
#define WFSEQ_RATLIN_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wfseq {

using Integer = mpz_class;
using Rational = mpq_class;

enum class ErrorCode {
  DimensionMismatch,
  SingularSystem,
  DegenerateSimplex,
  PointNotInterior,
  NegativeDegree,
  UnknownFamily,
  UnsupportedRange,
  CardinalityMismatch,
  NotInTargetSpace,
  HypothesisViolated,
  InputDegreeTooLow,
  NotADofCarrier,
  InconsistentFrames,
  InterfaceMismatch,
  FaceNotShared,
  UnsupportedDegree,
  ConfigError
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Canonical a/b.
inline Rational frac(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);

// Sparse row: strictly increasing column indices, nonzero values.
struct SparseVec {
  std::vector<std::uint32_t> idx;
  std::vector<Rational> val;

  std::size_t nnz() const { return idx.size(); }
  bool empty() const { return idx.empty(); }
  void push(std::uint32_t i, const Rational& v) {
    if (sgn(v) != 0) {
      idx.push_back(i);
      val.push_back(v);
    }
  }
};

class RatMatrix;

// Row-major sparse rational matrix.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;

  const SparseVec& row(std::size_t i) const { return rows_[i]; }
  SparseVec& row(std::size_t i) { return rows_[i]; }
  void append_row(SparseVec r);
  void resize_cols(std::size_t c) { cols_ = c; }
  Rational at(std::size_t i, std::size_t j) const;

  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_dense(const RatMatrix& m);
  RatMatrix to_dense() const;

  SparseMatrix transpose() const;
  std::vector<Rational> apply(const std::vector<Rational>& x) const;
  SparseMatrix select_rows(const std::vector<std::size_t>& which) const;
  SparseMatrix select_cols(const std::vector<std::size_t>& which) const;
  std::vector<Rational> column(std::size_t j) const;

  bool operator==(const SparseMatrix& o) const;

 private:
  std::size_t cols_ = 0;
  std::vector<SparseVec> rows_;
};

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix scale(const SparseMatrix& a, const Rational& s);
SparseMatrix vstack(const std::vector<const SparseMatrix*>& blocks);
SparseMatrix vstack(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix hstack(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix column_matrix(const std::vector<std::vector<Rational>>& columns, std::size_t rows);

// Accumulates (i, j, v) triplets; duplicates are summed.
class TripletBuilder {
 public:
  TripletBuilder(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), ent_(rows) {}
  void add(std::size_t i, std::size_t j, const Rational& v);
  std::size_t rows() const { return rows_; }
  SparseMatrix build();

 private:
  std::size_t rows_, cols_;
  std::vector<std::vector<std::pair<std::uint32_t, Rational>>> ent_;
};

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c) {}

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
  bool operator==(const RatMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

  static RatMatrix identity(std::size_t n);
  RatMatrix transpose() const;

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Rational> a_;
};

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);

struct EliminationResult {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
  RatMatrix reduced;    // reduced row echelon form, leading ones, zero rows dropped
  RatMatrix nullspace;  // columns span the kernel
};

// Fraction-free row echelon engine over primitive integer rows.
// Pivots are taken at the first nonzero column under the supplied column order.
class Echelon {
 public:
  explicit Echelon(std::size_t ncols, const std::vector<std::uint32_t>& order = {});

  // Returns true when the row is independent of the rows inserted so far.
  bool insert(const SparseVec& row);
  bool insert_integer(std::vector<std::uint32_t> pos, std::vector<Integer> val);
  void insert_all(const SparseMatrix& m);

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return ncols_; }
  std::vector<std::size_t> pivot_columns() const;

  // Columns span the kernel of the inserted rows (ncols x nullity).
  SparseMatrix nullspace();
  // Reduced rows in original column labels, leading entries scaled to one.
  SparseMatrix reduced_rows();

 private:
  struct Row {
    std::vector<std::uint32_t> pos;
    std::vector<Integer> val;
  };
  void reduce(Row& r) const;
  void back_reduce();

  std::size_t ncols_;
  std::vector<std::uint32_t> col_of_pos_;
  std::vector<std::uint32_t> pos_of_col_;
  std::vector<Row> rows_;
  std::vector<std::int32_t> pivot_at_;
  bool fully_reduced_ = false;
};

std::size_t rank(const SparseMatrix& m, const std::vector<std::uint32_t>& order = {});
SparseMatrix nullspace(const SparseMatrix& m, const std::vector<std::uint32_t>& order = {});
EliminationResult eliminate(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);
RatMatrix nullspace(const RatMatrix& m);

// Solves m x = b. Throws SingularSystem when inconsistent; free variables are set to zero.
std::vector<Rational> solve(const SparseMatrix& m, const std::vector<Rational>& b);
std::vector<Rational> solve(const RatMatrix& m, const std::vector<Rational>& b);
RatMatrix inverse(const RatMatrix& m);

// Columns of m that are independent, chosen greedily from left to right.
std::vector<std::size_t> independent_columns(const SparseMatrix& m);

// Floating-point rank with relative tolerance, for timing comparisons only.
std::size_t float_rank(const SparseMatrix& m, double tol);

Rational binomial(int n, int k);
Rational factorial(int n);

}  // namespace wfseq

#endif
