#ifndef WFSEQ_DERHAM_HPP
#define WFSEQ_DERHAM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wfseq/fespace.hpp"

namespace wfseq {

// 3D names: VVVV, SLVV, SSLV, SSSL. 2D names: LVV, SLV, SSL, with the grad/curl pair
// or (rotated) the rot/div pair.
struct SequenceSpec {
  std::string name;
  Bc bc = Bc::None;
  int r = 3;
  int dim = 3;
  bool rotated = false;

  std::string label() const;  // e.g. "SLVV-zero-r3", "SSL-rot-none-r2"
};

std::vector<SpaceSpec> sequence_spaces(const SequenceSpec& seq);
std::vector<std::string> sequence_operators(const SequenceSpec& seq);

struct ArrowReport {
  std::string op;
  std::string source, target;
  std::size_t source_dim = 0, target_dim = 0;
  std::size_t rank = 0;
  std::size_t kernel_dim = 0;
  bool maps_into = false;     // image lies inside the next space
  bool composes_zero = true;  // next operator after this one is identically zero
  bool image_is_next_kernel = true;  // rank here equals the kernel dim of the next arrow
};

struct ExactnessReport {
  SequenceSpec seq;
  std::vector<std::size_t> dims;
  std::vector<ArrowReport> arrows;
  long alternating_sum = 0;
  long expected_sum = 0;  // dim of the head: 0 with zero traces, 1 for constants
  bool head_ok = false;
  bool tail_ok = false;
  bool exact = false;
};

// Operator matrix from the layout of `src` to the layout of `dst`.
SparseMatrix arrow_matrix(const SequenceSpec& seq, std::size_t k, const Space& src, const Space& dst);

// Uses the reference tetrahedron / triangle unless a domain is given.
ExactnessReport check_exactness(const SequenceSpec& seq);
ExactnessReport check_exactness(const SequenceSpec& seq, const Domain& d);

// All sequences of one dimension at degree r.
std::vector<SequenceSpec> all_sequences(int dim, int r);

// ------------------------------------------------------------------ potentials

// op(x) = target with x in source. Throws HypothesisViolated when the target is not in
// `hypothesis`, SingularSystem when no preimage exists.
std::vector<Rational> solve_potential(const std::vector<Rational>& target, const Space& hypothesis,
                                      const Space& source, const SparseMatrix& op);

struct PotentialClause {
  std::string id;      // e.g. "div.iv.zero"
  std::string anchor;  // one-line statement
  DiffOp op;           // applied to the potential
  SpaceSpec data;      // target space at degree r (degree field is ignored)
  SpaceSpec potential;  // preimage space at degree r + 1
  bool closed = false;      // target is killed by the next operator
  bool normal_zero = false;  // preimage additionally has zero normal trace
};

std::vector<PotentialClause> potential_clauses();

struct PotentialReport {
  PotentialClause clause;
  int r = 0;
  std::size_t hypothesis_dim = 0;
  int trials = 0;
  int solved = 0;
  bool hypothesis_rejected = false;  // a perturbed target was refused
  std::string digest;                // hash of the recovered preimages
  bool ok() const { return hypothesis_dim > 0 && solved == trials && hypothesis_rejected; }
};

// The target space of a clause at degree r, with its hypothesis imposed.
SpacePtr hypothesis_space(const PotentialClause& c, int r, const Domain& d);
SpacePtr potential_space(const PotentialClause& c, int r, const Domain& d);

// Smallest r >= rmin with a nontrivial hypothesis set (up to rmax).
int smallest_nontrivial_degree(const PotentialClause& c, const Domain& d, int rmin = 2, int rmax = 5);

PotentialReport certify_potential(const PotentialClause& c, const Domain& d, int r, int trials,
                                  std::uint64_t seed);

// ------------------------------------------------------------------ dimension tables

struct DimRow {
  SpaceSpec spec;
  std::size_t computed = 0;
  std::optional<long> formula;
  bool match() const { return formula && *formula == static_cast<long>(computed); }
};

enum class DimTable { VL, CT, Smooth, Rings };
const char* dim_table_name(DimTable t);
// Families and degree range of one table.
std::vector<SpaceSpec> dim_table_specs(DimTable t, int rmin, int rmax);
void dim_table_range(DimTable t, int& rmin, int& rmax);
std::vector<DimRow> dim_table(const std::vector<SpaceSpec>& specs);

// The six alternating sums from exactness plus rank-nullity.
struct AlternatingSum {
  SequenceSpec seq;
  std::vector<std::size_t> dims;
  long sum = 0;
  long expected = 0;
  bool ok() const { return sum == expected; }
};
std::vector<AlternatingSum> rank_nullity_audit(int r);

// FNV-1a 64 of a byte string, as 16 hex digits.
std::string fnv1a(const std::string& bytes);
std::string digest_of(const std::vector<std::vector<Rational>>& vectors);

// Shared reference domains.
const SplitComplex& reference_split();
const FaceSplit& reference_triangle();

}  // namespace wfseq

#endif
