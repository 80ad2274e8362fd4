#ifndef WFSEQ_DOFPROJ_HPP
#define WFSEQ_DOFPROJ_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "wfseq/derham.hpp"

namespace wfseq {

enum class DofLemma { S0, L1, V2, V3, S1, L2, V3a, S2, L3 };

const char* lemma_name(DofLemma l);
DofLemma parse_lemma(const std::string& s);  // throws UnknownFamily
std::vector<DofLemma> all_lemmas();
// Target space of the lemma with parameter r (S1 at r is S^1_{r-1}, and so on).
SpaceSpec lemma_target(DofLemma l, int r);
// Smallest r at which the printed DOF counts add up to the dimension.
int lemma_min_degree(DofLemma l);

enum class Carrier { Vertex, Edge, FaceEdge, Face, Cell };

struct Functional {
  std::size_t cls = 0;  // index into FunctionalSet::classes
  Carrier kind = Carrier::Cell;
  int carrier = -1;  // vertex id, macro edge index, 3*face+edge, face index, or -1 for the cell
  int weight = 0;    // which moment within the carrier
};

// Whether the functional is attached to macro face i (its vertices, edges, CT edges or the face).
bool on_face(const Functional& f, const SplitComplex& c, int i);

struct DofClass {
  std::string tag;   // e.g. "S0:a vertex value"
  long printed = 0;  // printed count, positive part
  std::size_t begin = 0, end = 0;
  std::size_t count() const { return end - begin; }
};

struct FunctionalSet {
  DofLemma lemma = DofLemma::S0;
  int r = 3;
  SpaceSpec target;
  FieldLayout input;
  SparseMatrix rows;  // one row per functional, input layout coordinates
  std::vector<Functional> functionals;
  std::vector<DofClass> classes;

  std::size_t size() const { return rows.rows(); }
  long printed_total() const;
  std::vector<Rational> evaluate(const std::vector<Rational>& u) const { return rows.apply(u); }
};

// Functionals acting on `input` (any degree, scalar or Cartesian vector on c.patch()).
FunctionalSet build_dofs(DofLemma l, int r, const SplitComplex& c, const FieldLayout& input);
// Acting on the target layout.
FunctionalSet build_dofs(DofLemma l, int r, const SplitComplex& c);

struct UnisolvencyReport {
  DofLemma lemma = DofLemma::S0;
  int r = 0;
  std::size_t count = 0, dim = 0, rank = 0;
  long printed_total = 0;
  std::vector<std::pair<std::string, std::size_t>> class_counts;
  bool square() const { return count == dim; }
  bool invertible() const { return square() && rank == dim; }
  bool counts_match() const { return printed_total == static_cast<long>(dim); }
};

UnisolvencyReport check_unisolvency(DofLemma l, int r, const SplitComplex& c);

struct ProjectionOperator {
  DofLemma lemma = DofLemma::S0;
  int r = 0;
  FieldLayout input;
  SpacePtr target;
  std::shared_ptr<const SparseMatrix> inverse;  // (Phi B)^{-1}
  SparseMatrix functionals;                     // Phi on the input layout

  // Target layout x input layout.
  SparseMatrix matrix() const { return target->basis() * (*inverse * functionals); }
  std::vector<Rational> apply(const std::vector<Rational>& u) const {
    return target->basis().apply(inverse->apply(functionals.apply(u)));
  }
};

// B (Phi B)^{-1} Phi. The inverse is cached per (lemma, r, complex).
ProjectionOperator projection(DofLemma l, int r, const SplitComplex& c, const FieldLayout& input);
ProjectionOperator projection(DofLemma l, int r, const SplitComplex& c);

struct CommuteReport {
  std::string diagram;
  int r = 0;
  int samples = 0;
  std::vector<std::string> identities;  // "grad", "curl", "div"
  std::vector<int> passed;              // samples with an exactly zero residual, per identity
  std::string digest;
  bool ok() const;
};

// diagram: SLVV, SSLV or SSSL. Inputs are random global polynomials of degree r and r + 1.
std::vector<DofLemma> diagram_lemmas(const std::string& diagram);
CommuteReport check_commute(const std::string& diagram, int r, int samples, std::uint64_t seed, const SplitComplex& c);

// Projection matrices under the default and the alternate frame set.
struct FrameInvarianceReport {
  std::vector<std::pair<DofLemma, bool>> equal;
  bool ok() const;
};
FrameInvarianceReport check_frame_invariance(int r);

struct JumpLemmaReport {
  std::string name;
  int r = 0;
  int samples = 0;
  int conclusion_held = 0;   // members satisfying the hypotheses with the conclusion true
  int violation_caught = 0;  // members with one moment released where the conclusion failed
  bool ok() const { return samples > 0 && conclusion_held == samples && violation_caught == samples; }
};

// Tangential-jump lemma on a face split, its ring V2 corollary, and the scalar jump lemma.
std::vector<JumpLemmaReport> check_jump_lemmas(int r, int samples, std::uint64_t seed);

// Jump moments across the interior edges of f of a field on the face patch (scalar, or dotted
// with each edge tangent when along_edge): P_{k_eF} on e_F, P_{k_other} on the other two edges.
SparseMatrix jump_moment_rows(const FieldLayout& face_field, const FaceSplit& f, bool along_edge, int k_eF, int k_other);

const SplitComplex& alternate_reference_split();

}  // namespace wfseq

#endif
