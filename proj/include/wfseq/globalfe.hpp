#ifndef WFSEQ_GLOBALFE_HPP
#define WFSEQ_GLOBALFE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wfseq/dofproj.hpp"

namespace wfseq {

// Two Worsey-Farin tetrahedra glued along face 3 of each. Both list the shared vertices
// first, so ids 0, 1, 2 and the face point 7 coincide, and the face of t2 carries the
// normal of t1. The face split point is the intersection of [z1, z2] with F.
struct TwoTet {
  static constexpr int kFace = 3;
  SplitComplex t1, t2;

  const FaceSplit& face1() const { return t1.face(kFace); }
  const FaceSplit& face2() const { return t2.face(kFace); }
  const SplitComplex& side(int i) const { return i == 0 ? t1 : t2; }
};

// Throws PointNotInterior when [z1, z2] misses the open face, DegenerateSimplex for flat tets.
TwoTet build_twotet(const std::array<Point, 3>& f, const Point& apex1, const Point& apex2,
                    const std::optional<Point>& z1 = std::nullopt, const std::optional<Point>& z2 = std::nullopt);
// F = (0,0,0), (1,0,0), (0,1,0); apexes (0,0,1) and (1,1,-2).
const TwoTet& reference_twotet();

// Fields on the pair live in concatenated coordinates [u1; u2].
struct PairLayout {
  FieldLayout l1, l2;
  std::size_t size() const { return l1.size() + l2.size(); }
};

PairLayout pair_layout(Family f, int degree, const TwoTet& g);

// theta_e of a scalar pair field on CT edge k of F (edge patch coefficients):
// the jump across e seen from t1 minus the jump seen from t2.
SparseMatrix theta_matrix(const TwoTet& g, int k, const PairLayout& l);

// Rows on a pair field: trace on F from t1 minus trace from t2 (components unchanged).
SparseMatrix face_difference(const TwoTet& g, const PairLayout& l);

// block diag(m1, m2)
SparseMatrix pair_operator(const SparseMatrix& m1, const SparseMatrix& m2);
SparseMatrix pair_diff(DiffOp op, const PairLayout& l);

struct PairSpace {
  std::string name;
  PairLayout layout;
  SparseMatrix basis;    // columns in pair coordinates
  SparseMatrix ambient;  // the space is the kernel of these rows
  std::size_t dim() const { return basis.cols(); }
};

// X1 x X2 cut down by rows on the pair.
PairSpace pair_space(const SpaceSpec& spec, const TwoTet& g, const SparseMatrix& rows, const std::string& name);

// Pairs whose shared-face DOFs of the lemma agree.
PairSpace glued_space(DofLemma l, int r, const TwoTet& g);
// Pairs with the smoothness across F the global space asks for.
PairSpace smooth_space(DofLemma l, int r, const TwoTet& g);

struct ConformityReport {
  DofLemma lemma = DofLemma::S0;
  int r = 0;
  std::size_t face_dofs = 0;
  std::size_t glued_dim = 0, smooth_dim = 0;
  bool contained = false;  // glued pairs are smooth (checked on a basis)
  int samples = 0, sample_ok = 0;
  std::string digest;
  bool ok() const { return contained && glued_dim == smooth_dim && sample_ok == samples; }
};

ConformityReport check_global_conformity(DofLemma l, int r, int samples, std::uint64_t seed);

struct PropertyReport {
  std::string name;
  int r = 0;
  int samples = 0;
  int held = 0;             // samples satisfying the property
  bool exact = false;       // property holds on a basis of the space
  bool witness = false;     // a field outside the hypotheses breaks the property
  std::string digest;
  bool ok() const { return samples > 0 && held == samples && exact && witness; }
};

// theta_e(curl w . t) = 0 on continuous vector pairs and theta_e(div v) = 0.
std::vector<PropertyReport> check_theta_properties(int r, int samples, std::uint64_t seed);

// v x n_F = 0 on F implies |n_F|^2 [curl v . t] = [grad(v . n_F) . (n_F x t)] on the CT edges of F.
PropertyReport check_appendix_identity(int r, int samples, std::uint64_t seed);

// g in ring V2 has a div-conforming tangential trace; with L2 and a continuous div trace,
// div_F g_F is continuous.
PropertyReport check_tangential_trace_div(int r, int samples, std::uint64_t seed);
PropertyReport check_surface_div_continuity(int r, int samples, std::uint64_t seed);

// The natural extension of a C^k field on the t1 side of F into the t2 side keeps C^k
// across the interior faces there (k = 0, 1).
PropertyReport check_extension(int r, int smoothness, int samples, std::uint64_t seed);

struct GluedComplexReport {
  std::string diagram;
  int r = 0;
  std::vector<std::size_t> dims;
  std::vector<bool> maps_into;  // per arrow
  bool composes_zero = false;
  bool ok() const;
};

GluedComplexReport check_glued_complex(const std::string& diagram, int r);

}  // namespace wfseq

#endif
