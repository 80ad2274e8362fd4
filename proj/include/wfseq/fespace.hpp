#ifndef WFSEQ_FESPACE_HPP
#define WFSEQ_FESPACE_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "wfseq/pwpoly.hpp"

namespace wfseq {

enum class Family {
  V0, V1, V2, V3, L0, L1, L2, L3, S0, S1, S2, S3, CalV2, CalV3,
  ctL0, ctVdiv1, ctVcurl1, ctV2, ctL1, ctL2, ctS0, ctSdiv1, ctScurl1, ctS2, ctR0, ctR1
};

enum class Bc { None, Zero };

const char* family_name(Family f);
Family parse_family(const std::string& s);  // throws UnknownFamily
bool is_planar(Family f);                   // lives on a Clough-Tocher split
bool is_vector(Family f);

struct SpaceSpec {
  Family family = Family::V0;
  int degree = 0;
  Bc bc = Bc::None;

  // e.g. "S1_3" or "S1o_3" for the zero-trace variant
  std::string name() const;
  bool operator<(const SpaceSpec& o) const;
  bool operator==(const SpaceSpec& o) const { return family == o.family && degree == o.degree && bc == o.bc; }
};

// Where a space lives: a Worsey-Farin complex or a Clough-Tocher face split.
struct Domain {
  const Patch* patch = nullptr;
  const SplitComplex* wf = nullptr;
  const FaceSplit* face = nullptr;

  static Domain of(const SplitComplex& c) { return {&c.patch(), &c, nullptr}; }
  static Domain of(const FaceSplit& f) { return {&f.patch, nullptr, &f}; }
  int dim() const { return patch->dim(); }
};

// Layout used by a family of the given degree on a domain.
FieldLayout layout_for(Family f, int degree, const Domain& d);

// A space presented as {param * y : constraints * y = 0}; the same set is the kernel of
// ambient in layout coordinates.
class Space {
 public:
  SpaceSpec spec;
  Domain domain;
  FieldLayout layout;
  SparseMatrix param;        // layout.size() x m
  SparseMatrix constraints;  // rows in parameter coordinates
  SparseMatrix ambient;      // rows in layout coordinates
  std::vector<std::uint32_t> order;  // elimination order of parameter columns
  std::string label;                 // spec name, or a derived description

  const std::string& name() const { return label; }

  std::size_t params() const { return param.cols(); }
  std::size_t dim() const { return dim_; }
  // Echelon form of the constraints (copy to extend).
  const Echelon& echelon() const { return *echelon_; }
  // Columns form a basis (layout coordinates).
  const SparseMatrix& basis() const;
  // Null space of the constraints (parameter coordinates).
  const SparseMatrix& kernel() const;

  void finalize();

 private:
  std::size_t dim_ = 0;
  std::unique_ptr<Echelon> echelon_;
  mutable std::once_flag basis_once_;
  mutable SparseMatrix kernel_, basis_;
};

using SpacePtr = std::shared_ptr<const Space>;

// Builds (or fetches from a synchronized cache) the space.
SpacePtr build_space(const SpaceSpec& spec, const Domain& d);
SpacePtr build_space(Family f, int r, Bc bc, const Domain& d);

// Closed-form dimension, positive part taken; nullopt when no formula is printed.
std::optional<long> formula_dimension(const SpaceSpec& spec);

bool membership(const std::vector<Rational>& coeffs, const Space& s);

// Rank of the linear map m (layout coordinates of s) restricted to s.
std::size_t restricted_rank(const Space& s, const SparseMatrix& m);
// Whether m maps s into t.
bool maps_into(const Space& s, const SparseMatrix& m, const Space& t);

// s intersected with t (same layout), and {u in s : m u = 0}. Not cached.
SpacePtr intersect(const Space& s, const Space& t);
SpacePtr subspace_kernel(const Space& s, const SparseMatrix& m, const std::string& label);

// Random member of a space: basis combination with small rational weights.
std::vector<Rational> random_member(const Space& s, std::mt19937_64& g);

// ---------------------------------------------------------------- constraint generators

// Equality of coefficients at coincident domain points (all components).
SparseMatrix lagrange_rows(const FieldLayout& l);
// Coefficients at boundary domain points vanish.
SparseMatrix boundary_zero_rows(const FieldLayout& l);
// Continuity of u . d across interior facets for d in the facet's tangent (or normal) directions.
enum class Component { Tangential, Normal };
SparseMatrix facet_continuity_rows(const FieldLayout& l, Component c);
SparseMatrix facet_boundary_rows(const FieldLayout& l, Component c);
// Scatter from distinct domain points to coefficients; boundary points dropped when interior_only.
SparseMatrix lagrange_scatter(const FieldLayout& l, bool interior_only);
// Whether the domain point of (cell, b) lies on the patch boundary.
bool on_patch_boundary(const FieldLayout& l, std::size_t cell, std::size_t b);
// The patch normal of a planar patch.
Vec3 patch_normal(const Patch& p);

}  // namespace wfseq

#endif
