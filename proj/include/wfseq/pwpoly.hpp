#ifndef WFSEQ_PWPOLY_HPP
#define WFSEQ_PWPOLY_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "wfseq/ratlin.hpp"
#include "wfseq/splitgeom.hpp"

namespace wfseq {

using MultiIndex = std::array<int, 4>;

// Multi-indices of a fixed total degree in nvars variables, in descending lexicographic order.
class IndexSet {
 public:
  IndexSet(int nvars, int degree);
  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  std::size_t size() const { return idx_.size(); }
  const MultiIndex& operator[](std::size_t k) const { return idx_[k]; }
  // Position of a, or -1 when a is not an index of this set.
  long find(const MultiIndex& a) const;

 private:
  int nvars_, degree_;
  std::vector<MultiIndex> idx_;
  std::vector<std::int32_t> table_;
};

// Thread-safe shared instance.
const IndexSet& index_set(int nvars, int degree);

// Coefficient layout of a piecewise polynomial field on a patch. The field value is
// sum_j c_j frame[j]; an empty frame means a scalar field.
struct FieldLayout {
  const Patch* patch = nullptr;
  int degree = 0;
  std::vector<Vec3> frame;

  int ncomp() const { return frame.empty() ? 1 : static_cast<int>(frame.size()); }
  bool scalar() const { return frame.empty(); }
  std::size_t nbasis() const;
  std::size_t size() const { return patch->num_cells() * nbasis() * ncomp(); }
  std::size_t index(std::size_t cell, std::size_t b, int comp = 0) const {
    return (cell * nbasis() + b) * ncomp() + comp;
  }
  const IndexSet& indices() const { return index_set(patch->dim() + 1, degree); }
  bool operator==(const FieldLayout& o) const {
    return patch == o.patch && degree == o.degree && frame == o.frame;
  }

  static FieldLayout scalar_on(const Patch& p, int r) { return {&p, r, {}}; }
  static FieldLayout vector_on(const Patch& p, int r) { return {&p, r, {vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1)}}; }
  static FieldLayout tangent_on(const Patch& p, int r, const FaceFrame& f) { return {&p, r, {f.tau, f.upsilon}}; }
  FieldLayout with_degree(int r) const { return {patch, r, frame}; }
};

// Dual vectors of a frame within its span (f^i . f_j = delta_ij).
std::vector<Vec3> dual_frame(const std::vector<Vec3>& frame);

struct PiecewiseField {
  FieldLayout layout;
  std::vector<Rational> coeffs;
};

// Global polynomial in x, y, z as a map from exponents to coefficients.
using Poly3 = std::map<std::array<int, 3>, Rational>;
Rational poly_eval(const Poly3& p, const Point& x);
Poly3 poly_derivative(const Poly3& p, int k);
int poly_degree(const Poly3& p);
// Dense random polynomial of exact total degree <= degree with small rational coefficients.
Poly3 random_poly(std::mt19937_64& g, int degree);
Rational random_rational(std::mt19937_64& g);

// Bernstein coefficients of global polynomials (one per layout component, expressed in the
// dual frame: component j receives f^j . (p_0, p_1, p_2), scalars take comps[0]).
std::vector<Rational> from_polynomial(const FieldLayout& l, const std::vector<Poly3>& comps);

// ---------------------------------------------------------------- operators

// Matrix of u -> d/dx_k u (Cartesian component m for vector fields) for each k; target degree r-1.
// On lower-dimensional patches these are components of the surface gradient.
std::array<SparseMatrix, 3> partials(const FieldLayout& src, const Vec3& component_selector);

SparseMatrix grad_matrix(const FieldLayout& src);  // scalar -> Cartesian vector
SparseMatrix curl_matrix(const FieldLayout& src);  // vector -> Cartesian vector
SparseMatrix div_matrix(const FieldLayout& src);   // vector -> scalar

enum class DiffOp { Grad, Curl, Div };
// Returns the cached matrix for a standard scalar/Cartesian layout of degree r.
const SparseMatrix& diff_matrix(DiffOp op, const Patch& patch, int r);

// Pointwise linear map between layouts on the same patch and degree: c'_i = sum_j K_ij c_j.
SparseMatrix pointwise(const FieldLayout& src, const FieldLayout& dst, const RatMatrix& k);
// K for: frame change / projection onto span(dst frame).
RatMatrix frame_change(const FieldLayout& src, const FieldLayout& dst);
// K for w -> w . d (dst scalar).
RatMatrix dot_with(const FieldLayout& src, const Vec3& d);
// K for u -> u d (src scalar).
RatMatrix times_vector(const FieldLayout& dst, const Vec3& d);
// K for w -> w x n.
RatMatrix cross_with(const FieldLayout& src, const FieldLayout& dst, const Vec3& n);

SparseMatrix elevate_matrix(const FieldLayout& src, int to_degree);

// Restriction of a field on src.patch to a patch of lower (or equal) dimension whose cells are
// sub-simplices of src cells. cell_of[q] selects the source cell for target cell q
// (empty: first containing cell). Component frames must be identical.
SparseMatrix trace_matrix(const FieldLayout& src, const FieldLayout& dst, const std::vector<int>& cell_of = {});

// Mass matrix M(test, field) on a common patch: rows test coefficients, columns field coefficients.
// Integrals are in units of the patch measure weights (true value = entry * sqrt(radicand)).
SparseMatrix mass_matrix(const FieldLayout& test, const FieldLayout& field);
// Row vector (1 x size) giving the integral of a scalar field.
SparseMatrix integral_row(const FieldLayout& l);

// Integral of B^r_a B^s_b over a simplex with unit measure.
Rational bernstein_product_integral(int dim, int r, const MultiIndex& a, int s, const MultiIndex& b);

Rational integrate(const PiecewiseField& f);
// Value at a point; cell < 0 locates the point.
std::vector<Rational> evaluate(const PiecewiseField& f, const Point& x, int cell = -1);

// Hat function of the interior point on a Worsey-Farin complex (degree 1 scalar).
PiecewiseField hat_function(const SplitComplex& c);

// Column ordering that groups coincident domain points, for elimination.
std::vector<std::uint32_t> domain_point_order(const FieldLayout& l);
// Key of the domain point of (cell, b): sorted (vertex id, multiplicity) pairs.
std::vector<std::pair<int, int>> domain_point_key(const FieldLayout& l, std::size_t cell, std::size_t b);

// ---------------------------------------------------------------- surface operators
// Inputs live on the 2D face patch of a split face: scalar layouts, or tangent layouts (tau, upsilon).

SparseMatrix surface_grad(const FieldLayout& scalar_src, const FieldLayout& tangent_dst);
SparseMatrix surface_rot(const FieldLayout& scalar_src, const FieldLayout& tangent_dst, const Vec3& n);
SparseMatrix surface_div(const FieldLayout& tangent_src);
SparseMatrix surface_curl(const FieldLayout& tangent_src, const Vec3& n);

// Traces of 3D fields of a split complex onto a split face.
SparseMatrix face_trace_scalar(const FieldLayout& src3d, const FaceSplit& f);
// Tangential part n x (v x n) / |n|^2 in the (tau, upsilon) frame.
SparseMatrix face_tangential_trace(const FieldLayout& src3d, const FaceSplit& f);
// v . d restricted to the face (scalar).
SparseMatrix face_normal_trace(const FieldLayout& src3d, const FaceSplit& f, const Vec3& d);

// One-sided traces of a face-patch scalar field on a CT edge, from triangles q1 and q2,
// and the jump (q1 minus q2) as a 1D scalar field on the edge patch.
SparseMatrix edge_side_trace(const FieldLayout& face_scalar, const Patch& edge, int triangle);
SparseMatrix edge_jump(const FieldLayout& face_scalar, const Patch& edge, const CtEdge& e);

}  // namespace wfseq

#endif
