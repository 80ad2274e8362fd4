#ifndef WFSEQ_SPLITGEOM_HPP
#define WFSEQ_SPLITGEOM_HPP

#include <array>
#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wfseq/geometry.hpp"

namespace wfseq {

// A sub-simplex given by sorted vertex ids into a point table.
struct Simplex {
  std::vector<int> v;
  bool interior = true;
  std::vector<int> cells;  // incident top-dimensional cells
};

// Identity token that is renewed on every copy or move, so caches keyed by it never
// outlive the object they describe.
class Uid {
 public:
  Uid() : v_(next()) {}
  Uid(const Uid&) : v_(next()) {}
  Uid& operator=(const Uid&) {
    v_ = next();
    return *this;
  }
  std::uint64_t value() const { return v_; }

 private:
  static std::uint64_t next() {
    static std::atomic<std::uint64_t> counter{0};
    return ++counter;
  }
  std::uint64_t v_;
};

// Conforming simplicial complex of equal-dimensional cells embedded in R^3.
// Cell vertex lists are sorted by id; Bernstein indices are keyed by those ids.
class Patch {
 public:
  Patch() = default;
  Patch(int dim, std::vector<Point> points, std::vector<std::vector<int>> cells);

  int dim() const { return dim_; }
  std::uint64_t uid() const { return uid_.value(); }
  const std::vector<Point>& points() const { return points_; }
  const Point& point(int id) const { return points_[id]; }
  std::size_t num_cells() const { return cells_.size(); }
  const std::vector<int>& cell(std::size_t k) const { return cells_[k]; }

  // Cell measure equals weight(k) * sqrt(radicand()).
  const Rational& weight(std::size_t k) const { return weight_[k]; }
  const Rational& radicand() const { return radicand_; }
  Rational total_weight() const;
  // Sign of the determinant of the cell as listed (3D only, else +1).
  int orientation(std::size_t k) const { return orient_[k]; }

  // Gradients of the barycentric coordinates of cell k, one per cell vertex.
  const std::vector<Vec3>& bary_grad(std::size_t k) const { return grad_[k]; }

  // All sub-simplices of dimension d in (dimension, sorted ids) order.
  const std::vector<Simplex>& subsimplices(int d) const { return sub_[d]; }
  // Index of the first cell containing all given vertex ids, or -1.
  int cell_containing(const std::vector<int>& ids) const;
  int find_subsimplex(std::vector<int> ids) const;
  // Barycentric coordinates of a point in cell k (no containment check).
  std::vector<Rational> barycentric(std::size_t k, const Point& p) const;
  // Index of a cell containing p (closed), or -1.
  int locate(const Point& p) const;

 private:
  Uid uid_;
  int dim_ = 0;
  std::vector<Point> points_;
  std::vector<std::vector<int>> cells_;
  std::vector<Rational> weight_;
  Rational radicand_ = 1;
  std::vector<int> orient_;
  std::vector<std::vector<Vec3>> grad_;
  std::array<std::vector<Simplex>, 4> sub_;
};

// Rational frame on a macro face: outward normal and two tangents, none normalized.
struct FaceFrame {
  Vec3 n, tau, upsilon;
};

// Interior edge [m_F, y] of a Clough-Tocher face split.
struct CtEdge {
  int m = -1, y = -1;  // vertex ids
  Vec3 t;              // points away from m_F
  Vec3 s;              // n_F x t
  Vec3 r;              // tangent to the interior face [z, m_F, y], orthogonal to t
  int q1 = -1, q2 = -1;  // adjacent face triangles (indices into FaceSplit::triangles)
  bool singular = false;  // e_F
  Patch patch;            // 1D patch [m, y]
};

// Clough-Tocher split of one macro face, vertex ids shared with the parent complex.
struct FaceSplit {
  int face = -1;                      // index i: face opposite x_i
  std::array<int, 3> y{};             // face vertex ids, ascending global label
  int m = -1;                         // split point id
  std::array<std::vector<int>, 3> triangles;  // [m,y0,y1], [m,y0,y2], [m,y1,y2] as sorted ids
  std::array<int, 3> cell_of_triangle{};      // parent 3D cell containing each triangle
  std::array<CtEdge, 3> edges;        // [m, y_k]; edges[0] is e_F
  FaceFrame frame;
  Patch patch;                        // 2D patch over the three triangles
};

struct MacroEdge {
  int a = -1, b = -1;  // vertex ids, ascending global label
  Vec3 t;              // x_b - x_a
  Vec3 n_plus, n_minus;
  Patch patch;  // 1D patch [a, b]
};

struct SplitOptions {
  std::array<int, 4> labels{0, 1, 2, 3};
  std::optional<Point> z;
  std::array<std::optional<Point>, 4> face_points;
  std::array<std::optional<Vec3>, 4> normal_override;
  // Replace every face frame by alternate_frame() and mix the macro edge normals.
  bool alternate_frames = false;
};

// Worsey-Farin split of a tetrahedron. Vertex ids: 0..3 macro vertices,
// 4..7 face split points (4+i on the face opposite x_i), 8 the interior point.
class SplitComplex {
 public:
  static constexpr int kZ = 8;

  const std::array<Point, 4>& macro_vertices() const { return x_; }
  const std::array<int, 4>& labels() const { return labels_; }
  int label_of(int id) const;  // global label of a vertex id (face points and z get 1000+id)
  const Point& z() const { return patch_.point(kZ); }
  const Patch& patch() const { return patch_; }
  const FaceSplit& face(int i) const { return faces_[i]; }
  const std::array<FaceSplit, 4>& faces() const { return faces_; }
  const std::vector<MacroEdge>& macro_edges() const { return macro_edges_; }
  // Alfeld parent K_i = [z, x_j : j != i] as sub-cell indices of the split.
  std::vector<int> alfeld_cells(int i) const;
  // Whether vertex id lies on macro face i.
  bool on_macro_face(int id, int i) const;
  // Whether a simplex lies on the boundary of the tetrahedron.
  bool on_boundary(const std::vector<int>& ids) const;
  Rational volume() const { return volume_; }
  // Id of the face split point of face i.
  static int face_point(int i) { return 4 + i; }
  // Macro face i vertex ids (ascending label).
  std::array<int, 3> face_vertices(int i) const { return faces_[i].y; }
  // Counts {vertices, edges, faces, cells}, all and interior only.
  std::array<int, 4> counts() const;
  std::array<int, 4> interior_counts() const;
  int euler_characteristic() const;
  // Every sub-simplex has nonzero measure and all cells are positively oriented after fix.
  bool validate() const;

  friend SplitComplex build_worsey_farin(const std::array<Point, 4>& x, const SplitOptions& opt);

 private:
  std::array<Point, 4> x_;
  std::array<int, 4> labels_{};
  Patch patch_;
  std::array<FaceSplit, 4> faces_;
  std::vector<MacroEdge> macro_edges_;
  Rational volume_;
};

SplitComplex build_worsey_farin(const std::array<Point, 4>& x, const SplitOptions& opt = {});

// Reference tetrahedron (0,0,0), (1,0,0), (0,1,0), (0,0,1).
std::array<Point, 4> reference_tetrahedron();

// Clough-Tocher split of a single triangle: ids 0,1,2 corners, 3 the split point.
// The normal is (y1-y0)x(y2-y0); CtEdge::r is left zero.
FaceSplit build_clough_tocher(const std::array<Point, 3>& y, const std::optional<Point>& m = std::nullopt);

// Another rational frame spanning the same directions: rescaled normal, mixed tangents.
FaceFrame alternate_frame(const FaceFrame& f);

// Normal vector orthogonal to t, chosen deterministically from the coordinate axes.
Vec3 rational_normal_to(const Vec3& t);

std::string complex_to_json(const SplitComplex& c);

}  // namespace wfseq

#endif
