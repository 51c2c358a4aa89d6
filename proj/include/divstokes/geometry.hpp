#pragma once

#include <memory>
#include <vector>

#include "divstokes/spaces.hpp"

namespace divstokes {

struct Vec2 {
  double x = 0.0, y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// 2x2 matrix, row-major: m[r][c].
struct Mat2 {
  double m[2][2] = {{0.0, 0.0}, {0.0, 0.0}};

  double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  double trace() const { return m[0][0] + m[1][1]; }
  Mat2 inverse() const {
    const double d = det();
    return Mat2{{{m[1][1] / d, -m[0][1] / d}, {-m[1][0] / d, m[0][0] / d}}};
  }
  Mat2 transpose() const { return Mat2{{{m[0][0], m[1][0]}, {m[0][1], m[1][1]}}}; }
};

inline Vec2 operator*(const Mat2& a, Vec2 v) {
  return {a.m[0][0] * v.x + a.m[0][1] * v.y, a.m[1][0] * v.x + a.m[1][1] * v.y};
}
inline Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
  return c;
}

/// First- and second-order data of the map at one parametric point.
struct MapJet {
  Vec2 x;         // F(xhat)
  Mat2 jac;       // DF
  Mat2 djac[2];   // d(DF)/dxhat_k
  double det = 0.0;
};

/// Parametric-to-physical map, orientation preserving (det DF > 0) and
/// piecewise smooth. Immutable; evaluation is pure.
class GeometricMap {
 public:
  enum class Kind { identity, polar_annulus, nurbs_annulus };

  virtual ~GeometricMap() = default;
  virtual Kind kind() const = 0;
  virtual MapJet jet(Vec2 xhat) const = 0;

  Vec2 evaluate(Vec2 xhat) const { return jet(xhat).x; }
};

// Identity map of the unit square.
std::shared_ptr<const GeometricMap> map_square();
// 1/8 annulus, radii 1 and 2, angle pi/4, polar parameterization.
std::shared_ptr<const GeometricMap> map_polar_annulus();
// Same region as an exact quadratic NURBS arc (weights 1, cos(pi/8), 1)
// swept linearly in the radius.
std::shared_ptr<const GeometricMap> map_nurbs_annulus();

/// A vector field value transported to physical coordinates.
struct PiolaField {
  Vec2 v;
  Mat2 grad;   // physical gradient, grad.m[a][b] = d v_a / d x_b
  double div;  // trace of grad
};

// Contravariant (Piola) push-forward v = DF vhat / det DF together with
// the physical gradient assembled by the chain rule (uses the map's
// second derivatives). Throws std::domain_error when det DF <= tol.
PiolaField piola_push(const MapJet& jet, Vec2 vhat, const Mat2& gradhat, double tol = 1e-14);

// Integral-preserving pressure push q = qhat / det DF.
double integral_push(const MapJet& jet, double qhat, double tol = 1e-14);

enum class Side { left = 0, right = 1, bottom = 2, top = 3 };

/// One boundary element face with its quadrature data in physical
/// coordinates. h_F is the physical arc length of the face.
struct BoundaryFace {
  Side side;
  int element;         // adjacent element index in the mesh
  double h_F = 0.0;

  struct Node {
    Vec2 xhat;
    MapJet jet;
    Vec2 normal;       // unit outward
    double surf_jac;   // |d x / d t| along the face
    double weight;     // reference weight on the parametric face extent
  };
  std::vector<Node> nodes;
};

// Faces of one side of the mesh with quad_points Gauss nodes per face.
std::vector<BoundaryFace> boundary_faces(const GeometricMap& map, const ParametricMesh& mesh,
                                         Side side, int quad_points);

}  // namespace divstokes
