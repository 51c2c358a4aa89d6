#pragma once

#include <utility>
#include <vector>

#include "divstokes/spline.hpp"

namespace divstokes {

/// Tensor mesh of (0,1)^2 induced by the breakpoints of the two knot
/// vectors. Elements are numbered iy*nx_elem + ix.
struct ParametricMesh {
  std::vector<double> breaks_x, breaks_y;
  int nx_elem = 0, ny_elem = 0;
  double h = 0.0;            // max element diameter
  double shape_ratio = 0.0;  // max over elements of diam / min edge (reported only)

  struct Element {
    double x0, x1, y0, y1;
    int ix, iy;
  };

  int element_count() const { return nx_elem * ny_elem; }
  Element element(int e) const {
    Element el;
    el.ix = e % nx_elem;
    el.iy = e / nx_elem;
    el.x0 = breaks_x[el.ix];
    el.x1 = breaks_x[el.ix + 1];
    el.y0 = breaks_y[el.iy];
    el.y1 = breaks_y[el.iy + 1];
    return el;
  }
};

ParametricMesh make_mesh(const KnotVector& kx, const KnotVector& ky);

/// Bivariate tensor-product space. Basis (i,j) has flat index j*nx + i.
class TensorSpace {
 public:
  TensorSpace(UnivariateSpace sx, UnivariateSpace sy)
      : sx_(std::move(sx)), sy_(std::move(sy)) {}

  const UnivariateSpace& space_x() const { return sx_; }
  const UnivariateSpace& space_y() const { return sy_; }
  int nx() const { return sx_.size(); }
  int ny() const { return sy_.size(); }
  int dim() const { return nx() * ny(); }

  int flatten(int i, int j) const { return j * nx() + i; }
  std::pair<int, int> unflatten(int flat) const { return {flat % nx(), flat / nx()}; }

 private:
  UnivariateSpace sx_, sy_;
};

/// The divergence-conforming velocity/pressure pair on (0,1)^2 with
/// maximal interior regularity: velocity components of degrees
/// (p, p-1) and (p-1, p), pressure of degree (p-1, p-1), p = k'+1.
/// No-penetration is built in by removing the velocity DOFs with nonzero
/// normal trace (first/last x-column of vel_x, first/last y-row of vel_y).
/// Velocity DOF ids: constrained vel_x first, then constrained vel_y.
struct DiscretePair {
  int k_prime = 0;
  int p = 0;
  int n_elem = 0;
  TensorSpace vel_x, vel_y, pressure;
  ParametricMesh mesh;

  std::vector<int> velx_id;  // tensor-flat index -> velocity DOF id, -1 if removed
  std::vector<int> vely_id;
  std::vector<int> constrained_velx, constrained_vely;  // removed tensor-flat indices
  int n_velx = 0, n_vely = 0;
  int n_u = 0;  // n_velx + n_vely
  int n_p = 0;
};

// Builds the pair. Throws std::invalid_argument for k_prime < 1 (the
// velocity space would not be H1-conforming) or n_elem < 2.
DiscretePair build_pair(int k_prime, int n_elem);

/// Local-to-global DOF lists for one element. Velocity entries use the
/// global velocity numbering (vel_y offset by n_velx); removed DOFs are
/// the sentinel -1. tensor_* carry the tensor-flat indices of the same
/// slots for basis-table lookups.
struct ElementDofs {
  std::vector<int> vel_x, vel_y, pressure;
  std::vector<int> tensor_vel_x, tensor_vel_y, tensor_pressure;
};

// Throws std::out_of_range for an invalid element index.
ElementDofs element_dof_map(const DiscretePair& pair, int element);

// For every kept velocity basis function, expands its parametric
// divergence in the pressure basis by least squares over quadrature
// samples and returns the largest pointwise expansion residual. Zero (to
// round-off) certifies the cochain property div V0 -> Q.
double divergence_image_check(const DiscretePair& pair);

}  // namespace divstokes
