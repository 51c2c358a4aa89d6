#pragma once

#include <functional>
#include <memory>

#include "divstokes/csr.hpp"
#include "divstokes/geometry.hpp"
#include "divstokes/spaces.hpp"

namespace divstokes {

/// Problem data for one assembly. Tangential Dirichlet data g is imposed
/// weakly (Nitsche); it must satisfy g.n = 0 since the normal component
/// is built into the space.
struct ProblemConfig {
  double nu = 1.0;
  double c_pen = 0.0;   // <= 0 selects the default 5 (k'+1)
  int quad_points = 0;  // <= 0 selects p+1 per direction per element
  std::function<Vec2(Vec2)> body_force;              // physical x -> f(x); empty = 0
  std::function<Vec2(Side, Vec2)> dirichlet_data;    // physical x on a side -> g; empty = 0

  double penalty(int k_prime) const { return c_pen > 0.0 ? c_pen : 5.0 * (k_prime + 1); }
};

/// Assembled discrete Stokes blocks:
///   [ A  B^T ] [u]   [f]
///   [ B   0  ] [p] = [0]
/// A is symmetric (mirrored from one triangle, so exactly), Q is the
/// pressure mass matrix and Q_nu its 1/(2 nu) scaling used by every
/// pressure preconditioner block.
struct StokesSystem {
  CsrMatrix A;       // n_u x n_u
  CsrMatrix B;       // n_p x n_u
  CsrMatrix Bt;      // B transposed, kept for the operator
  CsrMatrix Q;       // n_p x n_p
  CsrMatrix Q_nu;
  std::vector<double> f;  // n_u
  double nu = 1.0;
  double c_pen = 0.0;
  std::shared_ptr<const DiscretePair> pair;
  std::shared_ptr<const GeometricMap> map;

  int n_u() const { return A.n_rows; }
  int n_p() const { return Q.n_rows; }
  int size() const { return n_u() + n_p(); }

  // y = [[A, B^T], [B, 0]] x on stacked [u; p] vectors.
  void apply(const double* x, double* y) const;
};

// Individual blocks.
CsrMatrix assemble_viscous(const DiscretePair& pair, const GeometricMap& map,
                           const ProblemConfig& config);
CsrMatrix assemble_divergence(const DiscretePair& pair, const GeometricMap& map,
                              const ProblemConfig& config);
CsrMatrix assemble_pressure_mass(const DiscretePair& pair, const GeometricMap& map,
                                 const ProblemConfig& config);
CsrMatrix assemble_velocity_mass(const DiscretePair& pair, const GeometricMap& map,
                                 const ProblemConfig& config);
std::vector<double> assemble_rhs(const DiscretePair& pair, const GeometricMap& map,
                                 const ProblemConfig& config);

// Everything at once.
StokesSystem assemble_stokes(std::shared_ptr<const DiscretePair> pair,
                             std::shared_ptr<const GeometricMap> map,
                             const ProblemConfig& config);

}  // namespace divstokes
