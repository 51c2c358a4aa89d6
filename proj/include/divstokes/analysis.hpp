#pragma once

#include <functional>
#include <string>
#include <vector>

#include "divstokes/assembly.hpp"
#include "divstokes/dense.hpp"

namespace divstokes {

// Discrete field evaluation at a parametric point, pushed to physical
// coordinates. Coefficient vectors use the constrained DOF numbering.
PiolaField evaluate_velocity(const DiscretePair& pair, const GeometricMap& map,
                             const std::vector<double>& u, Vec2 xhat);
double evaluate_pressure(const DiscretePair& pair, const GeometricMap& map,
                         const std::vector<double>& p, Vec2 xhat);

/// Analytic comparison fields in physical coordinates.
struct ExactFields {
  std::function<Vec2(Vec2)> velocity;
  std::function<Mat2(Vec2)> velocity_gradient;  // m[a][b] = d u_a / d x_b
  std::function<double(Vec2)> pressure;
};

/// One mesh level of an error study. Orders are appended between
/// consecutive levels as log2(e_coarse / e_fine) for uniform halving.
struct ErrorEntry {
  double h = 0.0;
  double h1_seminorm_u = 0.0;
  double l2_u = 0.0;
  double l2_p = 0.0;
};

struct ErrorReport {
  std::vector<ErrorEntry> levels;
  // orders[k] compares levels[k] and levels[k+1]
  std::vector<double> h1_orders, l2_u_orders, l2_p_orders;
  void push(const ErrorEntry& e);
};

// Norms of u - u_h and p - p_h by quadrature with quad_points + 2 points
// per direction (decouples measurement from assembly accuracy). Pressures
// are compared after shifting their difference to zero mean.
ErrorEntry error_norms(const DiscretePair& pair, const GeometricMap& map,
                       const std::vector<double>& u, const std::vector<double>& p,
                       const ExactFields& exact, int quad_points = 0);

/// Spectral data of one preconditioned system.
struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending, full generalized spectrum
  // limiting values after discarding the kernel 0 and the 1-cluster
  double neg_min = 0.0, neg_max = 0.0, pos_min = 0.0, pos_max = 0.0;
};

// Eigenvalues of M^{-1} A_stokes for a matrix preconditioner, dense and
// capped. strategy is one of "None", "Ideal(A,Q)", "Ideal(A)+Diag(Q)",
// "Diag(A,Q)" (inner-PCG strategies have no fixed matrix).
SpectrumResult preconditioned_spectrum(const StokesSystem& system, const std::string& strategy);

struct InfSupConstants {
  double beta0 = 0.0;  // sqrt of the smallest positive eigenvalue of (S, Q_nu)
  double cb = 0.0;     // sqrt of the largest
};

// Forms S = B A^{-1} B^T densely through n_p sparse Cholesky solves and
// solves the generalized problem against Q_nu; the near-zero kernel
// eigenvalue is excluded by a 1e-10 relative threshold.
InfSupConstants infsup_constants(const StokesSystem& system);

// Coefficients representing the constant pressure 1 (the integral
// pullback of det DF, Greville-sampled). Spans Ker(B^T) exactly whenever
// det DF lies in the pressure space (identity, polar); for rational maps
// the representation is approximate and B has full rank.
std::vector<double> constant_pressure_coefficients(const DiscretePair& pair,
                                                   const GeometricMap& map);

enum class BlockApprox { exact, jacobi };

// Extreme generalized eigenvalues of (K, M_K) for the named block
// approximation; (1,1) for the exact block.
std::pair<double, double> block_bounds(const CsrMatrix& block, BlockApprox approx);

/// Inclusion intervals for the preconditioned spectrum from measured
/// constants: [neg_lo, neg_hi] union [pos_lo, pos_hi].
struct EigenvalueBounds {
  double neg_lo, neg_hi, pos_lo, pos_hi;
  bool contains(double lambda, double slack) const {
    return (lambda >= neg_lo - slack && lambda <= neg_hi + slack) ||
           (lambda >= pos_lo - slack && lambda <= pos_hi + slack);
  }
};

EigenvalueBounds theorem_bounds(double gamma_a, double big_gamma_a, double gamma_q,
                                double big_gamma_q, double beta0, double cb);

struct DivergenceCheck {
  double max_div = 0.0;  // max |div u_h| over quadrature points
  double max_vel = 0.0;  // max |u_h| over the same points, the natural scale
};

DivergenceCheck divergence_free_check(const DiscretePair& pair, const GeometricMap& map,
                                      const std::vector<double>& u, int quad_points = 0);

}  // namespace divstokes
