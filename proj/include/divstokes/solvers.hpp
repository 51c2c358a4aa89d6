#pragma once

#include <functional>
#include <vector>

namespace divstokes {

using LinearOperator = std::function<void(const double* x, double* y)>;

/// Outcome of a preconditioned MINRES solve. residual_history holds the
/// relative residual in the preconditioner-induced norm, starting at 1
/// (length = iterations + 1) and nonincreasing. euclid_history holds
/// ||b - A x_k||_2 / ||b - A x_0||_2, the norm the residual plots and the
/// iteration-count studies use; no monotonicity holds for it.
struct SolveReport {
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;
  std::vector<double> euclid_history;
  double wall_seconds = 0.0;
  double mean_inner_top = 0.0;     // mean PCG iterations in the A block, when iterative
  double mean_inner_bottom = 0.0;  // same for the Q block
};

enum class MinresStop {
  preconditioned,  // ||r_k||_{M^-1} / ||r_0||_{M^-1} <= tol
  euclidean,       // ||b - A x_k||_2 / ||b - A x_0||_2 <= tol
};

struct MinresOptions {
  double tol = 1e-12;
  int max_iter = 20000;
  MinresStop stop = MinresStop::preconditioned;
  const std::vector<double>* x0 = nullptr;
};

// Preconditioned MINRES for a symmetric (possibly singular indefinite)
// operator and an SPD preconditioner. Convergence is declared when the
// M^{-1}-norm relative residual drops below tol; a consistent right-hand
// side keeps a singular system harmless. Throws std::runtime_error if
// the preconditioner is detected indefinite (negative <z, r>).
std::vector<double> minres(const LinearOperator& apply_a, const std::vector<double>& b,
                           const LinearOperator& apply_minv, const MinresOptions& opt,
                           SolveReport& report);

struct PcgResult {
  int iterations = 0;
  bool converged = false;
};

// Preconditioned conjugate gradients for an SPD operator/preconditioner
// pair. tol is on the relative preconditioned residual sqrt(<r,z>).
// Throws std::runtime_error on detected negative curvature.
PcgResult pcg(const LinearOperator& apply_a, const std::vector<double>& b,
              const LinearOperator& apply_minv, double tol, int max_iter,
              std::vector<double>& x);

}  // namespace divstokes
