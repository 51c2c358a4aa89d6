#pragma once

#include <memory>
#include <string>
#include <vector>

#include "divstokes/assembly.hpp"
#include "divstokes/solvers.hpp"

namespace divstokes {

/// One diagonal block of the preconditioner: an SPD solve, either exact
/// (sparse Cholesky), iterative (inner PCG), or diagonal scaling.
class BlockSolver {
 public:
  virtual ~BlockSolver() = default;
  virtual void apply(const double* r, double* z) = 0;
  virtual std::string label() const = 0;
  virtual bool iterative() const { return false; }
  virtual long inner_iterations() const { return 0; }
  virtual long applications() const { return 0; }
};

/// Block-diagonal preconditioner diag(M_A, M_Q). Both blocks act as SPD
/// operators; every apply cross-checks <z, r> >= 0 and reports the
/// offending block otherwise.
struct BlockDiagPreconditioner {
  std::unique_ptr<BlockSolver> top;     // velocity block, size n_u
  std::unique_ptr<BlockSolver> bottom;  // pressure block, size n_p
  int n_top = 0, n_bottom = 0;
  std::string name;

  void apply(const double* r, double* z);
  LinearOperator as_operator();
};

// The strategy menu. name is one of Ideal(A,Q), PCG(A,Q),
// Ideal(A)+Diag(Q), PCG(A)+Diag(Q), Diag(A,Q), IC0-PCG(A,Q); every
// pressure block acts on Q_nu = Q / (2 nu). Throws std::invalid_argument
// for an unknown name.
BlockDiagPreconditioner make_strategy(const std::string& name, const StokesSystem& system,
                                      double inner_tol);

const std::vector<std::string>& strategy_names();

// diag(A, B A^{-1} B^T) with the Schur complement formed densely and its
// pressure-kernel direction shifted so the factorization exists; with a
// consistent right-hand side P-MINRES needs at most three iterations.
// Analysis-scale only.
BlockDiagPreconditioner make_exact_schur(const StokesSystem& system);

struct SolverOptions {
  double outer_tol = 1e-12;
  double inner_tol = 1e-6;
  int max_iter = 20000;
  // iteration counts follow the benchmark convention of stopping on the
  // plain relative residual
  MinresStop stop = MinresStop::euclidean;
};

struct StokesSolution {
  std::vector<double> u, p;
  SolveReport report;
};

// Assembled system -> preconditioned MINRES -> pressure filtered to zero
// Q-weighted mean against the all-ones coefficient vector.
StokesSolution solve_stokes(const StokesSystem& system, const std::string& strategy,
                            const SolverOptions& options);
StokesSolution solve_stokes(const StokesSystem& system, BlockDiagPreconditioner& precond,
                            const SolverOptions& options);

}  // namespace divstokes
