#include "divstokes/precond.hpp"

#include <cmath>
#include <stdexcept>

#include "divstokes/analysis.hpp"
#include "divstokes/cholesky.hpp"
#include "divstokes/dense.hpp"
#include "divstokes/kernels.hpp"
#include "divstokes/reorder.hpp"

namespace divstokes {

namespace {

class ExactCholeskyBlock final : public BlockSolver {
 public:
  explicit ExactCholeskyBlock(const CsrMatrix& m)
      : factor_(m, rcm_permutation(m)), apps_(0) {}
  void apply(const double* r, double* z) override {
    factor_.solve(r, z);
    ++apps_;
  }
  std::string label() const override { return "exact-cholesky"; }
  long applications() const override { return apps_; }

 private:
  ProfileCholesky factor_;
  long apps_;
};

class JacobiBlock final : public BlockSolver {
 public:
  explicit JacobiBlock(const CsrMatrix& m) : inv_diag_(m.diagonal()) {
    for (auto& d : inv_diag_) {
      if (!(d > 0.0)) throw std::domain_error("jacobi block: nonpositive diagonal");
      d = 1.0 / d;
    }
  }
  void apply(const double* r, double* z) override {
    for (std::size_t i = 0; i < inv_diag_.size(); ++i) z[i] = inv_diag_[i] * r[i];
    ++apps_;
  }
  std::string label() const override { return "jacobi-diagonal"; }
  long applications() const override { return apps_; }

 private:
  std::vector<double> inv_diag_;
  long apps_ = 0;
};

// Inner PCG on the block, preconditioned by its diagonal or by an
// RCM-ordered IC(0) factorization. The whole inner solve runs in the
// permuted ordering so the triangular sweeps stay contiguous.
class PcgBlock final : public BlockSolver {
 public:
  enum class Inner { jacobi, ic0 };

  PcgBlock(const CsrMatrix& m, Inner inner, double tol, int max_iter)
      : tol_(tol), max_iter_(max_iter), inner_(inner) {
    if (inner == Inner::ic0) {
      perm_ = rcm_permutation(m);
      matrix_ = permute_symmetric(m, perm_);
      ic0_ = std::make_unique<Ic0Factor>(ic0(matrix_));
    } else {
      matrix_ = m;
      inv_diag_ = matrix_.diagonal();
      for (auto& d : inv_diag_) {
        if (!(d > 0.0)) throw std::domain_error("pcg block: nonpositive diagonal");
        d = 1.0 / d;
      }
    }
  }

  void apply(const double* r, double* z) override {
    const int n = matrix_.n_rows;
    std::vector<double> rhs(n);
    if (!perm_.empty())
      for (int i = 0; i < n; ++i) rhs[i] = r[perm_[i]];
    else
      rhs.assign(r, r + n);

    LinearOperator op = [this](const double* x, double* y) { matrix_.multiply(x, y); };
    LinearOperator pre;
    if (inner_ == Inner::ic0)
      pre = [this](const double* x, double* y) { ic0_->solve(x, y); };
    else
      pre = [this](const double* x, double* y) {
        for (std::size_t i = 0; i < inv_diag_.size(); ++i) y[i] = inv_diag_[i] * x[i];
      };

    std::vector<double> sol;
    const PcgResult res = pcg(op, rhs, pre, tol_, max_iter_, sol);
    inner_total_ += res.iterations;
    ++apps_;
    if (!perm_.empty())
      for (int i = 0; i < n; ++i) z[perm_[i]] = sol[i];
    else
      for (int i = 0; i < n; ++i) z[i] = sol[i];
  }

  std::string label() const override {
    return inner_ == Inner::ic0 ? "pcg(rcm+ic0)" : "pcg(jacobi)";
  }
  bool iterative() const override { return true; }
  long inner_iterations() const override { return inner_total_; }
  long applications() const override { return apps_; }

 private:
  CsrMatrix matrix_;
  std::vector<int> perm_;
  std::unique_ptr<Ic0Factor> ic0_;
  std::vector<double> inv_diag_;
  double tol_;
  int max_iter_;
  Inner inner_;
  long inner_total_ = 0, apps_ = 0;
};

class DenseCholeskyBlock final : public BlockSolver {
 public:
  DenseCholeskyBlock(DenseMatrix m, std::string label)
      : factor_(std::move(m)), label_(std::move(label)) {}
  void apply(const double* r, double* z) override {
    factor_.solve(r, z);
    ++apps_;
  }
  std::string label() const override { return label_; }
  long applications() const override { return apps_; }

 private:
  DenseCholesky factor_;
  std::string label_;
  long apps_ = 0;
};

}  // namespace

void BlockDiagPreconditioner::apply(const double* r, double* z) {
  top->apply(r, z);
  if (kernels::dot(z, r, n_top) < 0.0)
    throw std::runtime_error("preconditioner: velocity block " + top->label() +
                             " produced a negative inner product");
  bottom->apply(r + n_top, z + n_top);
  if (kernels::dot(z + n_top, r + n_top, n_bottom) < 0.0)
    throw std::runtime_error("preconditioner: pressure block " + bottom->label() +
                             " produced a negative inner product");
}

LinearOperator BlockDiagPreconditioner::as_operator() {
  return [this](const double* r, double* z) { apply(r, z); };
}

const std::vector<std::string>& strategy_names() {
  static const std::vector<std::string> names = {
      "Ideal(A,Q)",      "PCG(A,Q)",  "Ideal(A)+Diag(Q)",
      "PCG(A)+Diag(Q)",  "Diag(A,Q)", "IC0-PCG(A,Q)"};
  return names;
}

BlockDiagPreconditioner make_strategy(const std::string& name, const StokesSystem& system,
                                      double inner_tol) {
  BlockDiagPreconditioner m;
  m.name = name;
  m.n_top = system.n_u();
  m.n_bottom = system.n_p();
  const int inner_cap = 100000;

  if (name == "Ideal(A,Q)") {
    m.top = std::make_unique<ExactCholeskyBlock>(system.A);
    m.bottom = std::make_unique<ExactCholeskyBlock>(system.Q_nu);
  } else if (name == "PCG(A,Q)") {
    m.top = std::make_unique<PcgBlock>(system.A, PcgBlock::Inner::jacobi, inner_tol, inner_cap);
    m.bottom =
        std::make_unique<PcgBlock>(system.Q_nu, PcgBlock::Inner::jacobi, inner_tol, inner_cap);
  } else if (name == "Ideal(A)+Diag(Q)") {
    m.top = std::make_unique<ExactCholeskyBlock>(system.A);
    m.bottom = std::make_unique<JacobiBlock>(system.Q_nu);
  } else if (name == "PCG(A)+Diag(Q)") {
    m.top = std::make_unique<PcgBlock>(system.A, PcgBlock::Inner::jacobi, inner_tol, inner_cap);
    m.bottom = std::make_unique<JacobiBlock>(system.Q_nu);
  } else if (name == "Diag(A,Q)") {
    m.top = std::make_unique<JacobiBlock>(system.A);
    m.bottom = std::make_unique<JacobiBlock>(system.Q_nu);
  } else if (name == "IC0-PCG(A,Q)") {
    m.top = std::make_unique<PcgBlock>(system.A, PcgBlock::Inner::ic0, inner_tol, inner_cap);
    m.bottom =
        std::make_unique<PcgBlock>(system.Q_nu, PcgBlock::Inner::ic0, inner_tol, inner_cap);
  } else {
    throw std::invalid_argument("unknown preconditioning strategy: " + name);
  }
  return m;
}

BlockDiagPreconditioner make_exact_schur(const StokesSystem& system) {
  const int n_u = system.n_u(), n_p = system.n_p();
  ProfileCholesky a_factor(system.A, rcm_permutation(system.A));

  DenseMatrix schur(n_p, n_p);
  std::vector<double> col(n_u), sol(n_u), srow(n_p);
  for (int j = 0; j < n_p; ++j) {
    std::fill(col.begin(), col.end(), 0.0);
    for (std::int64_t k = system.B.row_ptr[j]; k < system.B.row_ptr[j + 1]; ++k)
      col[system.B.cols[k]] = system.B.vals[k];  // column j of B^T
    a_factor.solve(col.data(), sol.data());
    system.B.multiply(sol.data(), srow.data());
    for (int i = 0; i < n_p; ++i) schur(i, j) = srow[i];
  }
  // symmetrize round-off
  for (int i = 0; i < n_p; ++i)
    for (int j = 0; j < i; ++j) {
      const double v = 0.5 * (schur(i, j) + schur(j, i));
      schur(i, j) = schur(j, i) = v;
    }

  // For enclosed flows the constant pressure spans Ker(B^T); shift that
  // direction to make the Schur block definite without touching its
  // complement.
  std::vector<double> kernel(n_p, 1.0);
  if (system.pair && system.map)
    kernel = constant_pressure_coefficients(*system.pair, *system.map);
  double smax = 0.0, knorm2 = 0.0, residual2 = 0.0;
  for (int i = 0; i < n_p; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n_p; ++j) acc += schur(i, j) * kernel[j];
    residual2 += acc * acc;
    knorm2 += kernel[i] * kernel[i];
    smax = std::max(smax, std::abs(schur(i, i)));
  }
  if (std::sqrt(residual2) <= 1e-8 * smax * std::sqrt(knorm2)) {
    const double sigma = smax / knorm2;
    for (int i = 0; i < n_p; ++i)
      for (int j = 0; j < n_p; ++j) schur(i, j) += sigma * kernel[i] * kernel[j];
  }

  BlockDiagPreconditioner m;
  m.name = "ExactSchur";
  m.n_top = n_u;
  m.n_bottom = n_p;
  m.top = std::make_unique<ExactCholeskyBlock>(system.A);
  m.bottom = std::make_unique<DenseCholeskyBlock>(std::move(schur), "dense-schur");
  return m;
}

StokesSolution solve_stokes(const StokesSystem& system, BlockDiagPreconditioner& precond,
                            const SolverOptions& options) {
  const int n_u = system.n_u(), n_p = system.n_p();
  std::vector<double> b(n_u + n_p, 0.0);
  for (int i = 0; i < n_u; ++i) b[i] = system.f[i];

  MinresOptions mopt;
  mopt.tol = options.outer_tol;
  mopt.max_iter = options.max_iter;
  mopt.stop = options.stop;

  StokesSolution sol;
  LinearOperator op = [&system](const double* x, double* y) { system.apply(x, y); };
  const std::vector<double> x = minres(op, b, precond.as_operator(), mopt, sol.report);

  sol.u.assign(x.begin(), x.begin() + n_u);
  sol.p.assign(x.begin() + n_u, x.end());

  // Zero-mean filter: remove the Q-weighted projection onto the constant
  // pressure whenever that vector really spans Ker(B^T); for rational
  // maps B has full rank and nothing needs removing.
  if (system.pair && system.map) {
    const std::vector<double> kernel =
        constant_pressure_coefficients(*system.pair, *system.map);
    std::vector<double> btk(n_u);
    system.Bt.multiply(kernel.data(), btk.data());
    double resid = 0.0, bscale = 0.0;
    for (int i = 0; i < n_u; ++i) resid = std::max(resid, std::abs(btk[i]));
    for (const double v : system.B.vals) bscale = std::max(bscale, std::abs(v));
    if (resid <= 1e-10 * bscale) {
      const std::vector<double> qk = system.Q.multiply(kernel);
      double num = 0.0, den = 0.0;
      for (int i = 0; i < n_p; ++i) {
        num += qk[i] * sol.p[i];
        den += qk[i] * kernel[i];
      }
      const double mean = num / den;
      for (int i = 0; i < n_p; ++i) sol.p[i] -= mean * kernel[i];
    }
  }

  if (precond.top->iterative() && precond.top->applications() > 0)
    sol.report.mean_inner_top =
        static_cast<double>(precond.top->inner_iterations()) / precond.top->applications();
  if (precond.bottom->iterative() && precond.bottom->applications() > 0)
    sol.report.mean_inner_bottom =
        static_cast<double>(precond.bottom->inner_iterations()) / precond.bottom->applications();
  return sol;
}

StokesSolution solve_stokes(const StokesSystem& system, const std::string& strategy,
                            const SolverOptions& options) {
  BlockDiagPreconditioner precond = make_strategy(strategy, system, options.inner_tol);
  return solve_stokes(system, precond, options);
}

}  // namespace divstokes
