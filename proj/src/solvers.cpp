#include "divstokes/solvers.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "divstokes/kernels.hpp"

namespace divstokes {

namespace {
double nrm2(const std::vector<double>& v) {
  return std::sqrt(kernels::dot(v.data(), v.data(), static_cast<std::int64_t>(v.size())));
}
}  // namespace

// Lanczos-based short recurrence with on-the-fly QR (Paige-Saunders).
// phibar tracks ||r_k||_{M^{-1}} exactly in exact arithmetic, so that
// history is nonincreasing. The Euclidean residual ||b - A x_k||_2 is
// carried by the same update recurrence as x (one vector update per
// iteration, no extra operator application); it is the norm the
// iteration-count studies use and it need not be monotone.
std::vector<double> minres(const LinearOperator& apply_a, const std::vector<double>& b,
                           const LinearOperator& apply_minv, const MinresOptions& opt,
                           SolveReport& report) {
  const auto t_start = std::chrono::steady_clock::now();
  const std::int64_t n = static_cast<std::int64_t>(b.size());
  std::vector<double> x(n, 0.0);
  report = SolveReport{};

  std::vector<double> r1(n), r2(n), y(n), v(n), w(n, 0.0), w1(n, 0.0), w2(n, 0.0);
  std::vector<double> res(n), av(n), aw(n, 0.0), aw1(n, 0.0), aw2(n, 0.0);

  if (opt.x0) {
    x = *opt.x0;
    apply_a(x.data(), r1.data());
    for (std::int64_t i = 0; i < n; ++i) r1[i] = b[i] - r1[i];
  } else {
    r1 = b;
  }
  res = r1;
  const double rnorm0 = nrm2(res);
  apply_minv(r1.data(), y.data());
  double beta1 = kernels::dot(r1.data(), y.data(), n);
  if (beta1 < 0.0) throw std::runtime_error("minres: preconditioner is not positive definite");
  beta1 = std::sqrt(beta1);
  report.residual_history.push_back(1.0);
  report.euclid_history.push_back(1.0);
  if (beta1 == 0.0) {  // x0 already solves the system
    report.converged = true;
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return x;
  }

  r2 = r1;
  double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0, phibar = beta1;
  double cs = -1.0, sn = 0.0, oldeps = 0.0;

  for (int it = 1; it <= opt.max_iter; ++it) {
    const double s = 1.0 / beta;
    for (std::int64_t i = 0; i < n; ++i) v[i] = s * y[i];
    apply_a(v.data(), av.data());
    y = av;
    if (it >= 2) kernels::axpy(-beta / oldb, r1.data(), y.data(), n);
    const double alfa = kernels::dot(v.data(), y.data(), n);
    kernels::axpy(-alfa / beta, r2.data(), y.data(), n);
    r1.swap(r2);
    r2.swap(y);
    apply_minv(r2.data(), y.data());
    oldb = beta;
    const double betasq = kernels::dot(r2.data(), y.data(), n);
    if (betasq < 0.0)
      throw std::runtime_error("minres: preconditioner is not positive definite");
    beta = std::sqrt(betasq);

    // previous rotation applied to the new tridiagonal column
    oldeps = epsln;
    const double delta = cs * dbar + sn * alfa;
    const double gbar = sn * dbar - cs * alfa;
    epsln = sn * beta;
    dbar = -cs * beta;

    double gamma = std::sqrt(gbar * gbar + beta * beta);
    gamma = std::max(gamma, std::numeric_limits<double>::epsilon());
    cs = gbar / gamma;
    sn = beta / gamma;
    const double phi = cs * phibar;
    phibar = sn * phibar;

    w1.swap(w2);
    w2.swap(w);
    aw1.swap(aw2);
    aw2.swap(aw);
    for (std::int64_t i = 0; i < n; ++i) {
      w[i] = (v[i] - oldeps * w1[i] - delta * w2[i]) / gamma;
      aw[i] = (av[i] - oldeps * aw1[i] - delta * aw2[i]) / gamma;
    }
    kernels::axpy(phi, w.data(), x.data(), n);
    kernels::axpy(-phi, aw.data(), res.data(), n);

    report.iterations = it;
    const double relres_m = phibar / beta1;
    const double relres_e = rnorm0 > 0.0 ? nrm2(res) / rnorm0 : 0.0;
    report.residual_history.push_back(relres_m);
    report.euclid_history.push_back(relres_e);
    const double stop_value =
        opt.stop == MinresStop::preconditioned ? relres_m : relres_e;
    if (stop_value <= opt.tol) {
      report.converged = true;
      break;
    }
    if (beta == 0.0) {  // Krylov space exhausted: the iterate is exact
      report.converged = relres_m <= opt.tol;
      break;
    }
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return x;
}

PcgResult pcg(const LinearOperator& apply_a, const std::vector<double>& b,
              const LinearOperator& apply_minv, double tol, int max_iter,
              std::vector<double>& x) {
  const std::int64_t n = static_cast<std::int64_t>(b.size());
  x.assign(n, 0.0);
  std::vector<double> r = b, z(n), p(n), q(n);
  apply_minv(r.data(), z.data());
  double rho = kernels::dot(r.data(), z.data(), n);
  if (rho < 0.0) throw std::runtime_error("pcg: preconditioner is not positive definite");
  const double rho0 = rho;
  if (rho0 == 0.0) return {0, true};
  p = z;

  PcgResult result;
  for (int it = 1; it <= max_iter; ++it) {
    apply_a(p.data(), q.data());
    const double curv = kernels::dot(p.data(), q.data(), n);
    if (curv <= 0.0) throw std::runtime_error("pcg: operator is not positive definite");
    const double alpha = rho / curv;
    kernels::axpy(alpha, p.data(), x.data(), n);
    kernels::axpy(-alpha, q.data(), r.data(), n);
    apply_minv(r.data(), z.data());
    const double rho_next = kernels::dot(r.data(), z.data(), n);
    if (rho_next < 0.0) throw std::runtime_error("pcg: preconditioner is not positive definite");
    result.iterations = it;
    if (std::sqrt(rho_next / rho0) <= tol) {
      result.converged = true;
      return result;
    }
    const double beta = rho_next / rho;
    for (std::int64_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    rho = rho_next;
  }
  return result;
}

}  // namespace divstokes
