#include "divstokes/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "divstokes/cholesky.hpp"
#include "divstokes/quadrature.hpp"
#include "divstokes/reorder.hpp"

namespace divstokes {

namespace {

// Parametric value and gradient of the velocity coefficient field at one
// point; the caller pushes through the map.
void parametric_velocity(const DiscretePair& pair, const std::vector<double>& u, Vec2 xhat,
                         Vec2& vhat, Mat2& gradhat) {
  vhat = {0.0, 0.0};
  gradhat = Mat2{};
  {
    const auto& ts = pair.vel_x;
    const int px = ts.space_x().degree(), py = ts.space_y().degree();
    std::vector<double> tx(2 * (px + 1)), ty(2 * (py + 1));
    const int fx = ts.space_x().eval(xhat.x, 1, tx.data());
    const int fy = ts.space_y().eval(xhat.y, 1, ty.data());
    for (int j = 0; j <= py; ++j)
      for (int i = 0; i <= px; ++i) {
        const int id = pair.velx_id[ts.flatten(fx + i, fy + j)];
        if (id < 0) continue;
        const double c = u[id];
        vhat.x += c * tx[i] * ty[j];
        gradhat.m[0][0] += c * tx[px + 1 + i] * ty[j];
        gradhat.m[0][1] += c * tx[i] * ty[py + 1 + j];
      }
  }
  {
    const auto& ts = pair.vel_y;
    const int px = ts.space_x().degree(), py = ts.space_y().degree();
    std::vector<double> tx(2 * (px + 1)), ty(2 * (py + 1));
    const int fx = ts.space_x().eval(xhat.x, 1, tx.data());
    const int fy = ts.space_y().eval(xhat.y, 1, ty.data());
    for (int j = 0; j <= py; ++j)
      for (int i = 0; i <= px; ++i) {
        const int id = pair.vely_id[ts.flatten(fx + i, fy + j)];
        if (id < 0) continue;
        const double c = u[id];
        vhat.y += c * tx[i] * ty[j];
        gradhat.m[1][0] += c * tx[px + 1 + i] * ty[j];
        gradhat.m[1][1] += c * tx[i] * ty[py + 1 + j];
      }
  }
}

}  // namespace

PiolaField evaluate_velocity(const DiscretePair& pair, const GeometricMap& map,
                             const std::vector<double>& u, Vec2 xhat) {
  Vec2 vhat;
  Mat2 gradhat;
  parametric_velocity(pair, u, xhat, vhat, gradhat);
  return piola_push(map.jet(xhat), vhat, gradhat);
}

double evaluate_pressure(const DiscretePair& pair, const GeometricMap& map,
                         const std::vector<double>& p, Vec2 xhat) {
  const auto& ts = pair.pressure;
  const int px = ts.space_x().degree(), py = ts.space_y().degree();
  std::vector<double> tx(px + 1), ty(py + 1);
  const int fx = ts.space_x().eval(xhat.x, 0, tx.data());
  const int fy = ts.space_y().eval(xhat.y, 0, ty.data());
  double qhat = 0.0;
  for (int j = 0; j <= py; ++j)
    for (int i = 0; i <= px; ++i) qhat += p[ts.flatten(fx + i, fy + j)] * tx[i] * ty[j];
  return integral_push(map.jet(xhat), qhat);
}

void ErrorReport::push(const ErrorEntry& e) {
  if (!levels.empty()) {
    const ErrorEntry& prev = levels.back();
    h1_orders.push_back(std::log2(prev.h1_seminorm_u / e.h1_seminorm_u));
    l2_u_orders.push_back(std::log2(prev.l2_u / e.l2_u));
    l2_p_orders.push_back(std::log2(prev.l2_p / e.l2_p));
  }
  levels.push_back(e);
}

ErrorEntry error_norms(const DiscretePair& pair, const GeometricMap& map,
                       const std::vector<double>& u, const std::vector<double>& p,
                       const ExactFields& exact, int quad_points) {
  const int q = (quad_points > 0 ? quad_points : pair.p + 1) + 2;
  const QuadratureRule ref = gauss_legendre(q);

  double h1 = 0.0, l2u = 0.0, l2p_raw = 0.0;
  double diff_int = 0.0, volume = 0.0;
  // first pass accumulates the H1/L2 velocity errors and the moments of
  // p - p_h needed for the mean shift
  std::vector<double> pdiff;
  std::vector<double> pw;
  pdiff.reserve(pair.mesh.element_count() * q * q);
  pw.reserve(pdiff.capacity());

  for (int e = 0; e < pair.mesh.element_count(); ++e) {
    const auto el = pair.mesh.element(e);
    const double area = (el.x1 - el.x0) * (el.y1 - el.y0);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        const Vec2 xhat{el.x0 + (el.x1 - el.x0) * ref.points[a],
                        el.y0 + (el.y1 - el.y0) * ref.points[b]};
        const MapJet jet = map.jet(xhat);
        const double w = ref.weights[a] * ref.weights[b] * area * jet.det;

        Vec2 vhat;
        Mat2 gradhat;
        parametric_velocity(pair, u, xhat, vhat, gradhat);
        const PiolaField uh = piola_push(jet, vhat, gradhat);
        const Vec2 ue = exact.velocity(jet.x);
        const Mat2 ge = exact.velocity_gradient(jet.x);

        const Vec2 dv = uh.v - ue;
        l2u += w * dot(dv, dv);
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c) {
            const double dg = uh.grad.m[r][c] - ge.m[r][c];
            h1 += w * dg * dg;
          }

        const double ph = evaluate_pressure(pair, map, p, xhat);
        const double d = exact.pressure(jet.x) - ph;
        pdiff.push_back(d);
        pw.push_back(w);
        diff_int += w * d;
        volume += w;
      }
  }
  const double mean = diff_int / volume;
  for (std::size_t i = 0; i < pdiff.size(); ++i) {
    const double d = pdiff[i] - mean;
    l2p_raw += pw[i] * d * d;
  }

  ErrorEntry entry;
  entry.h = pair.mesh.h;
  entry.h1_seminorm_u = std::sqrt(h1);
  entry.l2_u = std::sqrt(l2u);
  entry.l2_p = std::sqrt(l2p_raw);
  return entry;
}

namespace {

DenseMatrix to_dense(const CsrMatrix& m) {
  DenseMatrix d(m.n_rows, m.n_cols);
  for (int i = 0; i < m.n_rows; ++i)
    for (std::int64_t k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) d(i, m.cols[k]) = m.vals[k];
  return d;
}

DenseMatrix dense_stokes(const StokesSystem& sys) {
  const int nu = sys.n_u(), np = sys.n_p(), n = nu + np;
  DenseMatrix d(n, n);
  for (int i = 0; i < nu; ++i)
    for (std::int64_t k = sys.A.row_ptr[i]; k < sys.A.row_ptr[i + 1]; ++k)
      d(i, sys.A.cols[k]) = sys.A.vals[k];
  for (int i = 0; i < np; ++i)
    for (std::int64_t k = sys.B.row_ptr[i]; k < sys.B.row_ptr[i + 1]; ++k) {
      d(nu + i, sys.B.cols[k]) = sys.B.vals[k];
      d(sys.B.cols[k], nu + i) = sys.B.vals[k];
    }
  return d;
}

void extract_limits(SpectrumResult& out) {
  const double scale = std::max(std::abs(out.eigenvalues.front()),
                                std::abs(out.eigenvalues.back()));
  const double zero_tol = 1e-8 * scale;
  std::vector<double> kept;
  for (const double lam : out.eigenvalues) {
    if (std::abs(lam) <= zero_tol) continue;       // pressure kernel
    if (std::abs(lam - 1.0) <= 1e-8) continue;     // identity cluster of M_A = A
    kept.push_back(lam);
  }
  if (kept.empty() || kept.front() >= 0.0 || kept.back() <= 0.0)
    throw std::runtime_error("preconditioned_spectrum: expected an indefinite spectrum");
  out.neg_min = kept.front();
  out.pos_max = kept.back();
  for (const double lam : kept) {
    if (lam < 0.0) out.neg_max = lam;
    if (lam > 0.0) {
      out.pos_min = lam;
      break;
    }
  }
}

}  // namespace

SpectrumResult preconditioned_spectrum(const StokesSystem& system, const std::string& strategy) {
  const int nu = system.n_u(), np = system.n_p(), n = nu + np;
  if (n > kDenseEigCap)
    throw std::invalid_argument("preconditioned_spectrum: system exceeds the dense cap; "
                                "use a coarser mesh");
  const DenseMatrix stokes = dense_stokes(system);

  SpectrumResult out;
  if (strategy == "None") {
    out.eigenvalues = dense_sym_eig(stokes);
  } else {
    DenseMatrix m(n, n);
    if (strategy == "Ideal(A,Q)") {
      const DenseMatrix a = to_dense(system.A), qn = to_dense(system.Q_nu);
      for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nu; ++j) m(i, j) = a(i, j);
      for (int i = 0; i < np; ++i)
        for (int j = 0; j < np; ++j) m(nu + i, nu + j) = qn(i, j);
    } else if (strategy == "Ideal(A)+Diag(Q)") {
      const DenseMatrix a = to_dense(system.A);
      for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nu; ++j) m(i, j) = a(i, j);
      const auto dq = system.Q_nu.diagonal();
      for (int i = 0; i < np; ++i) m(nu + i, nu + i) = dq[i];
    } else if (strategy == "Diag(A,Q)") {
      const auto da = system.A.diagonal();
      for (int i = 0; i < nu; ++i) m(i, i) = da[i];
      const auto dq = system.Q_nu.diagonal();
      for (int i = 0; i < np; ++i) m(nu + i, nu + i) = dq[i];
    } else {
      throw std::invalid_argument("preconditioned_spectrum: no fixed matrix for strategy " +
                                  strategy);
    }
    out.eigenvalues = dense_gen_eig(stokes, m);
  }
  extract_limits(out);
  return out;
}

InfSupConstants infsup_constants(const StokesSystem& system) {
  const int nu = system.n_u(), np = system.n_p();
  if (np > kDenseEigCap)
    throw std::invalid_argument("infsup_constants: pressure space exceeds the dense cap");

  ProfileCholesky a_factor(system.A, rcm_permutation(system.A));
  DenseMatrix schur(np, np);
  std::vector<double> col(nu), sol(nu), srow(np);
  for (int j = 0; j < np; ++j) {
    std::fill(col.begin(), col.end(), 0.0);
    for (std::int64_t k = system.B.row_ptr[j]; k < system.B.row_ptr[j + 1]; ++k)
      col[system.B.cols[k]] = system.B.vals[k];
    a_factor.solve(col.data(), sol.data());
    system.B.multiply(sol.data(), srow.data());
    for (int i = 0; i < np; ++i) schur(i, j) = srow[i];
  }
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < i; ++j) {
      const double v = 0.5 * (schur(i, j) + schur(j, i));
      schur(i, j) = schur(j, i) = v;
    }

  const std::vector<double> eig = dense_gen_eig(schur, to_dense(system.Q_nu));
  const double cb_sq = eig.back();
  double beta0_sq = cb_sq;
  for (const double lam : eig)
    if (lam > 1e-10 * cb_sq) {
      beta0_sq = lam;
      break;
    }
  return {std::sqrt(beta0_sq), std::sqrt(cb_sq)};
}

std::vector<double> constant_pressure_coefficients(const DiscretePair& pair,
                                                   const GeometricMap& map) {
  const auto& press = pair.pressure;
  auto greville = [](const UnivariateSpace& s) {
    const auto& knots = s.knot_vector().knots;
    std::vector<double> g(s.size());
    for (int i = 0; i < s.size(); ++i) {
      double acc = 0.0;
      for (int m = 1; m <= s.degree(); ++m) acc += knots[i + m];
      g[i] = acc / s.degree();
    }
    return g;
  };
  const std::vector<double> gx = greville(press.space_x());
  const std::vector<double> gy = greville(press.space_y());
  std::vector<double> kernel(pair.n_p);
  for (int j = 0; j < press.ny(); ++j)
    for (int i = 0; i < press.nx(); ++i)
      kernel[press.flatten(i, j)] = map.jet({gx[i], gy[j]}).det;
  return kernel;
}

std::pair<double, double> block_bounds(const CsrMatrix& block, BlockApprox approx) {
  if (approx == BlockApprox::exact) return {1.0, 1.0};
  if (block.n_rows > kDenseEigCap)
    throw std::invalid_argument("block_bounds: block exceeds the dense cap");
  DenseMatrix m(block.n_rows, block.n_rows);
  const auto d = block.diagonal();
  for (int i = 0; i < block.n_rows; ++i) m(i, i) = d[i];
  const std::vector<double> eig = dense_gen_eig(to_dense(block), m);
  return {eig.front(), eig.back()};
}

EigenvalueBounds theorem_bounds(double gamma_a, double big_gamma_a, double gamma_q,
                                double big_gamma_q, double beta0, double cb) {
  const double cross_hi = 4.0 * cb * cb * big_gamma_a * big_gamma_q;
  const double cross_lo = 4.0 * beta0 * beta0 * gamma_a * gamma_q;
  EigenvalueBounds b;
  b.neg_lo = 0.5 * (gamma_a - std::sqrt(gamma_a * gamma_a + cross_hi));
  b.neg_hi = 0.5 * (gamma_a - std::sqrt(gamma_a * gamma_a + cross_lo));
  b.pos_lo = gamma_a;
  b.pos_hi = 0.5 * (big_gamma_a + std::sqrt(big_gamma_a * big_gamma_a + cross_hi));
  return b;
}

DivergenceCheck divergence_free_check(const DiscretePair& pair, const GeometricMap& map,
                                      const std::vector<double>& u, int quad_points) {
  const int q = (quad_points > 0 ? quad_points : pair.p + 1) + 2;
  const QuadratureRule ref = gauss_legendre(q);
  DivergenceCheck check;
  for (int e = 0; e < pair.mesh.element_count(); ++e) {
    const auto el = pair.mesh.element(e);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        const Vec2 xhat{el.x0 + (el.x1 - el.x0) * ref.points[a],
                        el.y0 + (el.y1 - el.y0) * ref.points[b]};
        Vec2 vhat;
        Mat2 gradhat;
        parametric_velocity(pair, u, xhat, vhat, gradhat);
        const PiolaField f = piola_push(map.jet(xhat), vhat, gradhat);
        check.max_div = std::max(check.max_div, std::abs(f.div));
        check.max_vel = std::max(check.max_vel, std::sqrt(dot(f.v, f.v)));
      }
  }
  return check;
}

}  // namespace divstokes
