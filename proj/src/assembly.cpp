#include "divstokes/assembly.hpp"

#include <atomic>
#include <cstdio>
#include <stdexcept>

#include "divstokes/quadrature.hpp"

namespace divstokes {

namespace {

// Univariate values and first derivatives at the reference Gauss points
// of every element, plus the first supported index per element.
struct UniTable {
  int p = 0, q = 0;
  std::vector<double> val, der;  // [elem * q + a][p + 1]
  std::vector<int> first;

  void build(const UnivariateSpace& space, const std::vector<double>& breaks,
             const QuadratureRule& ref) {
    p = space.degree();
    q = static_cast<int>(ref.points.size());
    const int ne = static_cast<int>(breaks.size()) - 1;
    val.assign(static_cast<std::size_t>(ne) * q * (p + 1), 0.0);
    der.assign(val.size(), 0.0);
    first.resize(ne);
    std::vector<double> table(2 * (p + 1));
    for (int e = 0; e < ne; ++e) {
      for (int a = 0; a < q; ++a) {
        const double x = breaks[e] + (breaks[e + 1] - breaks[e]) * ref.points[a];
        first[e] = space.eval(x, 1, table.data());
        double* v = &val[(static_cast<std::size_t>(e) * q + a) * (p + 1)];
        double* d = &der[(static_cast<std::size_t>(e) * q + a) * (p + 1)];
        for (int i = 0; i <= p; ++i) {
          v[i] = table[i];
          d[i] = table[p + 1 + i];
        }
      }
    }
  }

  const double* values(int e, int a) const {
    return &val[(static_cast<std::size_t>(e) * q + a) * (p + 1)];
  }
  const double* derivs(int e, int a) const {
    return &der[(static_cast<std::size_t>(e) * q + a) * (p + 1)];
  }
};

// Physical data of one velocity basis function at one point.
struct VelBasis {
  Vec2 v;
  double s00, s11, s01;  // symmetric gradient entries
  double divhat;         // parametric divergence (exact integrand for B)
};

void eval_velocity_basis(const DiscretePair& pair, const MapJet& jet,
                         const double* bxv, const double* bxd, const double* byv,
                         const double* byd, const double* cxv, const double* cxd,
                         const double* cyv, const double* cyd, std::vector<VelBasis>& out) {
  const int pxk = pair.vel_x.space_x().degree(), pxl = pair.vel_x.space_y().degree();
  const int pyk = pair.vel_y.space_x().degree(), pyl = pair.vel_y.space_y().degree();
  out.clear();
  for (int j = 0; j <= pxl; ++j)
    for (int i = 0; i <= pxk; ++i) {
      const Vec2 vhat{bxv[i] * byv[j], 0.0};
      const Mat2 gradhat{{{bxd[i] * byv[j], bxv[i] * byd[j]}, {0.0, 0.0}}};
      const PiolaField f = piola_push(jet, vhat, gradhat);
      out.push_back({f.v, f.grad.m[0][0], f.grad.m[1][1],
                     0.5 * (f.grad.m[0][1] + f.grad.m[1][0]), gradhat.m[0][0]});
    }
  for (int j = 0; j <= pyl; ++j)
    for (int i = 0; i <= pyk; ++i) {
      const Vec2 vhat{0.0, cxv[i] * cyv[j]};
      const Mat2 gradhat{{{0.0, 0.0}, {cxd[i] * cyv[j], cxv[i] * cyd[j]}}};
      const PiolaField f = piola_push(jet, vhat, gradhat);
      out.push_back({f.v, f.grad.m[0][0], f.grad.m[1][1],
                     0.5 * (f.grad.m[0][1] + f.grad.m[1][0]), gradhat.m[1][1]});
    }
}

struct AssemblyRequest {
  bool viscous = false, divergence = false, pressure_mass = false, velocity_mass = false,
       rhs = false;
};

struct AssemblyOutput {
  std::vector<Triplet> A, B, Q, Mv;
  std::vector<double> f;
};

int effective_quad(const DiscretePair& pair, const ProblemConfig& config) {
  int q = config.quad_points > 0 ? config.quad_points : pair.p + 1;
  if (q < pair.p + 1) {
    static std::atomic<bool> warned{false};
    if (!warned.exchange(true))
      std::fprintf(stderr,
                   "divstokes: warning: quadrature order %d is below degree+1 = %d; "
                   "integration will be inexact\n",
                   q, pair.p + 1);
  }
  return q;
}

AssemblyOutput assemble_core(const DiscretePair& pair, const GeometricMap& map,
                             const ProblemConfig& config, const AssemblyRequest& req) {
  AssemblyOutput out;
  const int q = effective_quad(pair, config);
  const QuadratureRule ref = gauss_legendre(q);
  const double two_nu = 2.0 * config.nu;
  const double c_pen = config.penalty(pair.k_prime);

  UniTable bx, by, cx, cy, qx, qy;
  bx.build(pair.vel_x.space_x(), pair.mesh.breaks_x, ref);
  by.build(pair.vel_x.space_y(), pair.mesh.breaks_y, ref);
  cx.build(pair.vel_y.space_x(), pair.mesh.breaks_x, ref);
  cy.build(pair.vel_y.space_y(), pair.mesh.breaks_y, ref);
  qx.build(pair.pressure.space_x(), pair.mesh.breaks_x, ref);
  qy.build(pair.pressure.space_y(), pair.mesh.breaks_y, ref);

  const int nv = (bx.p + 1) * (by.p + 1) + (cx.p + 1) * (cy.p + 1);
  const int np = (qx.p + 1) * (qy.p + 1);
  std::vector<double> a_local(nv * nv), b_local(np * nv), q_local(np * np), mv_local(nv * nv),
      f_local(nv), press(np);
  std::vector<VelBasis> vel;
  vel.reserve(nv);
  if (req.rhs) out.f.assign(pair.n_u, 0.0);

  const bool need_velocity =
      req.viscous || req.divergence || req.velocity_mass || (req.rhs && config.body_force);

  for (int e = 0; e < pair.mesh.element_count(); ++e) {
    const auto el = pair.mesh.element(e);
    const ElementDofs dofs = element_dof_map(pair, e);
    const double area = (el.x1 - el.x0) * (el.y1 - el.y0);

    std::fill(a_local.begin(), a_local.end(), 0.0);
    std::fill(b_local.begin(), b_local.end(), 0.0);
    std::fill(q_local.begin(), q_local.end(), 0.0);
    std::fill(mv_local.begin(), mv_local.end(), 0.0);
    std::fill(f_local.begin(), f_local.end(), 0.0);

    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        const double xh = el.x0 + (el.x1 - el.x0) * ref.points[a];
        const double yh = el.y0 + (el.y1 - el.y0) * ref.points[b];
        const double w = ref.weights[a] * ref.weights[b] * area;
        const MapJet jet = map.jet({xh, yh});
        const double wj = w * jet.det;

        if (need_velocity)
          eval_velocity_basis(pair, jet, bx.values(el.ix, a), bx.derivs(el.ix, a),
                              by.values(el.iy, b), by.derivs(el.iy, b), cx.values(el.ix, a),
                              cx.derivs(el.ix, a), cy.values(el.iy, b), cy.derivs(el.iy, b),
                              vel);

        if (req.divergence || req.pressure_mass) {
          const double* pv = qx.values(el.ix, a);
          const double* pw = qy.values(el.iy, b);
          int idx = 0;
          for (int jj = 0; jj <= qy.p; ++jj)
            for (int ii = 0; ii <= qx.p; ++ii) press[idx++] = pv[ii] * pw[jj];
        }

        if (req.viscous)
          for (int i = 0; i < nv; ++i)
            for (int j = 0; j <= i; ++j) {
              const double contraction = vel[i].s00 * vel[j].s00 + vel[i].s11 * vel[j].s11 +
                                         2.0 * vel[i].s01 * vel[j].s01;
              a_local[i * nv + j] += wj * two_nu * contraction;
            }
        if (req.velocity_mass)
          for (int i = 0; i < nv; ++i)
            for (int j = 0; j <= i; ++j)
              mv_local[i * nv + j] += wj * dot(vel[i].v, vel[j].v);
        if (req.divergence) {
          // -(div v, q): div v = divhat / det, pressure = press / det,
          // measure det; one 1/det survives.
          const double scale = -w / jet.det;
          for (int k = 0; k < np; ++k)
            for (int j = 0; j < nv; ++j)
              b_local[k * nv + j] += scale * press[k] * vel[j].divhat;
        }
        if (req.pressure_mass) {
          const double scale = w / jet.det;
          for (int k = 0; k < np; ++k)
            for (int l = 0; l <= k; ++l) q_local[k * np + l] += scale * press[k] * press[l];
        }
        if (req.rhs && config.body_force) {
          const Vec2 fv = config.body_force(jet.x);
          for (int i = 0; i < nv; ++i) f_local[i] += wj * dot(fv, vel[i].v);
        }
      }

    // scatter
    std::vector<int> vel_ids = dofs.vel_x;
    vel_ids.insert(vel_ids.end(), dofs.vel_y.begin(), dofs.vel_y.end());
    auto mirror = [&](const std::vector<double>& local, std::vector<Triplet>& trip) {
      for (int i = 0; i < nv; ++i) {
        if (vel_ids[i] < 0) continue;
        for (int j = 0; j <= i; ++j) {
          if (vel_ids[j] < 0) continue;
          const double v = local[i * nv + j];
          trip.push_back({vel_ids[i], vel_ids[j], v});
          if (i != j) trip.push_back({vel_ids[j], vel_ids[i], v});
        }
      }
    };
    if (req.viscous) mirror(a_local, out.A);
    if (req.velocity_mass) mirror(mv_local, out.Mv);
    if (req.divergence)
      for (int k = 0; k < np; ++k)
        for (int j = 0; j < nv; ++j) {
          if (vel_ids[j] < 0) continue;
          out.B.push_back({dofs.pressure[k], vel_ids[j], b_local[k * nv + j]});
        }
    if (req.pressure_mass)
      for (int k = 0; k < np; ++k)
        for (int l = 0; l <= k; ++l) {
          const double v = q_local[k * np + l];
          out.Q.push_back({dofs.pressure[k], dofs.pressure[l], v});
          if (k != l) out.Q.push_back({dofs.pressure[l], dofs.pressure[k], v});
        }
    if (req.rhs && config.body_force)
      for (int i = 0; i < nv; ++i)
        if (vel_ids[i] >= 0) out.f[vel_ids[i]] += f_local[i];
  }

  // Nitsche face terms enter A and f.
  if (req.viscous || req.rhs) {
    std::vector<double> face_a(nv * nv), face_f(nv);
    std::vector<Vec2> tn(nv);  // (grad^s v) n per basis function
    std::vector<double> tbx(2 * (bx.p + 1)), tby(2 * (by.p + 1)), tcx(2 * (cx.p + 1)),
        tcy(2 * (cy.p + 1));
    for (const Side side : {Side::left, Side::right, Side::bottom, Side::top}) {
      const auto faces = boundary_faces(map, pair.mesh, side, q);
      for (const auto& face : faces) {
        const ElementDofs dofs = element_dof_map(pair, face.element);
        std::vector<int> vel_ids = dofs.vel_x;
        vel_ids.insert(vel_ids.end(), dofs.vel_y.begin(), dofs.vel_y.end());
        std::fill(face_a.begin(), face_a.end(), 0.0);
        std::fill(face_f.begin(), face_f.end(), 0.0);

        for (const auto& node : face.nodes) {
          // the fixed coordinate of a face node resolves to the same
          // support indices as the adjacent element
          pair.vel_x.space_x().eval(node.xhat.x, 1, tbx.data());
          pair.vel_x.space_y().eval(node.xhat.y, 1, tby.data());
          pair.vel_y.space_x().eval(node.xhat.x, 1, tcx.data());
          pair.vel_y.space_y().eval(node.xhat.y, 1, tcy.data());
          eval_velocity_basis(pair, node.jet, tbx.data(), &tbx[bx.p + 1], tby.data(),
                              &tby[by.p + 1], tcx.data(), &tcx[cx.p + 1], tcy.data(),
                              &tcy[cy.p + 1], vel);
          const double ds = node.weight * node.surf_jac;
          const Vec2 n = node.normal;
          const double pen = c_pen / face.h_F;

          for (int i = 0; i < nv; ++i)
            tn[i] = {vel[i].s00 * n.x + vel[i].s01 * n.y,
                     vel[i].s01 * n.x + vel[i].s11 * n.y};

          if (req.viscous)
            for (int i = 0; i < nv; ++i)
              for (int j = 0; j <= i; ++j) {
                const double eta = dot(tn[i], vel[j].v) + dot(tn[j], vel[i].v) -
                                   pen * dot(vel[i].v, vel[j].v);
                face_a[i * nv + j] -= ds * two_nu * eta;  // A = a - eta_h
              }
          if (req.rhs && config.dirichlet_data) {
            const Vec2 g = config.dirichlet_data(side, node.jet.x);
            if (g.x != 0.0 || g.y != 0.0)
              for (int i = 0; i < nv; ++i)
                face_f[i] += ds * two_nu * (-dot(tn[i], g) + pen * dot(g, vel[i].v));
          }
        }

        if (req.viscous)
          for (int i = 0; i < nv; ++i) {
            if (vel_ids[i] < 0) continue;
            for (int j = 0; j <= i; ++j) {
              if (vel_ids[j] < 0) continue;
              const double v = face_a[i * nv + j];
              out.A.push_back({vel_ids[i], vel_ids[j], v});
              if (i != j) out.A.push_back({vel_ids[j], vel_ids[i], v});
            }
          }
        if (req.rhs && config.dirichlet_data)
          for (int i = 0; i < nv; ++i)
            if (vel_ids[i] >= 0) out.f[vel_ids[i]] += face_f[i];
      }
    }
  }
  return out;
}

}  // namespace

CsrMatrix assemble_viscous(const DiscretePair& pair, const GeometricMap& map,
                           const ProblemConfig& config) {
  AssemblyRequest req;
  req.viscous = true;
  auto out = assemble_core(pair, map, config, req);
  return csr_from_triplets(pair.n_u, pair.n_u, std::move(out.A));
}

CsrMatrix assemble_divergence(const DiscretePair& pair, const GeometricMap& map,
                              const ProblemConfig& config) {
  AssemblyRequest req;
  req.divergence = true;
  auto out = assemble_core(pair, map, config, req);
  return csr_from_triplets(pair.n_p, pair.n_u, std::move(out.B));
}

CsrMatrix assemble_pressure_mass(const DiscretePair& pair, const GeometricMap& map,
                                 const ProblemConfig& config) {
  AssemblyRequest req;
  req.pressure_mass = true;
  auto out = assemble_core(pair, map, config, req);
  return csr_from_triplets(pair.n_p, pair.n_p, std::move(out.Q));
}

CsrMatrix assemble_velocity_mass(const DiscretePair& pair, const GeometricMap& map,
                                 const ProblemConfig& config) {
  AssemblyRequest req;
  req.velocity_mass = true;
  auto out = assemble_core(pair, map, config, req);
  return csr_from_triplets(pair.n_u, pair.n_u, std::move(out.Mv));
}

std::vector<double> assemble_rhs(const DiscretePair& pair, const GeometricMap& map,
                                 const ProblemConfig& config) {
  AssemblyRequest req;
  req.rhs = true;
  auto out = assemble_core(pair, map, config, req);
  if (out.f.empty()) out.f.assign(pair.n_u, 0.0);
  return std::move(out.f);
}

StokesSystem assemble_stokes(std::shared_ptr<const DiscretePair> pair,
                             std::shared_ptr<const GeometricMap> map,
                             const ProblemConfig& config) {
  AssemblyRequest req;
  req.viscous = req.divergence = req.pressure_mass = req.rhs = true;
  auto out = assemble_core(*pair, *map, config, req);

  StokesSystem sys;
  sys.A = csr_from_triplets(pair->n_u, pair->n_u, std::move(out.A));
  sys.B = csr_from_triplets(pair->n_p, pair->n_u, std::move(out.B));
  sys.Bt = sys.B.transposed();
  sys.Q = csr_from_triplets(pair->n_p, pair->n_p, std::move(out.Q));
  sys.Q_nu = sys.Q;
  const double scale = 1.0 / (2.0 * config.nu);
  for (auto& v : sys.Q_nu.vals) v *= scale;
  sys.f = out.f.empty() ? std::vector<double>(pair->n_u, 0.0) : std::move(out.f);
  sys.nu = config.nu;
  sys.c_pen = config.penalty(pair->k_prime);
  sys.pair = std::move(pair);
  sys.map = std::move(map);
  return sys;
}

void StokesSystem::apply(const double* x, double* y) const {
  const int nu_ = n_u();
  // y_u = A u + B^T p
  A.multiply(x, y);
  std::vector<double> tmp(nu_);
  Bt.multiply(x + nu_, tmp.data());
  for (int i = 0; i < nu_; ++i) y[i] += tmp[i];
  // y_p = B u
  B.multiply(x, y + nu_);
}

}  // namespace divstokes
