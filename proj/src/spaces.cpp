#include "divstokes/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "divstokes/dense.hpp"
#include "divstokes/quadrature.hpp"

namespace divstokes {

ParametricMesh make_mesh(const KnotVector& kx, const KnotVector& ky) {
  ParametricMesh mesh;
  mesh.breaks_x = kx.breakpoints;
  mesh.breaks_y = ky.breakpoints;
  mesh.nx_elem = kx.element_count();
  mesh.ny_elem = ky.element_count();
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto el = mesh.element(e);
    const double dx = el.x1 - el.x0, dy = el.y1 - el.y0;
    const double diam = std::hypot(dx, dy);
    mesh.h = std::max(mesh.h, diam);
    mesh.shape_ratio = std::max(mesh.shape_ratio, diam / std::min(dx, dy));
  }
  return mesh;
}

DiscretePair build_pair(int k_prime, int n_elem) {
  if (k_prime < 1)
    throw std::invalid_argument("build_pair: k' must be >= 1 for an H1-conforming velocity");
  if (n_elem < 2) throw std::invalid_argument("build_pair: need at least 2 elements per direction");
  const int p = k_prime + 1;

  // Maximal regularity in every direction; derivatives drop one order.
  UnivariateSpace high(make_uniform_open_knots(p, n_elem, p - 1));
  UnivariateSpace low(make_uniform_open_knots(p - 1, n_elem, p - 2));

  DiscretePair pair{k_prime,
                    p,
                    n_elem,
                    TensorSpace(high, low),   // vel_x: degrees (p, p-1)
                    TensorSpace(low, high),   // vel_y: degrees (p-1, p)
                    TensorSpace(low, low),    // pressure: degrees (p-1, p-1)
                    make_mesh(high.knot_vector(), high.knot_vector()),
                    {},
                    {},
                    {},
                    {},
                    0,
                    0,
                    0,
                    0};

  pair.n_p = pair.pressure.dim();

  // vel_x basis (i,j) has nonzero normal trace on the x = 0/1 sides iff
  // i is first or last; analogously for vel_y in y.
  pair.velx_id.assign(pair.vel_x.dim(), -1);
  int next = 0;
  for (int j = 0; j < pair.vel_x.ny(); ++j)
    for (int i = 0; i < pair.vel_x.nx(); ++i) {
      const int flat = pair.vel_x.flatten(i, j);
      if (i == 0 || i == pair.vel_x.nx() - 1)
        pair.constrained_velx.push_back(flat);
      else
        pair.velx_id[flat] = next++;
    }
  pair.n_velx = next;

  pair.vely_id.assign(pair.vel_y.dim(), -1);
  for (int j = 0; j < pair.vel_y.ny(); ++j)
    for (int i = 0; i < pair.vel_y.nx(); ++i) {
      const int flat = pair.vel_y.flatten(i, j);
      if (j == 0 || j == pair.vel_y.ny() - 1)
        pair.constrained_vely.push_back(flat);
      else
        pair.vely_id[flat] = next++;
    }
  pair.n_vely = next - pair.n_velx;
  pair.n_u = next;
  return pair;
}

ElementDofs element_dof_map(const DiscretePair& pair, int element) {
  if (element < 0 || element >= pair.mesh.element_count())
    throw std::out_of_range("element_dof_map: element index out of range");
  const auto el = pair.mesh.element(element);
  ElementDofs dofs;

  auto collect = [&](const TensorSpace& ts, const std::vector<int>* ids, std::vector<int>& out,
                     std::vector<int>& tensor_out) {
    const int fx = ts.space_x().first_support(el.ix);
    const int fy = ts.space_y().first_support(el.iy);
    const int px = ts.space_x().degree(), py = ts.space_y().degree();
    for (int j = fy; j <= fy + py; ++j)
      for (int i = fx; i <= fx + px; ++i) {
        const int flat = ts.flatten(i, j);
        tensor_out.push_back(flat);
        out.push_back(ids ? (*ids)[flat] : flat);
      }
  };
  collect(pair.vel_x, &pair.velx_id, dofs.vel_x, dofs.tensor_vel_x);
  collect(pair.vel_y, &pair.vely_id, dofs.vel_y, dofs.tensor_vel_y);
  collect(pair.pressure, nullptr, dofs.pressure, dofs.tensor_pressure);
  return dofs;
}

double divergence_image_check(const DiscretePair& pair) {
  const int q = pair.p + 1;
  const QuadratureRule ref = gauss_legendre(q);
  const int n_samples = pair.mesh.element_count() * q * q;

  DenseMatrix press(n_samples, pair.n_p);
  DenseMatrix dive(n_samples, pair.n_u);

  const int pxk = pair.vel_x.space_x().degree(), pxl = pair.vel_x.space_y().degree();
  const int pyk = pair.vel_y.space_x().degree(), pyl = pair.vel_y.space_y().degree();
  const int pk = pair.pressure.space_x().degree();

  std::vector<double> bx((pxk + 1) * 2), by(pxl + 1), cx(pyk + 1), cy((pyl + 1) * 2);
  std::vector<double> qx(pk + 1), qy(pk + 1);

  int sample = 0;
  for (int e = 0; e < pair.mesh.element_count(); ++e) {
    const auto el = pair.mesh.element(e);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b, ++sample) {
        const double x = el.x0 + (el.x1 - el.x0) * ref.points[a];
        const double y = el.y0 + (el.y1 - el.y0) * ref.points[b];

        const int fbx = pair.vel_x.space_x().eval(x, 1, bx.data());
        const int fby = pair.vel_x.space_y().eval(y, 0, by.data());
        for (int j = 0; j <= pxl; ++j)
          for (int i = 0; i <= pxk; ++i) {
            const int id = pair.velx_id[pair.vel_x.flatten(fbx + i, fby + j)];
            if (id >= 0) dive(sample, id) = bx[(pxk + 1) + i] * by[j];
          }
        const int fcx = pair.vel_y.space_x().eval(x, 0, cx.data());
        const int fcy = pair.vel_y.space_y().eval(y, 1, cy.data());
        for (int j = 0; j <= pyl; ++j)
          for (int i = 0; i <= pyk; ++i) {
            const int id = pair.vely_id[pair.vel_y.flatten(fcx + i, fcy + j)];
            if (id >= 0) dive(sample, id) = cx[i] * cy[(pyl + 1) + j];
          }
        const int fqx = pair.pressure.space_x().eval(x, 0, qx.data());
        const int fqy = pair.pressure.space_y().eval(y, 0, qy.data());
        for (int j = 0; j <= pk; ++j)
          for (int i = 0; i <= pk; ++i)
            press(sample, pair.pressure.flatten(fqx + i, fqy + j)) = qx[i] * qy[j];
      }
  }

  double worst = 0.0;
  std::vector<double> rhs(n_samples);
  for (int dof = 0; dof < pair.n_u; ++dof) {
    for (int s = 0; s < n_samples; ++s) rhs[s] = dive(s, dof);
    const std::vector<double> coef = dense_least_squares(press, rhs);
    for (int s = 0; s < n_samples; ++s) {
      double fit = 0.0;
      for (int k = 0; k < pair.n_p; ++k) fit += press(s, k) * coef[k];
      worst = std::max(worst, std::abs(fit - rhs[s]));
    }
  }
  return worst;
}

}  // namespace divstokes
