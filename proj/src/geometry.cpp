#include "divstokes/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "divstokes/quadrature.hpp"

namespace divstokes {

namespace {

class IdentityMap final : public GeometricMap {
 public:
  Kind kind() const override { return Kind::identity; }
  MapJet jet(Vec2 xhat) const override {
    MapJet j;
    j.x = xhat;
    j.jac = Mat2{{{1.0, 0.0}, {0.0, 1.0}}};
    j.det = 1.0;
    return j;
  }
};

class PolarAnnulusMap final : public GeometricMap {
 public:
  Kind kind() const override { return Kind::polar_annulus; }
  MapJet jet(Vec2 xhat) const override {
    constexpr double a = M_PI / 4.0;
    const double r = 1.0 + xhat.x;
    const double c = std::cos(a * xhat.y), s = std::sin(a * xhat.y);
    MapJet j;
    j.x = {r * c, r * s};
    j.jac = Mat2{{{c, -a * r * s}, {s, a * r * c}}};
    j.det = a * r;
    j.djac[0] = Mat2{{{0.0, -a * s}, {0.0, a * c}}};
    j.djac[1] = Mat2{{{-a * s, -a * a * r * c}, {a * c, -a * a * r * s}}};
    return j;
  }
};

// Quadratic rational arc in the angular direction, linear in the radius.
// Weighted control points and the weight function are tensor splines;
// the quotient rule supplies F and its first two derivative orders.
class NurbsAnnulusMap final : public GeometricMap {
 public:
  NurbsAnnulusMap()
      : radial_(make_uniform_open_knots(1, 1, 0)),
        angular_(make_uniform_open_knots(2, 1, 1)) {
    constexpr double phi = M_PI / 4.0;
    const double w1 = std::cos(phi / 2.0);
    const Vec2 arc[3] = {{1.0, 0.0}, {1.0, std::tan(phi / 2.0)}, {std::cos(phi), std::sin(phi)}};
    const double w[3] = {1.0, w1, 1.0};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j) {
        const double radius = 1.0 + i;
        px_[i][j] = w[j] * radius * arc[j].x;
        py_[i][j] = w[j] * radius * arc[j].y;
        pw_[i][j] = w[j];
      }
  }

  Kind kind() const override { return Kind::nurbs_annulus; }

  MapJet jet(Vec2 xhat) const override {
    double bs[2 * 3], bt[3 * 3];  // (deriv order) x (degree+1) tables
    const int fs = radial_.eval(xhat.x, 1, bs);
    const int ft = angular_.eval(xhat.y, 2, bt);

    // nx[k][l] = d^{k+l} N_x / ds^k dt^l, likewise ny, w; orders k+l <= 2.
    double nx[3][3] = {}, ny[3][3] = {}, w[3][3] = {};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j) {
        const int gi = fs + i, gj = ft + j;
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 3 - k; ++l) {
            const double basis = bs[k * 2 + i] * bt[l * 3 + j];
            nx[k][l] += basis * px_[gi][gj];
            ny[k][l] += basis * py_[gi][gj];
            w[k][l] += basis * pw_[gi][gj];
          }
      }

    auto rational = [&](const double n[3][3], double& f, double g[2], double h[2][2]) {
      f = n[0][0] / w[0][0];
      g[0] = (n[1][0] - f * w[1][0]) / w[0][0];
      g[1] = (n[0][1] - f * w[0][1]) / w[0][0];
      const double nkl[2][2] = {{n[2][0], n[1][1]}, {n[1][1], n[0][2]}};
      const double wkl[2][2] = {{w[2][0], w[1][1]}, {w[1][1], w[0][2]}};
      const double wk[2] = {w[1][0], w[0][1]};
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          h[k][l] = (nkl[k][l] - g[k] * wk[l] - g[l] * wk[k] - f * wkl[k][l]) / w[0][0];
    };

    double fx, fy, gx[2], gy[2], hx[2][2], hy[2][2];
    rational(nx, fx, gx, hx);
    rational(ny, fy, gy, hy);

    MapJet j;
    j.x = {fx, fy};
    j.jac = Mat2{{{gx[0], gx[1]}, {gy[0], gy[1]}}};
    j.det = j.jac.det();
    for (int k = 0; k < 2; ++k) j.djac[k] = Mat2{{{hx[0][k], hx[1][k]}, {hy[0][k], hy[1][k]}}};
    return j;
  }

 private:
  UnivariateSpace radial_, angular_;
  double px_[2][3], py_[2][3], pw_[2][3];
};

}  // namespace

std::shared_ptr<const GeometricMap> map_square() { return std::make_shared<IdentityMap>(); }
std::shared_ptr<const GeometricMap> map_polar_annulus() {
  return std::make_shared<PolarAnnulusMap>();
}
std::shared_ptr<const GeometricMap> map_nurbs_annulus() {
  return std::make_shared<NurbsAnnulusMap>();
}

PiolaField piola_push(const MapJet& jet, Vec2 vhat, const Mat2& gradhat, double tol) {
  const double J = jet.det;
  if (!(J > tol)) throw std::domain_error("piola_push: singular geometric map");
  const Mat2 inv = jet.jac.inverse();

  PiolaField out;
  const Vec2 Fv = jet.jac * vhat;
  out.v = (1.0 / J) * Fv;

  // d v / d xhat_k, then chain rule to physical coordinates.
  Vec2 dv[2];
  for (int k = 0; k < 2; ++k) {
    const double dJ = J * (inv * jet.djac[k]).trace();
    const Vec2 ghat_k{gradhat.m[0][k], gradhat.m[1][k]};
    dv[k] = (1.0 / J) * (jet.djac[k] * vhat + jet.jac * ghat_k) - (dJ / (J * J)) * Fv;
  }
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const double da = (a == 0) ? dv[0].x : dv[0].y;
      const double db = (a == 0) ? dv[1].x : dv[1].y;
      out.grad.m[a][b] = da * inv.m[0][b] + db * inv.m[1][b];
    }
  out.div = out.grad.trace();
  return out;
}

double integral_push(const MapJet& jet, double qhat, double tol) {
  if (!(jet.det > tol)) throw std::domain_error("integral_push: singular geometric map");
  return qhat / jet.det;
}

std::vector<BoundaryFace> boundary_faces(const GeometricMap& map, const ParametricMesh& mesh,
                                         Side side, int quad_points) {
  const bool vertical = (side == Side::left || side == Side::right);  // runs along y
  const auto& breaks = vertical ? mesh.breaks_y : mesh.breaks_x;
  const int n_faces = static_cast<int>(breaks.size()) - 1;
  const QuadratureRule ref = gauss_legendre(quad_points);

  Vec2 nhat{0.0, 0.0};
  switch (side) {
    case Side::left: nhat = {-1.0, 0.0}; break;
    case Side::right: nhat = {1.0, 0.0}; break;
    case Side::bottom: nhat = {0.0, -1.0}; break;
    case Side::top: nhat = {0.0, 1.0}; break;
  }

  std::vector<BoundaryFace> faces;
  faces.reserve(n_faces);
  for (int f = 0; f < n_faces; ++f) {
    BoundaryFace face;
    face.side = side;
    switch (side) {
      case Side::left: face.element = f * mesh.nx_elem; break;
      case Side::right: face.element = f * mesh.nx_elem + mesh.nx_elem - 1; break;
      case Side::bottom: face.element = f; break;
      case Side::top: face.element = (mesh.ny_elem - 1) * mesh.nx_elem + f; break;
    }
    const double t0 = breaks[f], t1 = breaks[f + 1];
    for (int q = 0; q < quad_points; ++q) {
      BoundaryFace::Node node;
      const double t = t0 + (t1 - t0) * ref.points[q];
      node.weight = (t1 - t0) * ref.weights[q];
      switch (side) {
        case Side::left: node.xhat = {0.0, t}; break;
        case Side::right: node.xhat = {1.0, t}; break;
        case Side::bottom: node.xhat = {t, 0.0}; break;
        case Side::top: node.xhat = {t, 1.0}; break;
      }
      node.jet = map.jet(node.xhat);
      const Vec2 tangent = vertical ? Vec2{node.jet.jac.m[0][1], node.jet.jac.m[1][1]}
                                    : Vec2{node.jet.jac.m[0][0], node.jet.jac.m[1][0]};
      node.surf_jac = std::sqrt(dot(tangent, tangent));
      const Vec2 nt = node.jet.jac.inverse().transpose() * nhat;
      node.normal = (1.0 / std::sqrt(dot(nt, nt))) * nt;
      face.h_F += node.weight * node.surf_jac;
      face.nodes.push_back(node);
    }
    faces.push_back(std::move(face));
  }
  return faces;
}

}  // namespace divstokes
