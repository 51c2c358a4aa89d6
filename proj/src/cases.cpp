#include "divstokes/cases.hpp"

#include <cmath>
#include <stdexcept>

#include "divstokes/quadrature.hpp"

namespace divstokes {

namespace {

// ---------------------------------------------------------------------
// Square domain. u = (f1 g2', -f1' g2) with f1 = e^x (x-1)^2 x^2 and
// g2 = (y^2-y)^2, a curl so div u = 0 and u = 0 on the boundary.
// ---------------------------------------------------------------------

struct Poly4 {
  // e^x h(x) with polynomial h, and the first three derivatives of the
  // product
  static void fx(double x, double& f, double& f1, double& f2, double& f3) {
    const double h = ((x - 2.0) * x + 1.0) * x * x;          // x^4 - 2x^3 + x^2
    const double h1 = ((4.0 * x - 6.0) * x + 2.0) * x;       // 4x^3 - 6x^2 + 2x
    const double h2 = (12.0 * x - 12.0) * x + 2.0;
    const double h3 = 24.0 * x - 12.0;
    const double ex = std::exp(x);
    f = ex * h;
    f1 = ex * (h + h1);
    f2 = ex * (h + 2.0 * h1 + h2);
    f3 = ex * (h + 3.0 * h1 + 3.0 * h2 + h3);
  }
  static void gy(double y, double& g, double& g1, double& g2, double& g3) {
    g = ((y - 2.0) * y + 1.0) * y * y;                       // (y^2-y)^2
    g1 = ((4.0 * y - 6.0) * y + 2.0) * y;
    g2 = (12.0 * y - 12.0) * y + 2.0;
    g3 = 24.0 * y - 12.0;
  }
};

Vec2 square_velocity(Vec2 x) {
  double f, f1, f2, f3, g, g1, g2, g3;
  Poly4::fx(x.x, f, f1, f2, f3);
  Poly4::gy(x.y, g, g1, g2, g3);
  return {f * g1, -f1 * g};
}

Mat2 square_velocity_gradient(Vec2 x) {
  double f, f1, f2, f3, g, g1, g2, g3;
  Poly4::fx(x.x, f, f1, f2, f3);
  Poly4::gy(x.y, g, g1, g2, g3);
  return Mat2{{{f1 * g1, f * g2}, {-f2 * g, -f1 * g1}}};
}

double square_pressure(Vec2 pt) {
  const double x = pt.x, w = (pt.y - 1.0) * pt.y;
  const double P = 456.0 + x * x * (228.0 - 5.0 * w) + 2.0 * x * (-228.0 + w) +
                   2.0 * x * x * x * (-36.0 + w) + x * x * x * x * (12.0 + w);
  return -424.0 + 156.0 * std::exp(1.0) + w * (-456.0 + std::exp(x) * P);
}

Vec2 square_pressure_gradient(Vec2 pt) {
  const double x = pt.x, y = pt.y, w = (y - 1.0) * y;
  const double P = 456.0 + x * x * (228.0 - 5.0 * w) + 2.0 * x * (-228.0 + w) +
                   2.0 * x * x * x * (-36.0 + w) + x * x * x * x * (12.0 + w);
  const double Px = 2.0 * x * (228.0 - 5.0 * w) + 2.0 * (-228.0 + w) +
                    6.0 * x * x * (-36.0 + w) + 4.0 * x * x * x * (12.0 + w);
  const double Pw = -5.0 * x * x + 2.0 * x + 2.0 * x * x * x + x * x * x * x;
  const double ex = std::exp(x);
  return {w * ex * (P + Px), (2.0 * y - 1.0) * (-456.0 + ex * (P + w * Pw))};
}

Vec2 square_body_force(Vec2 x, double nu) {
  double f, f1, f2, f3, g, g1, g2, g3;
  Poly4::fx(x.x, f, f1, f2, f3);
  Poly4::gy(x.y, g, g1, g2, g3);
  // div u = 0, so -div(2 nu grad_s u) = -nu lap(u)
  const double lap_u1 = f2 * g1 + f * g3;
  const double lap_u2 = -(f3 * g + f1 * g2);
  const Vec2 gp = square_pressure_gradient(x);
  return {-nu * lap_u1 + gp.x, -nu * lap_u2 + gp.y};
}

// ---------------------------------------------------------------------
// 1/8 annulus. psi(r, theta) = R(r) T(theta), R = (r^2-3r+2)^2,
// T = sin^2(4 theta); u = (psi_y, -psi_x).
// ---------------------------------------------------------------------

struct PolarPsi {
  double r, c, s;  // radius, cos/sin of theta
  double R, R1, R2, R3;
  double T, T1, T2, T3;

  explicit PolarPsi(Vec2 x) {
    r = std::hypot(x.x, x.y);
    c = x.x / r;
    s = x.y / r;
    const double q = (r - 3.0) * r + 2.0;   // r^2 - 3r + 2
    const double q1 = 2.0 * r - 3.0;
    R = q * q;
    R1 = 2.0 * q * q1;
    R2 = 2.0 * (q1 * q1 + 2.0 * q);
    R3 = 12.0 * q1;
    const double theta = std::atan2(x.y, x.x);
    T = std::sin(4.0 * theta);
    T = T * T;
    T1 = 4.0 * std::sin(8.0 * theta);
    T2 = 32.0 * std::cos(8.0 * theta);
    T3 = -256.0 * std::sin(8.0 * theta);
  }

  // Cartesian gradient of psi
  Vec2 grad() const {
    const double pr = R1 * T, pt = R * T1;
    return {pr * c - pt * s / r, pr * s + pt * c / r};
  }

  // Cartesian Hessian of psi
  void hessian(double& xx, double& xy, double& yy) const {
    const double pr = R1 * T, pt = R * T1;
    const double prr = R2 * T, prt = R1 * T1, ptt = R * T2;
    xx = prr * c * c - 2.0 * prt * c * s / r + ptt * s * s / (r * r) + pr * s * s / r +
         2.0 * pt * c * s / (r * r);
    xy = prr * c * s + prt * (c * c - s * s) / r - ptt * s * c / (r * r) - pr * c * s / r +
         pt * (s * s - c * c) / (r * r);
    yy = prr * s * s + 2.0 * prt * s * c / r + ptt * c * c / (r * r) + pr * c * c / r -
         2.0 * pt * c * s / (r * r);
  }

  // Cartesian gradient of lap(psi)
  Vec2 grad_laplacian() const {
    const double lr = R3 * T + R2 * T / r - R1 * T / (r * r) + R1 * T2 / (r * r) -
                      2.0 * R * T2 / (r * r * r);
    const double lt = R2 * T1 + R1 * T1 / r + R * T3 / (r * r);
    return {lr * c - lt * s / r, lr * s + lt * c / r};
  }
};

Vec2 annulus_velocity(Vec2 x) {
  const Vec2 g = PolarPsi(x).grad();
  return {g.y, -g.x};
}

Mat2 annulus_velocity_gradient(Vec2 x) {
  double xx, xy, yy;
  PolarPsi(x).hessian(xx, xy, yy);
  return Mat2{{{xy, yy}, {-xx, -xy}}};
}

double annulus_pressure(Vec2 x) { return std::sin(x.x) * std::exp(x.y); }

Vec2 annulus_pressure_gradient(Vec2 x) {
  return {std::cos(x.x) * std::exp(x.y), std::sin(x.x) * std::exp(x.y)};
}

// mean of the raw pressure over the annulus, for the zero-mean shift
double annulus_pressure_mean() {
  static const double mean = [] {
    const auto map = map_polar_annulus();
    const QuadratureRule rule = gauss_legendre(24);
    double integral = 0.0, volume = 0.0;
    for (std::size_t a = 0; a < rule.points.size(); ++a)
      for (std::size_t b = 0; b < rule.points.size(); ++b) {
        const MapJet jet = map->jet({rule.points[a], rule.points[b]});
        const double w = rule.weights[a] * rule.weights[b] * jet.det;
        integral += w * annulus_pressure(jet.x);
        volume += w;
      }
    return integral / volume;
  }();
  return mean;
}

Vec2 annulus_body_force(Vec2 x, double nu) {
  const Vec2 gl = PolarPsi(x).grad_laplacian();
  const Vec2 gp = annulus_pressure_gradient(x);
  // lap(u) = (lap(psi)_y, -lap(psi)_x)
  return {-nu * gl.y + gp.x, nu * gl.x + gp.y};
}

}  // namespace

CaseDefinition case_square(double nu) {
  CaseDefinition def;
  def.name = "square";
  def.map = map_square();
  def.nu = nu;
  def.has_exact = true;
  def.exact.velocity = square_velocity;
  def.exact.velocity_gradient = square_velocity_gradient;
  def.exact.pressure = square_pressure;
  def.body_force = [nu](Vec2 x) { return square_body_force(x, nu); };
  return def;
}

CaseDefinition case_annulus(bool nurbs_parameterization, double nu) {
  CaseDefinition def;
  def.name = nurbs_parameterization ? "annulus-nurbs" : "annulus-polar";
  def.map = nurbs_parameterization ? map_nurbs_annulus() : map_polar_annulus();
  def.nu = nu;
  def.has_exact = true;
  const double shift = annulus_pressure_mean();
  def.exact.velocity = annulus_velocity;
  def.exact.velocity_gradient = annulus_velocity_gradient;
  def.exact.pressure = [shift](Vec2 x) { return annulus_pressure(x) - shift; };
  def.body_force = [nu](Vec2 x) { return annulus_body_force(x, nu); };
  return def;
}

CaseDefinition case_cavity() {
  CaseDefinition def;
  def.name = "cavity";
  def.map = map_square();
  def.nu = 1.0;
  def.dirichlet_data = [](Side side, Vec2) -> Vec2 {
    if (side == Side::top) return {1.0, 0.0};
    return {0.0, 0.0};
  };
  return def;
}

CaseDefinition make_case(const std::string& name, double nu) {
  if (name == "square") return case_square(nu);
  if (name == "annulus-polar") return case_annulus(false, nu);
  if (name == "annulus-nurbs") return case_annulus(true, nu);
  if (name == "cavity") return case_cavity();
  throw std::invalid_argument("unknown case: " + name);
}

}  // namespace divstokes
