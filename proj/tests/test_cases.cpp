#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "divstokes/cases.hpp"

using namespace divstokes;

namespace {

// forward-difference oracles against the hand-coded derivatives
Mat2 fd_gradient(const std::function<Vec2(Vec2)>& f, Vec2 x, double step) {
  Mat2 g;
  for (int k = 0; k < 2; ++k) {
    Vec2 lo = x, hi = x;
    (k == 0 ? lo.x : lo.y) -= step;
    (k == 0 ? hi.x : hi.y) += step;
    const Vec2 a = f(lo), b = f(hi);
    g.m[0][k] = (b.x - a.x) / (2.0 * step);
    g.m[1][k] = (b.y - a.y) / (2.0 * step);
  }
  return g;
}

Vec2 fd_scalar_gradient(const std::function<double(Vec2)>& f, Vec2 x, double step) {
  return {(f({x.x + step, x.y}) - f({x.x - step, x.y})) / (2.0 * step),
          (f({x.x, x.y + step}) - f({x.x, x.y - step})) / (2.0 * step)};
}

Vec2 fd_laplacian(const std::function<Vec2(Vec2)>& f, Vec2 x, double step) {
  const Vec2 c = f(x);
  const Vec2 xp = f({x.x + step, x.y}), xm = f({x.x - step, x.y});
  const Vec2 yp = f({x.x, x.y + step}), ym = f({x.x, x.y - step});
  return {(xp.x + xm.x + yp.x + ym.x - 4.0 * c.x) / (step * step),
          (xp.y + xm.y + yp.y + ym.y - 4.0 * c.y) / (step * step)};
}

}  // namespace

TEST_CASE("square case: divergence-free, boundary values, derivative oracles") {
  const CaseDefinition def = case_square(1.0);
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> unif(0.02, 0.98);

  for (int trial = 0; trial < 200; ++trial) {
    const Vec2 x{unif(rng), unif(rng)};
    const Mat2 g = def.exact.velocity_gradient(x);
    // divergence-free by construction
    CHECK(std::abs(g.trace()) < 1e-12);
    // gradient matches finite differences
    const Mat2 fd = fd_gradient(def.exact.velocity, x, 1e-6);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        CHECK(g.m[a][b] == doctest::Approx(fd.m[a][b]).epsilon(2e-8));
    // pressure gradient folded into the body force: f + nu lap u = grad p
    const Vec2 f = def.body_force(x);
    const Vec2 lap = fd_laplacian(def.exact.velocity, x, 1e-4);
    const Vec2 gp = fd_scalar_gradient(def.exact.pressure, x, 1e-6);
    CHECK(f.x == doctest::Approx(-lap.x + gp.x).epsilon(1e-5));
    CHECK(f.y == doctest::Approx(-lap.y + gp.y).epsilon(1e-5));
  }

  // no-slip on all four edges
  for (int trial = 0; trial < 100; ++trial) {
    const double t = unif(rng);
    for (const Vec2 x : {Vec2{t, 0.0}, Vec2{t, 1.0}, Vec2{0.0, t}, Vec2{1.0, t}}) {
      const Vec2 u = def.exact.velocity(x);
      CHECK(std::abs(u.x) < 1e-14);
      CHECK(std::abs(u.y) < 1e-14);
    }
  }
}

TEST_CASE("square case: viscosity enters the body force linearly") {
  const CaseDefinition d1 = case_square(1.0);
  const CaseDefinition d2 = case_square(3.0);
  const Vec2 x{0.37, 0.61};
  const Vec2 f1 = d1.body_force(x), f2 = d2.body_force(x);
  const Vec2 gp = fd_scalar_gradient(d1.exact.pressure, x, 1e-6);
  // f(nu) - grad p is linear in nu
  CHECK(f2.x - gp.x == doctest::Approx(3.0 * (f1.x - gp.x)).epsilon(1e-6));
  CHECK(f2.y - gp.y == doctest::Approx(3.0 * (f1.y - gp.y)).epsilon(1e-6));
}

TEST_CASE("annulus case: divergence-free, whole-boundary no-slip, oracles") {
  const CaseDefinition def = case_annulus(false, 1.0);
  std::mt19937 rng(78);
  std::uniform_real_distribution<double> r_unif(1.05, 1.95);
  std::uniform_real_distribution<double> t_unif(0.02 * M_PI / 4, 0.98 * M_PI / 4);

  for (int trial = 0; trial < 200; ++trial) {
    const double r = r_unif(rng), theta = t_unif(rng);
    const Vec2 x{r * std::cos(theta), r * std::sin(theta)};
    const Mat2 g = def.exact.velocity_gradient(x);
    CHECK(std::abs(g.trace()) < 1e-12 * (1.0 + std::abs(g.m[0][0])));
    const Mat2 fd = fd_gradient(def.exact.velocity, x, 1e-6);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        CHECK(g.m[a][b] == doctest::Approx(fd.m[a][b]).epsilon(5e-7));
    const Vec2 f = def.body_force(x);
    const Vec2 lap = fd_laplacian(def.exact.velocity, x, 1e-4);
    const Vec2 gp = fd_scalar_gradient(def.exact.pressure, x, 1e-6);
    CHECK(f.x == doctest::Approx(-lap.x + gp.x).epsilon(1e-4));
    CHECK(f.y == doctest::Approx(-lap.y + gp.y).epsilon(1e-4));
  }

  // both velocity components vanish on the four boundary curves
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double t = unif(rng);
    const double angle = t * M_PI / 4.0;
    for (const Vec2 x : {Vec2{std::cos(angle), std::sin(angle)},
                         Vec2{2.0 * std::cos(angle), 2.0 * std::sin(angle)},
                         Vec2{1.0 + t, 0.0},
                         Vec2{(1.0 + t) * std::cos(M_PI / 4.0), (1.0 + t) * std::sin(M_PI / 4.0)}}) {
      const Vec2 u = def.exact.velocity(x);
      CHECK(std::abs(u.x) < 1e-12);
      CHECK(std::abs(u.y) < 1e-12);
    }
  }

  // pressure shifted to zero mean over the annulus
  // (quadrature over the polar map)
  const auto map = map_polar_annulus();
  double integral = 0.0;
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      const Vec2 xh{(a + 0.5) / 16.0, (b + 0.5) / 16.0};
      const MapJet jet = map->jet(xh);
      integral += jet.det / 256.0 * def.exact.pressure(jet.x);
    }
  CHECK(std::abs(integral) < 1e-3);  // midpoint-rule accuracy
}

TEST_CASE("cavity case: lid data only") {
  const CaseDefinition def = case_cavity();
  CHECK_FALSE(def.has_exact);
  CHECK(def.nu == 1.0);
  CHECK_FALSE(static_cast<bool>(def.body_force));
  const Vec2 lid = def.dirichlet_data(Side::top, {0.5, 1.0});
  CHECK(lid.x == 1.0);
  CHECK(lid.y == 0.0);
  for (const Side s : {Side::left, Side::right, Side::bottom}) {
    const Vec2 g = def.dirichlet_data(s, {0.5, 0.5});
    CHECK(g.x == 0.0);
    CHECK(g.y == 0.0);
  }
}

TEST_CASE("make_case dispatch") {
  CHECK(make_case("square", 1.0).name == "square");
  CHECK(make_case("annulus-polar", 1.0).map->kind() == GeometricMap::Kind::polar_annulus);
  CHECK(make_case("annulus-nurbs", 1.0).map->kind() == GeometricMap::Kind::nurbs_annulus);
  CHECK(make_case("cavity", 1.0).name == "cavity");
  CHECK_THROWS_AS(make_case("torus", 1.0), std::invalid_argument);
}
