#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "divstokes/dense.hpp"
#include "divstokes/quadrature.hpp"
#include "divstokes/spline.hpp"

using namespace divstokes;

TEST_CASE("uniform open knots: smallest nontrivial case") {
  const KnotVector kv = make_uniform_open_knots(2, 2, 1);
  CHECK(kv.knots == std::vector<double>{0, 0, 0, 0.5, 1, 1, 1});
  CHECK(kv.basis_count() == 4);
  CHECK(kv.regularities.front() == -1);
  CHECK(kv.regularities.back() == -1);
}

TEST_CASE("uniform open knots: dimension formula") {
  CHECK(UnivariateSpace(make_uniform_open_knots(2, 8, 1)).size() == 10);
  CHECK(UnivariateSpace(make_uniform_open_knots(3, 8, 2)).size() == 11);
  CHECK(UnivariateSpace(make_uniform_open_knots(1, 4, 0)).size() == 5);
  // sum of multiplicities = n + p + 1
  for (int p = 1; p <= 4; ++p)
    for (int reg = -1; reg <= p - 1; ++reg) {
      const KnotVector kv = make_uniform_open_knots(p, 6, reg);
      int total = 0;
      for (const int r : kv.multiplicities) total += r;
      CHECK(total == kv.basis_count() + p + 1);
    }
}

TEST_CASE("invalid regularity rejected") {
  CHECK_THROWS_AS(make_uniform_open_knots(2, 4, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_uniform_open_knots(2, 4, -2), std::invalid_argument);
  CHECK_THROWS_AS(make_uniform_open_knots(2, 0, 1), std::invalid_argument);
}

TEST_CASE("degree-1 hat functions") {
  const UnivariateSpace space(make_knot_vector(1, {0.0, 0.5, 1.0}, {2, 1, 2}));
  REQUIRE(space.size() == 3);
  double table[2];
  const int first = space.eval(0.25, 0, table);
  CHECK(first == 0);
  CHECK(table[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(table[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("domain error outside [0,1]") {
  const UnivariateSpace space(make_uniform_open_knots(2, 4, 1));
  double table[3];
  CHECK_THROWS_AS(space.eval(-0.1, 0, table), std::domain_error);
  CHECK_THROWS_AS(space.eval(1.1, 0, table), std::domain_error);
}

TEST_CASE("partition of unity and nonnegativity at 1000 random points") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (const auto& [p, ne, reg] : {std::tuple{2, 8, 1}, {3, 8, 2}, {4, 5, 3}, {3, 6, 0}}) {
    const UnivariateSpace space(make_uniform_open_knots(p, ne, reg));
    for (int trial = 0; trial < 1000; ++trial) {
      const double x = unif(rng);
      const auto [first, table] = space.eval(x, 0);
      double sum = 0.0;
      for (int j = 0; j <= p; ++j) {
        sum += table[j];
        CHECK(table[j] >= -1e-14);
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("local support: evaluation window matches the knot support") {
  const UnivariateSpace space(make_uniform_open_knots(3, 8, 2));
  const auto& knots = space.knot_vector().knots;
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double x = unif(rng);
    const auto [first, table] = space.eval(x, 0);
    for (int i = 0; i < space.size(); ++i) {
      const bool supported = i >= first && i <= first + 3;
      if (!supported) {
        // basis i vanishes outside [knots[i], knots[i+p+1]]; x must be outside
        const bool inside = x > knots[i] && x < knots[i + 3 + 1];
        CHECK_FALSE(inside);
      }
    }
  }
}

TEST_CASE("first derivative matches centered finite differences") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  const UnivariateSpace space(make_uniform_open_knots(3, 8, 2));
  for (int trial = 0; trial < 100; ++trial) {
    const double x = unif(rng);
    const double step = 1e-6;
    const auto [f0, d] = space.eval(x, 1);
    const auto [f1, lo] = space.eval(x - step, 0);
    const auto [f2, hi] = space.eval(x + step, 0);
    if (f1 != f0 || f2 != f0) continue;  // straddles a knot
    for (int j = 0; j <= 3; ++j) {
      const double fd = (hi[j] - lo[j]) / (2.0 * step);
      CHECK(d[4 + j] == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("regularity: derivative jumps across interior breakpoints") {
  // p=3, interior multiplicity 2 -> alpha = 1: first derivative continuous,
  // second jumps
  const UnivariateSpace space(make_uniform_open_knots(3, 4, 1));
  const double zeta = 0.5, delta = 1e-12;
  const int alpha = 1;
  const auto [fl, left] = space.eval(zeta - delta, alpha + 1);
  const auto [fr, right] = space.eval(zeta, alpha + 1);
  // compare the full spline with random coefficients
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> coef(space.size());
  for (auto& c : coef) c = unif(rng);

  auto eval_deriv = [&](int order, int first, const std::vector<double>& table) {
    double acc = 0.0;
    for (int j = 0; j <= 3; ++j) acc += coef[first + j] * table[order * 4 + j];
    return acc;
  };
  const double j1 =
      std::abs(eval_deriv(alpha, fl, left) - eval_deriv(alpha, fr, right));
  const double s1 = std::max(std::abs(eval_deriv(alpha, fr, right)), 1.0);
  CHECK(j1 / s1 < 1e-8);
  const double j2 =
      std::abs(eval_deriv(alpha + 1, fl, left) - eval_deriv(alpha + 1, fr, right));
  const double s2 = std::max(std::abs(eval_deriv(alpha + 1, fr, right)), 1.0);
  CHECK(j2 / s2 > 1e-3);
}

TEST_CASE("lower_degree_space dimensions and projection of derivatives") {
  const UnivariateSpace space(make_uniform_open_knots(3, 8, 2));
  const UnivariateSpace lower = lower_degree_space(space);
  CHECK(lower.degree() == 2);
  CHECK(lower.size() == 10);
  CHECK(space.size() == 11);

  const UnivariateSpace hats(make_uniform_open_knots(1, 4, 0));
  const UnivariateSpace consts = lower_degree_space(hats);
  CHECK(consts.degree() == 0);
  CHECK(consts.size() == 4);

  CHECK_THROWS_AS(lower_degree_space(consts), std::invalid_argument);

  // derivative of a random spline lies in the lower space: least-squares
  // fit over dense samples leaves no residual
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  std::vector<double> coef(space.size());
  for (auto& c : coef) c = unif(rng);

  const int m = 400;
  DenseMatrix basis(m, lower.size());
  std::vector<double> rhs(m);
  for (int s = 0; s < m; ++s) {
    const double x = (s + 0.5) / m;
    const auto [fd, dtab] = space.eval(x, 1);
    double der = 0.0;
    for (int j = 0; j <= 3; ++j) der += coef[fd + j] * dtab[4 + j];
    rhs[s] = der;
    const auto [fl, ltab] = lower.eval(x, 0);
    for (int j = 0; j <= 2; ++j) basis(s, fl + j) = ltab[j];
  }
  const auto fit = dense_least_squares(basis, rhs);
  double worst = 0.0;
  for (int s = 0; s < m; ++s) {
    double val = 0.0;
    for (int k = 0; k < lower.size(); ++k) val += basis(s, k) * fit[k];
    worst = std::max(worst, std::abs(val - rhs[s]));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  for (int n = 1; n <= 10; ++n) {
    const QuadratureRule rule = gauss_legendre(n);
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double acc = 0.0;
      for (std::size_t q = 0; q < rule.points.size(); ++q)
        acc += rule.weights[q] * std::pow(rule.points[q], deg);
      CHECK(acc == doctest::Approx(1.0 / (deg + 1)).epsilon(1e-13));
    }
  }
}
