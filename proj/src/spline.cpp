#include "divstokes/spline.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace divstokes {

KnotVector make_knot_vector(int degree, std::vector<double> breakpoints,
                            std::vector<int> multiplicities) {
  if (degree < 0) throw std::invalid_argument("knot vector: negative degree");
  const auto m = breakpoints.size();
  if (m < 2 || multiplicities.size() != m)
    throw std::invalid_argument("knot vector: need >= 2 breakpoints with matching multiplicities");
  for (std::size_t j = 1; j < m; ++j)
    if (!(breakpoints[j] > breakpoints[j - 1]))
      throw std::invalid_argument("knot vector: breakpoints not strictly increasing");
  if (multiplicities.front() != degree + 1 || multiplicities.back() != degree + 1)
    throw std::invalid_argument("knot vector: not open (end multiplicity must be degree+1)");
  for (std::size_t j = 1; j + 1 < m; ++j)
    if (multiplicities[j] < 1 || multiplicities[j] > degree + 1)
      throw std::invalid_argument("knot vector: interior multiplicity out of [1, degree+1]");

  KnotVector kv;
  kv.degree = degree;
  kv.breakpoints = std::move(breakpoints);
  kv.multiplicities = std::move(multiplicities);
  kv.regularities.resize(m);
  for (std::size_t j = 0; j < m; ++j) kv.regularities[j] = degree - kv.multiplicities[j];
  for (std::size_t j = 0; j < m; ++j)
    kv.knots.insert(kv.knots.end(), kv.multiplicities[j], kv.breakpoints[j]);
  return kv;
}

KnotVector make_uniform_open_knots(int degree, int n_elem, int reg) {
  if (n_elem < 1) throw std::invalid_argument("uniform knots: n_elem must be >= 1");
  if (reg < -1 || reg > degree - 1)
    throw std::invalid_argument("uniform knots: interior regularity must lie in [-1, degree-1]");
  std::vector<double> breaks(n_elem + 1);
  for (int j = 0; j <= n_elem; ++j) breaks[j] = static_cast<double>(j) / n_elem;
  std::vector<int> mult(n_elem + 1, degree - reg);
  mult.front() = mult.back() = degree + 1;
  return make_knot_vector(degree, std::move(breaks), std::move(mult));
}

UnivariateSpace::UnivariateSpace(KnotVector kv) : kv_(std::move(kv)) {
  n_ = kv_.basis_count();
  if (n_ < kv_.degree + 1) throw std::invalid_argument("univariate space: basis count < degree+1");
  element_first_.resize(kv_.element_count());
  for (int e = 0; e < kv_.element_count(); ++e) {
    const double mid = 0.5 * (kv_.breakpoints[e] + kv_.breakpoints[e + 1]);
    element_first_[e] = find_span(mid) - kv_.degree;
  }
}

int UnivariateSpace::find_span(double x) const {
  const auto& t = kv_.knots;
  const int p = kv_.degree;
  if (x >= t[n_]) return n_ - 1;  // left limit at the right end
  // largest span index s with t[s] <= x; repeated knots resolve to the last
  // copy, which gives the right-limit convention.
  auto it = std::upper_bound(t.begin() + p, t.begin() + n_ + 1, x);
  return static_cast<int>(it - t.begin()) - 1;
}

int UnivariateSpace::eval(double x, int max_deriv, double* table) const {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("spline eval: x outside [0,1]");
  const int p = kv_.degree;
  const int span = find_span(x);
  const double* t = kv_.knots.data();
  const int cols = p + 1;

  // Cox-de Boor with derivatives (banded form).
  std::vector<double> ndu((p + 1) * (p + 1)), left(p + 1), right(p + 1);
  auto NDU = [&](int i, int j) -> double& { return ndu[i * (p + 1) + j]; };
  NDU(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = x - t[span + 1 - j];
    right[j] = t[span + j] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      NDU(j, r) = right[r + 1] + left[j - r];
      const double temp = NDU(r, j - 1) / NDU(j, r);
      NDU(r, j) = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    NDU(j, j) = saved;
  }

  std::memset(table, 0, sizeof(double) * cols * (max_deriv + 1));
  for (int j = 0; j <= p; ++j) table[j] = NDU(j, p);

  const int nk = std::min(max_deriv, p);
  std::vector<double> a(2 * (p + 1));
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a[0] = 1.0;
    for (int k = 1; k <= nk; ++k) {
      double d = 0.0;
      const int rk = r - k, pk = p - k;
      if (r >= k) {
        a[s2 * (p + 1)] = a[s1 * (p + 1)] / NDU(pk + 1, rk);
        d = a[s2 * (p + 1)] * NDU(rk, pk);
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a[s2 * (p + 1) + j] = (a[s1 * (p + 1) + j] - a[s1 * (p + 1) + j - 1]) / NDU(pk + 1, rk + j);
        d += a[s2 * (p + 1) + j] * NDU(rk + j, pk);
      }
      if (r <= pk) {
        a[s2 * (p + 1) + k] = -a[s1 * (p + 1) + k - 1] / NDU(pk + 1, r);
        d += a[s2 * (p + 1) + k] * NDU(r, pk);
      }
      table[k * cols + r] = d;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= nk; ++k) {
    for (int j = 0; j <= p; ++j) table[k * cols + j] *= factor;
    factor *= p - k;
  }
  return span - p;
}

std::pair<int, std::vector<double>> UnivariateSpace::eval(double x, int max_deriv) const {
  std::vector<double> table((max_deriv + 1) * (kv_.degree + 1));
  const int first = eval(x, max_deriv, table.data());
  return {first, std::move(table)};
}

UnivariateSpace lower_degree_space(const UnivariateSpace& space) {
  const KnotVector& kv = space.knot_vector();
  if (kv.degree < 1) throw std::invalid_argument("lower_degree_space: degree 0 unsupported");
  const auto m = kv.breakpoints.size();
  for (std::size_t j = 1; j + 1 < m; ++j)
    if (kv.regularities[j] < 0)
      throw std::invalid_argument("lower_degree_space: interior regularity must be >= 0");
  std::vector<int> mult(m, kv.degree);  // same alpha-1 = (degree-1) - mult
  for (std::size_t j = 1; j + 1 < m; ++j) mult[j] = kv.multiplicities[j];
  return UnivariateSpace(make_knot_vector(kv.degree - 1, kv.breakpoints, std::move(mult)));
}

}  // namespace divstokes
