#pragma once

#include <vector>

namespace divstokes {

struct QuadratureRule {
  std::vector<double> points;   // on [0,1]
  std::vector<double> weights;  // sum to 1
};

// Gauss-Legendre rule with n points mapped to [0,1]; exact for
// polynomials of degree 2n-1.
QuadratureRule gauss_legendre(int n);

// The rule affinely mapped to [a,b]; weights scale by b-a.
QuadratureRule gauss_legendre(int n, double a, double b);

}  // namespace divstokes
