#pragma once

#include <utility>
#include <vector>

namespace divstokes {

/// Open knot vector on [0,1]: degree, expanded knots, and the
/// breakpoint/multiplicity/regularity description they expand from.
struct KnotVector {
  int degree = 0;
  std::vector<double> knots;         // nondecreasing, open (end multiplicity p+1)
  std::vector<double> breakpoints;   // strictly increasing, first 0, last 1
  std::vector<int> multiplicities;   // per breakpoint, 1..p+1 interior
  std::vector<int> regularities;     // degree - multiplicity per breakpoint

  int basis_count() const { return static_cast<int>(knots.size()) - degree - 1; }
  int element_count() const { return static_cast<int>(breakpoints.size()) - 1; }
};

// Builds the open knot vector with breakpoints {0, 1/n_elem, ..., 1} and
// uniform interior multiplicity degree - reg. reg = -1 gives a
// discontinuous interior. Throws std::invalid_argument for reg outside
// [-1, degree-1] or n_elem < 1.
KnotVector make_uniform_open_knots(int degree, int n_elem, int reg);

// General constructor from breakpoints/multiplicities; validates the open
// knot invariants.
KnotVector make_knot_vector(int degree, std::vector<double> breakpoints,
                            std::vector<int> multiplicities);

/// Univariate B-spline space over an open knot vector. Evaluation returns
/// only the degree+1 functions supported at the query point (bandwidth
/// form). Immutable after construction.
class UnivariateSpace {
 public:
  explicit UnivariateSpace(KnotVector kv);

  int degree() const { return kv_.degree; }
  int size() const { return n_; }
  int element_count() const { return kv_.element_count(); }
  const KnotVector& knot_vector() const { return kv_; }

  // Index of the first of the degree+1 basis functions supported on an
  // element interior.
  int first_support(int element) const { return element_first_[element]; }

  // Knot span containing x; right limit at interior knots, left at x = 1.
  int find_span(double x) const;

  // Values and derivatives of the degree+1 supported basis functions.
  // table is row-major (max_deriv+1) x (degree+1): table[k*(p+1)+j] is the
  // k-th derivative of basis (first+j). Rows of order > degree are zero.
  // Returns the first supported basis index. Throws std::domain_error for
  // x outside [0,1].
  int eval(double x, int max_deriv, double* table) const;

  // Convenience wrapper allocating the table.
  std::pair<int, std::vector<double>> eval(double x, int max_deriv) const;

 private:
  KnotVector kv_;
  int n_;
  std::vector<int> element_first_;
};

// Space containing the derivatives: degree-1, regularities reduced by one
// on the same breakpoints. Requires degree >= 1 and interior regularity
// >= 0; throws std::invalid_argument otherwise.
UnivariateSpace lower_degree_space(const UnivariateSpace& space);

}  // namespace divstokes
