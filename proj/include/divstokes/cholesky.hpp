#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "divstokes/csr.hpp"

namespace divstokes {

/// Nonpositive pivot during a factorization; row carries the failing
/// index in the ordering the factorization saw.
struct FactorBreakdown : std::runtime_error {
  int row;
  explicit FactorBreakdown(int r)
      : std::runtime_error("factorization breakdown: nonpositive pivot at row " +
                           std::to_string(r)),
        row(r) {}
};

/// Complete sparse Cholesky on the envelope (skyline) of the matrix.
/// The envelope is closed under elimination, so the factor is exact; an
/// RCM pre-ordering keeps it tight. Factor and solves share no state, so
/// a factored object is safe for concurrent solves.
class ProfileCholesky {
 public:
  // Factors P A P^T for the given symmetric ordering (pass the identity
  // to skip reordering). Throws FactorBreakdown if A is not positive
  // definite.
  ProfileCholesky(const CsrMatrix& a, std::vector<int> perm);

  // x = A^{-1} b through the permuted factor.
  void solve(const double* b, double* x) const;
  std::vector<double> solve(const std::vector<double>& b) const;

  int size() const { return n_; }
  std::int64_t profile_nnz() const { return static_cast<std::int64_t>(vals_.size()); }

 private:
  int n_ = 0;
  std::vector<int> perm_, inv_perm_;
  std::vector<int> first_;               // first column in the envelope per row
  std::vector<std::int64_t> offset_;     // start of each row segment in vals_
  std::vector<double> vals_;             // row segments [first_[i], i]
};

/// Incomplete Cholesky with zero fill-in: L keeps exactly the lower
/// pattern of A and (L L^T) matches A on that pattern.
struct Ic0Factor {
  CsrMatrix lower;  // lower triangle including the diagonal

  // z = (L L^T)^{-1} r
  void solve(const double* r, double* z) const;
  std::vector<double> solve(const std::vector<double>& r) const;
};

// Throws FactorBreakdown on a nonpositive pivot (no diagonal shift or
// repair is attempted).
Ic0Factor ic0(const CsrMatrix& a);

}  // namespace divstokes
