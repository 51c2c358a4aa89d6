#include "divstokes/cholesky.hpp"

#include <algorithm>
#include <cmath>

namespace divstokes {

ProfileCholesky::ProfileCholesky(const CsrMatrix& a, std::vector<int> perm)
    : n_(a.n_rows), perm_(std::move(perm)) {
  if (a.n_rows != a.n_cols) throw std::invalid_argument("ProfileCholesky: matrix not square");
  if (static_cast<int>(perm_.size()) != n_)
    throw std::invalid_argument("ProfileCholesky: permutation size mismatch");
  inv_perm_.resize(n_);
  for (int i = 0; i < n_; ++i) inv_perm_[perm_[i]] = i;

  // Envelope of the permuted matrix from the original pattern.
  first_.assign(n_, 0);
  for (int i = 0; i < n_; ++i) first_[i] = i;
  for (int r = 0; r < n_; ++r) {
    const int i = inv_perm_[r];
    for (std::int64_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
      const int j = inv_perm_[a.cols[k]];
      if (j < first_[i]) first_[i] = j;
      if (i < first_[j]) first_[j] = i;
    }
  }
  offset_.assign(n_ + 1, 0);
  for (int i = 0; i < n_; ++i) offset_[i + 1] = offset_[i] + (i - first_[i] + 1);
  vals_.assign(offset_[n_], 0.0);

  // Scatter the permuted lower triangle into the envelope.
  for (int r = 0; r < n_; ++r) {
    const int i = inv_perm_[r];
    for (std::int64_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
      const int j = inv_perm_[a.cols[k]];
      if (j <= i) vals_[offset_[i] + (j - first_[i])] = a.vals[k];
    }
  }

  // Row-by-row envelope factorization.
  for (int i = 0; i < n_; ++i) {
    double* row_i = vals_.data() + offset_[i] - first_[i];  // indexed by column
    for (int j = first_[i]; j < i; ++j) {
      const double* row_j = vals_.data() + offset_[j] - first_[j];
      const int lo = std::max(first_[i], first_[j]);
      double s = row_i[j];
      for (int k = lo; k < j; ++k) s -= row_i[k] * row_j[k];
      row_i[j] = s / row_j[j];
    }
    double d = row_i[i];
    for (int k = first_[i]; k < i; ++k) d -= row_i[k] * row_i[k];
    if (!(d > 0.0)) throw FactorBreakdown(i);
    row_i[i] = std::sqrt(d);
  }
}

void ProfileCholesky::solve(const double* b, double* x) const {
  std::vector<double> work(n_);
  double* y = work.data();
  for (int i = 0; i < n_; ++i) y[i] = b[perm_[i]];
  // forward: L y' = y
  for (int i = 0; i < n_; ++i) {
    const double* row_i = vals_.data() + offset_[i] - first_[i];
    double s = y[i];
    for (int k = first_[i]; k < i; ++k) s -= row_i[k] * y[k];
    y[i] = s / row_i[i];
  }
  // backward: L^T z = y'
  for (int i = n_ - 1; i >= 0; --i) {
    const double* row_i = vals_.data() + offset_[i] - first_[i];
    const double zi = y[i] / row_i[i];
    y[i] = zi;
    for (int k = first_[i]; k < i; ++k) y[k] -= row_i[k] * zi;
  }
  for (int i = 0; i < n_; ++i) x[perm_[i]] = y[i];
}

std::vector<double> ProfileCholesky::solve(const std::vector<double>& b) const {
  std::vector<double> x(b.size());
  solve(b.data(), x.data());
  return x;
}

Ic0Factor ic0(const CsrMatrix& a) {
  if (a.n_rows != a.n_cols) throw std::invalid_argument("ic0: matrix not square");
  const int n = a.n_rows;
  CsrMatrix L;
  L.n_rows = L.n_cols = n;
  L.row_ptr.assign(n + 1, 0);
  for (int i = 0; i < n; ++i)
    for (std::int64_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
      if (a.cols[k] <= i) ++L.row_ptr[i + 1];
  for (int i = 0; i < n; ++i) L.row_ptr[i + 1] += L.row_ptr[i];
  L.cols.resize(L.row_ptr[n]);
  L.vals.resize(L.row_ptr[n]);
  {
    std::int64_t pos = 0;
    for (int i = 0; i < n; ++i)
      for (std::int64_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
        if (a.cols[k] <= i) {
          L.cols[pos] = a.cols[k];
          L.vals[pos] = a.vals[k];
          ++pos;
        }
  }

  for (int i = 0; i < n; ++i) {
    const std::int64_t ibegin = L.row_ptr[i], iend = L.row_ptr[i + 1];
    if (iend == ibegin || L.cols[iend - 1] != i)
      throw std::invalid_argument("ic0: structurally missing diagonal at row " +
                                  std::to_string(i));
    for (std::int64_t ku = ibegin; ku < iend - 1; ++ku) {
      const int j = L.cols[ku];
      // dot of rows i and j over columns < j (merge on sorted indices)
      double s = L.vals[ku];
      std::int64_t pi = ibegin, pj = L.row_ptr[j];
      const std::int64_t je = L.row_ptr[j + 1] - 1;  // exclude diagonal of j
      while (pi < ku && pj < je) {
        if (L.cols[pi] == L.cols[pj])
          s -= L.vals[pi++] * L.vals[pj++];
        else if (L.cols[pi] < L.cols[pj])
          ++pi;
        else
          ++pj;
      }
      L.vals[ku] = s / L.vals[je];  // L_jj already final
    }
    double d = L.vals[iend - 1];
    for (std::int64_t k = ibegin; k < iend - 1; ++k) d -= L.vals[k] * L.vals[k];
    if (!(d > 0.0)) throw FactorBreakdown(i);
    L.vals[iend - 1] = std::sqrt(d);
  }
  return Ic0Factor{std::move(L)};
}

void Ic0Factor::solve(const double* r, double* z) const {
  const int n = lower.n_rows;
  // forward L y = r
  for (int i = 0; i < n; ++i) {
    double s = r[i];
    const std::int64_t end = lower.row_ptr[i + 1] - 1;
    for (std::int64_t k = lower.row_ptr[i]; k < end; ++k) s -= lower.vals[k] * z[lower.cols[k]];
    z[i] = s / lower.vals[end];
  }
  // backward L^T z = y, column sweep over the stored rows
  for (int i = n - 1; i >= 0; --i) {
    const std::int64_t end = lower.row_ptr[i + 1] - 1;
    const double zi = z[i] / lower.vals[end];
    z[i] = zi;
    for (std::int64_t k = lower.row_ptr[i]; k < end; ++k) z[lower.cols[k]] -= lower.vals[k] * zi;
  }
}

std::vector<double> Ic0Factor::solve(const std::vector<double>& r) const {
  std::vector<double> z(r.size());
  solve(r.data(), z.data());
  return z;
}

}  // namespace divstokes
