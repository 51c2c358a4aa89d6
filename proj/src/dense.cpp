#include "divstokes/dense.hpp"

#include <lapacke.h>

#include <stdexcept>
#include <string>

namespace divstokes {

namespace {
void check_cap(int n, int cap) {
  if (n > cap)
    throw std::invalid_argument("dense eigensolve: size " + std::to_string(n) +
                                " exceeds the analysis cap " + std::to_string(cap) +
                                "; use a coarser mesh");
}
}  // namespace

std::vector<double> dense_sym_eig(const DenseMatrix& A, DenseMatrix* vectors, int cap) {
  if (A.rows != A.cols) throw std::invalid_argument("dense_sym_eig: matrix not square");
  check_cap(A.rows, cap);
  const int n = A.rows;
  DenseMatrix work = A;
  std::vector<double> w(n);
  const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'L', n, work.a.data(),
                                  n, w.data());
  if (info != 0) throw std::runtime_error("dsyevd failed, info=" + std::to_string(info));
  if (vectors) *vectors = std::move(work);
  return w;
}

std::vector<double> dense_gen_eig(const DenseMatrix& A, const DenseMatrix& M,
                                  DenseMatrix* vectors, int cap) {
  if (A.rows != A.cols || M.rows != M.cols || A.rows != M.rows)
    throw std::invalid_argument("dense_gen_eig: dimension mismatch");
  check_cap(A.rows, cap);
  const int n = A.rows;
  DenseMatrix wa = A, wm = M;
  std::vector<double> w(n);
  const int info = LAPACKE_dsygvd(LAPACK_COL_MAJOR, 1, vectors ? 'V' : 'N', 'L', n,
                                  wa.a.data(), n, wm.a.data(), n, w.data());
  if (info != 0)
    throw std::runtime_error(info > n ? "dense_gen_eig: M is not positive definite"
                                      : "dsygvd failed, info=" + std::to_string(info));
  if (vectors) *vectors = std::move(wa);
  return w;
}

DenseCholesky::DenseCholesky(DenseMatrix spd) : f_(std::move(spd)) {
  if (f_.rows != f_.cols) throw std::invalid_argument("DenseCholesky: matrix not square");
  const int info = LAPACKE_dpotrf(LAPACK_COL_MAJOR, 'L', f_.rows, f_.a.data(), f_.rows);
  if (info != 0)
    throw std::domain_error("DenseCholesky: matrix not positive definite (pivot " +
                            std::to_string(info) + ")");
}

void DenseCholesky::solve(const double* b, double* x) const {
  const int n = f_.rows;
  for (int i = 0; i < n; ++i) x[i] = b[i];
  const int info = LAPACKE_dpotrs(LAPACK_COL_MAJOR, 'L', n, 1, f_.a.data(), n, x, n);
  if (info != 0) throw std::runtime_error("dpotrs failed");
}

std::vector<double> DenseCholesky::solve(const std::vector<double>& b) const {
  std::vector<double> x(b.size());
  solve(b.data(), x.data());
  return x;
}

std::vector<double> dense_least_squares(const DenseMatrix& A, const std::vector<double>& b) {
  if (static_cast<int>(b.size()) != A.rows)
    throw std::invalid_argument("dense_least_squares: rhs size mismatch");
  DenseMatrix work = A;
  std::vector<double> rhs(std::max(A.rows, A.cols));
  for (int i = 0; i < A.rows; ++i) rhs[i] = b[i];
  const int info = LAPACKE_dgels(LAPACK_COL_MAJOR, 'N', A.rows, A.cols, 1, work.a.data(),
                                 A.rows, rhs.data(), std::max(A.rows, A.cols));
  if (info != 0) throw std::runtime_error("dgels failed, info=" + std::to_string(info));
  rhs.resize(A.cols);
  return rhs;
}

}  // namespace divstokes
