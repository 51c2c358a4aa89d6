#pragma once

#include <vector>

namespace divstokes {

/// Column-major dense matrix, just enough for the analysis-scale work.
struct DenseMatrix {
  int rows = 0, cols = 0;
  std::vector<double> a;

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(j) * rows + i]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(j) * rows + i]; }
};

// Default size cap for the dense eigensolvers; beyond it the problem is
// analysis-scale only and callers should use a coarser mesh.
inline constexpr int kDenseEigCap = 4000;

// Eigenvalues of a symmetric matrix, ascending. Optionally the
// eigenvectors (columns of *vectors). Throws std::invalid_argument when
// n exceeds cap with a message instructing a coarser mesh.
std::vector<double> dense_sym_eig(const DenseMatrix& A, DenseMatrix* vectors = nullptr,
                                  int cap = kDenseEigCap);

// Generalized eigenvalues of A v = lambda M v with M symmetric positive
// definite, ascending. Same cap behaviour.
std::vector<double> dense_gen_eig(const DenseMatrix& A, const DenseMatrix& M,
                                  DenseMatrix* vectors = nullptr, int cap = kDenseEigCap);

/// Dense Cholesky factor kept for repeated solves.
class DenseCholesky {
 public:
  explicit DenseCholesky(DenseMatrix spd);  // throws std::domain_error if not SPD
  void solve(const double* b, double* x) const;
  std::vector<double> solve(const std::vector<double>& b) const;
  int size() const { return f_.rows; }

 private:
  DenseMatrix f_;
};

// Least-squares solution of min ||A x - b||_2 via QR; A may be tall.
std::vector<double> dense_least_squares(const DenseMatrix& A, const std::vector<double>& b);

}  // namespace divstokes
