#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace divstokes {

/// Compressed sparse row matrix. Column indices are sorted strictly
/// ascending within each row; no explicit duplicates. Immutable by
/// convention once built.
struct CsrMatrix {
  int n_rows = 0, n_cols = 0;
  std::vector<std::int64_t> row_ptr;  // size n_rows + 1, monotone
  std::vector<std::int32_t> cols;
  std::vector<double> vals;

  std::int64_t nnz() const { return static_cast<std::int64_t>(cols.size()); }

  // Value at (i, j), zero if outside the pattern.
  double at(int i, int j) const;

  // y = A x. Dispatches to the active SIMD kernel. Throws
  // std::invalid_argument on dimension mismatch.
  void multiply(const double* x, double* y) const;
  std::vector<double> multiply(const std::vector<double>& x) const;

  std::vector<double> diagonal() const;
  CsrMatrix transposed() const;

  // max |A - A^T|; 0 means structurally and numerically symmetric.
  double symmetry_gap() const;
  bool pattern_symmetric() const;
};

struct Triplet {
  int row, col;
  double val;
};

// Sorts by (row, col) keeping insertion order among equals and sums
// duplicates, so the result is identical for any chunked generation of
// the same triplet sequence.
CsrMatrix csr_from_triplets(int n_rows, int n_cols, std::vector<Triplet> triplets);

// Symmetric permutation B = P A P^T with B(i,j) = A(perm[i], perm[j]).
CsrMatrix permute_symmetric(const CsrMatrix& a, const std::vector<int>& perm);

// Coordinate-format sparse text exchange (1-based indices; the symmetric
// qualifier stores and restores the lower triangle).
void write_matrix_market(const CsrMatrix& a, const std::string& path, bool symmetric = false);
CsrMatrix read_matrix_market(const std::string& path);

}  // namespace divstokes
