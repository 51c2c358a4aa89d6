#include "divstokes/csr.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "divstokes/kernels.hpp"

namespace divstokes {

double CsrMatrix::at(int i, int j) const {
  const auto begin = cols.begin() + row_ptr[i], end = cols.begin() + row_ptr[i + 1];
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return 0.0;
  return vals[it - cols.begin()];
}

void CsrMatrix::multiply(const double* x, double* y) const {
  kernels::spmv_csr(n_rows, row_ptr.data(), cols.data(), vals.data(), x, y);
}

std::vector<double> CsrMatrix::multiply(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_cols)
    throw std::invalid_argument("spmv: dimension mismatch");
  std::vector<double> y(n_rows);
  multiply(x.data(), y.data());
  return y;
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(std::min(n_rows, n_cols), 0.0);
  for (int i = 0; i < static_cast<int>(d.size()); ++i) d[i] = at(i, i);
  return d;
}

CsrMatrix CsrMatrix::transposed() const {
  CsrMatrix t;
  t.n_rows = n_cols;
  t.n_cols = n_rows;
  t.row_ptr.assign(n_cols + 1, 0);
  for (const auto c : cols) ++t.row_ptr[c + 1];
  for (int i = 0; i < n_cols; ++i) t.row_ptr[i + 1] += t.row_ptr[i];
  t.cols.resize(cols.size());
  t.vals.resize(vals.size());
  std::vector<std::int64_t> next(t.row_ptr.begin(), t.row_ptr.end() - 1);
  for (int i = 0; i < n_rows; ++i)
    for (std::int64_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      const auto pos = next[cols[k]]++;
      t.cols[pos] = i;
      t.vals[pos] = vals[k];
    }
  return t;
}

double CsrMatrix::symmetry_gap() const {
  if (n_rows != n_cols) return HUGE_VAL;
  const CsrMatrix t = transposed();
  double gap = 0.0;
  for (int i = 0; i < n_rows; ++i) {
    std::int64_t ka = row_ptr[i], kb = t.row_ptr[i];
    const std::int64_t ea = row_ptr[i + 1], eb = t.row_ptr[i + 1];
    while (ka < ea || kb < eb) {
      const int ca = ka < ea ? cols[ka] : n_cols;
      const int cb = kb < eb ? t.cols[kb] : n_cols;
      if (ca == cb) {
        gap = std::max(gap, std::abs(vals[ka] - t.vals[kb]));
        ++ka, ++kb;
      } else if (ca < cb) {
        gap = std::max(gap, std::abs(vals[ka]));
        ++ka;
      } else {
        gap = std::max(gap, std::abs(t.vals[kb]));
        ++kb;
      }
    }
  }
  return gap;
}

bool CsrMatrix::pattern_symmetric() const {
  if (n_rows != n_cols) return false;
  const CsrMatrix t = transposed();
  return t.cols == cols && t.row_ptr == row_ptr;
}

CsrMatrix csr_from_triplets(int n_rows, int n_cols, std::vector<Triplet> triplets) {
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  CsrMatrix m;
  m.n_rows = n_rows;
  m.n_cols = n_cols;
  m.row_ptr.assign(n_rows + 1, 0);
  for (std::size_t k = 0; k < triplets.size();) {
    const auto& t = triplets[k];
    if (t.row < 0 || t.row >= n_rows || t.col < 0 || t.col >= n_cols)
      throw std::invalid_argument("csr_from_triplets: index out of range");
    double sum = 0.0;
    std::size_t j = k;
    while (j < triplets.size() && triplets[j].row == t.row && triplets[j].col == t.col)
      sum += triplets[j++].val;
    m.cols.push_back(t.col);
    m.vals.push_back(sum);
    ++m.row_ptr[t.row + 1];
    k = j;
  }
  for (int i = 0; i < n_rows; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
  return m;
}

CsrMatrix permute_symmetric(const CsrMatrix& a, const std::vector<int>& perm) {
  if (a.n_rows != a.n_cols || static_cast<int>(perm.size()) != a.n_rows)
    throw std::invalid_argument("permute_symmetric: bad inputs");
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
  std::vector<Triplet> trip;
  trip.reserve(a.cols.size());
  for (int i = 0; i < a.n_rows; ++i)
    for (std::int64_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
      trip.push_back({inv[i], inv[a.cols[k]], a.vals[k]});
  return csr_from_triplets(a.n_rows, a.n_cols, std::move(trip));
}

void write_matrix_market(const CsrMatrix& a, const std::string& path, bool symmetric) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "%%MatrixMarket matrix coordinate real " << (symmetric ? "symmetric" : "general")
      << "\n";
  std::int64_t count = 0;
  for (int i = 0; i < a.n_rows; ++i)
    for (std::int64_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
      if (!symmetric || a.cols[k] <= i) ++count;
  out << a.n_rows << " " << a.n_cols << " " << count << "\n";
  out.precision(17);
  for (int i = 0; i < a.n_rows; ++i)
    for (std::int64_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
      if (!symmetric || a.cols[k] <= i)
        out << i + 1 << " " << a.cols[k] + 1 << " " << a.vals[k] << "\n";
}

CsrMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("%%MatrixMarket", 0) != 0)
    throw std::runtime_error(path + ": missing MatrixMarket header");
  std::istringstream header(line);
  std::string tag, object, format, field, qualifier;
  header >> tag >> object >> format >> field >> qualifier;
  if (object != "matrix" || format != "coordinate" || field != "real")
    throw std::runtime_error(path + ": unsupported MatrixMarket type");
  const bool symmetric = qualifier == "symmetric";
  if (!symmetric && qualifier != "general")
    throw std::runtime_error(path + ": unsupported qualifier " + qualifier);

  while (std::getline(in, line))
    if (!line.empty() && line[0] != '%') break;
  std::istringstream dims(line);
  int n_rows, n_cols;
  std::int64_t count;
  if (!(dims >> n_rows >> n_cols >> count)) throw std::runtime_error(path + ": bad size line");

  std::vector<Triplet> trip;
  trip.reserve(symmetric ? 2 * count : count);
  for (std::int64_t k = 0; k < count; ++k) {
    int i, j;
    double v;
    if (!(in >> i >> j >> v)) throw std::runtime_error(path + ": truncated entry list");
    trip.push_back({i - 1, j - 1, v});
    if (symmetric && i != j) trip.push_back({j - 1, i - 1, v});
  }
  return csr_from_triplets(n_rows, n_cols, std::move(trip));
}

}  // namespace divstokes
