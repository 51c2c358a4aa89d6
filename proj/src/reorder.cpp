#include "divstokes/reorder.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace divstokes {

std::vector<int> rcm_permutation(const CsrMatrix& pattern) {
  if (!pattern.pattern_symmetric())
    throw std::invalid_argument("rcm_permutation: pattern is not symmetric");
  const int n = pattern.n_rows;

  std::vector<int> degree(n);
  for (int i = 0; i < n; ++i) {
    int d = 0;
    for (std::int64_t k = pattern.row_ptr[i]; k < pattern.row_ptr[i + 1]; ++k)
      if (pattern.cols[k] != i) ++d;
    degree[i] = d;
  }

  std::vector<int> order;
  order.reserve(n);
  std::vector<char> visited(n, 0);
  std::vector<int> neighbors;

  for (int scan = 0; scan < n; ++scan) {
    if (visited[scan]) continue;
    // component start: minimum degree, lowest index
    int start = scan;
    for (int v = scan; v < n; ++v)
      if (!visited[v] && degree[v] < degree[start]) start = v;
    visited[start] = 1;
    order.push_back(start);
    for (std::size_t head = order.size() - 1; head < order.size(); ++head) {
      const int u = order[head];
      neighbors.clear();
      for (std::int64_t k = pattern.row_ptr[u]; k < pattern.row_ptr[u + 1]; ++k) {
        const int v = pattern.cols[k];
        if (v != u && !visited[v]) {
          visited[v] = 1;
          neighbors.push_back(v);
        }
      }
      std::sort(neighbors.begin(), neighbors.end(), [&](int a, int b) {
        return degree[a] != degree[b] ? degree[a] < degree[b] : a < b;
      });
      order.insert(order.end(), neighbors.begin(), neighbors.end());
      if (static_cast<int>(order.size()) == n) break;
    }
  }

  std::reverse(order.begin(), order.end());
  return order;
}

int bandwidth(const CsrMatrix& a) {
  int bw = 0;
  for (int i = 0; i < a.n_rows; ++i)
    for (std::int64_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
      bw = std::max(bw, std::abs(i - a.cols[k]));
  return bw;
}

}  // namespace divstokes
