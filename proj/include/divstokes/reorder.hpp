#pragma once

#include <vector>

#include "divstokes/csr.hpp"

namespace divstokes {

// Reverse Cuthill-McKee ordering of a structurally symmetric pattern.
// Returns perm with perm[k] = original index placed at position k, so the
// reordered matrix is B(i,j) = A(perm[i], perm[j]). Deterministic rules:
// each component starts from its minimum-degree vertex of lowest index,
// and neighbors enqueue by ascending degree, ties by ascending index.
// Throws std::invalid_argument for a nonsymmetric pattern.
std::vector<int> rcm_permutation(const CsrMatrix& pattern);

// max |i - j| over stored off-diagonal entries.
int bandwidth(const CsrMatrix& a);

}  // namespace divstokes
