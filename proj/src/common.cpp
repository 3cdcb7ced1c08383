/**
 * @file common.cpp
 */
#include "gic/common.hpp"

#include <algorithm>

namespace gic {

bool invertInPlace(DenseMatrix& m, double singularTol) {
  const int n = m.rows();
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::fabs(m(i, j)));
  if (n == 0) return true;
  if (scale == 0.0) return false;

  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::fabs(m(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double v = std::fabs(m(r, col));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best <= singularTol * scale) return false;
    if (piv != col) {
      std::swap_ranges(m.row(col), m.row(col) + n, m.row(piv));
      std::swap(perm[col], perm[piv]);
    }
    const double inv = 1.0 / m(col, col);
    double* prow = m.row(col);
    prow[col] = 1.0;
    for (int j = 0; j < n; ++j) prow[j] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double* rrow = m.row(r);
      const double f = rrow[col];
      if (f == 0.0) continue;
      rrow[col] = 0.0;
      for (int j = 0; j < n; ++j) rrow[j] -= f * prow[j];
    }
  }
  // Row swaps of the input become column swaps of the inverse.
  DenseMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, perm[j]) = m(i, j);
  m = std::move(out);
  return true;
}

}  // namespace gic
