#pragma once

#include <algorithm>
#include <vector>

#include "schubert/errors.hpp"
#include "schubert/scalar.hpp"

namespace schubert {

template <class S>
using Mat = std::vector<std::vector<S>>;

template <class S>
Mat<S> zero_matrix(int rows, int cols) {
  return Mat<S>(rows, std::vector<S>(cols, S{}));
}

template <class S>
double matrix_scale(const Mat<S>& a) {
  double m = 0;
  for (const auto& row : a)
    for (const auto& x : row) m = std::max(m, ScalarOps<S>::magnitude(x));
  return m;
}

/// In-place reduced row echelon form; returns pivot column indices.
template <class S>
std::vector<int> rref(Mat<S>& a, double tol = 0) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a[0].size());
  const double scale = matrix_scale(a);
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int best = -1;
    double best_mag = 0;
    for (int i = r; i < rows; ++i) {
      double m = ScalarOps<S>::magnitude(a[i][c]);
      if (m > best_mag) { best_mag = m; best = i; }
    }
    if (best < 0 || ScalarOps<S>::is_zero(a[best][c], tol, scale)) continue;
    std::swap(a[r], a[best]);
    S inv = a[r][c];
    for (int j = c; j < cols; ++j) a[r][j] = a[r][j] / inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      S f = a[i][c];
      if (ScalarOps<S>::is_zero(f, 0)) continue;
      for (int j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Basis of the right kernel of a (rows of the result are kernel vectors).
template <class S>
Mat<S> kernel(Mat<S> a, double tol = 0) {
  const int cols = a.empty() ? 0 : static_cast<int>(a[0].size());
  std::vector<int> pivots = rref(a, tol);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  Mat<S> out;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<S> v(cols, S{});
    v[free] = ScalarOps<S>::from_int(1);
    for (size_t p = 0; p < pivots.size(); ++p) v[pivots[p]] = -a[p][free];
    out.push_back(std::move(v));
  }
  return out;
}

/// Solve A x = b for a consistent (possibly overdetermined) system with a
/// unique solution.  Throws ReconstructionError when singular or inconsistent.
template <class S>
std::vector<S> solve_consistent(Mat<S> a, const std::vector<S>& b, double tol = 0) {
  const int rows = static_cast<int>(a.size());
  if (rows != static_cast<int>(b.size())) throw DomainError("dimension mismatch");
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  double scale = std::max(matrix_scale(a), [&] {
    double m = 0;
    for (const auto& x : b) m = std::max(m, ScalarOps<S>::magnitude(x));
    return m;
  }());
  for (int i = 0; i < rows; ++i) a[i].push_back(b[i]);
  std::vector<int> pivots = rref(a, tol);
  // inconsistent if the augmented column became a pivot
  if (!pivots.empty() && pivots.back() == cols)
    throw ReconstructionError("inconsistent linear system");
  if (static_cast<int>(pivots.size()) < cols)
    throw ReconstructionError("singular linear system");
  // residual rows must vanish
  for (int i = static_cast<int>(pivots.size()); i < rows; ++i)
    if (!ScalarOps<S>::is_zero(a[i][cols], tol, scale))
      throw ReconstructionError("inconsistent linear system (residual row)");
  std::vector<S> x(cols);
  for (int p = 0; p < cols; ++p) x[pivots[p]] = a[p][cols];
  return x;
}

template <class S>
Mat<S> mat_mul(const Mat<S>& a, const Mat<S>& b) {
  const int n = static_cast<int>(a.size());
  const int k = n ? static_cast<int>(a[0].size()) : 0;
  const int m = b.empty() ? 0 : static_cast<int>(b[0].size());
  Mat<S> out = zero_matrix<S>(n, m);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < k; ++l) {
      if (ScalarOps<S>::is_zero(a[i][l], 0)) continue;
      for (int j = 0; j < m; ++j) out[i][j] = out[i][j] + a[i][l] * b[l][j];
    }
  return out;
}

}  // namespace schubert
