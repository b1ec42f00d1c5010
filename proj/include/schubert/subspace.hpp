#pragma once

#include <algorithm>
#include <limits>
#include <sstream>
#include <vector>

#include "schubert/linalg.hpp"
#include "schubert/partition.hpp"
#include "schubert/poly.hpp"

namespace schubert {

/// r-dimensional space of polynomials of degree < d, stored by a basis.
template <class S>
struct Subspace {
  std::vector<Poly<S>> basis;
  int ambient_degree = 0;  ///< d

  int rank() const { return static_cast<int>(basis.size()); }
};

/// Unique reduced monic basis with strictly descending degrees d_1 > ... > d_r.
/// The exponent d_i - j is excluded from basis[i] whenever it lies in the
/// degree sequence, so the remaining coefficients are cell coordinates.
template <class S>
struct Echelon {
  std::vector<int> degrees;        ///< d_1 > ... > d_r
  std::vector<Poly<S>> basis;      ///< monic, reduced

  /// Free coordinates a_{ij}, flattened row by row in ascending j.
  std::vector<S> coordinates() const {
    std::vector<S> out;
    for (size_t i = 0; i < basis.size(); ++i)
      for (int e = degrees[i] - 1; e >= 0; --e) {
        if (std::find(degrees.begin(), degrees.end(), e) != degrees.end()) continue;
        out.push_back(basis[i].coeff(e));
      }
    return out;
  }
};

/// Degree sequence of the cell of mu^c at infinity: d_i = mu_i + r - i.
inline std::vector<int> cell_degrees(const Partition& mu, int r) {
  std::vector<int> d(r);
  for (int i = 1; i <= r; ++i) d[i - 1] = mu.part(i) + r - i;
  return d;
}

/// Free exponents of row i (1-indexed) of the cell with the given degree
/// sequence, in descending order.
inline std::vector<int> cell_free_exponents(const std::vector<int>& degrees, int i) {
  std::vector<int> out;
  for (int e = degrees[i - 1] - 1; e >= 0; --e)
    if (std::find(degrees.begin(), degrees.end(), e) == degrees.end()) out.push_back(e);
  return out;
}

/// Gaussian reduction to the unique echelon basis of the cell containing X.
template <class S>
Echelon<S> echelon_basis(const Subspace<S>& x, double pivot_tol = 1e-9) {
  if (x.basis.empty()) throw DomainError("empty subspace basis");
  std::vector<Poly<S>> polys = x.basis;
  // Trim only down at rounding-noise level, far below the pivot tolerance:
  // coefficients in between must reach the explicit pivot check and fail
  // loudly instead of being silently dropped.
  const double trim =
      ScalarOps<S>::exact ? 0 : 64 * std::numeric_limits<double>::epsilon();
  double scale = 0;
  for (auto& p : polys) {
    p.trim(trim);
    scale = std::max(scale, p.max_coeff_magnitude());
  }

  // eliminate equal leading degrees
  std::vector<Poly<S>> reduced;
  for (Poly<S> p : polys) {
    for (bool changed = true; changed && !p.is_zero();) {
      changed = false;
      for (const auto& q : reduced) {
        if (q.degree() == p.degree()) {
          p = p - q * (p.leading() / q.leading());
          p.trim(trim);
          changed = true;
          break;
        }
      }
    }
    if (p.is_zero()) throw DomainError("subspace basis is linearly dependent");
    if (!ScalarOps<S>::exact && ScalarOps<S>::magnitude(p.leading()) < pivot_tol * scale) {
      std::ostringstream os;
      os << "cell-undecidable: leading coefficient " << ScalarOps<S>::magnitude(p.leading())
         << " at degree " << p.degree() << " below pivot tolerance";
      throw CellUndecidableError(os.str());
    }
    reduced.push_back(p.monic());
  }
  std::sort(reduced.begin(), reduced.end(),
            [](const Poly<S>& a, const Poly<S>& b) { return a.degree() > b.degree(); });

  // clear the coefficient at every lower basis degree
  for (size_t i = 0; i < reduced.size(); ++i)
    for (size_t j = i + 1; j < reduced.size(); ++j)
      reduced[i] = reduced[i] - reduced[j] * reduced[i].coeff(reduced[j].degree());

  Echelon<S> out;
  for (const auto& p : reduced) out.degrees.push_back(p.degree());
  out.basis = std::move(reduced);
  return out;
}

/// Partition mu with X in the open cell of mu^c at infinity, read from the
/// echelon degree sequence as mu_i = d_i - (r - i).  Consistency with the
/// Wronskian degree is enforced.
template <class S>
Partition detect_cell(const Subspace<S>& x, int r, int d, double pivot_tol = 1e-9) {
  if (x.rank() != r) throw DomainError("subspace rank does not match r");
  Echelon<S> ech = echelon_basis(x, pivot_tol);
  std::vector<int> parts(r);
  for (int i = 1; i <= r; ++i) {
    parts[i - 1] = ech.degrees[i - 1] - (r - i);
    if (parts[i - 1] < 0 || ech.degrees[i - 1] >= d)
      throw DomainError("degree sequence incompatible with Gr(r,d)");
  }
  Partition mu{parts};
  Poly<S> w = wronskian(x.basis);
  w.trim(ScalarOps<S>::exact ? 0 : pivot_tol);
  if (w.degree() != mu.size())
    throw CellUndecidableError("wronskian degree " + std::to_string(w.degree()) +
                               " does not match |mu| = " + std::to_string(mu.size()));
  return mu;
}

/// The coordinate map: y_a = monic Wr(f_{a+1},...,f_r) for a = 0..r-1 taken
/// on the echelon basis.  y_0 is the monic Wronskian of X; y_{r-1} = f_r.
template <class S>
std::vector<Poly<S>> coordinate_map(const Subspace<S>& x, double pivot_tol = 1e-9) {
  Echelon<S> ech = echelon_basis(x, pivot_tol);
  const int r = static_cast<int>(ech.basis.size());
  std::vector<Poly<S>> out;
  const double trim = ScalarOps<S>::exact ? 0 : pivot_tol;
  for (int a = 0; a < r; ++a) {
    std::vector<Poly<S>> tail(ech.basis.begin() + a, ech.basis.end());
    out.push_back(monic_wronskian(tail, static_cast<S*>(nullptr), trim));
  }
  return out;
}

/// Inverse of the coordinate map: reconstruct the subspace in the cell of
/// mu^c at infinity whose coordinate map is (wr_target, y_1, ..., y_{r-1}) up
/// to scalars.  Triangular: f_r = y_{r-1}, then each f_i solves a linear
/// system in its free cell coefficients plus one proportionality scalar.
template <class S>
Subspace<S> invert_coordinate_map(const std::vector<Poly<S>>& y, const Partition& mu, int r,
                                  int d, const Poly<S>& wr_target, double pivot_tol = 1e-9) {
  if (static_cast<int>(y.size()) != r - 1)
    throw DomainError("expected r-1 root polynomials");
  std::vector<int> l = l_vector(mu, r);
  for (int i = 0; i < r - 1; ++i)
    if (y[i].degree() != l[i])
      throw DomainError("deg y_" + std::to_string(i + 1) + " != l_" + std::to_string(i + 1));
  if (wr_target.degree() != mu.size()) throw DomainError("wronskian target has wrong degree");

  std::vector<int> degs = cell_degrees(mu, r);
  const double trim = ScalarOps<S>::exact ? 0 : pivot_tol;
  std::vector<Poly<S>> f(r);
  if (r == 1) f[0] = wr_target;
  else f[r - 1] = y[r - 2];  // y_{r-1}
  for (int i = r - 1; i >= 1; --i) {
    // unknowns: free coefficients of f_i (1-indexed row i) and the scalar c
    const Poly<S>& target = (i == 1) ? wr_target : y[i - 2];  // y_{i-1}
    std::vector<int> free_exp = cell_free_exponents(degs, i);
    std::vector<Poly<S>> tail(f.begin() + i, f.end());

    auto wr_with = [&](const Poly<S>& head) {
      std::vector<Poly<S>> fam;
      fam.push_back(head);
      fam.insert(fam.end(), tail.begin(), tail.end());
      Poly<S> w = wronskian(fam);
      w.trim(trim);
      return w;
    };
    Poly<S> w0 = wr_with(Poly<S>::monomial(degs[i - 1]));
    std::vector<Poly<S>> wk;
    for (int e : free_exp) wk.push_back(wr_with(Poly<S>::monomial(e)));

    const int m = target.degree() + 1;  // coefficient rows 0..l_{i-1}
    const int nu = static_cast<int>(free_exp.size());
    Mat<S> A = zero_matrix<S>(m, nu + 1);
    std::vector<S> b(m);
    for (int row = 0; row < m; ++row) {
      for (int kk = 0; kk < nu; ++kk) A[row][kk] = wk[kk].coeff(row);
      A[row][nu] = -target.coeff(row);
      b[row] = -w0.coeff(row);
    }
    std::vector<S> sol;
    try {
      sol = solve_consistent(A, b, ScalarOps<S>::exact ? 0 : pivot_tol);
    } catch (const ReconstructionError& e) {
      throw ReconstructionError(std::string("reconstruction-degenerate at row ") +
                                std::to_string(i) + ": " + e.what());
    }
    std::vector<S> coeffs(degs[i - 1] + 1, S{});
    coeffs[degs[i - 1]] = ScalarOps<S>::from_int(1);
    for (int kk = 0; kk < nu; ++kk) coeffs[free_exp[kk]] = sol[kk];
    f[i - 1] = Poly<S>(std::move(coeffs));
  }
  return Subspace<S>{f, d};
}

}  // namespace schubert
