#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>
#include <vector>

#include "schubert/errors.hpp"
#include "schubert/poly.hpp"
#include "schubert/subspace.hpp"

namespace schubert {

/// Coordinate chart of the cell of mu^c at infinity: monic rows of fixed
/// degrees, one unknown per free exponent, ordered as Echelon::coordinates().
struct CellChart {
  Partition mu;
  int r, d;
  std::vector<int> degs;
  std::vector<std::pair<int, int>> slots;  ///< (row 0-based, exponent)
  std::vector<int> row_lead;               ///< index of the top slot per row (-1 if none)
  double c0;                               ///< leading Wronskian coefficient, constant

  CellChart(const Partition& mu_, int r_, int d_) : mu(mu_), r(r_), d(d_) {
    degs = cell_degrees(mu, r);
    if (degs[0] >= d) throw DomainError("cell does not fit the ambient degree");
    row_lead.assign(r, -1);
    for (int i = 1; i <= r; ++i)
      for (int e : cell_free_exponents(degs, i)) {
        if (row_lead[i - 1] < 0) row_lead[i - 1] = static_cast<int>(slots.size());
        slots.emplace_back(i - 1, e);
      }
    std::vector<Poly<double>> mono;
    for (int dg : degs) mono.push_back(Poly<double>::monomial(dg));
    c0 = wronskian(mono).coeff(mu.size());
  }

  std::vector<Poly<double>> basis(const std::vector<double>& x) const {
    std::vector<std::vector<double>> cs(r);
    for (int i = 0; i < r; ++i) {
      cs[i].assign(degs[i] + 1, 0.0);
      cs[i][degs[i]] = 1.0;
    }
    for (size_t k = 0; k < slots.size(); ++k) cs[slots[k].first][slots[k].second] = x[k];
    std::vector<Poly<double>> out;
    for (auto& c : cs) out.emplace_back(std::move(c));
    return out;
  }
};

/// Newton solve of "monic Wronskian of the chart = target" in the free cell
/// coordinates; square because #slots = |mu| = deg target.  The Jacobian is
/// exact: the Wronskian is linear in each row.
inline std::vector<double> solve_wronskian_cell(const CellChart& chart,
                                                const Poly<double>& target,
                                                std::vector<double> x, double residual_tol,
                                                int max_iters) {
  const int m = static_cast<int>(chart.slots.size());
  if (target.degree() != m) throw DomainError("wronskian target degree mismatch");
  const double tscale = std::max(1.0, target.max_coeff_magnitude());
  for (int iter = 0;; ++iter) {
    auto basis = chart.basis(x);
    Poly<double> w = wronskian(basis);
    double scale = std::max(tscale, w.max_coeff_magnitude() / std::abs(chart.c0));
    Eigen::VectorXd f(m);
    double worst = 0;
    for (int p = 0; p < m; ++p) {
      f(p) = w.coeff(p) / chart.c0 - target.coeff(p);
      worst = std::max(worst, std::abs(f(p)));
    }
    if (worst <= residual_tol * scale) return x;
    if (iter >= max_iters)
      throw ConvergenceError("no-convergence: cell-coordinate Newton stalled");
    Eigen::MatrixXd j(m, m);
    for (int k = 0; k < m; ++k) {
      auto pert = basis;
      pert[chart.slots[k].first] = Poly<double>::monomial(chart.slots[k].second);
      Poly<double> wk = wronskian(pert);
      for (int p = 0; p < m; ++p) j(p, k) = wk.coeff(p) / chart.c0;
    }
    Eigen::VectorXd delta = j.partialPivLu().solve(f);
    if (!delta.allFinite())
      throw ConvergenceError("no-convergence: singular cell-coordinate system");
    for (int k = 0; k < m; ++k) x[k] -= delta(k);
  }
}

/// All complex roots of p via the companion matrix.
inline std::vector<Cplx> poly_roots(const Poly<double>& p) {
  const int n = p.degree();
  if (n <= 0) return {};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -p.coeff(i) / p.leading();
  Eigen::VectorXcd ev = comp.eigenvalues();
  return std::vector<Cplx>(ev.data(), ev.data() + n);
}

}  // namespace schubert
