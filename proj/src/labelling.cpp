#include "schubert/labelling.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "schubert/cellchart.hpp"
#include "schubert/errors.hpp"
#include "schubert/operators.hpp"

namespace schubert {

namespace {

void require_increasing(const std::vector<double>& z) {
  for (size_t a = 0; a + 1 < z.size(); ++a)
    if (!(z[a] < z[a + 1])) throw DomainError("z must be strictly increasing");
}

std::vector<double> newton_wr(const CellChart& chart, const Poly<double>& target,
                              std::vector<double> x, const RunConfig& cfg) {
  return solve_wronskian_cell(chart, target, std::move(x), cfg.residual_tol,
                              cfg.max_newton_iters);
}

/// Adaptive tracker of the section X(s) with Wr(X(s)) = (u - s) * p_rest,
/// parametrized by the offset h = s - z_n >= 0.
struct Tracker {
  const CellChart& chart;
  Poly<double> p_rest;
  double zn;
  RunConfig cfg;
  std::vector<double> coords;
  double offset = 0;
  double step = 1.0;

  Poly<double> target(double h) const {
    return Poly<double>(std::vector<double>{-(zn + h), 1.0}) * p_rest;
  }

  bool try_advance(double h_next) {
    try {
      // Roundoff in the Wronskian residual grows with the coordinate
      // magnitudes, which grow like s itself, so relax the certification
      // floor proportionally along the tail of the path.
      RunConfig c = cfg;
      c.residual_tol = cfg.residual_tol * (1.0 + 1e-4 * h_next);
      coords = newton_wr(chart, target(h_next), coords, c);
      offset = h_next;
      step = std::min(step * 2, std::max(1.0, offset));
      return true;
    } catch (const ConvergenceError&) {
      step /= 2;
      if (step < 1e-9 * (1 + offset))
        throw ConvergenceError("path-stuck: elementary continuation stalled at s = " +
                               std::to_string(zn + offset));
      return false;
    }
  }

  void advance_to(double h_target) {
    while (offset < h_target) try_advance(std::min(offset + step, h_target));
  }

  /// Largest per-row magnitude of the top free coefficient.
  std::pair<int, double> dominant_row() const {
    int best = -1;
    double mag = 0;
    for (int i = 0; i < chart.r; ++i) {
      if (chart.row_lead[i] < 0) continue;
      double v = std::abs(coords[chart.row_lead[i]]);
      if (v > mag) { mag = v; best = i; }
    }
    return {best, mag};
  }

  int advance_until_divergence() {
    const double h_cap = 1e9;
    while (true) {
      try_advance(offset + step);
      auto [row, mag] = dominant_row();
      if (mag > cfg.divergence_threshold) return row;
      if (offset > h_cap)
        throw ConvergenceError("path-stuck: no coefficient diverged by s - z_n = 1e9");
    }
  }
};

struct ElStepResult {
  int e = 0;  ///< 1-based row losing the box
  Partition lambda;
  Subspace<double> x_inf;
};

std::vector<double> real_coordinates(const Subspace<double>& x, double pivot_tol) {
  return echelon_basis(x, pivot_tol).coordinates();
}

/// One elementary step: send the last marked point to infinity, certify the
/// limiting one-box-smaller cell, and return the polished limit subspace.
ElStepResult el_step(const Subspace<double>& x, const std::vector<double>& z,
                     const Partition& mu, int r, int d, const RunConfig& cfg) {
  CellChart chart(mu, r, d);
  std::vector<double> z_rest(z.begin(), z.end() - 1);
  Poly<double> p_rest = Poly<double>::from_roots(z_rest);

  Tracker tr{chart, p_rest, z.back(), cfg, real_coordinates(x, cfg.pivot_tol)};
  // the input point itself satisfies Wr = (u - z_n) * p_rest
  tr.coords = newton_wr(chart, tr.target(0.0), tr.coords, cfg);

  tr.advance_until_divergence();
  // confirm linear growth at doubled offset
  const double h1 = tr.offset;
  std::vector<double> c1 = tr.coords;
  tr.advance_to(2 * h1);
  const std::vector<double>& c2 = tr.coords;

  // The row e losing its box has a_{e1} ~ C*s; rows above e can diverge in
  // sympathy when their chart has a free slot at exponent deg_e - 1 (the
  // echelon reduction against the degenerating row e feeds the growth
  // upward).  The genuine row is therefore the lowest one growing linearly.
  int row0 = -1;
  for (int i = 0; i < chart.r; ++i) {
    if (chart.row_lead[i] < 0) continue;
    double m1 = std::abs(c1[chart.row_lead[i]]), m2 = std::abs(c2[chart.row_lead[i]]);
    if (m2 > 1e-3 * cfg.divergence_threshold && m2 / m1 > 1.5 && m2 / m1 < 3.0) row0 = i;
  }
  if (row0 < 0)
    throw CellUndecidableError("cell-undecidable: no coefficient grows linearly in s");
  const int lead = chart.row_lead[row0];
  if (chart.slots[lead].second != chart.degs[row0] - 1)
    throw CellUndecidableError("cell-undecidable: divergence not in the top exponent");

  // Cancel the sympathetic divergence, normalize row e, then Richardson:
  // every corrected coefficient converges with O(1/s) error.
  auto corrected = [&](const std::vector<double>& c) {
    std::vector<std::vector<double>> cs(chart.r);
    for (int i = 0; i < chart.r; ++i) {
      cs[i].assign(d, 0.0);
      cs[i][chart.degs[i]] = 1.0;
    }
    for (size_t k = 0; k < chart.slots.size(); ++k)
      cs[chart.slots[k].first][chart.slots[k].second] = c[k];
    const double ae1 = c[lead];
    for (int i = 0; i < chart.r; ++i) {
      if (i == row0) continue;
      int si = -1;
      for (size_t k = 0; k < chart.slots.size(); ++k)
        if (chart.slots[k].first == i && chart.slots[k].second == chart.degs[row0] - 1)
          si = static_cast<int>(k);
      if (si < 0) continue;
      const double alpha = c[si] / ae1;
      for (int x = 0; x < d; ++x) cs[i][x] -= alpha * cs[row0][x];
    }
    for (double& v : cs[row0]) v /= ae1;
    return cs;
  };
  auto b1 = corrected(c1), b2 = corrected(c2);
  std::vector<Poly<double>> basis;
  for (int i = 0; i < chart.r; ++i) {
    std::vector<double> bc(d, 0.0);
    for (int x = 0; x < d; ++x) bc[x] = 2 * b2[i][x] - b1[i][x];
    // row e drops one degree; its old leading coefficients vanish as 1/s
    if (i == row0) bc.resize(chart.degs[row0]);
    basis.emplace_back(std::move(bc));
  }

  ElStepResult out;
  out.e = row0 + 1;
  out.lambda = mu.with_box_removed(out.e);
  // confirmation: re-solve in the smaller cell's own coordinates at s = infinity
  CellChart chart_l(out.lambda, r, d);
  std::vector<double> coords_l = real_coordinates(Subspace<double>{basis, d}, cfg.pivot_tol);
  coords_l = newton_wr(chart_l, p_rest, coords_l, cfg);
  out.x_inf = Subspace<double>{chart_l.basis(coords_l), d};
  if (!(detect_cell(out.x_inf, r, d, cfg.pivot_tol) == out.lambda))
    throw CellUndecidableError("cell-undecidable: polished limit left the expected cell");
  return out;
}

Poly<double> normalized(const Poly<double>& p) {
  if (p.is_zero()) return p;
  double best = 0;
  int at = 0;
  for (int k = 0; k <= p.degree(); ++k)
    if (std::abs(p.coeff(k)) > best) { best = std::abs(p.coeff(k)); at = k; }
  return p * (1.0 / p.coeff(at));
}

double theta_distance_of(const std::vector<Poly<double>>& a,
                         const std::vector<Poly<double>>& b) {
  double worst = 0;
  for (size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, coeff_distance(normalized(a[i]), normalized(b[i])));
  return worst;
}

}  // namespace

std::vector<LabelledPoint> solve_intersection(const std::vector<double>& z,
                                              const Partition& mu, int r, int d,
                                              const RunConfig& cfg) {
  const int n = mu.size();
  if (static_cast<int>(z.size()) != n) throw DomainError("|mu| must equal n");
  require_increasing(z);
  if (mu.rows() > r || mu.part(1) > d - r)
    throw DomainError("mu does not fit the r x (d-r) box");

  std::vector<Cplx> zc(z.begin(), z.end());
  Poly<Cplx> wr_target = Poly<Cplx>::from_roots(zc);
  Poly<double> wr_real = Poly<double>::from_roots(z);
  double wr_scale = std::max(1.0, wr_real.max_coeff_magnitude());

  std::vector<LabelledPoint> out;
  std::vector<std::vector<double>> all_coords;
  for (const auto& t : enumerate_syt(mu)) {
    LabelledPoint pt;
    pt.tableau = t;
    pt.critical_point = marcus_critical_point(t, z, r, cfg);
    Subspace<Cplx> xc = invert_coordinate_map<Cplx>(pt.critical_point.y, mu, r, d,
                                                    wr_target, cfg.pivot_tol);
    // realness: the echelon coordinates must have negligible imaginary parts
    Echelon<Cplx> ech = echelon_basis(xc, cfg.pivot_tol);
    std::vector<Poly<double>> basis;
    for (const auto& p : ech.basis) {
      std::vector<double> cs(p.degree() + 1);
      double scale = std::max(1.0, p.max_coeff_magnitude());
      for (int k = 0; k <= p.degree(); ++k) {
        if (std::abs(p.coeff(k).imag()) > cfg.imag_tol * scale)
          throw ReconstructionError("reconstructed point is not real");
        cs[k] = p.coeff(k).real();
      }
      basis.emplace_back(std::move(cs));
    }
    pt.x = Subspace<double>{basis, d};
    if (!(detect_cell(pt.x, r, d, cfg.pivot_tol) == mu))
      throw ReconstructionError("reconstructed point left the expected cell");
    Poly<double> wr = monic_wronskian(basis, static_cast<double*>(nullptr), cfg.pivot_tol);
    if (coeff_distance(wr, wr_real) > cfg.wronskian_tol * wr_scale)
      throw ReconstructionError("reconstructed Wronskian misses the target roots");
    MasterData md = MasterData::all_box(mu, r);
    pt.eigenvalues = gaudin_eigenvalues(md, z, pt.critical_point, cfg);
    all_coords.push_back(real_coordinates(pt.x, cfg.pivot_tol));
    out.push_back(std::move(pt));
  }

  for (size_t i = 0; i < all_coords.size(); ++i)
    for (size_t j = i + 1; j < all_coords.size(); ++j) {
      double dist = 0;
      for (size_t k = 0; k < all_coords[i].size(); ++k)
        dist = std::max(dist, std::abs(all_coords[i][k] - all_coords[j][k]));
      if (dist <= cfg.separation_tol)
        throw ReconstructionError("collision: two reconstructed points coincide");
    }
  return out;
}

StandardTableau elementary_label(const Subspace<double>& x, const std::vector<double>& z,
                                 int r, int d, const RunConfig& cfg) {
  Partition mu = detect_cell(x, r, d, cfg.pivot_tol);
  const int n = mu.size();
  if (static_cast<int>(z.size()) != n) throw DomainError("|mu| must equal n");
  require_increasing(z);
  if (n == 1) return StandardTableau(std::vector<std::vector<int>>{{1}});

  ElStepResult step = el_step(x, z, mu, r, d, cfg);
  std::vector<double> z_rest(z.begin(), z.end() - 1);
  StandardTableau smaller = elementary_label(step.x_inf, z_rest, r, d, cfg);
  return smaller.with_entry_added(step.e);
}

StandardTableau mtv_label(const Subspace<double>& x, const std::vector<double>& z, int r,
                          int d, const RunConfig& cfg) {
  Partition mu = detect_cell(x, r, d, cfg.pivot_tol);
  const int n = mu.size();
  if (static_cast<int>(z.size()) != n) throw DomainError("|mu| must equal n");
  require_increasing(z);

  // theta(X) gives the critical point; polish and read the Gaudin tuple
  std::vector<Poly<double>> y = coordinate_map(x, cfg.pivot_tol);
  TConfig roots;
  for (int a = 1; a < r; ++a) {
    roots.groups.emplace_back();
    for (const Cplx& root : poly_roots(y[a])) roots.groups.back().push_back(root);
  }
  MasterData md = MasterData::all_box(mu, r);
  std::vector<double> grad;
  try {
    CriticalPoint cp = newton_polish(md, z, roots, cfg);
    grad = z_gradient(md, z, TConfig{cp.roots});
  } catch (const std::runtime_error&) {
    // theta(X) is a degenerate critical point (roots on a marked point), so
    // the BAE cannot be polished at z; extrapolate the eigenvalues instead
    CriticalPoint cp;
    cp.z = z;
    cp.roots = roots.groups;
    for (int a = 1; a < r; ++a) {
      std::vector<Cplx> cs(y[a].degree() + 1);
      for (int k = 0; k <= y[a].degree(); ++k) cs[k] = Cplx(y[a].coeff(k));
      cp.y.emplace_back(std::move(cs));
    }
    cp.degenerate = true;
    grad = gaudin_eigenvalues(md, z, cp, cfg);
  }

  SingularWeightBasis b = singular_weight_basis(n, std::max(1, mu.rows()), mu);
  std::vector<ScalingLimit> limits = jm_scaling_limit(z, b, {}, cfg);

  int best = -1, runner = -1;
  auto dist_to = [&](const ScalingLimit& lim) {
    double worst = 0;
    for (int a = 0; a < n; ++a)
      worst = std::max(worst, std::abs(grad[a] - lim.start_values[a].real()));
    return worst;
  };
  for (size_t k = 0; k < limits.size(); ++k) {
    if (best < 0 || dist_to(limits[k]) < dist_to(limits[best])) {
      runner = best;
      best = static_cast<int>(k);
    } else if (runner < 0 || dist_to(limits[k]) < dist_to(limits[runner])) {
      runner = static_cast<int>(k);
    }
  }
  if (best < 0 || dist_to(limits[best]) > cfg.eigen_match_tol)
    throw SpectrumError("spectral-mismatch: no Gaudin eigenline matches the critical point");
  if (runner >= 0 && dist_to(limits[runner]) < 1e-4)
    throw SpectrumError("spectral-mismatch: eigenline match is ambiguous");

  auto tableaux = enumerate_syt(mu);
  const StandardTableau* t = find_by_contents(tableaux, limits[best].contents);
  if (!t) throw SpectrumError("limit-unresolved: snapped contents match no tableau");
  return *t;
}

AgreementCertificate verify_agreement(const std::vector<double>& z, const Partition& mu,
                                      int r, int d, const RunConfig& cfg) {
  AgreementCertificate cert;
  cert.mu = mu;
  cert.r = r;
  cert.d = d;
  cert.z = z;
  cert.pass = true;

  for (const LabelledPoint& pt : solve_intersection(z, mu, r, d, cfg)) {
    PointRecord rec;
    rec.construction = pt.tableau;
    rec.el = elementary_label(pt.x, z, r, d, cfg);
    rec.mtv = mtv_label(pt.x, z, r, d, cfg);
    rec.eigenvalues = pt.eigenvalues;
    rec.residual = pt.critical_point.residual;

    std::vector<Poly<double>> theta = coordinate_map(pt.x, cfg.pivot_tol);
    std::vector<Poly<double>> expect;
    expect.push_back(Poly<double>::from_roots(z));
    for (const auto& yp : pt.critical_point.y) {
      std::vector<double> cs(yp.degree() + 1);
      for (int k = 0; k <= yp.degree(); ++k) cs[k] = yp.coeff(k).real();
      expect.emplace_back(std::move(cs));
    }
    rec.theta_distance = theta_distance_of(theta, expect);

    rec.agree = (rec.el == rec.construction) && (rec.mtv == rec.construction) &&
                rec.theta_distance <= cfg.theta_tol;
    cert.pass = cert.pass && rec.agree;
    cert.points.push_back(std::move(rec));
  }
  return cert;
}

ThetaLimitReport theta_limit_check(const Subspace<double>& x, const std::vector<double>& z,
                                   int r, int d, const RunConfig& cfg) {
  Partition mu = detect_cell(x, r, d, cfg.pivot_tol);
  if (static_cast<int>(z.size()) != mu.size()) throw DomainError("|mu| must equal n");
  require_increasing(z);
  if (mu.size() < 2) throw DomainError("family needs at least two marked points");

  ElStepResult step = el_step(x, z, mu, r, d, cfg);
  std::vector<Poly<double>> theta_inf = coordinate_map(step.x_inf, cfg.pivot_tol);

  CellChart chart(mu, r, d);
  std::vector<double> z_rest(z.begin(), z.end() - 1);
  Tracker tr{chart, Poly<double>::from_roots(z_rest), z.back(), cfg,
             real_coordinates(x, cfg.pivot_tol)};
  tr.coords = newton_wr(chart, tr.target(0.0), tr.coords, cfg);

  ThetaLimitReport report;
  report.row = step.e;
  for (double h : {1e3, 1e4}) {
    tr.advance_to(h);
    std::vector<Poly<double>> theta_s =
        coordinate_map(Subspace<double>{chart.basis(tr.coords), d}, cfg.pivot_tol);
    double err = theta_distance_of(theta_s, theta_inf);
    (h == 1e3 ? report.err_low : report.err_high) = err;
  }
  double ratio = report.err_low / std::max(report.err_high, 1e-300);
  report.continuous = report.err_high < report.err_low &&
                      (ratio > 5.0 || report.err_high < 1e-12);
  return report;
}

}  // namespace schubert
