#include "schubert/bethe.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "schubert/cellchart.hpp"
#include "schubert/errors.hpp"
#include "schubert/subspace.hpp"

namespace schubert {

MasterData MasterData::all_box(const Partition& mu, int r) {
  if (mu.rows() > r) throw DomainError("mu has more than r rows");
  MasterData md;
  md.n = mu.size();
  md.r = r;
  md.mu = mu;
  md.l = l_vector(mu, r);
  return md;
}

int MasterData::num_vars() const {
  int s = 0;
  for (int li : l) s += li;
  return s;
}

namespace {

void check_shape(const MasterData& md, const std::vector<double>& z, const TConfig& t) {
  if (static_cast<int>(z.size()) != md.n) throw DomainError("z must have length n");
  for (size_t a = 0; a < z.size(); ++a)
    for (size_t b = a + 1; b < z.size(); ++b)
      if (z[a] == z[b]) throw DomainError("z entries must be distinct");
  if (t.groups.size() != md.l.size()) throw DomainError("t-configuration group count mismatch");
  for (size_t g = 0; g < md.l.size(); ++g)
    if (static_cast<int>(t.groups[g].size()) != md.l[g])
      throw DomainError("t-configuration group size mismatch");
}

void pole_check(const Cplx& x, const Cplx& y, const char* what) {
  double scale = std::max({1.0, std::abs(x), std::abs(y)});
  if (std::abs(x - y) <= 1e-13 * scale) {
    std::ostringstream os;
    os << "pole: " << what << " collide at " << x.real();
    if (x.imag() != 0) os << (x.imag() < 0 ? "" : "+") << x.imag() << "i";
    throw DomainError(os.str());
  }
}

void check_poles(const MasterData& md, const std::vector<double>& z, const TConfig& t) {
  const int g = static_cast<int>(md.l.size());
  for (int i = 0; i < g; ++i) {
    for (size_t j = 0; j < t.groups[i].size(); ++j) {
      if (i == 0)
        for (double za : z) pole_check(t.groups[i][j], Cplx(za), "t and z");
      for (size_t k = j + 1; k < t.groups[i].size(); ++k)
        pole_check(t.groups[i][j], t.groups[i][k], "roots within a group");
      if (i + 1 < g)
        for (const Cplx& u : t.groups[i + 1]) pole_check(t.groups[i][j], u, "adjacent roots");
    }
  }
}

}  // namespace

std::vector<Cplx> bae_residual(const MasterData& md, const std::vector<double>& z,
                               const TConfig& t, std::vector<double>* term_scale) {
  check_shape(md, z, t);
  check_poles(md, z, t);
  std::vector<Cplx> out;
  if (term_scale) term_scale->clear();
  const int g = static_cast<int>(md.l.size());
  for (int i = 0; i < g; ++i)
    for (size_t j = 0; j < t.groups[i].size(); ++j) {
      const Cplx tij = t.groups[i][j];
      Cplx res(0);
      double scale = 0;
      auto add = [&](const Cplx& term) {
        res += term;
        scale += std::abs(term);
      };
      if (i == 0)
        for (double za : z) add(-1.0 / (tij - za));
      for (size_t k = 0; k < t.groups[i].size(); ++k)
        if (k != j) add(2.0 / (tij - t.groups[i][k]));
      for (int adj : {i - 1, i + 1}) {
        if (adj < 0 || adj >= g) continue;
        for (const Cplx& u : t.groups[adj]) add(-1.0 / (tij - u));
      }
      out.push_back(res);
      if (term_scale) term_scale->push_back(scale);
    }
  return out;
}

std::vector<double> z_gradient(const MasterData& md, const std::vector<double>& z,
                               const TConfig& t) {
  check_shape(md, z, t);
  check_poles(md, z, t);
  std::vector<double> out(md.n, 0.0);
  for (int a = 0; a < md.n; ++a) {
    for (int b = 0; b < md.n; ++b)
      if (b != a) out[a] += 1.0 / (z[a] - z[b]);
    if (!t.groups.empty())
      for (const Cplx& tj : t.groups[0]) out[a] -= (1.0 / (Cplx(z[a]) - tj)).real();
  }
  return out;
}

Mat<Cplx> hessian(const MasterData& md, const std::vector<double>& z, const TConfig& t,
                  bool* nondegenerate, double hessian_tol) {
  check_shape(md, z, t);
  check_poles(md, z, t);
  const int g = static_cast<int>(md.l.size());
  std::vector<std::pair<int, int>> idx;  // (group, root)
  for (int i = 0; i < g; ++i)
    for (size_t j = 0; j < t.groups[i].size(); ++j) idx.emplace_back(i, static_cast<int>(j));
  const int m = static_cast<int>(idx.size());
  Mat<Cplx> h = zero_matrix<Cplx>(m, m);

  auto inv2 = [](const Cplx& d) { return 1.0 / (d * d); };
  for (int p = 0; p < m; ++p) {
    auto [i, j] = idx[p];
    const Cplx tij = t.groups[i][j];
    Cplx diag(0);
    if (i == 0)
      for (double za : z) diag += inv2(tij - za);
    for (int q = 0; q < m; ++q) {
      if (q == p) continue;
      auto [k, b] = idx[q];
      const Cplx d = tij - t.groups[k][b];
      if (k == i) {
        diag -= 2.0 * inv2(d);
        h[p][q] = 2.0 * inv2(d);
      } else if (k == i - 1 || k == i + 1) {
        diag += inv2(d);
        h[p][q] = -inv2(d);
      }
    }
    h[p][p] = diag;
  }

  if (nondegenerate) {
    if (m == 0) {
      *nondegenerate = true;  // empty determinant is 1
    } else {
      Eigen::MatrixXcd em(m, m);
      double scale = 1.0;
      for (int p = 0; p < m; ++p) {
        double row_max = 0;
        for (int q = 0; q < m; ++q) {
          em(p, q) = h[p][q];
          row_max = std::max(row_max, std::abs(h[p][q]));
        }
        scale *= std::max(row_max, 1e-300);
      }
      *nondegenerate = std::abs(em.partialPivLu().determinant()) > hessian_tol * scale;
    }
  }
  return h;
}

void canonicalize(CriticalPoint& cp) {
  for (auto& group : cp.roots)
    std::sort(group.begin(), group.end(), [](const Cplx& a, const Cplx& b) {
      if (a.real() != b.real()) return a.real() < b.real();
      return a.imag() < b.imag();
    });
  cp.y.clear();
  for (const auto& group : cp.roots) cp.y.push_back(Poly<Cplx>::from_roots(group));
}

CriticalPoint newton_polish(const MasterData& md, const std::vector<double>& z,
                            const TConfig& t0, const RunConfig& cfg) {
  check_shape(md, z, t0);
  TConfig t = t0;
  const int m = md.num_vars();

  auto rel_residual = [&](std::vector<Cplx>& res) {
    std::vector<double> scales;
    res = bae_residual(md, z, t, &scales);
    double worst = 0;
    // Purely relative to the per-equation term scale: a configuration
    // escaping to infinity makes every term small without the terms ever
    // cancelling, and must not be accepted as converged.
    for (size_t k = 0; k < res.size(); ++k)
      worst = std::max(worst, std::abs(res[k]) / std::max(scales[k], 1e-300));
    return worst;
  };

  std::vector<Cplx> res;
  double rr = rel_residual(res);
  int iter = 0;
  while (rr > cfg.residual_tol) {
    if (++iter > cfg.max_newton_iters) {
      std::ostringstream os;
      os << "no-convergence: relative residual " << rr << " after " << cfg.max_newton_iters
         << " Newton iterations";
      throw ConvergenceError(os.str());
    }
    Mat<Cplx> h = hessian(md, z, t, nullptr, cfg.hessian_tol);
    Eigen::MatrixXcd j(m, m);
    Eigen::VectorXcd f(m);
    for (int p = 0; p < m; ++p) {
      f(p) = res[p];
      for (int q = 0; q < m; ++q) j(p, q) = h[p][q];
    }
    Eigen::VectorXcd delta = j.partialPivLu().solve(f);
    int p = 0;
    for (auto& group : t.groups)
      for (auto& root : group) root -= delta(p++);
    for (const auto& group : t.groups)
      for (const auto& root : group)
        if (!std::isfinite(root.real()) || !std::isfinite(root.imag()))
          throw ConvergenceError("no-convergence: Newton iterate diverged");
    rr = rel_residual(res);  // pole crossings surface as pole errors here
  }

  CriticalPoint cp;
  cp.z = z;
  cp.roots = t.groups;
  cp.residual = rr;
  hessian(md, z, t, &cp.hessian_ok, cfg.hessian_tol);
  canonicalize(cp);
  return cp;
}

TransformedSolution solve_transformed(const Partition& lambda, int e, const RunConfig& cfg) {
  if (e < 1 || e > lambda.rows() + 1 || (e > 1 && lambda.part(e - 1) <= lambda.part(e)))
    throw DomainError("cannot add a box to lambda in row " + std::to_string(e));
  TransformedSolution ts;
  ts.e = e;
  const int m = e - 1;
  if (m == 0) return ts;

  auto lam = [&](int i) { return static_cast<double>(lambda.part(i)); };
  // G_i(s) = (lambda_i - lambda_{i+1})/s_i + delta_{1i}/(s_i - 1)
  //        - (delta_{i1}-1)/(s_i - s_{i-1}) - (delta_{(i+1)e}-1)/(s_i - s_{i+1})
  auto system = [&](const std::vector<double>& s, std::vector<double>& g, Mat<double>& j) {
    g.assign(m, 0.0);
    j = zero_matrix<double>(m, m);
    for (int i = 1; i <= m; ++i) {
      const double si = s[i - 1];
      g[i - 1] += (lam(i) - lam(i + 1)) / si;
      j[i - 1][i - 1] -= (lam(i) - lam(i + 1)) / (si * si);
      if (i == 1) {
        g[i - 1] += 1.0 / (si - 1.0);
        j[i - 1][i - 1] -= 1.0 / ((si - 1.0) * (si - 1.0));
      }
      if (i > 1) {  // delta_{i1} - 1 = -1
        const double d = si - s[i - 2];
        g[i - 1] += 1.0 / d;
        j[i - 1][i - 1] -= 1.0 / (d * d);
        j[i - 1][i - 2] += 1.0 / (d * d);
      }
      if (i + 1 != e) {  // delta_{(i+1)e} - 1 = -1
        const double d = si - s[i];
        g[i - 1] += 1.0 / d;
        j[i - 1][i - 1] -= 1.0 / (d * d);
        j[i - 1][i] += 1.0 / (d * d);
      }
    }
  };

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> uni(0.02, 0.98);
  std::vector<std::vector<double>> found;
  Eigen::MatrixXd j(m, m);
  for (int start = 0; start < cfg.multistarts; ++start) {
    std::vector<double> s(m);
    for (double& x : s) x = uni(rng);
    bool ok = true;
    for (int it = 0; it < cfg.max_newton_iters && ok; ++it) {
      std::vector<double> g;
      Mat<double> jm;
      // guard poles of the transformed system
      for (int i = 0; i < m && ok; ++i) {
        if (std::abs(s[i]) < 1e-12 || std::abs(s[i] - 1.0) < 1e-12 || std::abs(s[i]) > 1e3)
          ok = false;
        for (int k = i + 1; k < m; ++k)
          if (std::abs(s[i] - s[k]) < 1e-12) ok = false;
      }
      if (!ok) break;
      system(s, g, jm);
      double gn = 0;
      for (double x : g) gn = std::max(gn, std::abs(x));
      if (gn <= 1e-13) break;
      Eigen::VectorXd f(m);
      for (int p = 0; p < m; ++p) {
        f(p) = g[p];
        for (int q = 0; q < m; ++q) j(p, q) = jm[p][q];
      }
      Eigen::VectorXd delta = j.partialPivLu().solve(f);
      if (!delta.allFinite()) { ok = false; break; }
      for (int p = 0; p < m; ++p) s[p] -= delta(p);
    }
    if (!ok) continue;
    std::vector<double> g;
    Mat<double> jm;
    system(s, g, jm);
    double gn = 0;
    for (double x : g) gn = std::max(gn, std::abs(x));
    if (gn > 1e-12) continue;
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q) j(p, q) = jm[p][q];
    if (std::abs(j.partialPivLu().determinant()) < 1e-10) continue;  // degenerate
    found.push_back(s);
  }
  if (found.empty())
    throw ConvergenceError("transformed-unsolved: no nondegenerate solution found");
  for (const auto& s : found)
    for (int p = 0; p < m; ++p)
      if (std::abs(s[p] - found[0][p]) > 1e-9)
        throw ConvergenceError("transformed-unsolved: multistart solutions disagree");

  // closed form for the first coordinate; c is the content of the added box
  const double c = lambda.part(e) + 1 - e;
  const double closed = 1.0 - 1.0 / (lam(1) - c);
  if (std::abs(found[0][0] - closed) > 1e-12)
    throw ConvergenceError("transformed-unsolved: s_1 deviates from the closed form");
  ts.s = found[0];
  return ts;
}

TConfig rv_glue(const CriticalPoint& base, const TransformedSolution& ts, double R) {
  TConfig t;
  t.groups = base.roots;
  for (int i = 1; i < ts.e; ++i) {
    if (i > static_cast<int>(t.groups.size()))
      throw DomainError("gluing row exceeds the number of root groups");
    t.groups[i - 1].push_back(Cplx(ts.s[i - 1] * R));
  }
  return t;
}

namespace {

void require_increasing(const std::vector<double>& z, const char* what) {
  for (size_t a = 0; a + 1 < z.size(); ++a)
    if (!(z[a] < z[a + 1]))
      throw DomainError(std::string(what) + " must be strictly increasing");
}

std::vector<double> lerp(const std::vector<double>& a, const std::vector<double>& b,
                         double tau) {
  std::vector<double> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = (1 - tau) * a[i] + tau * b[i];
  return out;
}

void collision_scan(const CriticalPoint& cp, double tol) {
  auto near = [&](const Cplx& x, const Cplx& y) {
    return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
  };
  for (size_t g = 0; g < cp.roots.size(); ++g)
    for (size_t j = 0; j < cp.roots[g].size(); ++j) {
      for (size_t k = j + 1; k < cp.roots[g].size(); ++k)
        if (near(cp.roots[g][j], cp.roots[g][k]))
          throw ConvergenceError("root collision within a group during continuation");
      if (g + 1 < cp.roots.size())
        for (const Cplx& u : cp.roots[g + 1])
          if (near(cp.roots[g][j], u))
            throw ConvergenceError("root collision between adjacent groups during continuation");
    }
}

/// Smallest relative separation over the pairs that collision_scan checks.
double min_pair_separation(const CriticalPoint& cp) {
  double best = std::numeric_limits<double>::infinity();
  auto sep = [](const Cplx& x, const Cplx& y) {
    return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)});
  };
  for (size_t g = 0; g < cp.roots.size(); ++g)
    for (size_t j = 0; j < cp.roots[g].size(); ++j) {
      for (size_t k = j + 1; k < cp.roots[g].size(); ++k)
        best = std::min(best, sep(cp.roots[g][j], cp.roots[g][k]));
      if (g + 1 < cp.roots.size())
        for (const Cplx& u : cp.roots[g + 1]) best = std::min(best, sep(cp.roots[g][j], u));
    }
  return best;
}

/// One-sided relative Hausdorff distance between two root configurations;
/// large values mean the corrector left the predictor's neighbourhood.
double corrector_displacement(const TConfig& guess, const CriticalPoint& next) {
  double worst = 0;
  for (size_t g = 0; g < guess.groups.size(); ++g)
    for (const Cplx& t0 : guess.groups[g]) {
      double best = std::numeric_limits<double>::infinity();
      for (const Cplx& t1 : next.roots[g])
        best = std::min(best, std::abs(t1 - t0) / std::max(1.0, std::abs(t0)));
      worst = std::max(worst, best);
    }
  return worst;
}

/// Predictor-corrector tracking of the Bethe roots along the straight z-path.
/// Returns true on success; on a stall returns false with *out holding the
/// farthest certified point reached, so a caller can switch representations.
bool continue_roots_path(const MasterData& md, const CriticalPoint& cp,
                         const std::vector<double>& z_target, const RunConfig& cfg,
                         CriticalPoint* out) {
  require_increasing(cp.z, "continuation start z");
  require_increasing(z_target, "continuation target z");
  if (z_target.size() != cp.z.size()) throw DomainError("path endpoints differ in length");
  if (z_target == cp.z) {
    *out = cp;
    return true;
  }

  const int m = md.num_vars();
  // z(sigma) = z_target + sigma * (z_start - z_target); sigma runs 1 -> 0
  // multiplicatively because the asymptotic start is geometrically large.
  // sigma is tracked directly (not as 1 - tau) so that the endgame, where
  // the remaining z-change sigma*|dz| is still of order one even though
  // sigma is tiny, does not stall on floating-point granularity.
  double dz_scale = 0, z_scale = 1;
  for (size_t a = 0; a < z_target.size(); ++a) {
    dz_scale = std::max(dz_scale, std::abs(cp.z[a] - z_target[a]));
    z_scale = std::max(z_scale, std::abs(z_target[a]));
  }
  auto z_at = [&](double sigma) {
    std::vector<double> out(z_target.size());
    for (size_t a = 0; a < out.size(); ++a)
      out[a] = z_target[a] + sigma * (cp.z[a] - z_target[a]);
    return out;
  };

  CriticalPoint cur = cp;
  double sigma = 1.0;
  double rho = 0.5;  // each step multiplies sigma by this factor
  int streak = 0;
  while (sigma > 0.0) {
    double sigma_next = (sigma * dz_scale <= 1e-12 * z_scale) ? 0.0 : sigma * rho;
    std::vector<double> zt = z_at(sigma_next);
    TConfig guess{cur.roots};
    // Euler predictor: dt/dsigma = -H^{-1} dF/dsigma; only group 1 sees z
    if (m > 0 && !guess.groups.empty() && !guess.groups[0].empty()) {
      try {
        Mat<Cplx> h = hessian(md, z_at(sigma), guess);
        Eigen::MatrixXcd j(m, m);
        Eigen::VectorXcd dF = Eigen::VectorXcd::Zero(m);
        std::vector<std::pair<int, int>> idx;
        for (size_t g = 0; g < guess.groups.size(); ++g)
          for (size_t jj = 0; jj < guess.groups[g].size(); ++jj)
            idx.emplace_back(static_cast<int>(g), static_cast<int>(jj));
        std::vector<double> znow = z_at(sigma);
        for (int p = 0; p < m; ++p) {
          for (int q = 0; q < m; ++q) j(p, q) = h[p][q];
          if (idx[p].first == 0) {
            Cplx t0 = guess.groups[0][idx[p].second];
            for (int a = 0; a < md.n; ++a) {
              double dz = cp.z[a] - z_target[a];  // dz_a/dsigma
              dF(p) -= dz / ((t0 - znow[a]) * (t0 - znow[a]));
            }
          }
        }
        Eigen::VectorXcd dt = j.partialPivLu().solve(-dF) * (sigma_next - sigma);
        if (dt.allFinite()) {
          int p = 0;
          for (auto& group : guess.groups)
            for (auto& root : group) root += dt(p++);
        }
      } catch (const std::runtime_error&) {
        // predictor is best-effort; fall back to the plain previous roots
        guess.groups = cur.roots;
      }
    }
    try {
      CriticalPoint next = newton_polish(md, zt, guess, cfg);
      // Newton may converge onto a different solution branch from a poor
      // guess; reject steps whose corrector moves far from the predictor.
      if (corrector_displacement(guess, next) > 0.25)
        throw ConvergenceError("corrector left the predictor neighbourhood");
      // Near a collision the true real path can pinch and go complex; a real
      // Newton iterate can never follow it and instead tunnels onto a nearby
      // real branch.  Capping the movement by the pair separation forces the
      // tracker to resolve the pinch until collision_scan stalls it.
      const double dmin = min_pair_separation(cur);
      if (dmin < 0.5 && corrector_displacement(TConfig{cur.roots}, next) > 0.5 * dmin)
        throw ConvergenceError("step too large near a root collision");
      collision_scan(next, cfg.collision_tol);
      if (!next.hessian_ok)
        throw ConvergenceError("Hessian degenerated during continuation");
      cur = std::move(next);
      sigma = sigma_next;
      if (++streak >= 3) {
        rho = std::max(rho * rho, 0.05);
        streak = 0;
      }
    } catch (const std::runtime_error&) {
      rho = std::sqrt(rho);
      streak = 0;
      if (rho > 1.0 - 1e-9) {
        *out = cur;
        return false;
      }
    }
  }
  *out = cur;
  return true;
}

}  // namespace

CriticalPoint continue_critical_point(const MasterData& md, const CriticalPoint& cp,
                                      const std::vector<double>& z_target,
                                      const RunConfig& cfg) {
  CriticalPoint out;
  if (!continue_roots_path(md, cp, z_target, cfg, &out)) {
    std::ostringstream os;
    os << "path-stuck: continuation stalled at z = " << (out.z.empty() ? 0.0 : out.z.back());
    throw ConvergenceError(os.str());
  }
  return out;
}

namespace {

/// Fallback continuation through root collisions: along a real z-path the
/// Bethe roots of a critical point may collide and leave the real axis even
/// though the underlying polynomial subspace varies smoothly.  Retrace the
/// path in the cell coordinates of the subspace (where the motion is regular)
/// and re-derive the roots from the coordinate map at the target.
CriticalPoint wronskian_space_continuation(const MasterData& md, const CriticalPoint& cp,
                                           const std::vector<double>& z_target,
                                           const RunConfig& cfg) {
  const Partition& mu = md.mu;
  const int r = md.r;
  const int d = mu.part(1) + r;  // minimal ambient degree containing the cell

  std::vector<Cplx> z0(cp.z.begin(), cp.z.end());
  Subspace<Cplx> xc = invert_coordinate_map<Cplx>(cp.y, mu, r, d,
                                                  Poly<Cplx>::from_roots(z0), cfg.pivot_tol);
  std::vector<double> coords;
  for (const Cplx& c : echelon_basis(xc, cfg.pivot_tol).coordinates())
    coords.push_back(c.real());  // the subspace is real along the whole path

  double dz_scale = 0, z_scale = 1;
  for (size_t a = 0; a < z_target.size(); ++a) {
    dz_scale = std::max(dz_scale, std::abs(cp.z[a] - z_target[a]));
    z_scale = std::max(z_scale, std::abs(z_target[a]));
  }
  auto target_at = [&](double sigma) {
    std::vector<double> zt(z_target.size());
    for (size_t a = 0; a < zt.size(); ++a)
      zt[a] = z_target[a] + sigma * (cp.z[a] - z_target[a]);
    return Poly<double>::from_roots(zt);
  };

  CellChart chart(mu, r, d);
  coords = solve_wronskian_cell(chart, target_at(1.0), coords, cfg.residual_tol,
                                cfg.max_newton_iters);
  double sigma = 1.0, rho = 0.7;
  while (sigma > 0.0) {
    double sigma_next = (sigma * dz_scale <= 1e-12 * z_scale) ? 0.0 : sigma * rho;
    try {
      coords = solve_wronskian_cell(chart, target_at(sigma_next), coords, cfg.residual_tol,
                                    cfg.max_newton_iters);
      sigma = sigma_next;
      rho = 0.7;
    } catch (const ConvergenceError&) {
      rho = std::sqrt(rho);
      if (rho > 1.0 - 1e-9) {
        std::ostringstream os;
        os << "path-stuck: cell-coordinate continuation stalled at sigma = " << sigma;
        throw ConvergenceError(os.str());
      }
    }
  }

  auto basis = chart.basis(coords);
  auto y = coordinate_map(Subspace<double>{basis, d}, cfg.pivot_tol);
  TConfig roots;
  for (int a = 1; a < r; ++a) roots.groups.push_back(poly_roots(y[a]));
  try {
    return newton_polish(md, z_target, roots, cfg);
  } catch (const std::runtime_error&) {
    // The endpoint is a degenerate critical point: Bethe roots have collided,
    // possibly on a marked point, so the BAE residual cannot certify it.  The
    // subspace itself is regular; certify through the Wronskian instead.
    CriticalPoint out;
    out.z = z_target;
    out.roots = roots.groups;
    canonicalize(out);
    out.y.clear();
    for (int a = 1; a < r; ++a) {
      std::vector<Cplx> cs(y[a].degree() + 1);
      for (int k = 0; k <= y[a].degree(); ++k) cs[k] = Cplx(y[a].coeff(k));
      out.y.emplace_back(std::move(cs));
    }
    Poly<double> w = wronskian(basis);
    Poly<double> target = target_at(0.0);
    double scale = std::max(std::max(1.0, target.max_coeff_magnitude()),
                            w.max_coeff_magnitude() / std::abs(chart.c0));
    double worst = 0;
    for (int p = 0; p < target.degree(); ++p)
      worst = std::max(worst, std::abs(w.coeff(p) / chart.c0 - target.coeff(p)));
    out.residual = worst / scale;
    out.hessian_ok = false;
    out.degenerate = true;
    return out;
  }
}

}  // namespace

CriticalPoint marcus_critical_point(const StandardTableau& t, const std::vector<double>& z,
                                    int r, const RunConfig& cfg) {
  const int n = t.n();
  if (static_cast<int>(z.size()) != n) throw DomainError("z must have length n");
  require_increasing(z, "z");
  if (t.shape().rows() > r) throw DomainError("tableau has more than r rows");

  // asymptotic schedule: geometrically separated parameters
  std::vector<double> z_asym(n);
  for (int k = 0; k < n; ++k) z_asym[k] = std::pow(cfg.glue_factor, k);

  CriticalPoint cp;
  cp.z = {z_asym[0]};
  cp.roots.assign(r - 1, {});
  cp.residual = 0;
  cp.hessian_ok = true;
  canonicalize(cp);

  for (int k = 2; k <= n; ++k) {
    Partition lambda = t.restrict(k - 1).shape();
    const int e = t.row_of(k);
    TransformedSolution ts = solve_transformed(lambda, e, cfg);
    TConfig guess = rv_glue(cp, ts, z_asym[k - 1]);
    MasterData md = MasterData::all_box(t.restrict(k).shape(), r);
    std::vector<double> zk(z_asym.begin(), z_asym.begin() + k);
    cp = newton_polish(md, zk, guess, cfg);
    if (!cp.hessian_ok)
      throw ConvergenceError("degenerate Hessian while gluing box " + std::to_string(k));
  }

  MasterData md = MasterData::all_box(t.shape(), r);
  CriticalPoint reached;
  if (continue_roots_path(md, cp, z, cfg, &reached)) return reached;
  // Root-space tracking stalls where Bethe roots collide and leave the real
  // axis; resume from the farthest certified point in cell coordinates.
  return wronskian_space_continuation(md, reached, z, cfg);
}

std::vector<double> gaudin_eigenvalues(const MasterData& md, const std::vector<double>& z,
                                       const CriticalPoint& cp, const RunConfig& cfg) {
  if (!cp.degenerate) return z_gradient(md, z, TConfig{cp.roots});

  // Degenerate point: some Bethe roots sit on a marked point and the gradient
  // formula is singular.  The eigenvalue tuple is still analytic in z (the
  // spectrum stays simple), so evaluate it at z_a + h (a+1)^2 -- where the
  // critical point, re-derived from the subspace in cell coordinates, is
  // regular -- and extrapolate h -> 0 with nodes h, h/2, h/4.
  const Partition& mu = md.mu;
  const int r = md.r;
  const int d = mu.part(1) + r;
  std::vector<Cplx> zc(z.begin(), z.end());
  Subspace<Cplx> xc = invert_coordinate_map<Cplx>(cp.y, mu, r, d,
                                                  Poly<Cplx>::from_roots(zc), cfg.pivot_tol);
  std::vector<double> base;
  for (const Cplx& c : echelon_basis(xc, cfg.pivot_tol).coordinates())
    base.push_back(c.real());
  CellChart chart(mu, r, d);
  base = solve_wronskian_cell(chart, Poly<double>::from_roots(z), base, cfg.residual_tol,
                              cfg.max_newton_iters);

  double z_scale = 1;
  for (double za : z) z_scale = std::max(z_scale, std::abs(za));
  for (double h0 : {2e-4, 1e-3, 5e-5}) {
    try {
      std::vector<std::vector<double>> e;
      for (int half = 0; half < 3; ++half) {
        const double h = h0 * z_scale / (1 << half);
        std::vector<double> zt(z);
        for (size_t a = 0; a < zt.size(); ++a) zt[a] += h * double((a + 1) * (a + 1));
        auto coords = solve_wronskian_cell(chart, Poly<double>::from_roots(zt), base,
                                           cfg.residual_tol, cfg.max_newton_iters);
        auto y = coordinate_map(Subspace<double>{chart.basis(coords), d}, cfg.pivot_tol);
        TConfig roots;
        for (int a = 1; a < r; ++a) roots.groups.push_back(poly_roots(y[a]));
        CriticalPoint ph = newton_polish(md, zt, roots, cfg);
        e.push_back(z_gradient(md, zt, TConfig{ph.roots}));
      }
      // Richardson on the h^1 and h^2 error terms: (E(h) - 6 E(h/2) + 8 E(h/4)) / 3
      std::vector<double> out(md.n);
      for (int a = 0; a < md.n; ++a) out[a] = (e[0][a] - 6 * e[1][a] + 8 * e[2][a]) / 3.0;
      return out;
    } catch (const std::runtime_error&) {
      continue;  // this step size hits another degeneration; try the next one
    }
  }
  throw ConvergenceError("degenerate critical point: eigenvalue extrapolation failed");
}

}  // namespace schubert
