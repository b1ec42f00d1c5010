// End-to-end acceptance suite: one pass/fail line per criterion.
//
//  1. exact Jucys-Murphy spectrum <-> tableau contents, bijectively
//  2. Gaudin family on random instances: commuting, simple, real spectrum
//  3. Jucys-Murphy scaling limit converges at the expected 10x/decade rate
//  4. Marcus critical points: certified residuals, nondegenerate, distinct,
//     transformed closed form reproduced at every gluing step
//  5. z-gradients of the critical points match the Gaudin spectrum bijectively
//  6. eigenvalue asymptotics z_a * dS/dz_a -> content, 10x per decade
//  7. grand agreement: construction = elementary = spectral labelling on all
//     intersection points, theta certified
//  8. reality and pairwise separation of all intersection points
//  9. exact regression of the two-box coordinate-map discontinuity

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "schubert/bethe.hpp"
#include "schubert/errors.hpp"
#include "schubert/labelling.hpp"
#include "schubert/operators.hpp"
#include "schubert/partition.hpp"
#include "schubert/subspace.hpp"
#include "schubert/tableau.hpp"
#include "schubert/weightspace.hpp"

using namespace schubert;

namespace {

int failures = 0;

template <class F>
void criterion(int num, const char* what, F&& body) {
  auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note = std::string(" [") + e.what() + "]";
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("criterion %d: %s  (%.1fs) %s%s\n", num, ok ? "PASS" : "FAIL", secs, what,
              note.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

int rep_rank(const Partition& mu) { return std::max(1, mu.rows()); }

// ---------------------------------------------------------------- criterion 1
bool jm_spectrum_matches_contents() {
  for (int n = 1; n <= 7; ++n) {
    for (const Partition& mu : partitions_of(n, 4)) {
      SingularWeightBasis b = singular_weight_basis(n, rep_rank(mu), mu);
      auto lines = jm_joint_spectrum(b);
      std::set<std::vector<int>> spectrum;
      for (const auto& line : lines) {
        std::vector<int> vals;
        for (const Int& v : line.values) vals.push_back(v.convert_to<int>());
        if (!spectrum.insert(vals).second) return false;  // not simple
      }
      std::set<std::vector<int>> contents;
      for (const auto& t : enumerate_syt(mu)) contents.insert(t.content_vector());
      if (spectrum != contents) return false;
      if (lines.size() != static_cast<size_t>(syt_count(mu))) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- criterion 2
bool gaudin_random_instances() {
  RunConfig cfg;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> pick_n(2, 5);
  std::uniform_real_distribution<double> pick_z(0.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = pick_n(rng);
    auto shapes = partitions_of(n, n);
    const Partition& mu = shapes[rng() % shapes.size()];
    std::vector<double> z;
    for (;;) {
      z.clear();
      for (int a = 0; a < n; ++a) z.push_back(pick_z(rng));
      std::sort(z.begin(), z.end());
      double gap = 1e9;
      for (int a = 0; a + 1 < n; ++a) gap = std::min(gap, z[a + 1] - z[a]);
      if (gap > 0.1) break;
    }
    SingularWeightBasis b = singular_weight_basis(n, rep_rank(mu), mu);
    std::vector<Mat<double>> ops;
    for (int a = 1; a <= n; ++a) ops.push_back(gaudin_hamiltonian(a, z, b));
    // explicit commutator bound
    const int dim = b.dim();
    for (size_t p = 0; p < ops.size(); ++p)
      for (size_t q = p + 1; q < ops.size(); ++q) {
        Mat<double> c = mat_mul(ops[p], ops[q]);
        Mat<double> d = mat_mul(ops[q], ops[p]);
        double scale = dim * matrix_scale(ops[p]) * matrix_scale(ops[q]);
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j)
            if (std::abs(c[i][j] - d[i][j]) > 1e-12 * std::max(1.0, scale)) return false;
      }
    // simple real joint spectrum (joint_spectrum throws on violations)
    auto lines = joint_spectrum(ops, cfg);
    if (lines.size() != static_cast<size_t>(dim)) return false;
    for (size_t i = 0; i < lines.size(); ++i) {
      for (const Cplx& v : lines[i].values)
        if (std::abs(v.imag()) > 1e-8 * std::max(1.0, std::abs(v))) return false;
      for (size_t j = i + 1; j < lines.size(); ++j) {
        double sep = 0;
        for (size_t a = 0; a < lines[i].values.size(); ++a)
          sep = std::max(sep, std::abs(lines[i].values[a] - lines[j].values[a]));
        if (sep <= 1e-6) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------- criterion 3
bool jm_limit_rate() {
  RunConfig cfg;
  struct Inst { int n; Partition mu; std::vector<double> z; };
  std::vector<Inst> instances = {
      {3, Partition{2, 1}, {1.0, 2.0, 3.0}},
      {4, Partition{2, 1, 1}, {0.0, 1.0, 2.0, 3.0}},
      {4, Partition{2, 2}, {1.0, 2.0, 4.0, 8.0}},
  };
  for (const auto& inst : instances) {
    SingularWeightBasis b = singular_weight_basis(inst.n, rep_rank(inst.mu), inst.mu);
    auto limits = jm_scaling_limit(inst.z, b, {100.0, 1000.0}, cfg);
    double err_lo = 0, err_hi = 0;
    for (const auto& lim : limits) {
      for (size_t a = 0; a < lim.contents.size(); ++a) {
        err_lo = std::max(err_lo, std::abs(lim.checkpoints[0][a] - lim.contents[a]));
        err_hi = std::max(err_hi, std::abs(lim.checkpoints[1][a] - lim.contents[a]));
      }
    }
    if (err_hi < 1e-13) continue;  // converged exactly; rate test vacuous
    double ratio = err_lo / err_hi;
    if (ratio < 5.0 || ratio > 20.0) return false;
  }
  return true;
}

// instance set shared by criteria 4 and 5: mu |- n <= 5, <= 3 rows, r = 3,
// z = (1,...,n)
struct BetheInstance {
  Partition mu;
  std::vector<double> z;
  std::vector<StandardTableau> tableaux;
  std::vector<CriticalPoint> points;
};

std::vector<BetheInstance> bethe_instances() {
  RunConfig cfg;
  std::vector<BetheInstance> out;
  for (int n = 1; n <= 5; ++n) {
    for (const Partition& mu : partitions_of(n, 3)) {
      BetheInstance inst;
      inst.mu = mu;
      for (int a = 1; a <= n; ++a) inst.z.push_back(a);
      inst.tableaux = enumerate_syt(mu);
      for (const auto& t : inst.tableaux)
        inst.points.push_back(marcus_critical_point(t, inst.z, 3, cfg));
      out.push_back(std::move(inst));
    }
  }
  return out;
}

// ---------------------------------------------------------------- criterion 4
bool marcus_construction(const std::vector<BetheInstance>& instances) {
  RunConfig cfg;
  for (const auto& inst : instances) {
    for (size_t k = 0; k < inst.points.size(); ++k) {
      const CriticalPoint& cp = inst.points[k];
      // Degenerate points (roots collided on a marked point) carry a relative
      // Wronskian residual instead of a BAE residual and no Hessian verdict.
      if (cp.residual > 1e-10 || (!cp.degenerate && !cp.hessian_ok)) return false;
      // y-tuples pairwise distinct
      for (size_t j = 0; j < k; ++j) {
        double dist = 0;
        for (size_t a = 0; a < cp.y.size(); ++a)
          dist = std::max(dist, coeff_distance(cp.y[a], inst.points[j].y[a]));
        if (dist < 1e-6) return false;
      }
      // transformed closed form s_1 = 1 - (lambda_1 - c)^{-1} at every
      // gluing step that solves a transformed system (box added below row 1)
      const StandardTableau& t = inst.tableaux[k];
      for (int a = 2; a <= t.n(); ++a) {
        Partition lambda = t.restrict(a - 1).shape();
        int e = t.row_of(a);
        if (e < 2) continue;
        TransformedSolution ts = solve_transformed(lambda, e, cfg);
        double c = lambda.added_box_content(e);
        double closed = 1.0 - 1.0 / (lambda.part(1) - c);
        if (std::abs(ts.s[0] - closed) > 1e-12) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------- criterion 5
bool spectral_match(const std::vector<BetheInstance>& instances) {
  RunConfig cfg;
  for (const auto& inst : instances) {
    const int n = static_cast<int>(inst.z.size());
    SingularWeightBasis b = singular_weight_basis(n, rep_rank(inst.mu), inst.mu);
    std::vector<Mat<double>> ops;
    for (int a = 1; a <= n; ++a) ops.push_back(gaudin_hamiltonian(a, inst.z, b));
    auto lines = joint_spectrum(ops, cfg);
    if (lines.size() != inst.points.size()) return false;
    MasterData md = MasterData::all_box(inst.mu, 3);
    std::vector<bool> used(lines.size(), false);
    for (const auto& cp : inst.points) {
      auto grad = gaudin_eigenvalues(md, inst.z, cp, cfg);
      int match = -1;
      for (size_t j = 0; j < lines.size(); ++j) {
        double dist = 0;
        for (int a = 0; a < n; ++a)
          dist = std::max(dist, std::abs(lines[j].values[a] - grad[a]));
        if (dist <= 1e-6) {
          if (match >= 0) return false;  // ambiguous
          match = static_cast<int>(j);
        }
      }
      if (match < 0 || used[match]) return false;
      used[match] = true;
    }
  }
  return true;
}

// ---------------------------------------------------------------- criterion 6
bool eigenvalue_asymptotics() {
  RunConfig cfg;
  for (const Partition& mu : {Partition{2, 1}, Partition{2, 2}}) {
    const int n = mu.size();
    const int r = mu.rows();
    MasterData md = MasterData::all_box(mu, r);
    for (const auto& t : enumerate_syt(mu)) {
      auto contents = t.content_vector();
      std::vector<double> errs;
      for (int decade = 1; decade <= 3; ++decade) {
        std::vector<double> z(n);
        double base = std::pow(10.0, decade);
        double p = base;
        for (int a = 0; a < n; ++a, p *= base) z[a] = p;  // z_a = (10^k)^a
        CriticalPoint cp = marcus_critical_point(t, z, r, cfg);
        auto grad = z_gradient(md, z, TConfig{cp.roots});
        double err = 0;
        for (int a = 0; a < n; ++a) err = std::max(err, std::abs(z[a] * grad[a] - contents[a]));
        errs.push_back(err);
      }
      for (size_t k = 0; k + 1 < errs.size(); ++k) {
        if (errs[k + 1] < 1e-13) continue;
        double ratio = errs[k] / errs[k + 1];
        if (ratio < 5.0 || ratio > 20.0) return false;
      }
    }
  }
  return true;
}

// criteria 7 and 8 share the instance grid: mu |- n <= 5 in the 2x3 and 3x3
// boxes, z = (0,...,n-1)
struct BoxInstance { int r, d; Partition mu; std::vector<double> z; };

std::vector<BoxInstance> box_instances() {
  std::vector<BoxInstance> out;
  for (auto [r, d] : {std::pair{2, 5}, std::pair{3, 6}}) {
    for (int n = 1; n <= 5; ++n)
      for (const Partition& mu : partitions_of(n, r, d - r)) {
        std::vector<double> z;
        for (int a = 0; a < n; ++a) z.push_back(a);
        out.push_back({r, d, mu, std::move(z)});
      }
  }
  return out;
}

// ---------------------------------------------------------------- criterion 7
bool grand_agreement(const std::vector<BoxInstance>& grid) {
  RunConfig cfg;
  for (const auto& inst : grid) {
    AgreementCertificate cert = verify_agreement(inst.z, inst.mu, inst.r, inst.d, cfg);
    if (!cert.pass) return false;
    if (cert.points.size() != static_cast<size_t>(syt_count(inst.mu))) return false;
    std::set<std::vector<std::vector<int>>> seen;
    for (const auto& p : cert.points) {
      if (!p.agree || p.el != p.construction || p.mtv != p.construction) return false;
      if (p.theta_distance > 1e-8) return false;
      seen.insert(p.construction.rows());
    }
    if (seen.size() != cert.points.size()) return false;  // labels not bijective
  }
  return true;
}

// ---------------------------------------------------------------- criterion 8
bool reality_and_separation(const std::vector<BoxInstance>& grid) {
  RunConfig cfg;
  for (const auto& inst : grid) {
    auto pts = solve_intersection(inst.z, inst.mu, inst.r, inst.d, cfg);
    std::vector<std::vector<double>> coords;
    for (const auto& pt : pts) {
      // real by construction (solve_intersection certifies realness); the
      // Wronskian of the real representative must still match the target
      Poly<double> w = monic_wronskian(pt.x.basis, static_cast<double*>(nullptr), 1e-9);
      Poly<double> target = Poly<double>::from_roots(inst.z);
      if (coeff_distance(w, target) > 1e-6 * std::max(1.0, target.max_coeff_magnitude()))
        return false;
      coords.push_back(echelon_basis(pt.x).coordinates());
    }
    for (size_t i = 0; i < coords.size(); ++i)
      for (size_t j = i + 1; j < coords.size(); ++j) {
        double sep = 0;
        for (size_t k = 0; k < coords[i].size(); ++k)
          sep = std::max(sep, std::abs(coords[i][k] - coords[j][k]));
        if (sep <= 1e-6) return false;
      }
  }
  return true;
}

// ---------------------------------------------------------------- criterion 9
bool exact_discontinuity_regression() {
  for (int s : {7, 10, 1000, 100000}) {
    Subspace<Rat> xs{{Poly<Rat>({Rat(s), Rat(0), Rat(1)}), Poly<Rat>({Rat(0), Rat(1)})}, 3};
    auto theta = coordinate_map(xs);
    if (theta.size() != 2) return false;
    if (theta[0] != Poly<Rat>({Rat(-s), Rat(0), Rat(1)})) return false;
    if (theta[1] != Poly<Rat>({Rat(0), Rat(1)})) return false;  // limit (1, u)
  }
  Subspace<Rat> xinf{{Poly<Rat>({Rat(0), Rat(1)}), Poly<Rat>::one()}, 3};
  auto theta_inf = coordinate_map(xinf);
  if (theta_inf[0] != Poly<Rat>::one()) return false;
  if (theta_inf[1] != Poly<Rat>::one()) return false;  // theta(X_inf) = (1, 1)
  return theta_inf[1] != Poly<Rat>({Rat(0), Rat(1)});  // != lim theta(X(s))
}

}  // namespace

int main() {
  criterion(1, "exact JM spectrum = SYT contents, bijectively (n <= 7, <= 4 rows)",
            jm_spectrum_matches_contents);
  criterion(2, "Gaudin family on 50 random instances: commuting, simple, real",
            gaudin_random_instances);
  criterion(3, "JM scaling limit decays ~10x between t = 1e2 and 1e3", jm_limit_rate);

  std::vector<BetheInstance> bethe;
  std::vector<BoxInstance> grid = box_instances();
  try {
    bethe = bethe_instances();
  } catch (const std::exception& e) {
    std::printf("criterion 4: FAIL  construction threw [%s]\n", e.what());
    std::printf("criterion 5: FAIL  construction threw [%s]\n", e.what());
    failures += 2;
  }
  if (!bethe.empty()) {
    criterion(4, "Marcus construction certified on all SYT(mu), mu |- n <= 5, r = 3",
              [&] { return marcus_construction(bethe); });
    criterion(5, "z-gradients match the Gaudin spectrum bijectively",
              [&] { return spectral_match(bethe); });
  }

  criterion(6, "eigenvalue asymptotics: z_a dS/dz_a -> content at 10x/decade",
            eigenvalue_asymptotics);
  criterion(7, "grand agreement: construction = EL = MTV on 2x3 and 3x3 grids",
            [&] { return grand_agreement(grid); });
  criterion(8, "reality and pairwise separation of all intersection points",
            [&] { return reality_and_separation(grid); });
  criterion(9, "exact regression: theta discontinuous at the two-box drop",
            exact_discontinuity_regression);

  if (failures) std::printf("%d criterion(s) FAILED\n", failures);
  else std::printf("all 9 criteria passed\n");
  return failures ? 1 : 0;
}
