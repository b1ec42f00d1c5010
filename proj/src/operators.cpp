#include "schubert/operators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "schubert/errors.hpp"

namespace schubert {

namespace {

Word swap_positions(const Word& w, int a, int b) {
  Word v = w;
  std::swap(v[a - 1], v[b - 1]);
  return v;
}

Eigen::MatrixXd to_eigen(const Mat<double>& m) {
  Eigen::MatrixXd out(m.size(), m.empty() ? 0 : m[0].size());
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) out(i, j) = m[i][j];
  return out;
}

}  // namespace

Mat<Rat> transposition_matrix(const SingularWeightBasis& b, int a, int bb) {
  if (a < 1 || bb < 1 || a > b.n || bb > b.n || a == bb)
    throw DomainError("transposition indices must be distinct and in 1..n");
  const int dim = b.dim();
  Mat<Rat> m = zero_matrix<Rat>(dim, dim);
  std::vector<Rat> image(b.words.size());
  for (int j = 0; j < dim; ++j) {
    std::fill(image.begin(), image.end(), Rat(0));
    for (size_t wi = 0; wi < b.words.size(); ++wi) {
      if (b.vectors[j][wi] == 0) continue;
      image[b.word_index(swap_positions(b.words[wi], a, bb))] += b.vectors[j][wi];
    }
    std::vector<Rat> col = b.coordinates(image);
    for (int i = 0; i < dim; ++i) m[i][j] = col[i];
  }
  return m;
}

Mat<Rat> jucys_murphy(int a, const SingularWeightBasis& b) {
  if (a < 1 || a > b.n) throw DomainError("Jucys-Murphy index must be in 1..n");
  Mat<Rat> m = zero_matrix<Rat>(b.dim(), b.dim());
  for (int bb = 1; bb < a; ++bb) {
    Mat<Rat> t = transposition_matrix(b, a, bb);
    for (int i = 0; i < b.dim(); ++i)
      for (int j = 0; j < b.dim(); ++j) m[i][j] += t[i][j];
  }
  return m;
}

namespace {

template <class S>
void check_gaudin_args(int a, const std::vector<S>& z, const SingularWeightBasis& b) {
  if (static_cast<int>(z.size()) != b.n) throw DomainError("z must have length n");
  for (size_t i = 0; i < z.size(); ++i)
    for (size_t j = i + 1; j < z.size(); ++j)
      if (z[i] == z[j]) throw DomainError("z entries must be distinct");
  if (a < 1 || a > b.n) throw DomainError("Hamiltonian index must be in 1..n");
}

}  // namespace

Mat<double> gaudin_hamiltonian(int a, const std::vector<double>& z,
                               const SingularWeightBasis& b) {
  check_gaudin_args(a, z, b);
  Mat<double> m = zero_matrix<double>(b.dim(), b.dim());
  for (int bb = 1; bb <= b.n; ++bb) {
    if (bb == a) continue;
    Mat<Rat> t = transposition_matrix(b, a, bb);
    double w = 1.0 / (z[a - 1] - z[bb - 1]);
    for (int i = 0; i < b.dim(); ++i)
      for (int j = 0; j < b.dim(); ++j) m[i][j] += w * ScalarOps<Rat>::to_double(t[i][j]);
  }
  return m;
}

Mat<Rat> gaudin_hamiltonian(int a, const std::vector<Rat>& z, const SingularWeightBasis& b) {
  check_gaudin_args(a, z, b);
  Mat<Rat> m = zero_matrix<Rat>(b.dim(), b.dim());
  for (int bb = 1; bb <= b.n; ++bb) {
    if (bb == a) continue;
    Mat<Rat> t = transposition_matrix(b, a, bb);
    Rat w = Rat(1) / (z[a - 1] - z[bb - 1]);
    for (int i = 0; i < b.dim(); ++i)
      for (int j = 0; j < b.dim(); ++j) m[i][j] += w * t[i][j];
  }
  return m;
}

std::vector<ExactEigenline> jm_joint_spectrum(const SingularWeightBasis& b) {
  struct Piece {
    Mat<Rat> span;            // rows: vectors in the singular basis
    std::vector<Int> values;  // eigenvalues so far
  };
  const int dim = b.dim();
  Mat<Rat> full = zero_matrix<Rat>(dim, dim);
  for (int i = 0; i < dim; ++i) full[i][i] = 1;
  std::vector<Piece> pieces{{full, {Int(0)}}};  // L_1 = 0

  for (int a = 2; a <= b.n; ++a) {
    Mat<Rat> la = jucys_murphy(a, b);
    std::vector<Piece> next;
    for (const Piece& piece : pieces) {
      const int k = static_cast<int>(piece.span.size());
      int found = 0;
      // integer eigenvalue candidates: contents lie in [-(n-1), n-1]
      for (int c = -(b.n - 1); c <= b.n - 1 && found < k; ++c) {
        // right kernel of (L_a - c I) restricted to the span
        Mat<Rat> m = zero_matrix<Rat>(dim, k);
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < k; ++j) {
            for (int w = 0; w < dim; ++w) m[i][j] += la[i][w] * piece.span[j][w];
            m[i][j] -= Rat(c) * piece.span[j][i];
          }
        Mat<Rat> combos = kernel(m);
        if (combos.empty()) continue;
        Piece sub;
        sub.values = piece.values;
        sub.values.push_back(Int(c));
        for (const auto& alpha : combos) {
          std::vector<Rat> v(dim, Rat(0));
          for (int j = 0; j < k; ++j) {
            if (alpha[j] == 0) continue;
            for (int w = 0; w < dim; ++w) v[w] += alpha[j] * piece.span[j][w];
          }
          sub.span.push_back(std::move(v));
        }
        found += static_cast<int>(sub.span.size());
        next.push_back(std::move(sub));
      }
      if (found != k)
        throw SpectrumError("Jucys-Murphy operator failed to split an eigenspace at a = " +
                            std::to_string(a));
    }
    pieces = std::move(next);
  }

  std::vector<ExactEigenline> out;
  for (auto& piece : pieces) {
    if (piece.span.size() != 1)
      throw SpectrumError("Jucys-Murphy joint spectrum is not simple");
    out.push_back({std::move(piece.values), std::move(piece.span[0])});
  }
  std::sort(out.begin(), out.end(),
            [](const ExactEigenline& x, const ExactEigenline& y) { return x.values < y.values; });
  return out;
}

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

void check_commuting(const std::vector<Eigen::MatrixXd>& ops, double tol) {
  for (size_t a = 0; a < ops.size(); ++a)
    for (size_t b = a + 1; b < ops.size(); ++b) {
      double scale = std::max(1.0, max_abs(ops[a]) * max_abs(ops[b]));
      double c = max_abs(ops[a] * ops[b] - ops[b] * ops[a]);
      if (c > tol * scale) {
        std::ostringstream os;
        os << "not-commuting: |[op_" << a + 1 << ", op_" << b + 1 << "]| = " << c
           << " exceeds " << tol << " * " << scale;
        throw SpectrumError(os.str());
      }
    }
}

/// Eigenpairs of a seeded random real combination of the family; eigenvectors
/// refined by inverse iteration on the combined matrix.
std::pair<Eigen::MatrixXcd, std::vector<Cplx>> generic_eigenpairs(
    const std::vector<Eigen::MatrixXd>& ops, std::uint64_t seed, double refine_tol) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int dim = static_cast<int>(ops.front().rows());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& op : ops) a += gauss(rng) * op;
  double scale = std::max(1.0, max_abs(a));

  Eigen::EigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) throw SpectrumError("eigensolver failed to converge");
  Eigen::MatrixXcd vecs = es.eigenvectors();
  Eigen::MatrixXcd ac = a.cast<Cplx>();
  std::vector<Cplx> vals(dim);
  for (int k = 0; k < dim; ++k) {
    Eigen::VectorXcd v = vecs.col(k).normalized();
    Cplx lambda = es.eigenvalues()(k);
    for (int it = 0; it < 8; ++it) {
      if ((ac * v - lambda * v).norm() <= refine_tol * scale) break;
      Eigen::MatrixXcd shifted = ac;
      shifted.diagonal().array() -= lambda + Cplx(1e-13 * scale, 0);
      v = shifted.partialPivLu().solve(v).normalized();
      lambda = v.dot(ac * v);  // v is unit
    }
    // deterministic phase: largest entry real positive
    int imax = 0;
    for (int i = 1; i < dim; ++i)
      if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
    v *= std::abs(v(imax)) / v(imax);
    vecs.col(k) = v;
    vals[k] = lambda;
  }
  return {vecs, vals};
}

}  // namespace

std::vector<JointEigenline> joint_spectrum(const std::vector<Mat<double>>& ops,
                                           const RunConfig& cfg) {
  if (ops.empty()) throw DomainError("empty operator family");
  std::vector<Eigen::MatrixXd> eops;
  for (const auto& op : ops) eops.push_back(to_eigen(op));
  const int dim = static_cast<int>(eops.front().rows());
  check_commuting(eops, cfg.commutator_tol);

  auto [vecs, vals] = generic_eigenpairs(eops, cfg.seed, cfg.residual_refine);

  std::vector<JointEigenline> out(dim);
  for (int k = 0; k < dim; ++k) {
    Eigen::VectorXcd v = vecs.col(k);
    JointEigenline line;
    for (const auto& op : eops) {
      Eigen::VectorXcd image = op.cast<Cplx>() * v;
      Cplx mu = v.dot(image);
      double scale = std::max(1.0, max_abs(op));
      if ((image - mu * v).norm() > cfg.eigen_match_tol * scale)
        throw SpectrumError("eigenline of the generic combination is not simultaneous");
      line.values.push_back(mu);
    }
    line.vec.assign(v.data(), v.data() + dim);
    out[k] = std::move(line);
  }

  // separation + deterministic order
  auto tuple_dist = [](const JointEigenline& x, const JointEigenline& y) {
    double d = 0;
    for (size_t a = 0; a < x.values.size(); ++a)
      d = std::max(d, std::abs(x.values[a] - y.values[a]));
    return d;
  };
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      if (tuple_dist(out[i], out[j]) < cfg.separation_tol) {
        std::ostringstream os;
        os << "spectrum-degenerate: eigenvalue tuples " << i << " and " << j
           << " within " << tuple_dist(out[i], out[j]);
        throw SpectrumError(os.str());
      }
  std::sort(out.begin(), out.end(), [](const JointEigenline& x, const JointEigenline& y) {
    for (size_t a = 0; a < x.values.size(); ++a) {
      if (x.values[a].real() != y.values[a].real()) return x.values[a].real() < y.values[a].real();
      if (x.values[a].imag() != y.values[a].imag()) return x.values[a].imag() < y.values[a].imag();
    }
    return false;
  });
  return out;
}

namespace {

/// M_a(t) = z_a t^a H_a(z(t)) on the scaling path z_a(t) = z_a t^a, built
/// from precomputed transposition matrices.
std::vector<Eigen::MatrixXd> scaled_family(const std::vector<double>& z, double t,
                                           const std::vector<std::vector<Eigen::MatrixXd>>& tr,
                                           int n, int dim) {
  std::vector<Eigen::MatrixXd> out;
  std::vector<double> zt(n);
  for (int a = 1; a <= n; ++a) zt[a - 1] = z[a - 1] * std::pow(t, a);
  for (int a = 1; a <= n; ++a) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (int b = 1; b <= n; ++b) {
      if (b == a) continue;
      m += (zt[a - 1] / (zt[a - 1] - zt[b - 1])) * tr[std::min(a, b) - 1][std::max(a, b) - 1];
    }
    out.push_back(std::move(m));
  }
  return out;
}

/// Greedy maximum-overlap matching of new eigenvectors to tracked ones.
/// Returns the permutation new_of_old, or empty when ambiguous.
std::vector<int> match_by_overlap(const Eigen::MatrixXcd& tracked,
                                  const Eigen::MatrixXcd& fresh, double min_overlap) {
  const int dim = static_cast<int>(tracked.cols());
  Eigen::MatrixXd overlap(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k)
      overlap(i, k) = std::abs(tracked.col(i).dot(fresh.col(k)));
  std::vector<std::tuple<double, int, int>> entries;
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) entries.emplace_back(overlap(i, k), i, k);
  std::sort(entries.rbegin(), entries.rend());
  std::vector<int> assign(dim, -1);
  std::vector<bool> used(dim, false);
  for (const auto& [o, i, k] : entries) {
    if (assign[i] >= 0 || used[k]) continue;
    if (o < min_overlap) return {};  // ambiguous: caller shrinks the step
    assign[i] = k;
    used[k] = true;
  }
  return assign;
}

}  // namespace

std::vector<ScalingLimit> jm_scaling_limit(const std::vector<double>& z,
                                           const SingularWeightBasis& b,
                                           const std::vector<double>& t_checkpoints,
                                           const RunConfig& cfg) {
  const int n = b.n, dim = b.dim();
  if (static_cast<int>(z.size()) != n) throw DomainError("z must have length n");
  for (int a = 1; a < n; ++a)
    if (!(z[a - 1] < z[a]))
      throw DomainError("scaling-limit transport requires strictly increasing real z");

  // translate so z_1 > 0: Gaudin matrices only depend on differences
  std::vector<double> zs(z);
  double shift = 1.0 - zs[0];
  for (double& v : zs) v += shift;

  std::vector<std::vector<Eigen::MatrixXd>> tr(n, std::vector<Eigen::MatrixXd>(n));
  for (int a = 1; a <= n; ++a)
    for (int bb = a + 1; bb <= n; ++bb) {
      Mat<Rat> t = transposition_matrix(b, a, bb);
      Eigen::MatrixXd e(dim, dim);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) e(i, j) = ScalarOps<Rat>::to_double(t[i][j]);
      tr[a - 1][bb - 1] = std::move(e);
    }

  std::vector<double> cps = t_checkpoints;
  std::sort(cps.begin(), cps.end());
  for (double c : cps)
    if (c < 1.0) throw DomainError("checkpoints must satisfy t >= 1");

  auto family_at = [&](double t) { return scaled_family(zs, t, tr, n, dim); };

  // start eigenlines at t = 1 (same lines as the unscaled Gaudin family)
  auto start = family_at(1.0);
  auto [vecs, vals0] = generic_eigenpairs(start, cfg.seed, cfg.residual_refine);
  (void)vals0;

  std::vector<ScalingLimit> out(dim);
  {
    std::vector<Mat<double>> hz;
    for (int a = 1; a <= n; ++a) hz.push_back(gaudin_hamiltonian(a, z, b));
    std::vector<Eigen::MatrixXd> ehz;
    for (auto& m : hz) ehz.push_back(to_eigen(m));
    for (int k = 0; k < dim; ++k) {
      Eigen::VectorXcd v = vecs.col(k);
      out[k].start_vec.assign(v.data(), v.data() + dim);
      for (int a = 0; a < n; ++a) out[k].start_values.push_back(v.dot(ehz[a].cast<Cplx>() * v));
    }
  }

  auto rayleigh_tuple = [&](const std::vector<Eigen::MatrixXd>& ops,
                            const Eigen::VectorXcd& v) {
    std::vector<double> tup;
    for (const auto& op : ops) tup.push_back(v.dot(op.cast<Cplx>() * v).real());
    return tup;
  };

  double t = 1.0;
  double factor = std::pow(10.0, 0.125);
  size_t next_cp = 0;
  int streak = 0;
  const double t_hard_max = 1e6;
  double t_goal = cps.empty() ? 1e4 : std::max(cps.back(), 1e4);

  auto step_to = [&](double target) {
    while (t < target * (1 - 1e-12)) {
      double tn = std::min(t * factor, target);
      auto fam = family_at(tn);
      auto [fresh, fvals] = generic_eigenpairs(fam, cfg.seed, cfg.residual_refine);
      (void)fvals;
      std::vector<int> assign = match_by_overlap(vecs, fresh, 0.75);
      if (assign.empty()) {
        factor = std::sqrt(factor);
        streak = 0;
        if (factor < 1.0 + 1e-9)
          throw ConvergenceError("eigenline transport stalled near t = " + std::to_string(t));
        continue;
      }
      Eigen::MatrixXcd matched(dim, dim);
      for (int i = 0; i < dim; ++i) {
        Eigen::VectorXcd w = fresh.col(assign[i]);
        Cplx o = vecs.col(i).dot(w);
        if (std::abs(o) > 0) w *= std::conj(o) / std::abs(o);  // keep the phase continuous
        matched.col(i) = w;
      }
      vecs = std::move(matched);
      t = tn;
      if (++streak >= 4) {
        factor = std::min(factor * factor, std::pow(10.0, 0.25));
        streak = 0;
      }
    }
  };

  while (true) {
    double target = (next_cp < cps.size()) ? cps[next_cp] : t_goal;
    step_to(target);
    if (next_cp < cps.size()) {
      auto fam = family_at(t);
      for (int k = 0; k < dim; ++k)
        out[k].checkpoints.push_back(rayleigh_tuple(fam, vecs.col(k)));
      ++next_cp;
      continue;
    }
    // snap check at the far end
    auto fam = family_at(t);
    bool ok = true;
    for (int k = 0; k < dim && ok; ++k)
      for (double v : rayleigh_tuple(fam, vecs.col(k)))
        if (std::abs(v - std::round(v)) > cfg.snap_tol) { ok = false; break; }
    if (ok) {
      for (int k = 0; k < dim; ++k) {
        out[k].contents.clear();
        for (double v : rayleigh_tuple(fam, vecs.col(k)))
          out[k].contents.push_back(static_cast<int>(std::llround(v)));
      }
      return out;
    }
    if (t >= t_hard_max)
      throw ConvergenceError("scaling-limit eigenvalues did not settle on integers by t = 1e6");
    t_goal = std::min(t_goal * 10.0, t_hard_max);
  }
}

}  // namespace schubert
