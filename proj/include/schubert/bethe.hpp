#pragma once

#include <vector>

#include "schubert/config.hpp"
#include "schubert/linalg.hpp"
#include "schubert/partition.hpp"
#include "schubert/poly.hpp"
#include "schubert/scalar.hpp"
#include "schubert/tableau.hpp"

namespace schubert {

/// Data of the master function for the all-box case: n points, weight mu,
/// and the root-count vector l (l_i = number of boxes strictly below row i).
struct MasterData {
  int n = 0;
  int r = 0;
  Partition mu;
  std::vector<int> l;  ///< l_1..l_{r-1}

  static MasterData all_box(const Partition& mu, int r);
  int num_vars() const;
};

/// One t-configuration: groups[i-1] holds the l_i roots of group i.
struct TConfig {
  std::vector<std::vector<Cplx>> groups;
};

/// A polished critical point of the master function.  For special real z the
/// critical point of a tableau can degenerate: Bethe roots collide with each
/// other or with a marked point while the underlying subspace stays regular.
/// Such points carry exact y polynomials certified through the Wronskian in
/// cell coordinates (residual = relative Wronskian residual) instead of a
/// BAE residual, and are flagged degenerate.
struct CriticalPoint {
  std::vector<double> z;
  std::vector<std::vector<Cplx>> roots;  ///< per group, sorted by (re, im)
  std::vector<Poly<Cplx>> y;             ///< monic root polynomials y_1..y_{r-1}
  double residual = 0;                   ///< max relative residual (BAE or Wronskian)
  bool hessian_ok = false;
  bool degenerate = false;
};

/// Left-hand sides of the Bethe ansatz equations, flattened group by group.
/// If term_scale is given it receives, per equation, the sum of the term
/// magnitudes (for relative residual tests).  Throws on pole collisions.
std::vector<Cplx> bae_residual(const MasterData& md, const std::vector<double>& z,
                               const TConfig& t, std::vector<double>* term_scale = nullptr);

/// (dS/dz_a)_a at the configuration: the predicted Gaudin eigenvalues.
std::vector<double> z_gradient(const MasterData& md, const std::vector<double>& z,
                               const TConfig& t);

/// Gaudin eigenvalue tuple of a critical point.  Regular points evaluate
/// z_gradient directly.  Degenerate points (roots on a marked point make the
/// gradient singular) are handled through the subspace: the eigenvalues are
/// analytic in z wherever the spectrum is simple, so they are evaluated on a
/// generic perturbation of z -- tracking the subspace in cell coordinates --
/// and extrapolated back to z.
std::vector<double> gaudin_eigenvalues(const MasterData& md, const std::vector<double>& z,
                                       const CriticalPoint& cp, const RunConfig& cfg = {});

/// Second t-derivatives of the master function's logarithm S; also the
/// Jacobian of bae_residual.  nondegenerate (optional) receives the scaled
/// invertibility verdict.
Mat<Cplx> hessian(const MasterData& md, const std::vector<double>& z, const TConfig& t,
                  bool* nondegenerate = nullptr, double hessian_tol = 1e-10);

/// Newton iteration from t0 to a certified critical point.
CriticalPoint newton_polish(const MasterData& md, const std::vector<double>& z,
                            const TConfig& t0, const RunConfig& cfg = {});

/// Solution of the transformed (z-free) n = 2 equations for adding one box
/// to lambda in row e.
struct TransformedSolution {
  int e = 1;
  std::vector<double> s;  ///< s_1..s_{e-1}
};

/// The unique transformed solution, found by multistart Newton; the closed
/// form s_1 = 1 - (lambda_1 - c)^{-1} is verified to 1e-12.
TransformedSolution solve_transformed(const Partition& lambda, int e,
                                      const RunConfig& cfg = {});

/// Asymptotic gluing guess: base roots unchanged, one new root s_i * R
/// appended to group i for i < e.  Intended as newton_polish input at z
/// extended by z_{n+1} = R.
TConfig rv_glue(const CriticalPoint& base, const TransformedSolution& ts, double R);

/// Predictor-corrector continuation of cp along the straight path from cp.z
/// to z_target inside X_n^< (both endpoints strictly increasing).
CriticalPoint continue_critical_point(const MasterData& md, const CriticalPoint& cp,
                                      const std::vector<double>& z_target,
                                      const RunConfig& cfg = {});

/// Marcus' tableau-indexed critical point t_T at the target z: inductive
/// box-by-box gluing at geometrically separated asymptotic parameters,
/// then one global homotopy down to z.
CriticalPoint marcus_critical_point(const StandardTableau& t, const std::vector<double>& z,
                                    int r, const RunConfig& cfg = {});

/// Sort every root group by (re, im) and rebuild the y polynomials.
void canonicalize(CriticalPoint& cp);

}  // namespace schubert
