#pragma once

#include <cstdint>
#include <string>

namespace schubert {

enum class Precision { Exact, Float64 };

/// Central run configuration.  Every tolerance used anywhere in the pipeline
/// lives here so that certificates can embed the full configuration.
struct RunConfig {
  Precision precision = Precision::Float64;

  // polyalg
  double pivot_tol = 1e-9;        ///< relative pivot threshold for float echelon reduction
  double roundtrip_tol = 1e-10;   ///< coordinate map round-trip coefficient tolerance

  // repthy
  double commutator_tol = 1e-12;  ///< relative commutator bound for the Gaudin family
  double imag_tol = 1e-8;         ///< allowed imaginary part of real spectra
  double separation_tol = 1e-6;   ///< minimal eigenvalue-tuple separation
  double residual_refine = 1e-12; ///< eigenline refinement residual

  // bethe
  double residual_tol = 1e-12;    ///< Newton stopping residual (relative to term scale)
  double cert_residual = 1e-10;   ///< certified residual at a target configuration
  double hessian_tol = 1e-10;     ///< relative degeneracy threshold for the Hessian
  double collision_tol = 1e-8;    ///< relative root-collision threshold during continuation
  int max_newton_iters = 50;
  int multistarts = 32;
  double glue_factor = 1e3;       ///< geometric separation of the asymptotic z-schedule

  // labelling
  double wronskian_tol = 1e-8;    ///< relative Wronskian match for intersection points
  double eigen_match_tol = 1e-6;  ///< spectral matching tolerance
  double snap_tol = 0.25;         ///< JM snap distance
  double divergence_threshold = 1e6;  ///< |a_{e1}| threshold for cell-at-infinity detection
  double theta_tol = 1e-8;        ///< theta(X) vs y^{t_T} coefficient distance

  std::uint64_t seed = 20240817;  ///< randomized multistarts and generic combinations
};

}  // namespace schubert
