#pragma once

#include <vector>

#include "schubert/config.hpp"
#include "schubert/linalg.hpp"
#include "schubert/scalar.hpp"
#include "schubert/weightspace.hpp"

namespace schubert {

/// Matrix of the transposition (a,b) of tensor factors in the singular basis.
Mat<Rat> transposition_matrix(const SingularWeightBasis& b, int a, int bb);

/// Jucys-Murphy operator L_a = sum_{b<a} (a,b); L_1 = 0.
Mat<Rat> jucys_murphy(int a, const SingularWeightBasis& b);

/// Gaudin Hamiltonian H_a(z) = sum_{b!=a} (a,b)/(z_a - z_b) in the singular
/// basis; z must have distinct entries.
Mat<double> gaudin_hamiltonian(int a, const std::vector<double>& z,
                               const SingularWeightBasis& b);
Mat<Rat> gaudin_hamiltonian(int a, const std::vector<Rat>& z, const SingularWeightBasis& b);

/// One simultaneous eigenline of the Jucys-Murphy family with its integer
/// eigenvalue tuple (values[0] = 0).
struct ExactEigenline {
  std::vector<Int> values;  ///< length n
  std::vector<Rat> vec;     ///< coordinates in the singular basis
};

/// Exact joint spectrum of (L_1,...,L_n) by sequential eigenspace splitting
/// over the integer candidates; throws SpectrumError if any eigenspace fails
/// to split to lines.
std::vector<ExactEigenline> jm_joint_spectrum(const SingularWeightBasis& b);

/// One simultaneous eigenline of a commuting float family.
struct JointEigenline {
  std::vector<Cplx> values;  ///< one eigenvalue per operator
  std::vector<Cplx> vec;     ///< unit eigenvector, coordinates in the basis
};

/// Joint spectrum of pairwise commuting real matrices: diagonalize a seeded
/// generic combination, refine by inverse iteration, read the per-operator
/// eigenvalues as Rayleigh quotients.  Throws SpectrumError when commutators
/// exceed tolerance, residuals fail to converge, or eigenvalue tuples
/// cluster below the separation tolerance.
std::vector<JointEigenline> joint_spectrum(const std::vector<Mat<double>>& ops,
                                           const RunConfig& cfg = {});

/// Transported eigenline along the scaling path z_i(t) = z_i * t^i.
struct ScalingLimit {
  std::vector<Cplx> start_vec;    ///< eigenline of {H_a(z)} at t = 1
  std::vector<Cplx> start_values; ///< Gaudin eigenvalues at t = 1
  std::vector<int> contents;      ///< snapped integer limits of z_a(t)H_a(z(t))
  /// Eigenvalue tuples of (z_a(t)H_a(z(t)))_a at each requested checkpoint t.
  std::vector<std::vector<double>> checkpoints;
};

/// Follow every joint eigenline of (z_a(t)H_a(z(t)))_a from t = 1 towards
/// t -> infinity and snap the limiting eigenvalues to integers (the
/// Jucys-Murphy spectrum).  Requires real z, strictly increasing; z is
/// translated first so z_1 > 0.  The path is stepped multiplicatively with
/// overlap matching and step halving; t escalates up to t_max until every
/// eigenvalue sits within snap tolerance of an integer.
std::vector<ScalingLimit> jm_scaling_limit(const std::vector<double>& z,
                                           const SingularWeightBasis& b,
                                           const std::vector<double>& t_checkpoints,
                                           const RunConfig& cfg = {});

}  // namespace schubert
