#pragma once

#include <string>
#include <vector>

#include "schubert/bethe.hpp"
#include "schubert/config.hpp"
#include "schubert/subspace.hpp"
#include "schubert/tableau.hpp"

namespace schubert {

/// One point of the Schubert intersection with its construction data.
struct LabelledPoint {
  Subspace<double> x;          ///< real subspace in the cell of mu^c at infinity
  StandardTableau tableau;     ///< construction label
  CriticalPoint critical_point;
  std::vector<double> eigenvalues;  ///< dS/dz_a at the critical point
};

/// All intersection points of the Schubert varieties for the osculating flags
/// at z_1 < ... < z_n and at infinity: one point per standard tableau, built
/// from its critical point through the inverse coordinate map.  Realness,
/// Wronskian, cell membership and pairwise distinctness are certified.
std::vector<LabelledPoint> solve_intersection(const std::vector<double>& z,
                                              const Partition& mu, int r, int d,
                                              const RunConfig& cfg = {});

/// Elementary labelling: continue the intersection point as the last marked
/// point moves to infinity, read off the one-box-smaller limiting cell, and
/// recurse.  The entry n is placed in the row that lost the box.
StandardTableau elementary_label(const Subspace<double>& x, const std::vector<double>& z,
                                 int r, int d, const RunConfig& cfg = {});

/// MTV labelling: match the point's predicted Gaudin eigenvalue tuple to a
/// joint eigenline of {H_a(z)}, transport the line along the scaling path to
/// the Jucys-Murphy limit, and read the tableau off the snapped contents.
StandardTableau mtv_label(const Subspace<double>& x, const std::vector<double>& z, int r,
                          int d, const RunConfig& cfg = {});

/// Per-point agreement record.
struct PointRecord {
  StandardTableau construction;
  StandardTableau el;
  StandardTableau mtv;
  std::vector<double> eigenvalues;
  double theta_distance = 0;  ///< theta(X) vs (Wr, y^{t_T}) coefficient distance
  double residual = 0;
  bool agree = false;
};

/// The full agreement certificate for one instance.
struct AgreementCertificate {
  Partition mu;
  int r = 0, d = 0;
  std::vector<double> z;
  std::vector<PointRecord> points;
  bool pass = false;
};

/// Run all three labellings on every intersection point and record whether
/// they coincide; disagreement yields a failing certificate, not an error.
AgreementCertificate verify_agreement(const std::vector<double>& z, const Partition& mu,
                                      int r, int d, const RunConfig& cfg = {});

/// Continuity check of the coordinate map along the elementary family: the
/// distance between theta(X(s)) and theta(X_infinity), projectively
/// normalized, at offsets s - z_n of 1e3 and 1e4.
struct ThetaLimitReport {
  int row = 0;          ///< row losing the box
  double err_low = 0;   ///< at offset 1e3
  double err_high = 0;  ///< at offset 1e4
  bool continuous = false;
};
ThetaLimitReport theta_limit_check(const Subspace<double>& x, const std::vector<double>& z,
                                   int r, int d, const RunConfig& cfg = {});

/// Deterministic JSON rendering of a certificate with its full configuration.
std::string certificate_json(const AgreementCertificate& cert, const RunConfig& cfg);

}  // namespace schubert
