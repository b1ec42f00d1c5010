#include <json.hpp>

#include "schubert/labelling.hpp"

namespace schubert {

namespace {

nlohmann::ordered_json tableau_json(const StandardTableau& t) {
  return nlohmann::ordered_json(t.rows());
}

nlohmann::ordered_json config_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["precision"] = cfg.precision == Precision::Exact ? "exact" : "float64";
  j["pivot_tol"] = cfg.pivot_tol;
  j["roundtrip_tol"] = cfg.roundtrip_tol;
  j["commutator_tol"] = cfg.commutator_tol;
  j["imag_tol"] = cfg.imag_tol;
  j["separation_tol"] = cfg.separation_tol;
  j["residual_refine"] = cfg.residual_refine;
  j["residual_tol"] = cfg.residual_tol;
  j["cert_residual"] = cfg.cert_residual;
  j["hessian_tol"] = cfg.hessian_tol;
  j["collision_tol"] = cfg.collision_tol;
  j["max_newton_iters"] = cfg.max_newton_iters;
  j["multistarts"] = cfg.multistarts;
  j["glue_factor"] = cfg.glue_factor;
  j["wronskian_tol"] = cfg.wronskian_tol;
  j["eigen_match_tol"] = cfg.eigen_match_tol;
  j["snap_tol"] = cfg.snap_tol;
  j["divergence_threshold"] = cfg.divergence_threshold;
  j["theta_tol"] = cfg.theta_tol;
  j["seed"] = cfg.seed;
  return j;
}

}  // namespace

std::string certificate_json(const AgreementCertificate& cert, const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["instance"]["mu"] = cert.mu.parts();
  j["instance"]["r"] = cert.r;
  j["instance"]["d"] = cert.d;
  j["instance"]["z"] = cert.z;
  j["config"] = config_json(cfg);
  j["points"] = nlohmann::ordered_json::array();
  for (const PointRecord& p : cert.points) {
    nlohmann::ordered_json pj;
    pj["construction"] = tableau_json(p.construction);
    pj["elementary"] = tableau_json(p.el);
    pj["spectral"] = tableau_json(p.mtv);
    pj["eigenvalues"] = p.eigenvalues;
    pj["theta_distance"] = p.theta_distance;
    pj["residual"] = p.residual;
    pj["agree"] = p.agree;
    j["points"].push_back(std::move(pj));
  }
  j["pass"] = cert.pass;
  return j.dump(2) + "\n";
}

}  // namespace schubert
