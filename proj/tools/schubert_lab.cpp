// Command-line driver for the Schubert intersection laboratory.
//
// Subcommands: syt, spectrum, bethe, label, asymptotics, theta-check.
// Exit codes: 0 success / certificate passes, 1 mathematical failure or
// disagreement, 2 usage or domain error.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "schubert/bethe.hpp"
#include "schubert/errors.hpp"
#include "schubert/labelling.hpp"
#include "schubert/operators.hpp"
#include "schubert/partition.hpp"
#include "schubert/tableau.hpp"
#include "schubert/weightspace.hpp"

using json = nlohmann::ordered_json;
using namespace schubert;

namespace {

Partition parse_partition(const std::string& s) {
  std::vector<int> parts;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw DomainError("bad partition part: " + tok);
    parts.push_back(v);
  }
  if (parts.empty()) throw DomainError("empty partition");
  return Partition(std::move(parts));  // validates weak decrease, drops zeros
}

std::vector<double> parse_reals(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw DomainError("bad number: " + tok);
    out.push_back(v);
  }
  return out;
}

void require_increasing(const std::vector<double>& z) {
  for (size_t a = 0; a + 1 < z.size(); ++a)
    if (!(z[a] < z[a + 1]))
      throw DomainError(z[a] == z[a + 1] ? "repeated parameter z" : "z must be increasing");
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw DomainError("cannot open output file: " + out_path);
    f << text;
  }
}

json roots_json(const std::vector<std::vector<Cplx>>& groups) {
  json g = json::array();
  for (const auto& grp : groups) {
    json row = json::array();
    for (const Cplx& t : grp) row.push_back({t.real(), t.imag()});
    g.push_back(row);
  }
  return g;
}

struct CommonOpts {
  RunConfig cfg;
  std::string out_path;
  bool as_json = false;
  std::string precision = "float64";

  void attach(CLI::App* app) {
    app->add_option("--out", out_path, "write output to this file instead of stdout");
    app->add_flag("--json", as_json, "JSON output where the default is text");
    app->add_option("--precision", precision, "exact | float64")
        ->check(CLI::IsMember({"exact", "float64"}));
    app->add_option("--seed", cfg.seed, "seed for randomized multistarts");
    app->add_option("--tol.pivot_tol", cfg.pivot_tol);
    app->add_option("--tol.roundtrip_tol", cfg.roundtrip_tol);
    app->add_option("--tol.commutator_tol", cfg.commutator_tol);
    app->add_option("--tol.imag_tol", cfg.imag_tol);
    app->add_option("--tol.separation_tol", cfg.separation_tol);
    app->add_option("--tol.residual_refine", cfg.residual_refine);
    app->add_option("--tol.residual_tol", cfg.residual_tol);
    app->add_option("--tol.cert_residual", cfg.cert_residual);
    app->add_option("--tol.hessian_tol", cfg.hessian_tol);
    app->add_option("--tol.collision_tol", cfg.collision_tol);
    app->add_option("--tol.wronskian_tol", cfg.wronskian_tol);
    app->add_option("--tol.eigen_match_tol", cfg.eigen_match_tol);
    app->add_option("--tol.snap_tol", cfg.snap_tol);
    app->add_option("--tol.divergence_threshold", cfg.divergence_threshold);
    app->add_option("--tol.theta_tol", cfg.theta_tol);
  }

  RunConfig config() const {
    RunConfig c = cfg;
    c.precision = precision == "exact" ? Precision::Exact : Precision::Float64;
    return c;
  }
};

int cmd_syt(const std::string& mu_str, const CommonOpts& opts) {
  Partition mu = parse_partition(mu_str);
  auto tabs = enumerate_syt(mu);
  if (opts.as_json) {
    json j;
    j["mu"] = mu.parts();
    j["count"] = tabs.size();
    j["tableaux"] = json::array();
    for (const auto& t : tabs) j["tableaux"].push_back(t.rows());
    emit(j.dump(2) + "\n", opts.out_path);
  } else {
    std::ostringstream os;
    os << tabs.size() << " standard tableaux of shape " << mu.to_string() << "\n";
    for (const auto& t : tabs) os << "  " << t.to_string() << "\n";
    emit(os.str(), opts.out_path);
  }
  return 0;
}

int cmd_spectrum(int n, const std::string& mu_str, const std::string& z_str, bool jm,
                 const CommonOpts& opts) {
  Partition mu = parse_partition(mu_str);
  if (mu.size() != n) throw DomainError("|mu| must equal n");
  const int r = std::max(1, mu.rows());
  SingularWeightBasis basis = singular_weight_basis(n, r, mu);
  json j;
  j["n"] = n;
  j["mu"] = mu.parts();
  if (jm) {
    auto lines = jm_joint_spectrum(basis);
    auto tabs = enumerate_syt(mu);
    j["operator"] = "jucys-murphy";
    j["spectrum"] = json::array();
    for (const auto& line : lines) {
      std::vector<int> vals;
      for (const Int& v : line.values) vals.push_back(static_cast<int>(v));
      const StandardTableau* t = find_by_contents(tabs, vals);
      json rec;
      rec["values"] = vals;
      rec["tableau"] = t ? json(t->rows()) : json(nullptr);
      j["spectrum"].push_back(rec);
    }
  } else {
    if (z_str.empty()) throw DomainError("spectrum needs z or --jm");
    std::vector<double> z = parse_reals(z_str);
    if (static_cast<int>(z.size()) != n) throw DomainError("z must have n entries");
    require_increasing(z);
    std::vector<Mat<double>> ops;
    for (int a = 1; a <= n; ++a) ops.push_back(gaudin_hamiltonian(a, z, basis));
    auto lines = joint_spectrum(ops, opts.config());
    j["operator"] = "gaudin";
    j["z"] = z;
    j["spectrum"] = json::array();
    for (const auto& line : lines) {
      json vals = json::array();
      for (const Cplx& v : line.values) vals.push_back({v.real(), v.imag()});
      j["spectrum"].push_back({{"values", vals}});
    }
  }
  emit(j.dump(2) + "\n", opts.out_path);
  return 0;
}

int cmd_bethe(int r, const std::string& mu_str, const std::string& z_str,
              const CommonOpts& opts) {
  Partition mu = parse_partition(mu_str);
  std::vector<double> z = parse_reals(z_str);
  if (static_cast<int>(z.size()) != mu.size()) throw DomainError("|mu| must equal n");
  require_increasing(z);
  if (mu.rows() > r) throw DomainError("mu has more than r rows");
  RunConfig cfg = opts.config();
  MasterData md = MasterData::all_box(mu, r);
  json j;
  j["mu"] = mu.parts();
  j["r"] = r;
  j["z"] = z;
  j["critical_points"] = json::array();
  for (const auto& t : enumerate_syt(mu)) {
    CriticalPoint cp = marcus_critical_point(t, z, r, cfg);
    auto eig = z_gradient(md, z, TConfig{cp.roots});
    json rec;
    rec["tableau"] = t.rows();
    rec["roots"] = roots_json(cp.roots);
    rec["residual"] = cp.residual;
    rec["hessian_nondegenerate"] = cp.hessian_ok;
    rec["eigenvalues"] = eig;
    j["critical_points"].push_back(rec);
  }
  emit(j.dump(2) + "\n", opts.out_path);
  return 0;
}

int cmd_label(int r, int d, const std::string& mu_str, const std::string& z_str,
              const CommonOpts& opts) {
  Partition mu = parse_partition(mu_str);
  std::vector<double> z = parse_reals(z_str);
  if (static_cast<int>(z.size()) != mu.size()) throw DomainError("|mu| must equal n");
  require_increasing(z);
  RunConfig cfg = opts.config();
  AgreementCertificate cert = verify_agreement(z, mu, r, d, cfg);
  emit(certificate_json(cert, cfg), opts.out_path);
  if (!cert.pass) {
    std::cerr << "labellings disagree\n";
    return 1;
  }
  return 0;
}

int cmd_asymptotics(int r, int d, const std::string& mu_str, const std::string& z_str,
                    int decades, const CommonOpts& opts) {
  Partition mu = parse_partition(mu_str);
  std::vector<double> z = parse_reals(z_str);
  const int n = static_cast<int>(z.size());
  if (n != mu.size()) throw DomainError("|mu| must equal n");
  require_increasing(z);
  if (mu.rows() > r || (!mu.parts().empty() && mu.part(1) > d - r))
    throw DomainError("mu does not fit the r x (d-r) box");
  if (decades < 0) throw DomainError("decades must be nonnegative");
  RunConfig cfg = opts.config();
  MasterData md = MasterData::all_box(mu, r);
  std::ostringstream os;
  os << "t,a,err\n";
  char buf[64];
  for (const auto& t : enumerate_syt(mu)) {
    std::vector<int> contents = t.content_vector();
    for (int k = 1; k <= decades; ++k) {
      const double scale = std::pow(10.0, k);
      // scaling path z_a(t) = (1 + z_a - z_1) * t^a keeps z strictly
      // increasing and positive for t >= 1
      std::vector<double> zt(n);
      double p = scale;
      for (int a = 0; a < n; ++a, p *= scale) zt[a] = (1.0 + z[a] - z[0]) * p;
      CriticalPoint cp = marcus_critical_point(t, zt, r, cfg);
      auto eig = z_gradient(md, zt, TConfig{cp.roots});
      for (int a = 0; a < n; ++a) {
        std::snprintf(buf, sizeof buf, "%.17g", std::abs(zt[a] * eig[a] - contents[a]));
        os << scale << "," << (a + 1) << "," << buf << "\n";
      }
    }
  }
  emit(os.str(), opts.out_path);
  return 0;
}

int cmd_theta_check(int r, int d, const std::string& mu_str, const std::string& z_str,
                    const CommonOpts& opts) {
  Partition mu = parse_partition(mu_str);
  std::vector<double> z = parse_reals(z_str);
  if (static_cast<int>(z.size()) != mu.size()) throw DomainError("|mu| must equal n");
  require_increasing(z);
  RunConfig cfg = opts.config();
  json j;
  j["mu"] = mu.parts();
  j["z"] = z;
  j["points"] = json::array();
  bool all_ok = true;
  for (const auto& pt : solve_intersection(z, mu, r, d, cfg)) {
    ThetaLimitReport rep = theta_limit_check(pt.x, z, r, d, cfg);
    json rec;
    rec["tableau"] = pt.tableau.rows();
    rec["row"] = rep.row;
    rec["err_at_1e3"] = rep.err_low;
    rec["err_at_1e4"] = rep.err_high;
    rec["continuous"] = rep.continuous;
    j["points"].push_back(rec);
    all_ok = all_ok && rep.continuous;
  }
  j["pass"] = all_ok;
  emit(j.dump(2) + "\n", opts.out_path);
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schubert intersection laboratory: osculating-flag intersection "
               "points, Bethe critical points, and tableau labellings"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string mu_str, z_str;
  int n = 0, r = 0, d = 0, decades = 3;
  bool jm = false;

  auto* syt = app.add_subcommand("syt", "enumerate standard Young tableaux of a shape");
  syt->add_option("mu", mu_str, "partition, comma-separated parts")->required();
  opts.attach(syt);

  auto* spectrum = app.add_subcommand(
      "spectrum", "joint spectrum of the Gaudin or Jucys-Murphy family on S_mu");
  spectrum->add_option("n", n, "number of tensor factors")->required();
  spectrum->add_option("mu", mu_str, "partition (|mu| = n)")->required();
  spectrum->add_option("z", z_str, "comma-separated increasing reals (Gaudin mode)");
  spectrum->add_flag("--jm", jm, "exact Jucys-Murphy spectrum with matched tableaux");
  opts.attach(spectrum);

  auto* bethe = app.add_subcommand(
      "bethe", "Marcus critical point of the master function for every tableau");
  bethe->add_option("r", r, "number of groups + 1 (rows of the ambient box)")->required();
  bethe->add_option("mu", mu_str, "partition")->required();
  bethe->add_option("z", z_str, "comma-separated increasing reals")->required();
  opts.attach(bethe);

  auto* label = app.add_subcommand(
      "label", "solve the intersection, run all three labellings, emit the certificate");
  label->add_option("r", r, "subspace dimension")->required();
  label->add_option("d", d, "ambient polynomial degree bound")->required();
  label->add_option("mu", mu_str, "partition")->required();
  label->add_option("z", z_str, "comma-separated increasing reals")->required();
  opts.attach(label);

  auto* asym = app.add_subcommand(
      "asymptotics", "CSV of |z_a * eigenvalue - content| along the scaling path");
  asym->add_option("r", r, "subspace dimension")->required();
  asym->add_option("d", d, "ambient polynomial degree bound")->required();
  asym->add_option("mu", mu_str, "partition")->required();
  asym->add_option("z", z_str, "comma-separated increasing reals")->required();
  asym->add_option("--decades", decades, "number of decades (default 3)");
  opts.attach(asym);

  auto* theta = app.add_subcommand(
      "theta-check", "continuity of the coordinate map along the elementary family");
  theta->add_option("r", r, "subspace dimension")->required();
  theta->add_option("d", d, "ambient polynomial degree bound")->required();
  theta->add_option("mu", mu_str, "partition")->required();
  theta->add_option("z", z_str, "comma-separated increasing reals")->required();
  opts.attach(theta);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (syt->parsed()) return cmd_syt(mu_str, opts);
    if (spectrum->parsed()) return cmd_spectrum(n, mu_str, z_str, jm, opts);
    if (bethe->parsed()) return cmd_bethe(r, mu_str, z_str, opts);
    if (label->parsed()) return cmd_label(r, d, mu_str, z_str, opts);
    if (asym->parsed()) return cmd_asymptotics(r, d, mu_str, z_str, decades, opts);
    if (theta->parsed()) return cmd_theta_check(r, d, mu_str, z_str, opts);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
