#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "schubert/bethe.hpp"
#include "schubert/errors.hpp"
#include "schubert/tableau.hpp"

using namespace schubert;

namespace {

// The logarithm of the master function for real regular configurations; the
// Bethe equations are its exact t-gradient, checked by finite differences.
double log_master(const MasterData& md, const std::vector<double>& z,
                  const std::vector<std::vector<double>>& t) {
  double s = 0;
  for (size_t a = 0; a < z.size(); ++a)
    for (size_t b = a + 1; b < z.size(); ++b) s += std::log(std::abs(z[a] - z[b]));
  if (!t.empty())
    for (double tj : t[0])
      for (double za : z) s -= std::log(std::abs(tj - za));
  for (size_t i = 0; i < t.size(); ++i) {
    for (size_t j = 0; j < t[i].size(); ++j)
      for (size_t k = j + 1; k < t[i].size(); ++k)
        s += 2 * std::log(std::abs(t[i][j] - t[i][k]));
    if (i + 1 < t.size())
      for (double x : t[i])
        for (double y : t[i + 1]) s -= std::log(std::abs(x - y));
  }
  return s;
}

TConfig to_config(const std::vector<std::vector<double>>& t) {
  TConfig out;
  for (const auto& g : t) {
    out.groups.emplace_back();
    for (double x : g) out.groups.back().emplace_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("bae_residual examples") {
  SUBCASE("one-row mu: vacuous equations") {
    MasterData md = MasterData::all_box(Partition{3}, 2);
    CHECK(bae_residual(md, {0, 1, 2}, TConfig{{{}}}).empty());
  }
  SUBCASE("n=2, mu=(1,1): midpoint is the critical point") {
    MasterData md = MasterData::all_box(Partition{1, 1}, 2);
    auto res = bae_residual(md, {0, 3}, TConfig{{{Cplx(1.5)}}});
    REQUIRE(res.size() == 1);
    CHECK(std::abs(res[0]) < 1e-15);
    auto off = bae_residual(md, {0, 3}, TConfig{{{Cplx(1.0)}}});
    CHECK(std::abs(off[0]) > 0.1);
  }
  SUBCASE("pole detection") {
    MasterData md = MasterData::all_box(Partition{1, 1}, 2);
    CHECK_THROWS_AS(bae_residual(md, {0, 3}, TConfig{{{Cplx(3.0)}}}), DomainError);
    MasterData md2 = MasterData::all_box(Partition{2, 2}, 2);
    CHECK_THROWS_AS(bae_residual(md2, {0, 1, 2, 3}, TConfig{{{Cplx(0.4), Cplx(0.4)}}}),
                    DomainError);
  }
}

TEST_CASE("bae_residual is the exact t-gradient of the master function") {
  MasterData md = MasterData::all_box(Partition{2, 2, 1}, 3);  // l = (3, 1)
  std::vector<double> z = {0, 1, 2, 3, 4};
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> uni(-4.0, 8.0);
  int tested = 0;
  while (tested < 20) {
    std::vector<std::vector<double>> t = {{uni(rng), uni(rng), uni(rng)}, {uni(rng)}};
    // keep a safe distance from every pole
    bool regular = true;
    std::vector<double> all;
    for (const auto& g : t) all.insert(all.end(), g.begin(), g.end());
    for (double x : all) {
      for (double za : z) regular &= std::abs(x - za) > 0.05;
      for (double y : all) regular &= (x == y) || std::abs(x - y) > 0.05;
    }
    if (!regular) continue;
    ++tested;
    auto res = bae_residual(md, z, to_config(t));
    const double h = 1e-6;
    int p = 0;
    for (size_t i = 0; i < t.size(); ++i)
      for (size_t j = 0; j < t[i].size(); ++j, ++p) {
        auto tp = t, tm = t;
        tp[i][j] += h;
        tm[i][j] -= h;
        double fd = (log_master(md, z, tp) - log_master(md, z, tm)) / (2 * h);
        CHECK(std::abs(res[p].real() - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
        CHECK(res[p].imag() == 0);
      }
  }
}

TEST_CASE("z_gradient examples") {
  SUBCASE("n=1: constant master function") {
    MasterData md = MasterData::all_box(Partition{1}, 2);
    CHECK(z_gradient(md, {5.0}, TConfig{{{}}}) == std::vector<double>{0.0});
  }
  SUBCASE("n=2, mu=(2)") {
    MasterData md = MasterData::all_box(Partition{2}, 1);
    auto g = z_gradient(md, {0, 3}, TConfig{});
    CHECK(g[0] == doctest::Approx(1.0 / (0.0 - 3.0)));
    CHECK(g[1] == doctest::Approx(1.0 / (3.0 - 0.0)));
  }
  SUBCASE("n=2, mu=(1,1) at the midpoint") {
    MasterData md = MasterData::all_box(Partition{1, 1}, 2);
    auto g = z_gradient(md, {0, 3}, TConfig{{{Cplx(1.5)}}});
    CHECK(g[0] == doctest::Approx(-1.0 / (0.0 - 3.0)));
    CHECK(g[1] == doctest::Approx(-1.0 / (3.0 - 0.0)));
  }
}

TEST_CASE("hessian") {
  SUBCASE("empty configuration is nondegenerate by convention") {
    MasterData md = MasterData::all_box(Partition{2}, 1);
    bool nondeg = false;
    auto h = hessian(md, {0, 1}, TConfig{}, &nondeg);
    CHECK(h.empty());
    CHECK(nondeg);
  }
  SUBCASE("n=2, mu=(1,1) closed form") {
    MasterData md = MasterData::all_box(Partition{1, 1}, 2);
    bool nondeg = false;
    auto h = hessian(md, {0, 3}, TConfig{{{Cplx(1.5)}}}, &nondeg);
    // second derivative of log Phi = -log(t - z_1) - log(t - z_2) + const
    double expect = 1.0 / (1.5 * 1.5) + 1.0 / (1.5 * 1.5);
    CHECK(h[0][0].real() == doctest::Approx(expect));
    CHECK(nondeg);
  }
  SUBCASE("hessian is the jacobian of the residual (finite differences)") {
    MasterData md = MasterData::all_box(Partition{2, 2}, 2);  // l = (2)
    std::vector<double> z = {0, 1, 2, 3};
    std::vector<std::vector<double>> t = {{0.4, 2.6}};
    auto h = hessian(md, z, to_config(t));
    const double step = 1e-6;
    for (int q = 0; q < 2; ++q) {
      auto tp = t, tm = t;
      tp[0][q] += step;
      tm[0][q] -= step;
      auto rp = bae_residual(md, z, to_config(tp));
      auto rm = bae_residual(md, z, to_config(tm));
      for (int p = 0; p < 2; ++p) {
        double fd = (rp[p].real() - rm[p].real()) / (2 * step);
        CHECK(h[p][q].real() == doctest::Approx(fd).epsilon(1e-4));
      }
    }
  }
}

TEST_CASE("newton_polish") {
  MasterData md = MasterData::all_box(Partition{1, 1}, 2);
  SUBCASE("fixed point returned unchanged") {
    auto cp = newton_polish(md, {0, 3}, TConfig{{{Cplx(1.5)}}});
    CHECK(cp.roots[0][0] == Cplx(1.5));
    CHECK(cp.residual <= 1e-12);
    CHECK(cp.hessian_ok);
    CHECK(cp.y[0].degree() == 1);
    CHECK(std::abs(cp.y[0].coeff(0) - Cplx(-1.5)) < 1e-12);
  }
  SUBCASE("converges from a shifted start") {
    auto cp = newton_polish(md, {0, 3}, TConfig{{{Cplx(1.6)}}});
    CHECK(std::abs(cp.roots[0][0] - Cplx(1.5)) < 1e-10);
  }
  SUBCASE("pole start is rejected") {
    CHECK_THROWS_AS(newton_polish(md, {0, 3}, TConfig{{{Cplx(0.0)}}}), DomainError);
  }
}

TEST_CASE("solve_transformed") {
  SUBCASE("closed-form cases") {
    auto a = solve_transformed(Partition{1}, 2);
    REQUIRE(a.s.size() == 1);
    CHECK(a.s[0] == doctest::Approx(0.5).epsilon(1e-12));
    auto b = solve_transformed(Partition{2, 1}, 2);
    CHECK(b.s[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(solve_transformed(Partition{3}, 1).s.empty());
  }
  SUBCASE("two-variable chain, residual oracle") {
    // lambda = (1,1), box added in row 3 (content -2): s_1 = 1 - 1/(1+2) = 2/3
    auto ts = solve_transformed(Partition{1, 1}, 3);
    REQUIRE(ts.s.size() == 2);
    CHECK(ts.s[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    // direct residual of the transformed equations
    double s1 = ts.s[0], s2 = ts.s[1];
    double g1 = 0.0 / s1 + 1.0 / (s1 - 1) + 1.0 / (s1 - s2);
    double g2 = 1.0 / s2 + 1.0 / (s2 - s1);
    CHECK(std::abs(g1) < 1e-11);
    CHECK(std::abs(g2) < 1e-11);
    // uniqueness: a different seed finds the same point
    RunConfig other;
    other.seed = 987654321;
    auto again = solve_transformed(Partition{1, 1}, 3, other);
    CHECK(std::abs(again.s[1] - ts.s[1]) < 1e-9);
  }
  SUBCASE("invalid moves rejected") {
    CHECK_THROWS_AS(solve_transformed(Partition{1}, 3), DomainError);
    CHECK_THROWS_AS(solve_transformed(Partition{2, 2}, 2), DomainError);
  }
}

TEST_CASE("rv_glue") {
  CriticalPoint base;
  base.z = {1.0};
  base.roots = {{}};
  auto ts = solve_transformed(Partition{1}, 2);
  auto guess = rv_glue(base, ts, 1000.0);
  REQUIRE(guess.groups[0].size() == 1);
  CHECK(guess.groups[0][0].real() == doctest::Approx(500.0).epsilon(1e-9));
  // e = 1: no new roots
  auto none = rv_glue(base, TransformedSolution{}, 1000.0);
  CHECK(none.groups[0].empty());
}

TEST_CASE("marcus_critical_point base cases") {
  StandardTableau single(std::vector<std::vector<int>>{{1}});
  auto cp1 = marcus_critical_point(single, {0.7}, 2);
  CHECK(cp1.roots[0].empty());
  CHECK(cp1.y[0] == Poly<Cplx>::one());

  StandardTableau column({{1}, {2}});
  auto cp = marcus_critical_point(column, {0.0, 1.0}, 2);
  REQUIRE(cp.roots[0].size() == 1);
  CHECK(std::abs(cp.roots[0][0] - Cplx(0.5)) < 1e-10);
  CHECK(std::abs(cp.y[0].coeff(0) - Cplx(-0.5)) < 1e-10);
  CHECK(cp.residual <= 1e-10);
  CHECK(cp.hessian_ok);

  StandardTableau row({{1, 2}});
  auto cpr = marcus_critical_point(row, {0.0, 1.0}, 2);
  CHECK(cpr.roots[0].empty());
}

TEST_CASE("marcus critical points for mu=(2,1) are the wronskian-derivative roots") {
  // r=2: the single group-1 root solves sum_a 1/(t - z_a) = 0, i.e. it is a
  // critical point of (u)(u-1)(u-2); roots 1 +- 1/sqrt(3).
  std::vector<double> z = {0, 1, 2};
  std::set<double> expect = {1.0 - 1.0 / std::sqrt(3.0), 1.0 + 1.0 / std::sqrt(3.0)};
  std::set<double> got;
  for (const auto& t : enumerate_syt(Partition{2, 1})) {
    auto cp = marcus_critical_point(t, z, 2);
    REQUIRE(cp.roots[0].size() == 1);
    CHECK(std::abs(cp.roots[0][0].imag()) < 1e-10);
    got.insert(cp.roots[0][0].real());
    CHECK(cp.residual <= 1e-10);
    CHECK(cp.hessian_ok);
  }
  REQUIRE(got.size() == 2);
  auto it = got.begin();
  for (double e : expect) CHECK(*it++ == doctest::Approx(e).epsilon(1e-9));
}

TEST_CASE("continue_critical_point") {
  MasterData md = MasterData::all_box(Partition{1, 1}, 2);
  auto cp = newton_polish(md, {0, 1}, TConfig{{{Cplx(0.5)}}});
  SUBCASE("constant path") {
    auto same = continue_critical_point(md, cp, {0, 1});
    CHECK(same.roots[0][0] == cp.roots[0][0]);
  }
  SUBCASE("midpoint tracks the moving endpoint") {
    auto moved = continue_critical_point(md, cp, {0, 2});
    CHECK(std::abs(moved.roots[0][0] - Cplx(1.0)) < 1e-10);
  }
  SUBCASE("order-violating path rejected") {
    CHECK_THROWS_AS(continue_critical_point(md, cp, {1.0, 0.5}), DomainError);
  }
}

TEST_CASE("gluing limit: y converges coefficientwise as z_n grows") {
  // box 4 added in row 1: group sizes unchanged, so the y-tuples compare directly
  StandardTableau t({{1, 2, 4}, {3}});
  StandardTableau base_t({{1, 2}, {3}});
  std::vector<double> zb = {0, 1, 2};
  auto base = marcus_critical_point(base_t, zb, 2);
  double err3 = 0, err4 = 0;
  for (double zn : {1e3, 1e4}) {
    auto cp = marcus_critical_point(t, {0, 1, 2, zn}, 2);
    double e = 0;
    for (int c = 0; c <= 1; ++c) e = std::max(e, std::abs(cp.y[0].coeff(c) - base.y[0].coeff(c)));
    (zn == 1e3 ? err3 : err4) = e;
  }
  CHECK(err4 < err3);
  CHECK(err3 / err4 == doctest::Approx(10.0).epsilon(1.0));  // ~10x per decade
}

TEST_CASE("eigenvalue asymptotics: z_a dS/dz_a approaches contents") {
  // z_a = 10^a: the scaled gradient approximates c_T(a) with O(1/z_a) error
  StandardTableau t({{1, 3}, {2}});
  std::vector<double> z = {10, 100, 1000};
  auto cp = marcus_critical_point(t, z, 2);
  MasterData md = MasterData::all_box(t.shape(), 2);
  auto grad = z_gradient(md, z, TConfig{cp.roots});
  auto contents = t.content_vector();
  std::vector<double> err;
  for (int a = 0; a < 3; ++a) err.push_back(std::abs(z[a] * grad[a] - contents[a]));
  for (int a = 0; a + 1 < 3; ++a)
    if (err[a + 1] > 1e-12) CHECK(err[a] / err[a + 1] == doctest::Approx(10.0).epsilon(1.0));
}
