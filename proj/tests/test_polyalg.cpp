#include <random>

#include "doctest.h"
#include "schubert/errors.hpp"
#include "schubert/poly.hpp"
#include "schubert/subspace.hpp"

using namespace schubert;

namespace {

Poly<Rat> P(std::vector<long long> coeffs) {
  std::vector<Rat> c;
  for (long long v : coeffs) c.emplace_back(v);
  return Poly<Rat>(std::move(c));
}

}  // namespace

TEST_CASE("wronskian basics") {
  CHECK(monic_wronskian<Rat>({P({1}), P({0, 1})}) == P({1}));
  CHECK(monic_wronskian<Rat>({P({0, 1}), P({0, 0, 1})}) == P({0, 0, 1}));
  // Wr(f, f*g) = f^2 g': the span contains constants, so this is (u+1)^2
  CHECK(monic_wronskian<Rat>({P({1, 1}), P({0, 1, 1})}) == P({1, 2, 1}));
}

TEST_CASE("wronskian depends only on the span") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> unit(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    int r = 2 + trial % 2, d = 6;
    // random subspace with distinct basis degrees: always independent
    std::vector<Poly<Rat>> basis;
    for (int i = 0; i < r; ++i) {
      std::vector<Rat> c(d - i);
      for (auto& x : c) x = coef(rng);
      c.back() = unit(rng);
      basis.emplace_back(std::move(c));
    }
    // random invertible (triangular) change of basis
    std::vector<Poly<Rat>> other = basis;
    for (int i = 0; i < r; ++i) {
      other[i] = other[i] * Rat(unit(rng));
      for (int j = i + 1; j < r; ++j) other[i] = other[i] + other[j] * Rat(coef(rng));
    }
    CHECK(monic_wronskian(basis) == monic_wronskian(other));
  }
}

TEST_CASE("wronskian detects dependence") {
  CHECK(wronskian<Rat>({P({1, 2}), P({2, 4})}).is_zero());
}

TEST_CASE("echelon basis examples") {
  SUBCASE("already reduced") {
    auto e = echelon_basis(Subspace<Rat>{{P({1}), P({0, 1})}, 2});
    CHECK(e.degrees == std::vector<int>{1, 0});
    for (const auto& c : e.coordinates()) CHECK(c == 0);
  }
  SUBCASE("one elimination step") {
    auto e = echelon_basis(Subspace<Rat>{{P({0, 1, 1}), P({0, 1})}, 3});
    CHECK(e.degrees == std::vector<int>{2, 1});
    CHECK(e.basis[0] == P({0, 0, 1}));
    CHECK(e.basis[1] == P({0, 1}));
  }
  SUBCASE("derived: span{u^3+u, u^2+1}") {
    auto e = echelon_basis(Subspace<Rat>{{P({0, 1, 0, 1}), P({1, 0, 1})}, 4});
    CHECK(e.degrees == std::vector<int>{3, 2});
    CHECK(e.basis[0] == P({0, 1, 0, 1}));  // exponent 2 is excluded
    CHECK(e.basis[1] == P({1, 0, 1}));
    // re-span check: both bases generate the same echelon form
    auto e2 = echelon_basis(Subspace<Rat>{{e.basis[0] + e.basis[1], e.basis[1]}, 4});
    CHECK(e2.basis[0] == e.basis[0]);
    CHECK(e2.basis[1] == e.basis[1]);
  }
}

TEST_CASE("detect_cell") {
  CHECK(detect_cell(Subspace<Rat>{{P({0, 1}), P({1})}, 5}, 2, 5) == Partition{});
  CHECK(detect_cell(Subspace<Rat>{{P({0, 0, 1}), P({0, 1})}, 5}, 2, 5) == Partition{1, 1});
  CHECK(detect_cell(Subspace<Rat>{{P({0, 0, 0, 1}), P({1})}, 5}, 2, 5) == Partition{2});
}

TEST_CASE("wronskian degree equals |mu| on the cell, 3x4 box") {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<int> coef(-4, 4);
  const int r = 3, d = 7;
  for (int n = 0; n <= r * (d - r); ++n) {
    for (const auto& mu : partitions_of(n, r, d - r)) {
      auto degs = cell_degrees(mu, r);
      std::vector<Poly<Rat>> basis;
      for (int i = 1; i <= r; ++i) {
        std::vector<Rat> c(degs[i - 1] + 1, Rat(0));
        c[degs[i - 1]] = 1;
        for (int e : cell_free_exponents(degs, i)) c[e] = coef(rng);
        basis.emplace_back(std::move(c));
      }
      Subspace<Rat> x{basis, d};
      CHECK(detect_cell(x, r, d) == mu);
      CHECK(wronskian(basis).degree() == mu.size());
    }
  }
}

TEST_CASE("coordinate map") {
  auto y = coordinate_map(Subspace<Rat>{{P({0, 1}), P({1})}, 2});
  CHECK(y[0] == P({1}));
  CHECK(y[1] == P({1}));
  auto y2 = coordinate_map(Subspace<Rat>{{P({0, 0, 1}), P({0, 1})}, 3});
  CHECK(y2[0] == P({0, 0, 1}));
  CHECK(y2[1] == P({0, 1}));
}

TEST_CASE("coordinate map degrees are l_vector prepended with |mu|") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coef(-4, 4);
  const int r = 3, d = 7;
  for (int n = 1; n <= 5; ++n) {
    for (const auto& mu : partitions_of(n, r, d - r)) {
      auto degs = cell_degrees(mu, r);
      std::vector<Poly<Rat>> basis;
      for (int i = 1; i <= r; ++i) {
        std::vector<Rat> c(degs[i - 1] + 1, Rat(0));
        c[degs[i - 1]] = 1;
        for (int e : cell_free_exponents(degs, i)) c[e] = coef(rng);
        basis.emplace_back(std::move(c));
      }
      auto y = coordinate_map(Subspace<Rat>{basis, d});
      auto l = l_vector(mu, r);
      CHECK(y[0].degree() == mu.size());
      for (int a = 1; a < r; ++a) CHECK(y[a].degree() == l[a - 1]);
    }
  }
}

TEST_CASE("invert_coordinate_map: exact antiderivative example") {
  // r=2, mu=(2): Wr(f_1, 1) = f_1' proportional to (u-1)(u-2)
  Poly<Rat> wr = Poly<Rat>::from_roots({Rat(1), Rat(2)});
  auto x = invert_coordinate_map<Rat>({P({1})}, Partition{2}, 2, 4, wr);
  CHECK(monic_wronskian(x.basis) == wr);
  auto y = coordinate_map(x);
  CHECK(y[0] == wr);
  CHECK(y[1] == P({1}));
  // f_1 is the monic antiderivative of 3(u-1)(u-2), constant term excluded
  CHECK(x.basis[0] == Poly<Rat>({Rat(0), Rat(6), Rat(-9, 2), Rat(1)}));
}

TEST_CASE("invert_coordinate_map round trip") {
  // mu=(1,1): the critical point root is the midpoint of the z's
  Poly<Rat> wr = Poly<Rat>::from_roots({Rat(0), Rat(3)});
  std::vector<Poly<Rat>> y = {Poly<Rat>({Rat(-3, 2), Rat(1)})};
  auto x = invert_coordinate_map<Rat>(y, Partition{1, 1}, 2, 4, wr);
  auto back = coordinate_map(x);
  CHECK(back[0] == wr);
  CHECK(back[1] == y[0]);
}

TEST_CASE("invert_coordinate_map float round trip") {
  // mu=(2,1), z=(0,1,2.5): critical t is a root of d/du [u(u-1)(u-2.5)]
  double t = (7.0 - std::sqrt(19.0)) / 6.0;
  Poly<Cplx> wr = Poly<Cplx>::from_roots({Cplx(0.0), Cplx(1.0), Cplx(2.5)});
  std::vector<Poly<Cplx>> y = {Poly<Cplx>({Cplx(-t), Cplx(1.0)})};
  auto x = invert_coordinate_map<Cplx>(y, Partition{2, 1}, 2, 5, wr);
  auto back = coordinate_map(x);
  CHECK(coeff_distance(back[0], wr) < 1e-10);
  CHECK(coeff_distance(back[1], y[0]) < 1e-10);
}

TEST_CASE("invert_coordinate_map degenerate system") {
  // mu=(1,1) with y_1 root away from the midpoint: no subspace exists
  Poly<Rat> wr = Poly<Rat>::from_roots({Rat(0), Rat(3)});
  CHECK_THROWS_AS(invert_coordinate_map<Rat>({P({-1, 1})}, Partition{1, 1}, 2, 4, wr),
                  ReconstructionError);
}

TEST_CASE("coordinate map is not continuous: span{u^2+s, u}") {
  // exact family: theta(X(s)) = (monic(s - u^2), u) for every finite s
  for (long long s : {1000LL, 1000000LL}) {
    Subspace<Rat> xs{{Poly<Rat>({Rat(s), Rat(0), Rat(1)}), P({0, 1})}, 3};
    auto y = coordinate_map(xs);
    CHECK(y[1] == P({0, 1}));  // second component is u, for all s
    // first component, normalized by the constant term, tends to 1
    CHECK(y[0].coeff(0) == Rat(-s));  // monic u^2 - s
    CHECK(y[0].coeff(2) == Rat(1));
  }
  // the limit subspace maps elsewhere
  Subspace<Rat> xinf{{P({1}), P({0, 1})}, 3};
  auto yinf = coordinate_map(xinf);
  CHECK(yinf[0] == P({1}));
  CHECK(yinf[1] == P({1}));  // != u: the map is not continuous
}

TEST_CASE("float cell detection near a boundary fails loudly") {
  // leading coefficient far below pivot tolerance relative to the rest
  Subspace<Cplx> x{{Poly<Cplx>({Cplx(1.0), Cplx(0.0), Cplx(1e-13)}), Poly<Cplx>({Cplx(0.0), Cplx(1.0)})}, 4};
  CHECK_THROWS_AS(detect_cell(x, 2, 4, 1e-9), CellUndecidableError);
}
