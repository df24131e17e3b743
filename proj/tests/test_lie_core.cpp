#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "wtrace/lie_algebra.hpp"
#include "wtrace/loop_element.hpp"

using namespace wtrace;

namespace {

AlgebraPtr su2() { return std::make_shared<LieAlgebraData>(LieAlgebraData::su2()); }

Vec rand_vec(std::mt19937_64& rng, int d) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec v(d);
  for (int i = 0; i < d; ++i) v(i) = cplx(u(rng), u(rng));
  return v;
}

// Independent oracle: assemble ad matrices straight from eps_{ijk} and
// multiply them, bypassing LieAlgebraData.
double su2_killing_oracle(int i, int j) {
  double eps[3][3][3] = {};
  eps[0][1][2] = eps[1][2][0] = eps[2][0][1] = 1.0;
  eps[1][0][2] = eps[2][1][0] = eps[0][2][1] = -1.0;
  // (ad_i)_{kj} = eps_{ijk}
  double prod_trace = 0.0;
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) prod_trace += eps[i][l][k] * eps[j][k][l];
  return -prod_trace;
}

}  // namespace

TEST_CASE("su(2) minus-Killing form is 2*delta (independent ad-matrix oracle)") {
  auto alg = su2();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const cplx k = alg->killing_inner(alg->basis(i), alg->basis(j));
      CHECK(k.real() == doctest::Approx(su2_killing_oracle(i, j)).epsilon(1e-14));
      CHECK(k.real() == doctest::Approx(i == j ? 2.0 : 0.0).epsilon(1e-14));
      CHECK(k.imag() == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("killing form is ad-invariant and symmetric") {
  auto alg = su2();
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const Vec a = rand_vec(rng, 3), b = rand_vec(rng, 3), c = rand_vec(rng, 3);
    const cplx lhs = alg->killing_inner(alg->bracket(a, b), c) +
                     alg->killing_inner(b, alg->bracket(a, c));
    CHECK(std::abs(lhs) < 1e-12);
    CHECK(std::abs(alg->killing_inner(a, b) - alg->killing_inner(b, a)) < 1e-12);
  }
}

TEST_CASE("ad is a Lie algebra homomorphism") {
  auto alg = su2();
  std::mt19937_64 rng(12);
  for (int t = 0; t < 10; ++t) {
    const Vec a = rand_vec(rng, 3), b = rand_vec(rng, 3);
    const Mat lhs = alg->ad(alg->bracket(a, b));
    const Mat rhs = alg->ad(a) * alg->ad(b) - alg->ad(b) * alg->ad(a);
    CHECK((lhs - rhs).norm() < 1e-12);
  }
}

TEST_CASE("loop bracket is mode convolution: [z e1, z^-1 e2] = e3") {
  auto alg = su2();
  const auto x = LoopElement::monomial(alg, 1, alg->basis(0));
  const auto y = LoopElement::monomial(alg, -1, alg->basis(1));
  const auto b = loop_bracket(x, y);
  REQUIRE(b.coefficients().size() == 1);
  CHECK(b.coefficients().begin()->first == 0);
  CHECK((b.at(0) - alg->basis(2)).norm() < 1e-15);
}

TEST_CASE("loop bracket satisfies Jacobi on random Fourier polynomials") {
  auto alg = su2();
  std::mt19937_64 rng(13);
  for (int t = 0; t < 5; ++t) {
    LoopElement x(alg), y(alg), z(alg);
    for (int m = -2; m <= 2; ++m) {
      x.add(m, rand_vec(rng, 3));
      y.add(m, rand_vec(rng, 3));
      z.add(m, rand_vec(rng, 3));
    }
    auto j = loop_bracket(loop_bracket(x, y), z) +
             loop_bracket(loop_bracket(y, z), x) +
             loop_bracket(loop_bracket(z, x), y);
    double norm = 0.0;
    for (const auto& [m, a] : j.coefficients()) norm += a.norm();
    CHECK(norm < 1e-12);
  }
}

TEST_CASE("symplectic pairing: frozen value and antisymmetry") {
  auto alg = su2();
  const auto x = LoopElement::monomial(alg, 1, alg->basis(0));
  const auto y = LoopElement::monomial(alg, -1, alg->basis(0));
  // omega(z e1, z^-1 e1) = i * 1 * <e1,e1> = 2i
  const cplx w = symplectic_form(x, y);
  CHECK(w.real() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(w.imag() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(symplectic_form(x, x)) < 1e-14);

  std::mt19937_64 rng(14);
  for (int t = 0; t < 10; ++t) {
    LoopElement u(alg), v(alg);
    for (int m = -3; m <= 3; ++m) {
      u.add(m, rand_vec(rng, 3));
      v.add(m, rand_vec(rng, 3));
    }
    CHECK(std::abs(symplectic_form(u, v) + symplectic_form(v, u)) < 1e-12);
    CHECK(std::abs(symplectic_form(u, u)) < 1e-12);
  }
}

TEST_CASE("structure-constant file round trip") {
  const char* path = "su2_test.sc";
  {
    std::ofstream out(path);
    out << "# test algebra\n" << "dim 3\n";
    out << "0 1 2  1\n1 2 0  1\n2 0 1  1\n";
    out << "1 0 2 -1\n2 1 0 -1\n0 2 1 -1\n";
  }
  const auto alg = LieAlgebraData::load(path);
  CHECK(alg.dim() == 3);
  CHECK(alg.structure(0, 1, 2) == 1.0);
  CHECK(alg.killing_inner(alg.basis(0), alg.basis(0)).real() ==
        doctest::Approx(2.0));
  std::remove(path);
}

TEST_CASE("invalid algebras are rejected") {
  // not antisymmetric
  CHECK_THROWS(LieAlgebraData::make(3, {{0, 1, 2, 1.0}}));
  // Jacobi violation (antisymmetric but inconsistent)
  CHECK_THROWS(LieAlgebraData::make(3, {{0, 1, 0, 1.0},
                                        {1, 0, 0, -1.0},
                                        {0, 2, 1, 1.0},
                                        {2, 0, 1, -1.0}}));
  // abelian: Killing form identically zero, not negative definite
  CHECK_THROWS(LieAlgebraData::make(1, {}));
  // malformed files
  const char* path = "bad_test.sc";
  {
    std::ofstream out(path);
    out << "0 1 2 1\n";  // entries before dim
  }
  CHECK_THROWS(LieAlgebraData::load(path));
  {
    std::ofstream out(path);
    out << "dim 3\n0 1 bad\n";
  }
  CHECK_THROWS(LieAlgebraData::load(path));
  std::remove(path);
  CHECK_THROWS(LieAlgebraData::load("does_not_exist.sc"));
}

TEST_CASE("conjugated loops fix the real form") {
  auto alg = su2();
  LoopElement x(alg);
  Vec a(3);
  a << cplx(0.5, 0.25), cplx(0, 1), cplx(-1, 0);
  x.add(2, a);
  x.add(-2, a.conjugate());
  x.add(0, Vec(Vec::Ones(3)));
  const auto xc = x.conjugated();
  for (const auto& [m, v] : x.coefficients()) CHECK((xc.at(m) - v).norm() < 1e-15);
}
