#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wtrace/numerics.hpp"
#include "wtrace/zeta.hpp"

using namespace wtrace;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Independent oracle: direct sum with integral-plus-midpoint tail correction,
// sum_{n>N} n^{-s} ~ N^{1-s}/(s-1) - N^{-s}/2 + s N^{-s-1}/12.
double zeta_direct(double s) {
  const int n_max = 200000;
  double acc = 0.0;
  for (int n = n_max; n >= 1; --n) acc += std::pow(n, -s);
  const double nd = n_max;
  return acc + std::pow(nd, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(nd, -s) +
         s / 12.0 * std::pow(nd, -s - 1.0);
}
}  // namespace

TEST_CASE("riemann zeta reproduces classical closed forms") {
  CHECK(riemann_zeta(2.0) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-14));
  CHECK(riemann_zeta(4.0) ==
        doctest::Approx(kPi * kPi * kPi * kPi / 90.0).epsilon(1e-14));
  CHECK(riemann_zeta(0.0) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(riemann_zeta(-1.0) == doctest::Approx(-1.0 / 12.0).epsilon(1e-13));
  CHECK(std::abs(riemann_zeta(-3.0) - 1.0 / 120.0) < 1e-11);
  // Frozen reference values (standard tables).
  CHECK(riemann_zeta(3.0) ==
        doctest::Approx(1.2020569031595942854).epsilon(1e-14));
  CHECK(riemann_zeta(0.5) ==
        doctest::Approx(-1.4603545088095868129).epsilon(1e-13));
}

TEST_CASE("riemann zeta agrees with direct-summation oracle off-table") {
  for (double s : {1.5, 2.5, kPi, 3.7, 5.25}) {
    CHECK(riemann_zeta(s) == doctest::Approx(zeta_direct(s)).epsilon(1e-11));
  }
}

TEST_CASE("zeta derivative at frozen reference points") {
  // zeta'(0) = -log(2 pi)/2
  CHECK(riemann_zeta_ds(0.0) ==
        doctest::Approx(-0.5 * std::log(2.0 * kPi)).epsilon(1e-13));
  // zeta'(2) (standard tables)
  CHECK(riemann_zeta_ds(2.0) ==
        doctest::Approx(-0.93754825431584375370).epsilon(1e-12));
  // zeta'(-1) = 1/12 - log A (Glaisher-Kinkelin)
  CHECK(riemann_zeta_ds(-1.0) ==
        doctest::Approx(1.0 / 12.0 - std::log(1.2824271291006226369)).epsilon(1e-11));
}

TEST_CASE("hurwitz zeta closed forms and recurrence") {
  // zeta(2, 1/2) = pi^2/2
  CHECK(hurwitz_zeta(2.0, 0.5) ==
        doctest::Approx(kPi * kPi / 2.0).epsilon(1e-14));
  // zeta(0, a) = 1/2 - a
  for (double a : {1.0, 2.0, 7.5, 33.0}) {
    CHECK(hurwitz_zeta(0.0, a) == doctest::Approx(0.5 - a).epsilon(1e-13));
  }
  // zeta(-1, a) = -(B_2(a))/2 = -(a^2 - a + 1/6)/2
  for (double a : {1.0, 3.0, 10.0}) {
    CHECK(hurwitz_zeta(-1.0, a) ==
          doctest::Approx(-(a * a - a + 1.0 / 6.0) / 2.0).epsilon(1e-12));
  }
  // recurrence zeta(s, a) = zeta(s, a+1) + a^{-s}
  for (double s : {2.5, -0.5, 3.0, kPi}) {
    for (double a : {1.0, 4.0, 17.0}) {
      CHECK(hurwitz_zeta(s, a) ==
            doctest::Approx(hurwitz_zeta(s, a + 1.0) + std::pow(a, -s))
                .epsilon(1e-13));
    }
  }
  CHECK_THROWS(hurwitz_zeta(1.0, 2.0));
  CHECK_THROWS(hurwitz_zeta(2.0, -1.0));
}

TEST_CASE("hurwitz derivative satisfies the exact shifted recurrence") {
  // d/ds of zeta(s,a) = zeta(s,a+1) + a^{-s}:
  //   zeta'(s,a) = zeta'(s,a+1) - ln(a) a^{-s}
  for (double s : {2.5, 0.25, -1.5, 4.0}) {
    for (double a : {1.0, 6.0, 25.0}) {
      const double lhs = hurwitz_zeta_ds(s, a);
      const double rhs =
          hurwitz_zeta_ds(s, a + 1.0) - std::log(a) * std::pow(a, -s);
      const double scale =
          1.0 + std::abs(lhs) + std::abs(hurwitz_zeta(s, a + 1.0));
      CHECK(std::abs(lhs - rhs) < 1e-12 * scale);
    }
  }
  // one finite-difference sanity at a well-conditioned point
  const double h = 1e-5;
  const double fd =
      (hurwitz_zeta(2.0 + h, 3.0) - hurwitz_zeta(2.0 - h, 3.0)) / (2.0 * h);
  CHECK(hurwitz_zeta_ds(2.0, 3.0) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("digamma at classical points and recurrence") {
  CHECK(digamma(1.0) == doctest::Approx(-kEulerGamma).epsilon(1e-14));
  CHECK(digamma(2.0) == doctest::Approx(1.0 - kEulerGamma).epsilon(1e-14));
  CHECK(digamma(0.5) ==
        doctest::Approx(-kEulerGamma - 2.0 * std::log(2.0)).epsilon(1e-14));
  // integer a: psi(m) = -gamma + H_{m-1}
  double harmonic = 0.0;
  for (int m = 1; m <= 40; ++m) {
    CHECK(digamma(m) == doctest::Approx(-kEulerGamma + harmonic).epsilon(1e-13));
    harmonic += 1.0 / m;
  }
  // psi(a+1) = psi(a) + 1/a
  for (double a : {0.25, 3.5, 11.0}) {
    CHECK(digamma(a + 1.0) == doctest::Approx(digamma(a) + 1.0 / a).epsilon(1e-13));
  }
}

TEST_CASE("pairwise sum and richardson behave") {
  std::vector<double> xs(1000, 0.1);
  CHECK(pairwise_sum(xs) == doctest::Approx(100.0).epsilon(1e-14));

  // S(M) = 3 - 2/M + 5/M^2
  auto S = [](double M) { return 3.0 - 2.0 / M + 5.0 / (M * M); };
  const auto r = richardson3(S(64), S(128), S(256));
  CHECK(r.real() == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("fit_inverse_powers recovers planted coefficients") {
  auto h = [](std::int64_t m) {
    const double x = 1.0 / static_cast<double>(m);
    return std::complex<double>(2.0 * x * x - 3.0 * x * x * x, x * x);
  };
  const auto c = fit_inverse_powers(h, 2.0, 4, 64);
  CHECK(c[0].real() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(c[0].imag() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(c[1].real() == doctest::Approx(-3.0).epsilon(1e-7));
  CHECK(std::abs(c[2]) < 1e-5);
}
