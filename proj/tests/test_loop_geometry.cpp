#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wtrace/cocycles.hpp"
#include "wtrace/loop_geometry.hpp"

using namespace wtrace;

namespace {

constexpr Convention kConv = Convention::kKernelPlus;

AlgebraPtr su2() {
  static AlgebraPtr alg = std::make_shared<LieAlgebraData>(LieAlgebraData::su2());
  return alg;
}

LoopElement mono(int mode, int basis) {
  return LoopElement::monomial(su2(), mode, Vec(Vec::Unit(3, basis)));
}

LoopElement random_loop(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  LoopElement x(su2());
  for (int m = lo; m <= hi; ++m) {
    Vec a(3);
    for (int r = 0; r < 3; ++r) a(r) = cplx(u(rng), u(rng));
    x.add(m, a);
  }
  return x;
}

double w_ref(double s, std::int64_t n) {
  return std::pow(std::max(static_cast<double>(n) * static_cast<double>(n),
                           1.0),
                  s);
}

double c_ref(double s, std::int64_t k, std::int64_t q) {
  return 1.0 + (w_ref(s, q) - w_ref(s, k)) / w_ref(s, k + q);
}

// closed Ricci value for s = 1/2, X = z^j a, Y = z^{-j} b: the plus ray is
// traceless, the minus ray telescopes, small columns evaluated directly
cplx ricci_half_oracle(int j, const Vec& a, const Vec& b) {
  const double s = 0.5;
  const Mat ada = su2()->ad(a);
  const Mat adb = su2()->ad(b);
  const cplx trab = (ada * adb).trace();
  cplx total = 0.0;
  for (std::int64_t m = -j; m <= j; ++m) {
    total += 0.25 * c_ref(s, m, -j) * c_ref(s, j, m - j) * trab -
             0.5 * c_ref(s, m + j, -j) * trab;
  }
  double hsum = 0.0;  // H_{2j} - H_j
  for (int r = j + 1; r <= 2 * j; ++r) hsum += 1.0 / r;
  total += -static_cast<double>(j) * hsum * trab;
  return total;
}

}  // namespace

TEST_CASE("connection operator: closed band form equals the composed route") {
  std::mt19937_64 rng(91);
  LoopElement u = random_loop(rng, -2, 2);
  for (double s : {0.5, 1.0, 0.3}) {
    GeometryConfig cfg{s, kConv, 10};
    BlockBandOperator a = connection_operator(u, cfg);
    BlockBandOperator b = connection_operator_composed(u, cfg);
    CHECK(a.validate() < 1e-10);
    for (int k = -2; k <= 2; ++k) {
      for (std::int64_t n : {-257L, -100L, -7L, -1L, 0L, 1L, 7L, 100L, 257L}) {
        CHECK((a.entry(k, n) - b.entry(k, n)).norm() < 1e-13);
      }
    }
    // band action equals the mode-by-mode covariant derivative
    LoopElement v = random_loop(rng, -1, 2);
    LoopElement av = connection_apply(u, v, cfg);
    for (int mode = -4; mode <= 5; ++mode) {
      Vec got = Vec::Zero(3);
      for (const auto& [q, cv] : v.coefficients()) {
        got += a.entry(mode - q, q) * cv;
      }
      CHECK((got - av.at(mode)).norm() < 1e-13);
    }
  }
}

TEST_CASE("connection deforms the adjoint action by lower order") {
  GeometryConfig cfg{0.5, kConv, 8};
  LoopElement u = mono(2, 0);
  BlockBandOperator th = connection_operator(u, cfg);
  BlockBandOperator dev = sub(th, ad_operator(u, kConv));
  // order 0 with an order -1 deformation on the plus ray
  CHECK(order_estimate(th, 2, 256, Ray::kPlus) == doctest::Approx(0.0).epsilon(0.05));
  CHECK(order_estimate(dev, 2, 256, Ray::kPlus) == doctest::Approx(-1.0).epsilon(0.05));
  // for s = 1/2 the deformation vanishes identically on deep negative modes
  for (std::int64_t n : {-3L, -10L, -100L}) {
    CHECK(dev.entry(2, n).norm() < 1e-15);
  }
  // theta(U) tends to ad_U at both ends but is not equal to it near the kernel
  CHECK(dev.entry(2, 5).norm() > 1e-3);
}

TEST_CASE("curvature endomorphism matches the slot-wise connection route") {
  for (double s : {0.5, 1.0, 0.25}) {
    GeometryConfig cfg{s, kConv, 8};
    LoopElement x = mono(2, 0);
    LoopElement y = mono(-1, 1);
    BlockBandOperator r = riemann_operator(x, y, cfg);
    CHECK(r.validate() < 1e-9);
    for (std::int64_t m : {-20L, -7L, -3L, -1L, 0L, 1L, 3L, 7L, 20L}) {
      for (int br = 0; br < 3; ++br) {
        LoopElement z = mono(static_cast<int>(m), br);
        LoopElement rhs =
            connection_apply(z, connection_apply(x, y, cfg), cfg) +
            connection_apply(x, connection_apply(z, y, cfg), cfg) * cplx(-1.0) +
            connection_apply(loop_bracket(z, x), y, cfg) * cplx(-1.0);
        Vec want = rhs.at(static_cast<int>(m) + 1);
        Vec got = r.entry(1, m) * Vec(Vec::Unit(3, br));
        CHECK((got - want).norm() < 1e-12);
      }
    }
    // the two-form route agrees as well: Omega(U, V) applied to modes
    BlockBandOperator om = curvature_operator(x, y, cfg);
    for (std::int64_t m : {-5L, 0L, 4L}) {
      for (int br = 0; br < 3; ++br) {
        LoopElement z = mono(static_cast<int>(m), br);
        LoopElement rhs =
            connection_apply(x, connection_apply(y, z, cfg), cfg) +
            connection_apply(y, connection_apply(x, z, cfg), cfg) * cplx(-1.0) +
            connection_apply(loop_bracket(x, y), z, cfg) * cplx(-1.0);
        Vec want = rhs.at(static_cast<int>(m) + 1);
        Vec got = om.entry(1, m) * Vec(Vec::Unit(3, br));
        CHECK((got - want).norm() < 1e-12);
      }
    }
  }
}

TEST_CASE("curvature concentrates on the antiholomorphic ray for s = 1/2") {
  GeometryConfig cfg{0.5, kConv, 8};
  const int j = 1;
  LoopElement x = mono(j, 0);
  LoopElement y = mono(-j, 1);
  BlockBandOperator r = riemann_operator(x, y, cfg);
  const Mat ada = su2()->ad(Vec(Vec::Unit(3, 0)));
  const Mat adb = su2()->ad(Vec(Vec::Unit(3, 1)));
  const Mat adc = su2()->ad(su2()->bracket(Vec(Vec::Unit(3, 0)),
                                           Vec(Vec::Unit(3, 1))));
  for (std::int64_t m : {2L, 5L, 40L, 300L}) {
    // plus ray: a pure multiple of ad_{[a,b]}, so fibre-traceless
    Mat want = Mat(-1.0 / (4.0 * static_cast<double>(m)) * adc);
    CHECK((r.entry(0, m) - want).norm() < 1e-14);
  }
  for (std::int64_t mm : {2L, 5L, 40L, 300L}) {
    const double M = static_cast<double>(mm);
    Mat want = Mat(-1.0 / (4.0 * M) * adc + j * (ada * adb) / (M + j) -
                   j * (adb * ada) / M);
    CHECK((r.entry(0, -mm) - want).norm() < 1e-13);
  }
  // with a = b everything cancels on the plus ray
  BlockBandOperator rr = riemann_operator(mono(1, 0), mono(-1, 0), cfg);
  for (std::int64_t m : {2L, 9L, 100L}) CHECK(rr.entry(0, m).norm() < 1e-15);
}

TEST_CASE("curvature endomorphism order fits") {
  LoopElement x = mono(1, 0);
  LoopElement y = mono(-1, 1);
  for (auto [s, want] : {std::pair{0.25, -0.5}, {0.5, -1.0}, {1.0, -1.0}}) {
    GeometryConfig cfg{s, kConv, 8};
    BlockBandOperator r = riemann_operator(x, y, cfg);
    for (std::int64_t m : {128L, 256L}) {
      CHECK(order_estimate(r, 0, m, Ray::kMinus) ==
            doctest::Approx(want).epsilon(0.05));
      CHECK(order_estimate(r, 0, m, Ray::kPlus) ==
            doctest::Approx(want).epsilon(0.05));
    }
  }
}

TEST_CASE("weighted Ricci: engine, Richardson sums, and closed values") {
  const DiagonalWeight lap = DiagonalWeight::laplace_plus();
  // pinned value: s = 1/2, X = z e1, Y = z^{-1} e1 gives exactly 1
  {
    GeometryConfig cfg{0.5, kConv, 8};
    CHECK(std::abs(ricci_half_oracle(1, Vec(Vec::Unit(3, 0)),
                                     Vec(Vec::Unit(3, 0))) -
                   cplx(1.0, 0.0)) < 1e-13);
    cplx zeta = ricci_weighted(mono(1, 0), mono(-1, 0), lap, cfg);
    cplx dense = ricci_extrapolated(mono(1, 0), mono(-1, 0), cfg, 512);
    CHECK(std::abs(zeta - cplx(1.0, 0.0)) < 1e-9);
    CHECK(std::abs(dense - cplx(1.0, 0.0)) < 1e-6);
  }
  // closed oracle for higher modes
  {
    GeometryConfig cfg{0.5, kConv, 8};
    for (int j : {1, 2, 3}) {
      Vec a = Vec::Unit(3, 2);
      cplx want = ricci_half_oracle(j, a, a);
      cplx zeta = ricci_weighted(mono(j, 2), mono(-j, 2), lap, cfg);
      cplx dense = ricci_extrapolated(mono(j, 2), mono(-j, 2), cfg, 512);
      CHECK(std::abs(zeta - want) < 1e-9);
      // extrapolation error grows like j^2 / m_cut^3
      CHECK(std::abs(dense - want) < 1e-5);
    }
    // Killing-orthogonal directions pair to zero
    CHECK(std::abs(ricci_weighted(mono(1, 0), mono(-1, 1), lap, cfg)) < 1e-10);
  }
  // pinned value: s = 1 is a finite local sum, X = z e1, Y = z^{-1} e1 -> -3
  {
    GeometryConfig cfg{1.0, kConv, 8};
    cplx zeta = ricci_weighted(mono(1, 0), mono(-1, 0), lap, cfg);
    CHECK(std::abs(zeta - cplx(-3.0, 0.0)) < 1e-10);
    // fibre traces vanish beyond |m| = j, so a tiny head sum is already exact
    CHECK(std::abs(ricci_partial_sum(mono(1, 0), mono(-1, 0), cfg, 8) -
                   cplx(-3.0, 0.0)) < 1e-13);
  }
}

TEST_CASE("Ricci is weight independent and residue free") {
  const DiagonalWeight lap = DiagonalWeight::laplace_plus();
  const DiagonalWeight abs = DiagonalWeight::abs_d_plus();
  const DiagonalWeight lp1 = DiagonalWeight::laplace_plus_one();
  const DiagonalWeight quart = DiagonalWeight::quartic_plus();
  const DiagonalWeight sq = DiagonalWeight::shifted_sq();
  for (double s : {0.5, 1.0}) {
    GeometryConfig cfg{s, kConv, 8};
    cplx base = ricci_weighted(mono(1, 2), mono(-1, 2), lap, cfg);
    for (const DiagonalWeight& q : {abs, lp1, quart, sq}) {
      CHECK(std::abs(ricci_weighted(mono(1, 2), mono(-1, 2), q, cfg) - base) <
            1e-8);
    }
  }
  for (double s : {0.25, 0.5, 1.0}) {
    GeometryConfig cfg{s, kConv, 8};
    BlockBandOperator r = riemann_operator(mono(1, 0), mono(-1, 1), cfg);
    CHECK(std::abs(wres_from_modes(r, lap)) < 1e-10);
    CHECK(std::abs(wres_from_modes(r, abs)) < 1e-10);
  }
}

TEST_CASE("grassmann connection vs Toeplitz compression, column by column") {
  GeometryConfig cfg{0.5, kConv, 8};
  const DiagonalWeight abs = DiagonalWeight::abs_d_plus();
  for (int k : {1, 2}) {
    LoopElement u = mono(k, 0);
    BlockBandOperator phi = grassmann_connection(u, cfg);
    BlockBandOperator t = toeplitz_part(u, kConv);
    Mat adu = su2()->ad(Vec(Vec::Unit(3, 0)));
    // holomorphic directions: phi(U) = D^{-1} T_U D away from the kernel
    for (std::int64_t n = 1; n <= 40; ++n) {
      Mat want = Mat(abs.mu(n) / abs.mu(n + k) * adu);
      CHECK((phi.entry(k, n) - want).norm() < 1e-14);
    }
    // ... but not at the kernel column, where the coefficient halves
    CHECK((phi.entry(k, 0) - Mat(0.5 / abs.mu(k) * adu)).norm() < 1e-14);
    CHECK((t.entry(k, 0) - adu).norm() < 1e-14);

    LoopElement v = mono(-k, 1);
    BlockBandOperator phv = grassmann_connection(v, cfg);
    BlockBandOperator tv = toeplitz_part(v, kConv);
    // antiholomorphic directions: phi = T except where the row hits the kernel
    for (std::int64_t n = k + 1; n <= 40 + k; ++n) {
      CHECK((phv.entry(-k, n) - tv.entry(-k, n)).norm() < 1e-14);
    }
    CHECK((phv.entry(-k, k) - Mat(0.5 * tv.entry(-k, k))).norm() < 1e-14);
  }
}

TEST_CASE("compressions of central directions are trace free") {
  GeometryConfig cfg{0.5, kConv, 8};
  const DiagonalWeight lap = DiagonalWeight::laplace_plus();
  std::mt19937_64 rng(7);
  std::vector<LoopElement> zs;
  zs.push_back(mono(1, 0));
  zs.push_back(mono(0, 1));  // constant loops included
  zs.push_back(mono(-2, 2));
  zs.push_back(random_loop(rng, -2, 2));
  for (const auto& z : zs) {
    CHECK(std::abs(weighted_trace(grassmann_connection(z, cfg), lap)) < 1e-12);
  }
}

TEST_CASE("curvature trace of the grassmann connection is the kaehler form") {
  GeometryConfig cfg{0.5, kConv, 8};
  const DiagonalWeight lap = DiagonalWeight::laplace_plus();
  const DiagonalWeight abs = DiagonalWeight::abs_d_plus();
  const DiagonalWeight lp1 = DiagonalWeight::laplace_plus_one();
  for (int n : {1, 2, 3}) {
    for (int i = 0; i < 3; ++i) {
      for (int jb = 0; jb < 3; ++jb) {
        LoopElement x = mono(n, i);
        LoopElement ybar = mono(-n, jb);
        cplx want = (i == jb) ? cplx(2.0 * n, 0.0) : cplx(0.0, 0.0);
        cplx r1 = chern_form(x, ybar, lap, cfg);
        CHECK(std::abs(r1 - want) < 1e-6);
        // equals the polarization cocycle of the adjoint representatives
        CHECK(std::abs(r1 - polarization_cocycle(ad_operator(x, kConv),
                                                 ad_operator(ybar, kConv),
                                                 abs)) < 1e-6);
        // equals -i times the loop-algebra symplectic form
        CHECK(std::abs(r1 - cplx(0.0, -1.0) * symplectic_form(x, ybar)) <
              1e-6);
      }
    }
  }
  // dense Richardson route at m_cut = 512
  for (auto [n, i, jb] : {std::tuple{1, 0, 0}, {2, 1, 1}, {2, 0, 1}}) {
    cplx want = (i == jb) ? cplx(2.0 * n, 0.0) : cplx(0.0, 0.0);
    CHECK(std::abs(chern_form_truncated(mono(n, i), mono(-n, jb), cfg, 512) -
                   want) < 1e-5);
  }
  // the trace splits as a pure commutator term: tr^Q(phi([X, Ybar])) = 0
  {
    LoopElement x = mono(1, 0), ybar = mono(-1, 0);
    BlockBandOperator px = grassmann_connection(x, cfg);
    BlockBandOperator py = grassmann_connection(ybar, cfg);
    cplx commutator_only = radul_trace_route(px, py, lap);
    CHECK(std::abs(chern_form(x, ybar, lap, cfg) - commutator_only) < 1e-9);
  }
  // multi-mode holomorphic/antiholomorphic arguments
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 2; ++trial) {
    LoopElement x = random_loop(rng, 1, 3);
    LoopElement ybar = random_loop(rng, -3, -1);
    cplx want = cplx(0.0, -1.0) * symplectic_form(x, ybar);
    CHECK(std::abs(chern_form(x, ybar, lap, cfg) - want) < 1e-6);
  }
  // weight independence of the curvature trace
  {
    LoopElement x = mono(2, 0), ybar = mono(-2, 0);
    cplx base = chern_form(x, ybar, lap, cfg);
    CHECK(std::abs(chern_form(x, ybar, abs, cfg) - base) < 1e-8);
    CHECK(std::abs(chern_form(x, ybar, lp1, cfg) - base) < 1e-8);
  }
}

TEST_CASE("off-corner HS norms count weighted fourier modes") {
  // basis normalization ties the fibre HS norm to the invariant inner product
  for (int i = 0; i < 3; ++i) {
    Vec e = Vec::Unit(3, i);
    CHECK(su2()->ad(e).squaredNorm() ==
          doctest::Approx(su2()->killing_inner(e, e).real()).epsilon(1e-12));
  }
  std::mt19937_64 rng(4711);
  for (int trial = 0; trial < 20; ++trial) {
    LoopElement x = random_loop(rng, -3, 3);
    double pm = 0.0, mp = 0.0;
    for (const auto& [k, a] : x.coefficients()) {
      const double nrm = su2()->ad(a).squaredNorm();
      if (k > 0) pm += k * nrm;
      if (k < 0) mp += -k * nrm;
    }
    CHECK(corner_hs_plus_minus(x, kConv) == doctest::Approx(pm).epsilon(1e-12));
    CHECK(corner_hs_minus_plus(x, kConv) == doctest::Approx(mp).epsilon(1e-12));
  }
}

TEST_CASE("polarization cochain pulled back to the loop algebra is closed") {
  const DiagonalWeight abs = DiagonalWeight::abs_d_plus();
  std::mt19937_64 rng(5);
  auto lam = [&](const LoopElement& a, const LoopElement& b) {
    return polarization_cocycle(ad_operator(a, kConv), ad_operator(b, kConv),
                                abs);
  };
  for (int trial = 0; trial < 5; ++trial) {
    LoopElement x = random_loop(rng, -2, 2);
    LoopElement y = random_loop(rng, -2, 2);
    LoopElement z = random_loop(rng, -2, 2);
    cplx val = lam(loop_bracket(x, y), z) - lam(loop_bracket(x, z), y) +
               lam(loop_bracket(y, z), x);
    CHECK(std::abs(val) < 1e-12);
  }
}

TEST_CASE("degenerate inputs") {
  GeometryConfig cfg{0.5, kConv, 8};
  LoopElement empty(su2());
  BlockBandOperator th = connection_operator(empty, cfg);
  CHECK(th.band_indices().empty());
  CHECK(std::abs(ricci_weighted(empty, mono(-1, 0),
                                DiagonalWeight::laplace_plus(), cfg)) == 0.0);
  BlockBandOperator z = zero_op(3, kConv);
  CHECK_THROWS(order_estimate(z, 0, 128, Ray::kPlus));
}
