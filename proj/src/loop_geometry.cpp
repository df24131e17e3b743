#include "wtrace/loop_geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "wtrace/cocycles.hpp"

namespace wtrace {

namespace {

double wval(double s, std::int64_t n) {
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  return std::pow(std::max(n2, 1.0), s);
}

// series of 1 / w(m + u) on a ray, in the ray variable M = |column|
ScalarSeries inv_w(double s, std::int64_t u, Ray ray, int depth) {
  const double du = (ray == Ray::kPlus) ? static_cast<double>(u)
                                        : -static_cast<double>(u);
  ScalarSeries rel = pow1p_series(ScalarSeries::power(cplx(du, 0.0), -1.0),
                                  -2.0 * s, depth);
  return rel * ScalarSeries::power(cplx(1.0, 0.0), -2.0 * s);
}

// series of w(m + u) / w(m + v) on a ray
ScalarSeries ratio_w(double s, std::int64_t u, std::int64_t v, Ray ray,
                     int depth) {
  const double sgn = (ray == Ray::kPlus) ? 1.0 : -1.0;
  ScalarSeries top = pow1p_series(
      ScalarSeries::power(cplx(sgn * static_cast<double>(u), 0.0), -1.0),
      2.0 * s, depth);
  ScalarSeries bot = pow1p_series(
      ScalarSeries::power(cplx(sgn * static_cast<double>(v), 0.0), -1.0),
      -2.0 * s, depth);
  return top * bot;
}

// series of c_s(m + u, r): the first argument rides the column
ScalarSeries cs_first(double s, std::int64_t u, std::int64_t r, Ray ray,
                      int depth) {
  ScalarSeries one = ScalarSeries::power(cplx(1.0, 0.0), 0.0);
  return one + inv_w(s, u + r, ray, depth).scaled(cplx(wval(s, r), 0.0)) -
         ratio_w(s, u, u + r, ray, depth);
}

// series of c_s(k, m + v): the second argument rides the column
ScalarSeries cs_second(double s, std::int64_t k, std::int64_t v, Ray ray,
                       int depth) {
  ScalarSeries one = ScalarSeries::power(cplx(1.0, 0.0), 0.0);
  return one + ratio_w(s, v, v + k, ray, depth) -
         inv_w(s, v + k, ray, depth).scaled(cplx(wval(s, k), 0.0));
}

cplx richardson(cplx s1, cplx s2, cplx s3) {
  // partial sums at M/4, M/2, M with tail alpha/M + beta/M^2
  cplx r1 = 2.0 * s3 - s2;
  cplx r0 = 2.0 * s2 - s1;
  return (4.0 * r1 - r0) / 3.0;
}

const LieAlgebraData& algebra_of(const LoopElement& x) {
  if (!x.algebra()) throw std::invalid_argument("loop element: null algebra");
  return *x.algebra();
}

}  // namespace

double connection_coefficient(double s, std::int64_t k, std::int64_t q) {
  return 1.0 + (wval(s, q) - wval(s, k)) / wval(s, k + q);
}

BlockBandOperator connection_operator(const LoopElement& u,
                                      const GeometryConfig& cfg) {
  const LieAlgebraData& alg = algebra_of(u);
  const int d = alg.dim();
  BlockBandOperator r(d, cfg.convention);
  for (const auto& [k, coeff] : u.coefficients()) {
    const Mat adu = alg.ad(coeff);
    if (adu.norm() == 0.0) continue;
    BandEntry e;
    const double s = cfg.s;
    const int kk = k;
    e.eval = [s, kk, adu](std::int64_t n) {
      return Mat(0.5 * connection_coefficient(s, kk, n) * adu);
    };
    e.plus = mat_series_from_scalar(
        cs_second(s, k, 0, Ray::kPlus, cfg.depth).scaled(cplx(0.5, 0.0)), adu);
    e.minus = mat_series_from_scalar(
        cs_second(s, k, 0, Ray::kMinus, cfg.depth).scaled(cplx(0.5, 0.0)),
        adu);
    r.set_band(k, std::move(e));
    r.set_n0(std::abs(static_cast<std::int64_t>(k)) + 2);
  }
  return r;
}

BlockBandOperator connection_operator_composed(const LoopElement& u,
                                               const GeometryConfig& cfg) {
  const LieAlgebraData& alg = algebra_of(u);
  const int d = alg.dim();
  const DiagonalWeight lap = DiagonalWeight::laplace_plus();
  BlockBandOperator w = weight_power(lap, cfg.s, d, cfg.convention);
  BlockBandOperator winv = weight_power(lap, -cfg.s, d, cfg.convention);
  BlockBandOperator adu = ad_operator(u, cfg.convention);
  LoopElement wu(u.algebra());
  for (const auto& [k, coeff] : u.coefficients())
    wu.add(k, Vec(coeff * wval(cfg.s, k)));
  BlockBandOperator adwu = ad_operator(wu, cfg.convention);
  BlockBandOperator mid = compose(winv, compose(adu, w, cfg.depth), cfg.depth);
  BlockBandOperator last = compose(winv, adwu, cfg.depth);
  return scale(add(adu, sub(mid, last)), cplx(0.5, 0.0));
}

LoopElement connection_apply(const LoopElement& u, const LoopElement& v,
                             const GeometryConfig& cfg) {
  const LieAlgebraData& alg = algebra_of(u);
  LoopElement r(u.algebra());
  for (const auto& [k, cu] : u.coefficients())
    for (const auto& [q, cv] : v.coefficients())
      r.add(k + q, Vec(0.5 * connection_coefficient(cfg.s, k, q) *
                       alg.bracket(cu, cv)));
  return r;
}

BlockBandOperator curvature_operator(const LoopElement& u,
                                     const LoopElement& v,
                                     const GeometryConfig& cfg) {
  BlockBandOperator tu = connection_operator(u, cfg);
  BlockBandOperator tv = connection_operator(v, cfg);
  BlockBandOperator tb = connection_operator(loop_bracket(u, v), cfg);
  return sub(commutator(tu, tv, cfg.depth), tb);
}

BlockBandOperator riemann_operator(const LoopElement& x, const LoopElement& y,
                                   const GeometryConfig& cfg) {
  const LieAlgebraData& alg = algebra_of(x);
  const int d = alg.dim();
  const double s = cfg.s;
  BlockBandOperator r = zero_op(d, cfg.convention);
  for (const auto& [j, a] : x.coefficients()) {
    for (const auto& [l, b] : y.coefficients()) {
      const Mat ada = alg.ad(a);
      const Mat adb = alg.ad(b);
      const Mat adc = alg.ad(alg.bracket(a, b));
      const Mat ab = ada * adb;
      const Mat ba = adb * ada;
      const double kap = connection_coefficient(s, j, l);
      BandEntry e;
      const std::int64_t jj = j, ll = l;
      e.eval = [s, jj, ll, kap, adc, ab, ba](std::int64_t m) {
        return Mat(-0.25 * kap * connection_coefficient(s, m, jj + ll) * adc +
                   0.25 * connection_coefficient(s, m, ll) *
                       connection_coefficient(s, jj, m + ll) * ab -
                   0.5 * connection_coefficient(s, m + jj, ll) * ba);
      };
      for (Ray ray : {Ray::kPlus, Ray::kMinus}) {
        MatSeries series =
            mat_series_from_scalar(
                cs_first(s, 0, j + l, ray, cfg.depth).scaled(
                    cplx(-0.25 * kap, 0.0)),
                adc) +
            mat_series_from_scalar(
                (cs_first(s, 0, l, ray, cfg.depth) *
                 cs_second(s, j, l, ray, cfg.depth))
                    .scaled(cplx(0.25, 0.0)),
                ab) +
            mat_series_from_scalar(
                cs_first(s, j, l, ray, cfg.depth).scaled(cplx(-0.5, 0.0)), ba);
        if (ray == Ray::kPlus)
          e.plus = std::move(series);
        else
          e.minus = std::move(series);
      }
      BlockBandOperator one(d, cfg.convention,
                            std::abs(static_cast<std::int64_t>(j)) +
                                std::abs(static_cast<std::int64_t>(l)) + 2);
      one.set_band(j + l, std::move(e));
      r = add(r, one);
    }
  }
  return r;
}

cplx ricci_weighted(const LoopElement& x, const LoopElement& y,
                    const DiagonalWeight& q, const GeometryConfig& cfg,
                    const ZetaSumOptions& opts) {
  return weighted_trace(riemann_operator(x, y, cfg), q, opts);
}

cplx ricci_partial_sum(const LoopElement& x, const LoopElement& y,
                       const GeometryConfig& cfg, std::int64_t m_cut) {
  BlockBandOperator r = riemann_operator(x, y, cfg);
  cplx acc = 0.0;
  for (std::int64_t m = -m_cut; m <= m_cut; ++m) acc += r.entry(0, m).trace();
  return acc;
}

cplx ricci_extrapolated(const LoopElement& x, const LoopElement& y,
                        const GeometryConfig& cfg, std::int64_t m_cut) {
  return richardson(ricci_partial_sum(x, y, cfg, m_cut / 4),
                    ricci_partial_sum(x, y, cfg, m_cut / 2),
                    ricci_partial_sum(x, y, cfg, m_cut));
}

double order_estimate(const BlockBandOperator& a, int band, std::int64_t m,
                      Ray ray) {
  const std::int64_t n1 = (ray == Ray::kPlus) ? m : -m;
  const std::int64_t n2 = 2 * n1;
  const double v1 = a.entry(band, n1).norm();
  const double v2 = a.entry(band, n2).norm();
  if (v1 == 0.0 || v2 == 0.0)
    throw std::runtime_error("order estimate: vanishing band entry");
  return std::log2(v2 / v1);
}

BlockBandOperator grassmann_connection(const LoopElement& u,
                                       const GeometryConfig& cfg) {
  return corner(connection_operator(u, cfg), Quadrant::kPP);
}

BlockBandOperator toeplitz_part(const LoopElement& u, Convention c) {
  return corner(ad_operator(u, c), Quadrant::kPP);
}

namespace {

BlockBandOperator chern_operator(const LoopElement& x, const LoopElement& ybar,
                                 const GeometryConfig& cfg) {
  BlockBandOperator px = grassmann_connection(x, cfg);
  BlockBandOperator py = grassmann_connection(ybar, cfg);
  BlockBandOperator pb = grassmann_connection(loop_bracket(x, ybar), cfg);
  return sub(commutator(px, py, cfg.depth), pb);
}

}  // namespace

cplx chern_form(const LoopElement& x, const LoopElement& ybar,
                const DiagonalWeight& q, const GeometryConfig& cfg,
                const ZetaSumOptions& opts) {
  return weighted_trace(chern_operator(x, ybar, cfg), q, opts);
}

cplx chern_form_truncated(const LoopElement& x, const LoopElement& ybar,
                          const GeometryConfig& cfg, std::int64_t m_cut) {
  BlockBandOperator k = chern_operator(x, ybar, cfg);
  auto head = [&](std::int64_t m) {
    cplx acc = 0.0;
    for (std::int64_t n = 0; n <= m; ++n) acc += k.entry(0, n).trace();
    return acc;
  };
  return richardson(head(m_cut / 4), head(m_cut / 2), head(m_cut));
}

double corner_hs_plus_minus(const LoopElement& x, Convention c) {
  HsNorm h = hs_norm_squared(corner(ad_operator(x, c), Quadrant::kPM));
  if (!h.finite)
    throw std::runtime_error("corner HS norm: unexpected infinite value");
  return h.value;
}

double corner_hs_minus_plus(const LoopElement& x, Convention c) {
  HsNorm h = hs_norm_squared(corner(ad_operator(x, c), Quadrant::kMP));
  if (!h.finite)
    throw std::runtime_error("corner HS norm: unexpected infinite value");
  return h.value;
}

}  // namespace wtrace
