// Left-invariant H^s geometry of loop algebras: the Levi-Civita-type
// connection theta^s, its curvature, the weighted Ricci form, and the
// Grassmannian connection phi = [theta^{1/2}]_{++} whose curvature trace
// recovers the Kaehler form of the s = 1/2 metric.
#pragma once

#include "wtrace/band_operator.hpp"
#include "wtrace/reg_traces.hpp"

namespace wtrace {

struct GeometryConfig {
  double s = 0.5;  // Sobolev exponent of the metric
  Convention convention = Convention::kKernelPlus;
  int depth = 8;  // expansion depth of closed-form bands
};

// connection coefficient c_s(k, q) = 1 + (w(q) - w(k)) / w(k + q) with
// w(n) = max(n^2, 1)^s; the covariant derivative along z^k u sends z^q v
// to (1/2) c_s(k, q) z^{k+q} [u, v]
double connection_coefficient(double s, std::int64_t k, std::int64_t q);

// theta^s(U): closed band form with exact per-ray expansions
BlockBandOperator connection_operator(const LoopElement& u,
                                      const GeometryConfig& cfg);

// the same operator assembled from weight-power compositions:
// (1/2) (ad_U + W^{-1} ad_U W - W^{-1} ad_{W U}) with W = (Q0 + P)^s
BlockBandOperator connection_operator_composed(const LoopElement& u,
                                               const GeometryConfig& cfg);

// theta^s(U) applied to a loop element, mode by mode
LoopElement connection_apply(const LoopElement& u, const LoopElement& v,
                             const GeometryConfig& cfg);

// curvature Omega^s(U, V) = [theta U, theta V] - theta([U, V])
BlockBandOperator curvature_operator(const LoopElement& u,
                                     const LoopElement& v,
                                     const GeometryConfig& cfg);

// curvature endomorphism R^s(X, Y): z^m c -> Omega^s(z^m c, X) Y as a band
// operator in the column mode m, in closed form with exact expansions
BlockBandOperator riemann_operator(const LoopElement& x, const LoopElement& y,
                                   const GeometryConfig& cfg);

// weighted Ricci form tr^Q(R^s(X, Y))
cplx ricci_weighted(const LoopElement& x, const LoopElement& y,
                    const DiagonalWeight& q, const GeometryConfig& cfg,
                    const ZetaSumOptions& opts = {});
// plain fibre-trace sum over |m| <= m_cut, and its Richardson limit built
// from the partial sums at m_cut / 4, m_cut / 2, m_cut
cplx ricci_partial_sum(const LoopElement& x, const LoopElement& y,
                       const GeometryConfig& cfg, std::int64_t m_cut);
cplx ricci_extrapolated(const LoopElement& x, const LoopElement& y,
                        const GeometryConfig& cfg, std::int64_t m_cut);

// log2 slope of band-entry norms between columns m and 2m on a ray
double order_estimate(const BlockBandOperator& a, int band, std::int64_t m,
                      Ray ray);

// Grassmannian connection phi(U) = [theta^{1/2}(U)]_{++} and the Toeplitz
// compression T_U = (ad_U)_{++} it deforms
BlockBandOperator grassmann_connection(const LoopElement& u,
                                       const GeometryConfig& cfg);
BlockBandOperator toeplitz_part(const LoopElement& u, Convention c);

// curvature trace r1(X, Ybar) = tr^Q([phi X, phi Ybar] - phi([X, Ybar]))
cplx chern_form(const LoopElement& x, const LoopElement& ybar,
                const DiagonalWeight& q, const GeometryConfig& cfg,
                const ZetaSumOptions& opts = {});
// dense route: band-0 fibre-trace head sums + Richardson limit over
// m_cut / 4, m_cut / 2, m_cut
cplx chern_form_truncated(const LoopElement& x, const LoopElement& ybar,
                          const GeometryConfig& cfg, std::int64_t m_cut);

// squared Hilbert-Schmidt norms of the off-diagonal corners of ad_X
double corner_hs_plus_minus(const LoopElement& x, Convention c);
double corner_hs_minus_plus(const LoopElement& x, Convention c);

}  // namespace wtrace
