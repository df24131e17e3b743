#include "wtrace/cocycles.hpp"

namespace wtrace {
namespace {

BlockBandOperator sign_of(const BlockBandOperator& a) {
  return epsilon_sign(a.fibre_dim(), a.convention());
}

}  // namespace

cplx coboundary1(const OpFunctional& c, const BlockBandOperator& x,
                 const BlockBandOperator& y, int depth) {
  return c(commutator(x, y, depth));
}

cplx coboundary2(const OpBilinear& c, const BlockBandOperator& x,
                 const BlockBandOperator& y, const BlockBandOperator& z,
                 int depth) {
  return c(commutator(x, y, depth), z) - c(commutator(x, z, depth), y) +
         c(commutator(y, z, depth), x);
}

cplx radul_trace_route(const BlockBandOperator& a, const BlockBandOperator& b,
                       const DiagonalWeight& q, const ZetaSumOptions& opts) {
  return weighted_trace(commutator(a, b), q, opts);
}

cplx radul_residue_route(const BlockBandOperator& a,
                         const BlockBandOperator& b, const DiagonalWeight& q,
                         const ZetaSumOptions& opts) {
  BlockBandOperator bracket = log_weight_commutator(q, a);
  return -wres_from_modes(compose(bracket, b), q, opts) / q.order();
}

cplx signed_trace(const BlockBandOperator& a, const DiagonalWeight& q,
                  const ZetaSumOptions& opts) {
  return weighted_trace(compose(sign_of(a), a), q, opts);
}

cplx schwinger(const BlockBandOperator& a, const BlockBandOperator& b,
               const DiagonalWeight& q, const ZetaSumOptions& opts) {
  BlockBandOperator eps = sign_of(a);
  BlockBandOperator prod =
      compose(eps, compose(commutator(eps, a), commutator(eps, b)));
  return 0.5 * weighted_trace(prod, q, opts);
}

cplx schwinger_mean(const BlockBandOperator& a, const BlockBandOperator& b,
                    const DiagonalWeight& q, const ZetaSumOptions& opts) {
  BlockBandOperator eps = sign_of(a);
  BlockBandOperator prod =
      compose(eps, commutator(commutator(eps, a), commutator(eps, b)));
  return 0.25 * weighted_trace(prod, q, opts);
}

cplx twisted_radul(const BlockBandOperator& a, const BlockBandOperator& b,
                   const DiagonalWeight& q, const ZetaSumOptions& opts) {
  return weighted_trace(commutator(compose(sign_of(a), a), b), q, opts);
}

cplx twisted_radul_flip(const BlockBandOperator& a,
                        const BlockBandOperator& b, const DiagonalWeight& q,
                        const ZetaSumOptions& opts) {
  return weighted_trace(commutator(compose(a, sign_of(a)), b), q, opts);
}

cplx twisted_radul_mean(const BlockBandOperator& a,
                        const BlockBandOperator& b, const DiagonalWeight& q,
                        const ZetaSumOptions& opts) {
  return 0.5 * (twisted_radul(a, b, q, opts) +
                twisted_radul_flip(a, b, q, opts));
}

cplx obstruction_residue(const BlockBandOperator& a,
                         const BlockBandOperator& b, const DiagonalWeight& q,
                         const ZetaSumOptions& opts) {
  BlockBandOperator inner = log_weight_commutator(q, b);
  BlockBandOperator nested = commutator(a, inner);
  return wres_from_modes(compose(sign_of(a), nested), q, opts);
}

cplx polarization_cocycle(const BlockBandOperator& a,
                          const BlockBandOperator& b, const DiagonalWeight& q,
                          const ZetaSumOptions& opts) {
  BlockBandOperator app = corner(a, Quadrant::kPP);
  BlockBandOperator bpp = corner(b, Quadrant::kPP);
  BlockBandOperator diff =
      sub(commutator(app, bpp), corner(commutator(a, b), Quadrant::kPP));
  return weighted_trace(diff, q, opts);
}

cplx polarization_hs_route(const BlockBandOperator& a,
                           const BlockBandOperator& b,
                           const DiagonalWeight& q,
                           const ZetaSumOptions& opts) {
  BlockBandOperator term1 =
      compose(corner(b, Quadrant::kPM), corner(a, Quadrant::kMP));
  BlockBandOperator term2 =
      compose(corner(a, Quadrant::kPM), corner(b, Quadrant::kMP));
  return weighted_trace(sub(term1, term2), q, opts);
}

BlockBandOperator j_embed(const BlockBandOperator& c, int depth) {
  BlockBandOperator mp = corner(c, Quadrant::kMP);
  return sub(mp, adjoint(mp, depth));
}

cplx hermitian_pairing(const BlockBandOperator& a, const BlockBandOperator& b,
                       const DiagonalWeight& q, const ZetaSumOptions& opts) {
  BlockBandOperator diff = sub(compose(adjoint(a), b),
                               compose(adjoint(b), a));
  return cplx(0.0, -1.0) * weighted_trace(diff, q, opts);
}

}  // namespace wtrace
