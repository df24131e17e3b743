// Bilinear functionals on the banded-operator algebra built from weighted
// traces: the trace coboundary (Radul) cocycle with its residue formula,
// sign-twisted functionals (Schwinger, signed trace, twisted Radul) for the
// polarization defined by the sign of the mode operator, the off-diagonal
// (polarization) cocycle of the restricted algebra, and the hermitian
// pairing behind the loop-group Kaehler form. All functionals take the
// regularizing weight explicitly; the sign operator is derived from each
// argument's fibre dimension and kernel convention.
#pragma once

#include <functional>

#include "wtrace/band_operator.hpp"
#include "wtrace/reg_traces.hpp"

namespace wtrace {

using OpFunctional = std::function<cplx(const BlockBandOperator&)>;
using OpBilinear =
    std::function<cplx(const BlockBandOperator&, const BlockBandOperator&)>;

// Lie-algebra coboundary with trivial coefficients:
//   (d c)(x, y)    = c([x, y])
//   (d c)(x, y, z) = c([x,y], z) - c([x,z], y) + c([y,z], x)
// so that coboundary2(coboundary1(f), ...) = 0 expresses the Jacobi
// identity and coboundary2(c) = 0 is the antisymmetric 2-cocycle law.
cplx coboundary1(const OpFunctional& c, const BlockBandOperator& x,
                 const BlockBandOperator& y, int depth = 8);
cplx coboundary2(const OpBilinear& c, const BlockBandOperator& x,
                 const BlockBandOperator& y, const BlockBandOperator& z,
                 int depth = 8);

// Radul cocycle, two routes: the coboundary of the weighted trace and its
// residue formula -(1/ord Q) res([log Q, A] B).
cplx radul_trace_route(const BlockBandOperator& a, const BlockBandOperator& b,
                       const DiagonalWeight& q,
                       const ZetaSumOptions& opts = {});
cplx radul_residue_route(const BlockBandOperator& a,
                         const BlockBandOperator& b, const DiagonalWeight& q,
                         const ZetaSumOptions& opts = {});

// tr^Q(eps A), with eps the sign of the mode operator.
cplx signed_trace(const BlockBandOperator& a, const DiagonalWeight& q,
                  const ZetaSumOptions& opts = {});

// (1/2) tr^Q(eps [eps, A] [eps, B])
cplx schwinger(const BlockBandOperator& a, const BlockBandOperator& b,
               const DiagonalWeight& q, const ZetaSumOptions& opts = {});

// (1/4) tr^Q(eps [[eps, A], [eps, B]]), the antisymmetric part of the above
cplx schwinger_mean(const BlockBandOperator& a, const BlockBandOperator& b,
                    const DiagonalWeight& q, const ZetaSumOptions& opts = {});

// tr^Q([eps A, B]) and tr^Q([A eps, B]) and their mean
cplx twisted_radul(const BlockBandOperator& a, const BlockBandOperator& b,
                   const DiagonalWeight& q, const ZetaSumOptions& opts = {});
cplx twisted_radul_flip(const BlockBandOperator& a,
                        const BlockBandOperator& b, const DiagonalWeight& q,
                        const ZetaSumOptions& opts = {});
cplx twisted_radul_mean(const BlockBandOperator& a,
                        const BlockBandOperator& b, const DiagonalWeight& q,
                        const ZetaSumOptions& opts = {});

// res(eps [A, [log Q, B]]): the obstruction to the sign-twisted
// functionals being cocycles on the subalgebra at hand.
cplx obstruction_residue(const BlockBandOperator& a,
                         const BlockBandOperator& b, const DiagonalWeight& q,
                         const ZetaSumOptions& opts = {});

// Polarization cocycle tr^Q([A_pp, B_pp] - [A, B]_pp) and its off-diagonal
// route tr^Q(B_pm A_mp - A_pm B_mp); the two agree identically, and on
// pairs with Hilbert-Schmidt off-corners the value is an ordinary trace.
cplx polarization_cocycle(const BlockBandOperator& a,
                          const BlockBandOperator& b, const DiagonalWeight& q,
                          const ZetaSumOptions& opts = {});
cplx polarization_hs_route(const BlockBandOperator& a,
                           const BlockBandOperator& b,
                           const DiagonalWeight& q,
                           const ZetaSumOptions& opts = {});

// C acting from the plus to the minus subspace embeds as the block matrix
// [[0, -C*], [C, 0]]; the input is reduced to its minus-plus corner first.
BlockBandOperator j_embed(const BlockBandOperator& c, int depth = 8);

// -i tr^Q(A* B - B* A)
cplx hermitian_pairing(const BlockBandOperator& a, const BlockBandOperator& b,
                       const DiagonalWeight& q,
                       const ZetaSumOptions& opts = {});

}  // namespace wtrace
