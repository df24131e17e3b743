// The zeta-regularization engine. finite_part_sum is the single place in
// the library where a divergent mode sum acquires a finite value: it
// computes the Laurent data at z = 0 of z -> sum_n c_n mu_n^{-z} by exact
// head summation, Hurwitz-zeta continuation of the expansion terms, a
// peeling correction for non-pure weights, and an absolutely convergent
// numeric remainder. Everything else (weighted traces, residues, canonical
// trace, the trace laws) is a thin layer over it.
#pragma once

#include <cstdint>
#include <functional>

#include "wtrace/band_operator.hpp"
#include "wtrace/diagonal_weight.hpp"
#include "wtrace/types.hpp"

namespace wtrace {

struct RegularizedValue {
  cplx finite_part;
  cplx pole_residue;
  bool is_entire(double tol = 1e-9) const {
    return std::abs(pole_residue) < tol;
  }
};

// diagonal trace data of an operator: c_n = tr(entry(0, n)) with exact head
// evaluator and two-sided expansions
struct DiagonalTraceData {
  std::function<cplx(std::int64_t)> head;
  ScalarSeries plus, minus;
  IndexWindow support = IndexWindow::all();
  std::int64_t n0 = 0;
};

DiagonalTraceData diagonal_data(const BlockBandOperator& a);

struct ZetaSumOptions {
  std::int64_t head_modes = 32;       // minimum two-sided head length
  std::int64_t max_modes = 2000000;   // remainder summation budget
  double remainder_tol = 1e-11;       // target bound for the dropped tail
};

// Laurent data at z = 0 of sum_n c_n mu_n^{-z}
RegularizedValue finite_part_sum(const DiagonalTraceData& data,
                                 const DiagonalWeight& q,
                                 const ZetaSumOptions& opts = {});

// finite part at z = 0 of TR(A Q^{-z}) (the pole, if any, subtracted)
cplx weighted_trace(const BlockBandOperator& a, const DiagonalWeight& q,
                    const ZetaSumOptions& opts = {});

// ord(Q) * Res_{z=0} TR(A Q^{-z}); weight-independent
cplx wres_from_modes(const BlockBandOperator& a, const DiagonalWeight& q,
                     const ZetaSumOptions& opts = {});

// canonical trace: defined for non-integer order or trace-class operators;
// the continued sum is entire there and the value is weight-free
cplx canonical_trace(const BlockBandOperator& a,
                     const ZetaSumOptions& opts = {});

struct CheckPair {
  cplx lhs, rhs;
};

// lhs = tr^{Q1}(A) - tr^{Q2}(A); rhs = -res(A (log Q1 - log Q2)) / q
CheckPair weight_dependence(const BlockBandOperator& a,
                            const DiagonalWeight& q1, const DiagonalWeight& q2,
                            const ZetaSumOptions& opts = {});

// lhs = tr^{S_k^{-1} Q S_k}(A); rhs = tr^Q(S_k A S_k^{-1}) for the mode
// shift S_k (multiplication by e^{ikt})
CheckPair covariance_shift(const BlockBandOperator& a, const DiagonalWeight& q,
                           std::int64_t k, const ZetaSumOptions& opts = {});

// lhs = tr^Q(A); rhs = tr^Q(S A S^{-1}) for constant invertible fibre S
// (S commutes with the scalar diagonal weight)
CheckPair covariance_fibre(const BlockBandOperator& a, const DiagonalWeight& q,
                           const Mat& s, const ZetaSumOptions& opts = {});

}  // namespace wtrace
