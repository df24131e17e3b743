// Block-banded operators on the Fourier modes of L^2(S^1, C^d). Each band
// k holds an exact entry evaluator n -> d x d block (mode n to mode n + k),
// a two-sided asymptotic expansion in |n|, and an index window recording
// where the band is supported. Composition convolves bands and re-expands
// the asymptotic parts; the exact evaluators compose exactly, so truncations
// and head sums are never approximations.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "wtrace/asym_series.hpp"
#include "wtrace/diagonal_weight.hpp"
#include "wtrace/loop_element.hpp"
#include "wtrace/types.hpp"

namespace wtrace {

// Inclusive integer interval, possibly unbounded on either side.
struct IndexWindow {
  std::optional<std::int64_t> lo, hi;

  static IndexWindow all() { return {std::nullopt, std::nullopt}; }
  static IndexWindow at_least(std::int64_t a) { return {a, std::nullopt}; }
  static IndexWindow at_most(std::int64_t b) { return {std::nullopt, b}; }
  static IndexWindow between(std::int64_t a, std::int64_t b) { return {a, b}; }

  bool contains(std::int64_t n) const {
    return (!lo || n >= *lo) && (!hi || n <= *hi);
  }
  bool finite() const { return lo && hi; }
  bool empty() const { return finite() && *lo > *hi; }
  bool bounded_above() const { return hi.has_value(); }
  bool bounded_below() const { return lo.has_value(); }

  IndexWindow shifted(std::int64_t d) const {
    IndexWindow w;
    if (lo) w.lo = *lo + d;
    if (hi) w.hi = *hi + d;
    return w;
  }
  IndexWindow intersect(const IndexWindow& o) const {
    IndexWindow w;
    if (lo || o.lo) w.lo = std::max(lo.value_or(INT64_MIN), o.lo.value_or(INT64_MIN));
    if (hi || o.hi) w.hi = std::min(hi.value_or(INT64_MAX), o.hi.value_or(INT64_MAX));
    return w;
  }
  IndexWindow hull(const IndexWindow& o) const {
    if (empty()) return o;
    if (o.empty()) return *this;
    IndexWindow w;
    if (lo && o.lo) w.lo = std::min(*lo, *o.lo);
    if (hi && o.hi) w.hi = std::max(*hi, *o.hi);
    return w;
  }
  // largest |bound| among finite endpoints, 0 if none
  std::int64_t edge_radius() const {
    std::int64_t r = 0;
    if (lo) r = std::max(r, static_cast<std::int64_t>(std::llabs(*lo)));
    if (hi) r = std::max(r, static_cast<std::int64_t>(std::llabs(*hi)));
    return r;
  }
};

struct BandEntry {
  std::function<Mat(std::int64_t)> eval;  // column mode n -> block
  MatSeries plus, minus;                  // n -> +inf / n -> -inf
  IndexWindow support = IndexWindow::all();
};

class BlockBandOperator {
 public:
  BlockBandOperator(int fibre_dim, Convention conv, std::int64_t n0 = 0);

  int fibre_dim() const { return d_; }
  Convention convention() const { return conv_; }
  std::int64_t n0() const { return n0_; }
  void set_n0(std::int64_t n0) { n0_ = std::max(n0_, n0); }

  void set_band(int k, BandEntry e);
  const BandEntry* band(int k) const;
  std::vector<int> band_indices() const;
  int bandwidth() const;

  // support- and convention-aware entry lookup; zero block when absent
  Mat entry(int k, std::int64_t n) const;
  // expansion of band k on a ray; exact zero when the band is absent or its
  // support is bounded on that side
  const MatSeries& band_series(int k, Ray r) const;
  bool series_active(int k, Ray r) const;

  // sup over active rays of the expansion magnitude; -inf for finite rank
  double order() const;
  bool finite_rank() const;

  // checks expansions against exact entries at sample modes beyond n0;
  // returns the largest relative deviation seen
  double validate(int samples = 4) const;

 private:
  int d_;
  Convention conv_;
  std::int64_t n0_;
  std::map<int, std::shared_ptr<const BandEntry>> bands_;

  friend BlockBandOperator compose(const BlockBandOperator&,
                                   const BlockBandOperator&, int);
};

// --- generators ---

BlockBandOperator zero_op(int d, Convention c);
BlockBandOperator identity_op(int d, Convention c);
// D0 = -i d/dt tensor Id: diagonal n
BlockBandOperator d0_op(int d, Convention c);
// sign(D0) with the kernel-mode convention of `c`
BlockBandOperator epsilon_sign(int d, Convention c);
// diagonal mu_n^s tensor Id
BlockBandOperator weight_power(const DiagonalWeight& q, double s, int d,
                               Convention c, int depth = 12);
// matrix-valued multiplication operator: F(t) = sum_k F_k e^{ikt}
BlockBandOperator multiplier(const std::map<int, Mat>& fourier, Convention c);
BlockBandOperator scalar_multiplier(const std::map<int, cplx>& fourier, int d,
                                    Convention c);
// pointwise adjoint action of a loop-algebra element
BlockBandOperator ad_operator(const LoopElement& x, Convention c);
// explicit finite-rank operator: (row mode, column mode) -> block
BlockBandOperator finite_rank_op(
    int d, Convention c,
    const std::map<std::pair<std::int64_t, std::int64_t>, Mat>& entries);

// --- arithmetic ---

BlockBandOperator add(const BlockBandOperator& a, const BlockBandOperator& b);
BlockBandOperator sub(const BlockBandOperator& a, const BlockBandOperator& b);
BlockBandOperator scale(const BlockBandOperator& a, cplx s);
BlockBandOperator compose(const BlockBandOperator& a,
                          const BlockBandOperator& b, int depth = 8);
BlockBandOperator commutator(const BlockBandOperator& a,
                             const BlockBandOperator& b, int depth = 8);
BlockBandOperator anticommutator(const BlockBandOperator& a,
                                 const BlockBandOperator& b, int depth = 8);
BlockBandOperator adjoint(const BlockBandOperator& a, int depth = 8);

enum class Quadrant { kPP, kPM, kMP, kMM };
// index-restricted block of the polarization H+ (+) H-
BlockBandOperator corner(const BlockBandOperator& a, Quadrant q);

// [log Q tensor Id, A]: bands (log mu_{n+k} - log mu_n) entry_A(k, n); the
// expansions are pure powers of 1/|n| (leading logs cancel)
BlockBandOperator log_weight_commutator(const DiagonalWeight& q,
                                        const BlockBandOperator& a,
                                        int depth = 8);

// diagonal operator (log Q1 - log Q2) tensor Id; requires equal orders so
// the difference is bounded (expansions are pure powers of 1/|n|)
BlockBandOperator log_weight_difference(const DiagonalWeight& q1,
                                        const DiagonalWeight& q2, int d,
                                        Convention c);

// S_k A S_{-k} where S_k is multiplication by e^{ikt} (mode shift by k):
// entry(kappa, n) = entry_A(kappa, n - k); kernel-plus lattices only
BlockBandOperator shift_conjugate(const BlockBandOperator& a, std::int64_t k,
                                  int depth = 8);

// (Id tensor S) A (Id tensor S^{-1}) for an invertible fibre matrix S
BlockBandOperator fibre_conjugate(const BlockBandOperator& a, const Mat& s);

// dense truncation to modes |n| <= M: square matrix of size (2M+1) d with
// mode n occupying rows/columns (n + M) d .. (n + M + 1) d - 1
Mat truncate_dense(const BlockBandOperator& a, std::int64_t m_cut);

void dense_to_csv(const Mat& m, std::ostream& os);

struct HsNorm {
  double value;
  bool finite;
};
// squared Hilbert-Schmidt norm: exact for finite-rank bands, head sum plus
// zeta tail when band expansions decay faster than |n|^{-1/2}
HsNorm hs_norm_squared(const BlockBandOperator& a, std::int64_t head = 64);

}  // namespace wtrace
