#include "wtrace/reg_traces.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wtrace/numerics.hpp"
#include "wtrace/zeta.hpp"

namespace wtrace {

namespace {

// continuation of one ray sum_{m > N} s(m) mu(m)^{-z} to z = 0.
// mu(m)^{-z} = m^{-q z} exp(-z lambda(m)); the exp factor is peeled: only
// its linear term can meet the pole of zeta(1 + qz, N+1), producing a
// z-independent correction; quadratic and higher peels vanish at z = 0.
void continue_ray(const ScalarSeries& s, const DiagonalWeight& q, Ray ray,
                  std::int64_t n_head, cplx& fp, cplx& residue) {
  if (s.is_zero() && s.exact()) return;
  const ScalarSeries& lam = q.log_correction(ray);
  const bool pure = lam.is_zero() && lam.exact();
  if (s.max_log_power() > 1)
    throw std::runtime_error("finite_part_sum: log power above 1 unsupported");
  if (s.max_log_power() == 1 && !pure)
    throw std::runtime_error(
        "finite_part_sum: log terms require a pure-power weight");
  const double qo = q.order();
  const double a = static_cast<double>(n_head) + 1.0;

  for (const auto& t : s.terms()) {
    if (t.p == 0) {
      if (std::abs(t.e + 1.0) < kExpTol) {
        // sum m^{-1-qz} = zeta(1+qz, a) = 1/(qz) - psi(a) + O(z)
        residue += t.c / qo;
        fp += t.c * (-digamma(a));
      } else {
        fp += t.c * hurwitz_zeta(-t.e, a);
      }
    } else {
      if (std::abs(t.e + 1.0) < kExpTol)
        throw std::runtime_error(
            "finite_part_sum: log term at the critical order gives a double "
            "pole");
      // sum m^e log m = -d/ds zeta(s, a) at s = -e
      fp += t.c * (-hurwitz_zeta_ds(-t.e, a));
    }
  }

  if (!pure && !s.is_zero()) {
    // linear peel: -z sum_m s(m) lambda(m) m^{-qz} contributes only through
    // the simple pole of the m^{-1} coefficient
    ScalarSeries prod = s * lam;
    fp -= prod.coefficient(-1.0, 0, cplx(0.0, 0.0)) / qo;
  }
}

void remainder_ray(const DiagonalTraceData& data, const ScalarSeries& s,
                   Ray ray, std::int64_t n_head, const ZetaSumOptions& opts,
                   cplx& fp) {
  if (s.exact()) return;
  if (s.err() >= -1.0 - 1e-9)
    throw std::runtime_error(
        "finite_part_sum: insufficient remainder order (expansion error "
        "does not decay below 1/|n|)");
  const double conv_pow = -1.0 - s.err();
  std::vector<cplx> buf;
  bool converged = false;
  for (std::int64_t m = n_head + 1; m <= opts.max_modes; ++m) {
    const std::int64_t n = (ray == Ray::kPlus) ? m : -m;
    cplx r = data.head(n);
    if (!s.is_zero()) r -= s.eval(static_cast<double>(m));
    buf.push_back(r);
    const double bound = std::abs(r) * static_cast<double>(m) / conv_pow;
    if (m > 2 * n_head + 64 && bound < opts.remainder_tol) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw std::runtime_error(
        "finite_part_sum: remainder sum did not converge within the mode "
        "budget");
  fp += pairwise_sum(buf);
}

}  // namespace

DiagonalTraceData diagonal_data(const BlockBandOperator& a) {
  DiagonalTraceData d;
  const BandEntry* e0 = a.band(0);
  if (!e0) {
    d.head = [](std::int64_t) { return cplx(0.0, 0.0); };
    d.support = IndexWindow::between(1, 0);  // empty
    d.n0 = a.n0();
    return d;
  }
  BlockBandOperator copy = a;
  d.head = [copy](std::int64_t n) { return copy.entry(0, n).trace(); };
  d.plus = trace_series(a.band_series(0, Ray::kPlus));
  d.minus = trace_series(a.band_series(0, Ray::kMinus));
  d.support = e0->support;
  d.n0 = a.n0();
  return d;
}

RegularizedValue finite_part_sum(const DiagonalTraceData& data,
                                 const DiagonalWeight& q,
                                 const ZetaSumOptions& opts) {
  RegularizedValue out{cplx(0.0, 0.0), cplx(0.0, 0.0)};
  const IndexWindow& w = data.support;
  if (w.empty()) return out;

  const std::int64_t n_head =
      std::max({data.n0, q.n0(), opts.head_modes, w.edge_radius()});

  // head: mu_n^{-z} = 1 at z = 0, so the head contributes exactly
  std::vector<cplx> buf;
  const std::int64_t lo = w.lo ? std::max(*w.lo, -n_head) : -n_head;
  const std::int64_t hi = w.hi ? std::min(*w.hi, n_head) : n_head;
  for (std::int64_t n = lo; n <= hi; ++n) buf.push_back(data.head(n));
  out.finite_part = pairwise_sum(buf);

  for (Ray ray : {Ray::kPlus, Ray::kMinus}) {
    const bool active = (ray == Ray::kPlus) ? !w.bounded_above() : !w.bounded_below();
    if (!active) continue;
    const ScalarSeries& s = (ray == Ray::kPlus) ? data.plus : data.minus;
    continue_ray(s, q, ray, n_head, out.finite_part, out.pole_residue);
    remainder_ray(data, s, ray, n_head, opts, out.finite_part);
  }
  return out;
}

cplx weighted_trace(const BlockBandOperator& a, const DiagonalWeight& q,
                    const ZetaSumOptions& opts) {
  return finite_part_sum(diagonal_data(a), q, opts).finite_part;
}

cplx wres_from_modes(const BlockBandOperator& a, const DiagonalWeight& q,
                     const ZetaSumOptions& opts) {
  return q.order() * finite_part_sum(diagonal_data(a), q, opts).pole_residue;
}

cplx canonical_trace(const BlockBandOperator& a, const ZetaSumOptions& opts) {
  const double ord = a.order();
  if (ord != kNegInf) {
    const double r = std::round(ord);
    if (std::abs(ord - r) < 1e-9 && r >= -1.0)
      throw std::runtime_error(
          "canonical_trace: undefined for integer-order operators that are "
          "not trace class");
  }
  RegularizedValue v =
      finite_part_sum(diagonal_data(a), DiagonalWeight::abs_d_plus(), opts);
  if (!v.is_entire(1e-8))
    throw std::runtime_error("canonical_trace: unexpected pole at z = 0");
  return v.finite_part;
}

CheckPair weight_dependence(const BlockBandOperator& a,
                            const DiagonalWeight& q1, const DiagonalWeight& q2,
                            const ZetaSumOptions& opts) {
  if (std::abs(q1.order() - q2.order()) > 1e-12)
    throw std::invalid_argument("weight_dependence: orders must match");
  CheckPair p;
  p.lhs = weighted_trace(a, q1, opts) - weighted_trace(a, q2, opts);
  BlockBandOperator dl =
      log_weight_difference(q1, q2, a.fibre_dim(), a.convention());
  p.rhs = -wres_from_modes(compose(a, dl), q1, opts) / q1.order();
  return p;
}

CheckPair covariance_shift(const BlockBandOperator& a, const DiagonalWeight& q,
                           std::int64_t k, const ZetaSumOptions& opts) {
  CheckPair p;
  p.lhs = weighted_trace(a, q.shifted_by(k), opts);
  p.rhs = weighted_trace(shift_conjugate(a, k), q, opts);
  return p;
}

CheckPair covariance_fibre(const BlockBandOperator& a, const DiagonalWeight& q,
                           const Mat& s, const ZetaSumOptions& opts) {
  CheckPair p;
  p.lhs = weighted_trace(a, q, opts);
  p.rhs = weighted_trace(fibre_conjugate(a, s), q, opts);
  return p;
}

}  // namespace wtrace
