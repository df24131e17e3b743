// Asymptotic expansions in the ray variable m = |n| -> infinity:
// finite sums of c * m^e * (log m)^p with tracked error order, plus the
// shift re-expansion |n + k|^e -> series in |n| that drives band-operator
// composition. Coefficients are complex scalars or fibre matrices.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wtrace/types.hpp"

namespace wtrace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kExpTol = 1e-9;  // exponent bucketing tolerance

inline double coef_norm(const cplx& c) { return std::abs(c); }
inline double coef_norm(const Mat& c) { return c.norm(); }

template <typename C>
struct SeriesTerm {
  double e;  // exponent of m
  int p;     // log power
  C c;
};

// err() is the exponent of the first unknown term: everything with exponent
// strictly above err is exactly represented. err == -inf means the expansion
// is exact (a finite closed form).
template <typename C>
class AsymSeries {
 public:
  AsymSeries() = default;

  static AsymSeries zero() { return AsymSeries(); }

  static AsymSeries power(C c, double e, int p = 0) {
    AsymSeries s;
    if (coef_norm(c) != 0.0) s.terms_.push_back({e, p, std::move(c)});
    return s;
  }

  const std::vector<SeriesTerm<C>>& terms() const { return terms_; }
  double err() const { return err_; }
  bool exact() const { return err_ == kNegInf; }
  bool is_zero() const { return terms_.empty(); }

  double lead() const {
    double l = kNegInf;
    for (const auto& t : terms_) l = std::max(l, t.e);
    return l;
  }

  // magnitude exponent bound: |value(m)| = O(m^mag * log m)
  double mag() const { return std::max(lead(), err_); }

  int max_log_power() const {
    int p = 0;
    for (const auto& t : terms_) p = std::max(p, t.p);
    return p;
  }

  AsymSeries& raise_err(double e) {
    err_ = std::max(err_, e);
    prune();
    return *this;
  }

  void add_term(double e, int p, const C& c) {
    if (coef_norm(c) == 0.0) return;
    if (e <= err_ + kExpTol) return;  // below error floor, meaningless
    for (auto& t : terms_) {
      if (std::abs(t.e - e) < kExpTol && t.p == p) {
        t.c += c;
        return;
      }
    }
    terms_.push_back({e, p, c});
  }

  AsymSeries operator+(const AsymSeries& o) const {
    AsymSeries r = *this;
    r.err_ = std::max(err_, o.err_);
    for (const auto& t : o.terms_) r.add_term(t.e, t.p, t.c);
    r.prune();
    return r;
  }

  AsymSeries operator-() const {
    AsymSeries r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
  }

  AsymSeries operator-(const AsymSeries& o) const { return *this + (-o); }

  template <typename S>
  AsymSeries scaled(const S& s) const {
    AsymSeries r;
    r.err_ = err_;
    for (const auto& t : terms_) r.add_term(t.e, t.p, C(t.c * s));
    r.prune();
    return r;
  }

  // product with err bookkeeping: unknown-part of either factor multiplies
  // the magnitude of the other
  AsymSeries operator*(const AsymSeries& o) const {
    AsymSeries r;
    if (is_zero() && exact()) return r;
    if (o.is_zero() && o.exact()) return r;
    double e1 = kNegInf, e2 = kNegInf;
    if (!exact()) e1 = err_ + o.mag();
    if (!o.exact()) e2 = o.err_ + mag();
    r.err_ = std::max(e1, e2);
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) r.add_term(a.e + b.e, a.p + b.p, C(a.c * b.c));
    r.prune();
    return r;
  }

  C eval(double m) const {
    C acc = zero_like();
    const double lm = std::log(m);
    for (const auto& t : terms_) {
      double f = std::pow(m, t.e);
      for (int i = 0; i < t.p; ++i) f *= lm;
      acc += t.c * f;
    }
    return acc;
  }

  // coefficient of m^e (log m)^p; throws if the request is at or below the
  // error order (the expansion does not determine it)
  C coefficient(double e, int p, const C& zero) const {
    if (e <= err_ + kExpTol)
      throw std::runtime_error(
          "asymptotic expansion: requested coefficient below error order "
          "(insufficient depth)");
    for (const auto& t : terms_)
      if (std::abs(t.e - e) < kExpTol && t.p == p) return t.c;
    return zero;
  }

  bool determines(double e) const { return e > err_ + kExpTol; }

  // series in m' = m + delta re-expanded in m (|delta| << m), keeping
  // `depth` correction orders
  AsymSeries reexpanded(double delta, int depth) const {
    if (delta == 0.0) return *this;
    AsymSeries r;
    r.err_ = err_;
    for (const auto& t : terms_) {
      // m'^e = m^e sum_r binom(e, r) (delta/m)^r; terminates for
      // non-negative integer e, else truncates with a tracked remainder
      AsymSeries pw;
      double binom = 1.0;
      bool terminated = false;
      for (int rr = 0; rr <= depth; ++rr) {
        if (rr > 0) binom *= (t.e - rr + 1) / rr;
        if (binom == 0.0) {
          terminated = true;
          break;
        }
        pw.add_term(t.e - rr, 0, C(t.c * (binom * std::pow(delta, rr))));
      }
      if (!terminated) pw.err_ = t.e - depth - 1;
      if (t.p == 0) {
        r = r + pw;
        continue;
      }
      if (t.p > 1)
        throw std::runtime_error(
            "asymptotic expansion: log power above 1 in shift");
      // c m'^e log m' = (c m'^e) log m + (c m'^e) L(m),
      // L(m) = log(1 + delta/m) = sum_{r>=1} (-1)^{r+1} delta^r / (r m^r)
      AsymSeries with_log = pw;
      for (auto& w : with_log.terms_) w.p += 1;
      AsymSeries corr;
      for (const auto& w : pw.terms_)
        for (int rr = 1; rr <= depth; ++rr)
          corr.add_term(w.e - rr, w.p,
                        C(w.c * (((rr % 2) ? 1.0 : -1.0) *
                                 std::pow(delta, rr) / rr)));
      corr.err_ =
          std::max(pw.exact() ? kNegInf : pw.err() - 1.0,
                   pw.is_zero() ? kNegInf : pw.lead() - depth - 1.0);
      r = r + with_log + corr;
    }
    r.prune();
    return r;
  }

 private:
  C zero_like() const {
    if (!terms_.empty()) return C(terms_.front().c * 0.0);
    return C{};
  }

  void prune() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [&](const SeriesTerm<C>& t) {
                                  return coef_norm(t.c) == 0.0 ||
                                         t.e <= err_ + kExpTol;
                                }),
                 terms_.end());
    std::sort(terms_.begin(), terms_.end(),
              [](const SeriesTerm<C>& a, const SeriesTerm<C>& b) {
                if (std::abs(a.e - b.e) > kExpTol) return a.e > b.e;
                return a.p < b.p;
              });
  }

  std::vector<SeriesTerm<C>> terms_;
  double err_ = kNegInf;
};

using ScalarSeries = AsymSeries<cplx>;
using MatSeries = AsymSeries<Mat>;

// analytic maps of a "small" scalar series (all exponents < 0)

ScalarSeries log1p_series(const ScalarSeries& u, int depth);
ScalarSeries exp_series(const ScalarSeries& u, int depth);
// (1 + u)^s
ScalarSeries pow1p_series(const ScalarSeries& u, double s, int depth);

// series of log((m + delta)/m) = log1p(delta/m)
ScalarSeries log_shift_series(double delta, int depth);

MatSeries scale_mat_series(const MatSeries& a, const ScalarSeries& s);
MatSeries mat_series_from_scalar(const ScalarSeries& s, const Mat& m);

// series of tr(M(m)) from a matrix series
ScalarSeries trace_series(const MatSeries& a);

// series of ||M(m)||_F^2 = tr(M^H M); valid only for log-free input
ScalarSeries frobenius_square_series(const MatSeries& a);

}  // namespace wtrace
