#include "wtrace/asym_series.hpp"

#include <functional>
#include <string>

namespace wtrace {

namespace {

void require_small(const ScalarSeries& u, const char* what) {
  if (u.lead() >= -kExpTol)
    throw std::runtime_error(std::string("asymptotic expansion: ") + what +
                             " needs a series vanishing at infinity");
  if (u.max_log_power() > 0)
    throw std::runtime_error(std::string("asymptotic expansion: ") + what +
                             " does not support log terms");
}

// sum_{r>=1} a_r u^r with u small, truncated at exponent -depth-1
ScalarSeries power_map(const ScalarSeries& u, int depth,
                       const std::function<double(int)>& a) {
  const double floor_e = -depth - 1.0;
  ScalarSeries acc;
  acc.raise_err(u.err());
  ScalarSeries up = u;  // u^r
  int r = 1;
  while (!up.is_zero() && up.lead() > floor_e) {
    acc = acc + up.scaled(cplx(a(r), 0.0));
    ++r;
    up = up * u;
    up.raise_err(floor_e);
  }
  if (!(up.is_zero() && up.exact())) acc.raise_err(floor_e);
  return acc;
}

}  // namespace

ScalarSeries log1p_series(const ScalarSeries& u, int depth) {
  require_small(u, "log1p");
  return power_map(u, depth,
                   [](int r) { return ((r % 2) ? 1.0 : -1.0) / r; });
}

ScalarSeries exp_series(const ScalarSeries& u, int depth) {
  require_small(u, "exp");
  double fact = 1.0;
  ScalarSeries s = power_map(u, depth, [&fact](int r) {
    fact *= r;
    return 1.0 / fact;
  });
  ScalarSeries one = ScalarSeries::power(cplx(1.0, 0.0), 0.0);
  return one + s;
}

ScalarSeries pow1p_series(const ScalarSeries& u, double s, int depth) {
  require_small(u, "pow1p");
  double binom = 1.0;
  ScalarSeries acc = power_map(u, depth, [&binom, s](int r) {
    binom *= (s - r + 1) / r;
    return binom;
  });
  ScalarSeries one = ScalarSeries::power(cplx(1.0, 0.0), 0.0);
  return one + acc;
}

ScalarSeries log_shift_series(double delta, int depth) {
  ScalarSeries u = ScalarSeries::power(cplx(delta, 0.0), -1.0);
  return log1p_series(u, depth);
}

MatSeries scale_mat_series(const MatSeries& a, const ScalarSeries& s) {
  MatSeries r;
  if (a.is_zero() && a.exact()) return r;
  if (s.is_zero() && s.exact()) return r;
  double e1 = kNegInf, e2 = kNegInf;
  if (!a.exact()) e1 = a.err() + s.mag();
  if (!s.exact()) e2 = s.err() + a.mag();
  r.raise_err(std::max(e1, e2));
  for (const auto& ta : a.terms())
    for (const auto& ts : s.terms())
      r.add_term(ta.e + ts.e, ta.p + ts.p, Mat(ta.c * ts.c));
  return r;
}

MatSeries mat_series_from_scalar(const ScalarSeries& s, const Mat& m) {
  MatSeries r;
  r.raise_err(s.err());
  for (const auto& t : s.terms()) r.add_term(t.e, t.p, Mat(t.c * m));
  return r;
}

ScalarSeries trace_series(const MatSeries& a) {
  ScalarSeries r;
  r.raise_err(a.err());
  for (const auto& t : a.terms()) r.add_term(t.e, t.p, t.c.trace());
  return r;
}

ScalarSeries frobenius_square_series(const MatSeries& a) {
  if (a.max_log_power() > 0)
    throw std::runtime_error(
        "asymptotic expansion: Frobenius square does not support log terms");
  ScalarSeries r;
  if (a.is_zero() && a.exact()) return r;
  if (!a.exact()) r.raise_err(a.err() + a.mag());
  for (const auto& t1 : a.terms())
    for (const auto& t2 : a.terms())
      r.add_term(t1.e + t2.e, 0, (t1.c.adjoint() * t2.c).trace());
  return r;
}

}  // namespace wtrace
