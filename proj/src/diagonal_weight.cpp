#include "wtrace/diagonal_weight.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace wtrace {

DiagonalWeight::DiagonalWeight(std::string name, double order,
                               std::function<double(std::int64_t)> mu,
                               ScalarSeries log_corr_plus,
                               ScalarSeries log_corr_minus, std::int64_t n0)
    : name_(std::move(name)),
      order_(order),
      mu_(std::move(mu)),
      corr_plus_(std::move(log_corr_plus)),
      corr_minus_(std::move(log_corr_minus)),
      n0_(n0) {
  if (order_ <= 0.0)
    throw std::invalid_argument("diagonal weight: order must be positive");
}

double DiagonalWeight::log_mu(std::int64_t n) const {
  double v = mu_(n);
  if (!(v > 0.0))
    throw std::runtime_error("diagonal weight '" + name_ +
                             "': entry not positive at mode " +
                             std::to_string(n));
  return std::log(v);
}

const ScalarSeries& DiagonalWeight::log_correction(Ray r) const {
  return r == Ray::kPlus ? corr_plus_ : corr_minus_;
}

bool DiagonalWeight::pure_power() const {
  return corr_plus_.is_zero() && corr_plus_.exact() && corr_minus_.is_zero() &&
         corr_minus_.exact();
}

DiagonalWeight DiagonalWeight::shifted_by(std::int64_t k, int depth) const {
  if (k == 0) return *this;
  auto base_mu = mu_;
  const double q = order_;
  // log mu_{n+k} - q log|n|
  //   = q log(|n + k| / |n|) + lambda(|n + k|),  lambda = log correction
  // On the plus ray |n + k| = m + k, on the minus ray |n + k| = m - k.
  ScalarSeries plus = corr_plus_.reexpanded(static_cast<double>(k), depth) +
                      log_shift_series(static_cast<double>(k), depth)
                          .scaled(cplx(q, 0.0));
  ScalarSeries minus = corr_minus_.reexpanded(static_cast<double>(-k), depth) +
                       log_shift_series(static_cast<double>(-k), depth)
                           .scaled(cplx(q, 0.0));
  std::int64_t n0 = n0_ + std::llabs(k) + 1;
  return DiagonalWeight(
      name_ + "(shift " + std::to_string(k) + ")", order_,
      [base_mu, k](std::int64_t n) { return base_mu(n + k); }, std::move(plus),
      std::move(minus), n0);
}

DiagonalWeight DiagonalWeight::laplace_plus() {
  return DiagonalWeight(
      "laplace_plus", 2.0,
      [](std::int64_t n) { return n == 0 ? 1.0 : static_cast<double>(n) * n; },
      ScalarSeries::zero(), ScalarSeries::zero(), 0);
}

DiagonalWeight DiagonalWeight::abs_d_plus() {
  return DiagonalWeight(
      "abs_d_plus", 1.0,
      [](std::int64_t n) { return n == 0 ? 1.0 : std::abs(static_cast<double>(n)); },
      ScalarSeries::zero(), ScalarSeries::zero(), 0);
}

DiagonalWeight DiagonalWeight::shifted_sq(int depth) {
  // log (m+1)^2 - 2 log m = 2 log(1 + 1/m)
  ScalarSeries corr = log_shift_series(1.0, depth).scaled(cplx(2.0, 0.0));
  return DiagonalWeight(
      "shifted_sq", 2.0,
      [](std::int64_t n) {
        double m = std::abs(static_cast<double>(n)) + 1.0;
        return m * m;
      },
      corr, corr, 0);
}

DiagonalWeight DiagonalWeight::laplace_plus_one(int depth) {
  // log(m^2 + 1) - 2 log m = log(1 + 1/m^2)
  ScalarSeries u = ScalarSeries::power(cplx(1.0, 0.0), -2.0);
  ScalarSeries corr = log1p_series(u, depth);
  return DiagonalWeight(
      "laplace_plus_one", 2.0,
      [](std::int64_t n) { return static_cast<double>(n) * n + 1.0; }, corr,
      corr, 0);
}

DiagonalWeight DiagonalWeight::quartic_plus() {
  return DiagonalWeight(
      "quartic_plus", 4.0,
      [](std::int64_t n) {
        double m2 = static_cast<double>(n) * n;
        return n == 0 ? 1.0 : m2 * m2;
      },
      ScalarSeries::zero(), ScalarSeries::zero(), 0);
}

}  // namespace wtrace
