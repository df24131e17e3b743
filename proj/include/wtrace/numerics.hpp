// Small shared numeric utilities: compensated reductions, extrapolation,
// asymptotic-exponent fitting, Bernoulli table.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace wtrace {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Bernoulli numbers B_2, B_4, ..., B_30.
inline constexpr double kBernoulli2j[15] = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

// Pairwise (cascade) summation: deterministic, O(log n) error growth.
template <typename T>
T pairwise_sum(std::span<const T> xs) {
  if (xs.empty()) return T{};
  if (xs.size() == 1) return xs[0];
  if (xs.size() <= 8) {
    T acc = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) acc += xs[i];
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& xs) {
  return pairwise_sum(std::span<const T>(xs));
}

// Richardson extrapolation of S(M) = S + c1/M + c2/M^2 + ... from values at
// M, 2M, 4M (index 0 = coarsest).
inline std::complex<double> richardson3(std::complex<double> s1,
                                        std::complex<double> s2,
                                        std::complex<double> s4) {
  const auto t1 = 2.0 * s2 - s1;   // kills 1/M
  const auto t2 = 2.0 * s4 - s2;
  return (4.0 * t2 - t1) / 3.0;    // kills 1/M^2
}

// Leading-exponent estimate of |h| ~ c m^e from a doubling pair.
inline double fit_exponent(const std::function<double(std::int64_t)>& h,
                           std::int64_t m) {
  const double h1 = h(m), h2 = h(2 * m);
  if (h1 == 0.0 || h2 == 0.0)
    throw std::domain_error("fit_exponent: vanishing samples");
  return std::log2(std::abs(h2) / std::abs(h1));
}

// Fit h(m) = sum_{r} c_r m^{-(e0 + r)}, r = 0..k-1, on the ladder
// m0, 2 m0, 4 m0, ... (k points, square Vandermonde in x = m^{-1}).
std::vector<std::complex<double>> fit_inverse_powers(
    const std::function<std::complex<double>(std::int64_t)>& h, double e0,
    int k, std::int64_t m0);

}  // namespace wtrace
