// Positive invertible diagonal weights mu_n on the mode lattice, used to
// regularize traces. A weight of order q behaves like |n|^q at infinity;
// log mu_n - q log|n| is carried as an exact-or-truncated power series per
// ray (the "log correction"), which is all downstream code needs to build
// complex powers mu_n^{-z} and commutators with log mu.
#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "wtrace/asym_series.hpp"
#include "wtrace/types.hpp"

namespace wtrace {

class DiagonalWeight {
 public:
  DiagonalWeight(std::string name, double order,
                 std::function<double(std::int64_t)> mu,
                 ScalarSeries log_corr_plus, ScalarSeries log_corr_minus,
                 std::int64_t n0);

  const std::string& name() const { return name_; }
  double order() const { return order_; }
  double mu(std::int64_t n) const { return mu_(n); }
  double log_mu(std::int64_t n) const;
  const ScalarSeries& log_correction(Ray r) const;
  // true when log mu_n = q log|n| exactly beyond n0 on both rays
  bool pure_power() const;
  std::int64_t n0() const { return n0_; }

  // weight with entries mu_{n+k}: the conjugate of this weight by the
  // k-fold mode shift
  DiagonalWeight shifted_by(std::int64_t k, int depth = 12) const;

  // mu_n = max(n^2, 1): Laplacian plus kernel projector, order 2
  static DiagonalWeight laplace_plus();
  // mu_n = max(|n|, 1): |D| plus kernel projector, order 1
  static DiagonalWeight abs_d_plus();
  // mu_n = (|n| + 1)^2: order 2, not in the odd class
  static DiagonalWeight shifted_sq(int depth = 12);
  // mu_n = n^2 + 1: order 2, odd-class weight
  static DiagonalWeight laplace_plus_one(int depth = 12);
  // mu_n = max(n^4, 1): order 4
  static DiagonalWeight quartic_plus();

 private:
  std::string name_;
  double order_;
  std::function<double(std::int64_t)> mu_;
  ScalarSeries corr_plus_, corr_minus_;
  std::int64_t n0_;
};

}  // namespace wtrace
