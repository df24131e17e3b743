#include "wtrace/zeta.hpp"

#include <cmath>
#include <stdexcept>

#include "wtrace/numerics.hpp"

namespace wtrace {
namespace {

// First-order dual number: tracks d/ds through the Euler-Maclaurin formula so
// the derivative is analytic, not a finite difference.
struct Dual {
  double v = 0.0;
  double d = 0.0;
};

inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator*(Dual a, Dual b) {
  return {a.v * b.v, a.v * b.d + a.d * b.v};
}
inline Dual operator*(double a, Dual b) { return {a * b.v, a * b.d}; }
inline Dual operator/(Dual a, Dual b) {
  const double q = a.v / b.v;
  return {q, (a.d - q * b.d) / b.v};
}

// b^e for b > 0 with dual exponent.
inline Dual dpow(double b, Dual e) {
  const double lb = std::log(b);
  const double p = std::exp(e.v * lb);
  return {p, p * lb * e.d};
}

// Euler-Maclaurin tail of zeta(s, a) summed from a + N:
//   (a+N)^{1-s}/(s-1) + (a+N)^{-s}/2 + sum_j B_2j/(2j)! (s)_{2j-1} (a+N)^{-s-2j+1}
Dual em_zeta(Dual s, double a) {
  // For s >= 0 a long head drives the Bernoulli series to machine epsilon;
  // for s < 0 it only feeds cancellation, and (|s| + 30)/6 keeps the series
  // ratio (|s| + 2j)/(2 pi (a+N)) safely below 1.
  const double target =
      s.v >= 0.0 ? 18.0 + s.v : std::max(12.0, (std::abs(s.v) + 30.0) / 6.0);
  int n = 0;
  while (a + n < target) ++n;

  Dual head{0.0, 0.0};
  for (int k = 0; k < n; ++k) {
    const Dual term = dpow(a + k, Dual{-s.v, -s.d});
    head = head + term;
  }
  const double an = a + n;

  const Dual one_minus_s{1.0 - s.v, -s.d};
  Dual tail = dpow(an, one_minus_s) / Dual{s.v - 1.0, s.d};
  tail = tail + 0.5 * dpow(an, Dual{-s.v, -s.d});

  // Pochhammer (s)_{2j-1} = s (s+1) ... (s+2j-2), built up incrementally.
  Dual poch{s.v, s.d};
  double factorial = 2.0;  // (2j)!
  for (int j = 1; j <= 14; ++j) {
    if (j > 1) {
      poch = poch * Dual{s.v + 2.0 * j - 3.0, s.d};
      poch = poch * Dual{s.v + 2.0 * j - 2.0, s.d};
      factorial *= (2.0 * j - 1.0) * (2.0 * j);
    }
    const Dual term =
        (kBernoulli2j[j - 1] / factorial) * poch *
        dpow(an, Dual{-s.v - 2.0 * j + 1.0, -s.d});
    tail = tail + term;
    if (std::abs(term.v) < 1e-18 * (1.0 + std::abs(tail.v)) && j > 4) break;
  }
  return head + tail;
}

}  // namespace

double hurwitz_zeta(double s, double a) {
  if (a <= 0.0) throw std::domain_error("hurwitz_zeta: a must be positive");
  if (std::abs(s - 1.0) < 1e-12)
    throw std::domain_error("hurwitz_zeta: pole at s = 1");
  return em_zeta(Dual{s, 0.0}, a).v;
}

double hurwitz_zeta_ds(double s, double a) {
  if (a <= 0.0) throw std::domain_error("hurwitz_zeta_ds: a must be positive");
  if (std::abs(s - 1.0) < 1e-12)
    throw std::domain_error("hurwitz_zeta_ds: pole at s = 1");
  return em_zeta(Dual{s, 1.0}, a).d;
}

double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

double riemann_zeta_ds(double s) { return hurwitz_zeta_ds(s, 1.0); }

double digamma(double a) {
  if (a <= 0.0) throw std::domain_error("digamma: a must be positive");
  double acc = 0.0;
  while (a < 16.0) {
    acc -= 1.0 / a;
    a += 1.0;
  }
  double r = std::log(a) - 0.5 / a;
  const double inv2 = 1.0 / (a * a);
  double p = inv2;
  for (int j = 1; j <= 7; ++j) {
    r -= kBernoulli2j[j - 1] / (2.0 * j) * p;
    p *= inv2;
  }
  return r + acc;
}

std::vector<std::complex<double>> fit_inverse_powers(
    const std::function<std::complex<double>(std::int64_t)>& h, double e0,
    int k, std::int64_t m0) {
  // Solve the k x k system sum_r c_r m_i^{-(e0+r)} = h(m_i) on a doubling
  // ladder by Gaussian elimination (k is small).
  std::vector<std::vector<std::complex<double>>> A(
      k, std::vector<std::complex<double>>(k + 1));
  std::int64_t m = m0;
  for (int i = 0; i < k; ++i, m *= 2) {
    const double md = static_cast<double>(m);
    for (int r = 0; r < k; ++r) A[i][r] = std::pow(md, -(e0 + r));
    A[i][k] = h(m);
  }
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int i = col + 1; i < k; ++i)
      if (std::abs(A[i][col]) > std::abs(A[piv][col])) piv = i;
    std::swap(A[col], A[piv]);
    if (std::abs(A[col][col]) == 0.0)
      throw std::runtime_error("fit_inverse_powers: singular system");
    for (int i = 0; i < k; ++i) {
      if (i == col) continue;
      const auto f = A[i][col] / A[col][col];
      for (int j = col; j <= k; ++j) A[i][j] -= f * A[col][j];
    }
  }
  std::vector<std::complex<double>> c(k);
  for (int i = 0; i < k; ++i) c[i] = A[i][k] / A[i][i];
  return c;
}

}  // namespace wtrace
