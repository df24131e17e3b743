// Fourier-polynomial loops X(t) = sum_n a_n e^{int} with a_n in the
// complexified algebra, the pointwise bracket (mode convolution) and the
// symplectic pairing omega(X, Y) = sum_n (i n) <a_n, b_{-n}>.
#pragma once

#include <map>

#include "wtrace/lie_algebra.hpp"

namespace wtrace {

class LoopElement {
 public:
  explicit LoopElement(AlgebraPtr alg) : alg_(std::move(alg)) {}

  // z^mode * a
  static LoopElement monomial(AlgebraPtr alg, int mode, const Vec& a);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::map<int, Vec>& coefficients() const { return coeff_; }

  Vec at(int mode) const;
  void add(int mode, const Vec& a);
  bool empty() const { return coeff_.empty(); }
  int min_mode() const;
  int max_mode() const;

  LoopElement operator+(const LoopElement& other) const;
  LoopElement operator*(cplx scalar) const;

  // Complex conjugate loop: sum conj(a_n) z^{-n}; fixed points are the
  // loops with values in the real form.
  LoopElement conjugated() const;

 private:
  AlgebraPtr alg_;
  std::map<int, Vec> coeff_;
};

LoopElement loop_bracket(const LoopElement& x, const LoopElement& y);

cplx symplectic_form(const LoopElement& x, const LoopElement& y);

}  // namespace wtrace
