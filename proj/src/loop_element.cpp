#include "wtrace/loop_element.hpp"

#include <stdexcept>

namespace wtrace {

namespace {
constexpr double kDropTol = 0.0;  // keep exact zeros out of the map
}

LoopElement LoopElement::monomial(AlgebraPtr alg, int mode, const Vec& a) {
  LoopElement x(std::move(alg));
  x.add(mode, a);
  return x;
}

Vec LoopElement::at(int mode) const {
  const auto it = coeff_.find(mode);
  if (it != coeff_.end()) return it->second;
  return Vec::Zero(alg_->dim());
}

void LoopElement::add(int mode, const Vec& a) {
  if (a.size() != alg_->dim())
    throw std::invalid_argument("loop coefficient has wrong dimension");
  auto it = coeff_.find(mode);
  if (it == coeff_.end()) {
    if (a.norm() > kDropTol) coeff_.emplace(mode, a);
  } else {
    it->second += a;
    if (it->second.norm() <= kDropTol) coeff_.erase(it);
  }
}

int LoopElement::min_mode() const {
  if (coeff_.empty()) return 0;
  return coeff_.begin()->first;
}

int LoopElement::max_mode() const {
  if (coeff_.empty()) return 0;
  return coeff_.rbegin()->first;
}

LoopElement LoopElement::operator+(const LoopElement& other) const {
  LoopElement r = *this;
  for (const auto& [m, a] : other.coeff_) r.add(m, a);
  return r;
}

LoopElement LoopElement::operator*(cplx scalar) const {
  LoopElement r(alg_);
  for (const auto& [m, a] : coeff_) r.add(m, Vec(a * scalar));
  return r;
}

LoopElement LoopElement::conjugated() const {
  LoopElement r(alg_);
  for (const auto& [m, a] : coeff_) r.add(-m, Vec(a.conjugate()));
  return r;
}

LoopElement loop_bracket(const LoopElement& x, const LoopElement& y) {
  LoopElement r(x.algebra());
  for (const auto& [m, a] : x.coefficients())
    for (const auto& [n, b] : y.coefficients()) {
      const Vec c = x.algebra()->bracket(a, b);
      if (c.norm() > 0.0) r.add(m + n, c);
    }
  return r;
}

cplx symplectic_form(const LoopElement& x, const LoopElement& y) {
  cplx acc(0.0, 0.0);
  for (const auto& [n, a] : x.coefficients()) {
    if (n == 0) continue;
    const Vec b = y.at(-n);
    acc += cplx(0.0, static_cast<double>(n)) * x.algebra()->killing_inner(a, b);
  }
  return acc;
}

}  // namespace wtrace
