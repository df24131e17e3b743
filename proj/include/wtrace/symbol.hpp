// Classical (polyhomogeneous) symbols on the circle. A symbol of order
// alpha is a finite ladder of components positively homogeneous in xi;
// on the two rays xi > 0 and xi < 0 each component of degree e is
// determined by its value at xi = +1 resp. xi = -1, a matrix-valued
// trigonometric polynomial in t. The star product implements the full
// asymptotic composition law
//   sigma_{AB} ~ sum_{k>=0} (1/k!) (d_xi^k sigma_A) (D_t^k sigma_B),
// with D_t = -i d/dt, truncated at a requested depth below the leading
// degree. The bridge to mode space identifies the band-k Fourier
// coefficient of sigma(., xi) at integer xi = n with the matrix entry
// coupling mode n to mode n + k.
#pragma once

#include <map>
#include <vector>

#include "wtrace/band_operator.hpp"

namespace wtrace {

// One homogeneous component: sigma_e(t, xi) = |xi|^e * (value at sign(xi)),
// with the values stored as mode -> matrix coefficient maps.
struct HomogeneousComponent {
  double degree = 0.0;
  std::map<int, Mat> plus;   // value at xi = +1
  std::map<int, Mat> minus;  // value at xi = -1
};

class ClassicalSymbol1D {
 public:
  explicit ClassicalSymbol1D(int fibre_dim);

  int fibre_dim() const { return d_; }

  // Leading degree present, or 0 for the zero symbol.
  double order() const;

  bool empty() const { return comps_.empty(); }

  // Adds coefficients into the component of the given degree (degrees are
  // bucketed with a small tolerance). Zero matrices are dropped.
  void add(double degree, Ray ray, int mode, const Mat& coeff);
  void set_component(double degree, const std::map<int, Mat>& plus,
                     const std::map<int, Mat>& minus);

  // Components sorted by decreasing degree.
  const std::vector<HomogeneousComponent>& components() const {
    return comps_;
  }

  // Coefficient lookup; zero matrix if absent.
  Mat at(double degree, Ray ray, int mode) const;

  // True when every degree is an integer and the two rays are related by
  // sigma(t, -1) = (-1)^degree sigma(t, +1) componentwise.
  bool is_odd_class(double tol = 1e-12) const;

 private:
  HomogeneousComponent& bucket(double degree);

  int d_ = 1;
  std::vector<HomogeneousComponent> comps_;
};

// Asymptotic composition. Terms below order(a) + order(b) - depth are
// discarded.
ClassicalSymbol1D star_compose(const ClassicalSymbol1D& a,
                               const ClassicalSymbol1D& b, int depth = 8);

// (1/2pi) integral of the fibre trace of the degree -1 component over the
// circle and over both rays: the mode-0 coefficient of
// tr[sigma_{-1}(., +1) + sigma_{-1}(., -1)].
cplx wodzicki_residue_symbol(const ClassicalSymbol1D& a);

// Quantization: band k couples mode n to mode n + k with matrix
// sum_e coeff_e(k) |n|^e on each ray. The mode-0 row and column carry no
// symbolic information and are set to zero (smoothing freedom).
BlockBandOperator symbol_to_operator(const ClassicalSymbol1D& a,
                                     Convention convention);

// Reads the per-band expansions of a banded operator back into a symbol.
// Rays whose support is bounded contribute nothing (smoothing directions);
// expansions carrying log terms are rejected as non-classical.
ClassicalSymbol1D operator_to_symbol(const BlockBandOperator& a);

}  // namespace wtrace
