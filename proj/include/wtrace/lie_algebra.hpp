// Finite-dimensional Lie algebra given by structure constants, with the
// minus-Killing inner product <a,b> = -tr(ad_a ad_b) (complex-bilinear).
// Construction validates antisymmetry, the Jacobi identity and negative
// definiteness of the Killing form.
#pragma once

#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "wtrace/types.hpp"

namespace wtrace {

class LieAlgebraData {
 public:
  struct Entry {
    int i, j, k;
    double value;
  };

  // [e_i, e_j] = sum_k c_{ijk} e_k, unlisted entries zero, 0-based indices.
  static LieAlgebraData make(int dim, const std::vector<Entry>& entries);

  // su(2) in the epsilon_{ijk} basis: [e_i, e_j] = eps_{ijk} e_k, so
  // <e_i, e_j> = 2 delta_{ij}.
  static LieAlgebraData su2();

  // Text format: `dim <d>` then `i j k value` lines; `#` starts a comment.
  static LieAlgebraData load(const std::string& path);

  int dim() const { return d_; }
  double structure(int i, int j, int k) const {
    return c_[static_cast<std::size_t>((i * d_ + j) * d_ + k)];
  }

  Vec bracket(const Vec& a, const Vec& b) const;
  Mat ad(const Vec& a) const;
  cplx killing_inner(const Vec& a, const Vec& b) const;

  // Hermitian Killing norm <conj(a), a>, real and >= 0.
  double killing_norm2(const Vec& a) const;

  Vec basis(int i) const;

 private:
  LieAlgebraData(int dim, std::vector<double> c);
  void validate() const;

  int d_ = 0;
  std::vector<double> c_;  // c_{ijk}, dense
};

using AlgebraPtr = std::shared_ptr<const LieAlgebraData>;

}  // namespace wtrace
