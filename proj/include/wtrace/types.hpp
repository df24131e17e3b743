#pragma once

#include <Eigen/Dense>
#include <complex>

namespace wtrace {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Mode-lattice conventions. kKernelPlus keeps the n = 0 mode (weights take
// the value 1 there, the sign operator takes +1, H+ = {n >= 0}).
// kKernelExcluded removes the n = 0 mode from the lattice entirely
// (H+ = {n >= 1}); operators built under it have zero entries into and out
// of mode 0.
enum class Convention { kKernelPlus, kKernelExcluded };

// Which end of the mode lattice an asymptotic expansion describes:
// kPlus is n -> +infinity, kMinus is n -> -infinity (both in m = |n|).
enum class Ray { kPlus, kMinus };

}  // namespace wtrace
