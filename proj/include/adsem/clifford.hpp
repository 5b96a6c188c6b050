#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace adsem {

using Complex = std::complex<double>;

/// 4x4 complex matrix acting on spinors; holds the frame generators
/// e_0..e_3 and all of their products.
using CliffordElement = Eigen::Matrix4cd;

/// 4-component complex spinor with the standard positive definite
/// Hermitian pairing, under which e_0 is Hermitian and e_i skew-Hermitian.
using Spinor = Eigen::Vector4cd;

//! \brief Generator e_alpha of the fixed Clifford representation.
//!
//! e_0^2 = +I, e_i^2 = -I, e_a e_b + e_b e_a = 0 for a != b. All entries
//! are exact (0, +-1, +-i), so algebraic identities hold to roundoff.
inline CliffordElement gamma(int alpha) {
  const Complex i{0.0, 1.0};
  CliffordElement m = CliffordElement::Zero();
  switch (alpha) {
    case 0:
      m(0, 2) = 1;  m(1, 3) = 1;  m(2, 0) = 1;  m(3, 1) = 1;
      break;
    case 1:
      m(0, 2) = -1; m(1, 3) = 1;  m(2, 0) = 1;  m(3, 1) = -1;
      break;
    case 2:
      m(0, 3) = 1;  m(1, 2) = 1;  m(2, 1) = -1; m(3, 0) = -1;
      break;
    case 3:
      m(0, 3) = i;  m(1, 2) = -i; m(2, 1) = -i; m(3, 0) = i;
      break;
    default:
      throw std::out_of_range("gamma: frame index must be in 0..3");
  }
  return m;
}

inline Spinor act(const CliffordElement& m, const Spinor& s) { return m * s; }

/// Hermitian pairing sum_k conj(phi_k) psi_k.
inline Complex inner(const Spinor& phi, const Spinor& psi) { return phi.dot(psi); }

/// e_1 e_2 e_3. Squares to +I, is Hermitian, and commutes with each e_i.
inline const CliffordElement& volume_element() {
  static const CliffordElement w = gamma(1) * gamma(2) * gamma(3);
  return w;
}

}  // namespace adsem
