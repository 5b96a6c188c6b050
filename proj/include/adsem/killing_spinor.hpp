#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "adsem/clifford.hpp"
#include "adsem/hyperbolic.hpp"
#include "adsem/initial_data.hpp"

namespace adsem {

/// Coefficients (lambda_1..lambda_4) parametrizing the imaginary Killing
/// spinors; the zero vector maps to the zero spinor.
using LambdaVector = Eigen::Vector4cd;

/// 4x4 Hermitian charge matrix with blocks E, E-hat, L.
using QMatrix = Eigen::Matrix4cd;

//! \brief Imaginary Killing spinor of the AdS 0-slice,
//! nabla_X Phi0 + (kappa i/2) X.Phi0 = 0, assembled from the half-angle
//! data u+-, v+- and the radial weights e^{+-kappa r/2}.
inline Spinor killing_spinor(const LambdaVector& lv, const FramePoint& p) {
  const Complex i{0.0, 1.0};
  const Complex zp = std::exp(i * (p.psi / 2.0));
  const Complex zm = std::exp(-i * (p.psi / 2.0));
  const double sh = std::sin(p.theta / 2.0), ch = std::cos(p.theta / 2.0);

  const Complex up = lv(0) * zp * sh + lv(1) * zm * ch;
  const Complex um = lv(2) * zp * sh + lv(3) * zm * ch;
  const Complex vp = -lv(2) * zp * ch + lv(3) * zm * sh;
  const Complex vm = -lv(0) * zp * ch + lv(1) * zm * sh;

  const double Ep = std::exp(p.kappa * p.r / 2.0);
  const double Em = std::exp(-p.kappa * p.r / 2.0);
  Spinor phi;
  phi(0) = up * Ep + um * Em;
  phi(1) = vp * Ep + vm * Em;
  phi(2) = -i * up * Ep + i * um * Em;
  phi(3) = i * vp * Ep - i * vm * Em;
  return phi;
}

/// Residual of the defining equation in frame direction k (1..3):
/// nabla_k Phi0 + (kappa i / 2) e_k . Phi0, with the frame derivative taken
/// by central differences. Vanishes for the true Killing spinor.
inline Spinor killing_residual_spinor(const LambdaVector& lv, const FramePoint& p,
                                      int k) {
  if (k < 1 || k > 3)
    throw std::out_of_range("killing_residual_spinor: k in 1..3");
  require_valid(p);
  if (lv.norm() == 0.0)
    throw std::invalid_argument("killing_residual_spinor: lambda must be nonzero");
  const Spinor phi = killing_spinor(lv, p);
  const Spinor dphi = frame_derivative(
      [&](const FramePoint& q) -> Spinor { return killing_spinor(lv, q); }, k, p);
  const Complex i{0.0, 1.0};
  return dphi + spin_connection_term(k, p) * phi + (p.kappa * i / 2.0) * (gamma(k) * phi);
}

// ---------------------------------------------------------------------------
// Boundary form of the integrated Weitzenbock identity
// ---------------------------------------------------------------------------

//! \brief Value of the boundary quadratic form at finite radius, plus the
//! imaginary residue left after taking the real part (roundoff only: all
//! five bilinears pair with Hermitian operators).
struct BoundaryForm {
  double value = 0.0;
  double imag_residual = 0.0;
};

//! \brief The five surface integrals of the integrated Weitzenbock identity
//! over S_r, converging to 8 pi lambda^H Q lambda as r -> infinity.
//!
//! The extrinsic-curvature term is built from p (the trace-adjusted second
//! fundamental form). The B^1 term carries coefficient -2: with -1 the
//! limit reproduces only half of the magnetic-momentum entries of Q, as
//! direct expansion in the lambda basis shows.
inline BoundaryForm boundary_form(const LambdaVector& lv,
                                  const InitialDataProvider& provider, double r,
                                  const SphereQuadrature& quad) {
  const double kappa = provider.kappa();
  const double area = sphere_area_factor(r, kappa);
  const Complex i{0.0, 1.0};
  const CliffordElement g0 = gamma(0);
  const std::array<CliffordElement, 3> gk = {gamma(1), gamma(2), gamma(3)};
  const CliffordElement& w = volume_element();

  std::vector<double> re_terms(quad.nodes.size()), im_terms(quad.nodes.size());
  for (std::size_t n = 0; n < quad.nodes.size(); ++n) {
    const auto& node = quad.nodes[n];
    const FramePoint pt{r, node.theta, node.psi, kappa};
    const FieldSample s = provider.sample(pt);
    const AspectVector asp = aspect(s, pt);
    const Eigen::Matrix3d g = Eigen::Matrix3d::Identity() + s.a;
    const double tra = s.a.trace();
    const Spinor phi = killing_spinor(lv, pt);

    Complex total = 0.25 * asp.divergence_term(0) * inner(phi, phi);
    for (int k = 0; k < 3; ++k) {
      const double ak = kappa * (s.a(k, 0) - g(k, 0) * tra);
      total += 0.25 * ak * inner(phi, i * (gk[k] * phi));
      total += -0.5 * asp.Pcal(k, 0) * inner(phi, g0 * (gk[k] * phi));
    }
    total += s.E(0) * inner(phi, g0 * phi);
    total += -2.0 * s.B(0) * inner(phi, w * phi);

    re_terms[n] = node.weight * area * total.real();
    im_terms[n] = node.weight * area * total.imag();
  }
  BoundaryForm out;
  out.value = pairwise_sum(re_terms);
  out.imag_residual = pairwise_sum(im_terms);
  return out;
}

/// 8 pi lambda^H Q lambda; real because Q is Hermitian.
inline double q_form(const LambdaVector& lv, const QMatrix& Q) {
  if ((Q - Q.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("q_form: Q is not Hermitian");
  const Complex v = lv.dot(Q * lv);
  return 8.0 * M_PI * v.real();
}

}  // namespace adsem
