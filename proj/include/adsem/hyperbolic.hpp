#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "adsem/clifford.hpp"
#include "adsem/numeric.hpp"

namespace adsem {

/// Central-difference step for verification derivatives, balancing
/// truncation against roundoff at the field magnitudes that occur here.
inline constexpr double kFdStep = 1e-5;

//! \brief Point of the hyperbolic slice (H^3, g) in polar coordinates,
//! carrying the curvature scale kappa (Lambda = -3 kappa^2).
struct FramePoint {
  double r = 1.0;
  double theta = M_PI / 2;
  double psi = 0.0;
  double kappa = 1.0;
};

inline void require_valid(const FramePoint& p) {
  if (!(p.r > 0.0)) throw std::invalid_argument("FramePoint: r must be > 0");
  if (!(p.kappa > 0.0)) throw std::invalid_argument("FramePoint: kappa must be > 0");
  if (!(p.theta > 0.0 && p.theta < M_PI))
    throw std::invalid_argument("FramePoint: theta at a pole");
}

//! \brief Connection coefficients of the orthonormal frame
//! e_1 = d_r, e_2 = (kappa/sinh kr) d_theta, e_3 = (kappa/(sinh kr sin th)) d_psi.
//!
//! coeff(dir, diff, out) = <nabla_{e_dir} e_diff, e_out>; antisymmetric in
//! (diff, out) by metric compatibility. Nonzero entries are built from
//! C = kappa coth(kappa r) and T = kappa cot(theta)/sinh(kappa r).
struct FrameConnection {
  double C = 0.0;
  double T = 0.0;

  double coeff(int dir, int diff, int out) const {
    if (dir == 1) {
      if (diff == 0 && out == 1) return C;    // nabla_2 e_1 =  C e_2
      if (diff == 1 && out == 0) return -C;   // nabla_2 e_2 = -C e_1
    } else if (dir == 2) {
      if (diff == 0 && out == 2) return C;    // nabla_3 e_1 =  C e_3
      if (diff == 2 && out == 0) return -C;
      if (diff == 1 && out == 2) return T;    // nabla_3 e_2 =  T e_3
      if (diff == 2 && out == 1) return -T;
    }
    return 0.0;
  }
};

inline FrameConnection frame_connection(const FramePoint& p) {
  require_valid(p);
  FrameConnection g;
  g.C = p.kappa / std::tanh(p.kappa * p.r);
  g.T = p.kappa / (std::tan(p.theta) * std::sinh(p.kappa * p.r));
  return g;
}

/// Spin connection term for the frame direction k (1..3):
/// nabla_k phi = e_k(phi) + (1/4) sum_{ij} <nabla_k e_i, e_j> e_i.e_j. phi.
inline CliffordElement spin_connection_term(int k, const FramePoint& p) {
  if (k < 1 || k > 3) throw std::out_of_range("spin_connection_term: k in 1..3");
  const FrameConnection conn = frame_connection(p);
  CliffordElement s = CliffordElement::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double c = conn.coeff(k - 1, i, j);
      if (c != 0.0) s += 0.25 * c * (gamma(i + 1) * gamma(j + 1));
    }
  return s;
}

/// Directional derivative e_k(f) along the orthonormal frame (k = 1..3),
/// central differences with step kFdStep in each coordinate.
template <typename F>
auto frame_derivative(const F& f, int k, const FramePoint& p) {
  const double h = kFdStep;
  FramePoint pp = p, pm = p;
  double scale = 1.0;
  switch (k) {
    case 1: pp.r += h; pm.r -= h; break;
    case 2:
      pp.theta += h; pm.theta -= h;
      scale = p.kappa / std::sinh(p.kappa * p.r);
      break;
    case 3:
      pp.psi += h; pm.psi -= h;
      scale = p.kappa / (std::sinh(p.kappa * p.r) * std::sin(p.theta));
      break;
    default:
      throw std::out_of_range("frame_derivative: k in 1..3");
  }
  return (f(pp) - f(pm)) * (scale / (2.0 * h));
}

// ---------------------------------------------------------------------------
// AdS Killing vectors along the 0-slice
// ---------------------------------------------------------------------------

enum class KillingIndex { U40, U10, U20, U30, U14, U24, U34, V1, V2, V3 };

inline const char* killing_name(KillingIndex idx) {
  switch (idx) {
    case KillingIndex::U40: return "U40";
    case KillingIndex::U10: return "U10";
    case KillingIndex::U20: return "U20";
    case KillingIndex::U30: return "U30";
    case KillingIndex::U14: return "U14";
    case KillingIndex::U24: return "U24";
    case KillingIndex::U34: return "U34";
    case KillingIndex::V1: return "V1";
    case KillingIndex::V2: return "V2";
    case KillingIndex::V3: return "V3";
  }
  return "?";
}

//! \brief Frame components U^(0..3) of the ten AdS Killing vectors.
//!
//! Coordinate components are converted via U^(0) = cosh(kr) U^t,
//! U^(1) = U^r, U^(2) = (sinh kr / k) U^th, U^(3) = (sinh kr sin th / k) U^psi.
inline std::array<double, 4> killing_vector(KillingIndex idx, const FramePoint& p) {
  require_valid(p);
  const double k = p.kappa;
  const double sth = std::sin(p.theta), cth = std::cos(p.theta);
  const double sps = std::sin(p.psi), cps = std::cos(p.psi);
  const double coth = 1.0 / std::tanh(k * p.r);
  const double tnh = std::tanh(k * p.r);

  double ut = 0, ur = 0, uth = 0, ups = 0;  // coordinate components
  switch (idx) {
    case KillingIndex::U40: ut = 1.0 / k; break;
    case KillingIndex::U10:
      ur = sth * cps / k;
      uth = coth * cth * cps;
      ups = -coth * sps / sth;
      break;
    case KillingIndex::U20:
      ur = sth * sps / k;
      uth = coth * cth * sps;
      ups = coth * cps / sth;
      break;
    case KillingIndex::U30:
      ur = cth / k;
      uth = -coth * sth;
      break;
    case KillingIndex::U14: ut = tnh * sth * cps / k; break;
    case KillingIndex::U24: ut = tnh * sth * sps / k; break;
    case KillingIndex::U34: ut = tnh * cth / k; break;
    case KillingIndex::V1:
      uth = -sps;
      ups = -cth * cps / sth;
      break;
    case KillingIndex::V2:
      uth = cps;
      ups = -cth * sps / sth;
      break;
    case KillingIndex::V3: ups = 1.0; break;
  }
  const double sh = std::sinh(k * p.r);
  return {std::cosh(k * p.r) * ut, ur, sh / k * uth, sh * sth / k * ups};
}

/// Symmetrized covariant derivative nabla_a xi_b + nabla_b xi_a of a spatial
/// Killing field, assembled from frame_connection and finite-difference
/// derivatives of the frame components. Vanishes for true Killing fields.
inline Eigen::Matrix3d killing_residual(KillingIndex idx, const FramePoint& p) {
  switch (idx) {
    case KillingIndex::U10:
    case KillingIndex::U20:
    case KillingIndex::U30:
    case KillingIndex::V1:
    case KillingIndex::V2:
    case KillingIndex::V3:
      break;
    default:
      throw std::invalid_argument("killing_residual: not a spatial Killing field");
  }
  require_valid(p);
  const FrameConnection conn = frame_connection(p);
  const auto xi = killing_vector(idx, p);

  Eigen::Matrix3d dxi;  // dxi(a,b) = e_a(xi^b)
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      dxi(a, b) = frame_derivative(
          [&](const FramePoint& q) { return killing_vector(idx, q)[b + 1]; },
          a + 1, p);

  Eigen::Matrix3d res;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double nab = dxi(a, b), nba = dxi(b, a);
      for (int l = 0; l < 3; ++l) {
        nab += xi[l + 1] * conn.coeff(a, l, b);
        nba += xi[l + 1] * conn.coeff(b, l, a);
      }
      res(a, b) = nab + nba;
    }
  return res;
}

// ---------------------------------------------------------------------------
// Quadrature on coordinate spheres S_r
// ---------------------------------------------------------------------------

//! \brief Product rule on the unit sphere: Gauss-Legendre in cos(theta)
//! crossed with a uniform psi grid. Weights sum to 4 pi.
struct SphereQuadrature {
  struct Node {
    double theta, psi, weight;
  };
  int n_theta = 0, n_psi = 0;
  std::vector<Node> nodes;

  double total_weight() const {
    std::vector<double> w(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) w[i] = nodes[i].weight;
    return pairwise_sum(w);
  }

  /// Integral of f(theta, psi) against sin(theta) dtheta dpsi, pairwise order.
  template <typename F>
  double integrate(const F& f) const {
    std::vector<double> terms(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
      terms[i] = nodes[i].weight * f(nodes[i].theta, nodes[i].psi);
    return pairwise_sum(terms);
  }
};

inline SphereQuadrature sphere_quadrature(int n_theta, int n_psi) {
  if (n_theta < 2 || n_psi < 4)
    throw std::invalid_argument("sphere_quadrature: need n_theta >= 2, n_psi >= 4");
  std::vector<double> x, w;
  gauss_legendre(n_theta, x, w);
  SphereQuadrature q;
  q.n_theta = n_theta;
  q.n_psi = n_psi;
  q.nodes.reserve(static_cast<std::size_t>(n_theta) * n_psi);
  const double wpsi = 2.0 * M_PI / n_psi;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = std::acos(x[i]);
    for (int j = 0; j < n_psi; ++j)
      q.nodes.push_back({theta, 2.0 * M_PI * j / n_psi, w[i] * wpsi});
  }
  return q;
}

/// Area density of S_r against the unit-sphere measure:
/// omega = (sinh^2(kappa r)/kappa^2) sin(theta) dtheta dpsi.
inline double sphere_area_factor(double r, double kappa) {
  const double s = std::sinh(kappa * r);
  return s * s / (kappa * kappa);
}

}  // namespace adsem
