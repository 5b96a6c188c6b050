#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "adsem/hyperbolic.hpp"
#include "adsem/numeric.hpp"

namespace adsem {

//! \brief Field data of an Einstein-Maxwell initial data set at one point,
//! in components of the background orthonormal frame.
//!
//! g_ij = delta_ij + a_ij, p_ij the second fundamental form, E/B the
//! electric and magnetic fields. da[k](i,j) = e_k(a_ij); dp analogous and
//! optional (has_dp).
struct FieldSample {
  Eigen::Matrix3d a = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d p = Eigen::Matrix3d::Zero();
  Eigen::Vector3d E = Eigen::Vector3d::Zero();
  Eigen::Vector3d B = Eigen::Vector3d::Zero();
  std::array<Eigen::Matrix3d, 3> da = {Eigen::Matrix3d::Zero(),
                                       Eigen::Matrix3d::Zero(),
                                       Eigen::Matrix3d::Zero()};
  std::array<Eigen::Matrix3d, 3> dp = {Eigen::Matrix3d::Zero(),
                                       Eigen::Matrix3d::Zero(),
                                       Eigen::Matrix3d::Zero()};
  bool has_dp = false;
};

//! \brief Evaluation contract for asymptotically AdS Einstein-Maxwell data.
//! Implementations must be pure: repeated evaluation at the same point
//! yields identical samples.
class InitialDataProvider {
 public:
  virtual ~InitialDataProvider() = default;
  virtual FieldSample sample(const FramePoint& p) const = 0;
  virtual double kappa() const = 0;
  virtual double decay_order() const = 0;
  virtual std::string name() const = 0;

  FramePoint point(double r, double theta, double psi) const {
    return FramePoint{r, theta, psi, kappa()};
  }
};

// ---------------------------------------------------------------------------
// Aspect quantities
// ---------------------------------------------------------------------------

//! \brief The quantities entering the charge integrands:
//! Ecal_i = nabla^j g_ij - nabla_i tr(g) - kappa (a_1i - g_1i tr(a)) and
//! Pcal_ki = p_ki - g_ki tr(p). divergence_term/kappa_term expose the two
//! pieces of Ecal separately (the boundary form pairs them with different
//! spinor bilinears).
struct AspectVector {
  Eigen::Vector3d Ecal = Eigen::Vector3d::Zero();
  Eigen::Matrix3d Pcal = Eigen::Matrix3d::Zero();
  Eigen::Vector3d divergence_term = Eigen::Vector3d::Zero();
  Eigen::Vector3d kappa_term = Eigen::Vector3d::Zero();
};

/// nabla_k g_ij in the orthonormal frame from a sample and the connection.
inline Eigen::Matrix3d covariant_deriv_g(const FieldSample& s,
                                         const FrameConnection& conn, int k) {
  const Eigen::Matrix3d g = Eigen::Matrix3d::Identity() + s.a;
  Eigen::Matrix3d out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double v = s.da[k](i, j);
      for (int l = 0; l < 3; ++l)
        v -= conn.coeff(k, i, l) * g(l, j) + conn.coeff(k, j, l) * g(i, l);
      out(i, j) = v;
    }
  return out;
}

inline AspectVector aspect(const FieldSample& s, const FramePoint& p) {
  const FrameConnection conn = frame_connection(p);
  const Eigen::Matrix3d g = Eigen::Matrix3d::Identity() + s.a;
  std::array<Eigen::Matrix3d, 3> nabla;
  for (int k = 0; k < 3; ++k) nabla[k] = covariant_deriv_g(s, conn, k);

  AspectVector out;
  const double tra = s.a.trace();
  for (int i = 0; i < 3; ++i) {
    double div = 0.0, dtr = 0.0;
    for (int j = 0; j < 3; ++j) {
      div += nabla[j](i, j);
      dtr += nabla[i](j, j);
    }
    out.divergence_term(i) = div - dtr;
    out.kappa_term(i) = p.kappa * (s.a(0, i) - g(0, i) * tra);
    out.Ecal(i) = out.divergence_term(i) - out.kappa_term(i);
  }
  out.Pcal = s.p - g * s.p.trace();
  return out;
}

inline AspectVector aspect(const InitialDataProvider& provider, const FramePoint& p) {
  require_valid(p);
  return aspect(provider.sample(p), p);
}

// ---------------------------------------------------------------------------
// Built-in providers
// ---------------------------------------------------------------------------

/// Exact AdS slice: a = p = E = B = 0.
class AdsProvider final : public InitialDataProvider {
 public:
  explicit AdsProvider(double kappa) : kappa_(kappa) {
    if (!(kappa > 0)) throw std::invalid_argument("AdsProvider: kappa must be > 0");
  }
  FieldSample sample(const FramePoint&) const override { return {}; }
  double kappa() const override { return kappa_; }
  double decay_order() const override { return std::numeric_limits<double>::infinity(); }
  std::string name() const override { return "ads"; }

 private:
  double kappa_;
};

//! \brief t-slice of Reissner-Nordstrom-AdS, f = 1 - 2M/rb + Q^2/rb^2 + k^2 rb^2,
//! pulled back to the hyperbolic chart by dr/drb = f^{-1/2} with the constant
//! fixed by rb - sinh(kr)/k -> 0.
//!
//! In the frame, a_11 = 0 and a_22 = a_33 = alpha(r) = k^2 rb^2 / sinh^2(kr) - 1.
//! alpha and alpha' are evaluated through cancellation-free forms: at kr = 10
//! alpha ~ 5e-13 sits far below the roundoff of the naive difference.
class RnAdsProvider final : public InitialDataProvider {
 public:
  RnAdsProvider(double M, double Q, double kappa) : M_(M), Q_(Q), kappa_(kappa) {
    if (!(M >= 0)) throw std::invalid_argument("RnAdsProvider: M must be >= 0");
    if (!(kappa > 0)) throw std::invalid_argument("RnAdsProvider: kappa must be > 0");
  }

  FieldSample sample(const FramePoint& p) const override {
    require_valid(p);
    const Radial rad = radial(p.r);
    FieldSample s;
    s.a(1, 1) = rad.alpha;
    s.a(2, 2) = rad.alpha;
    s.da[0](1, 1) = rad.dalpha;
    s.da[0](2, 2) = rad.dalpha;
    s.E(0) = Q_ / (rad.rb * rad.rb);
    s.has_dp = true;  // static slice, dp = 0 exactly
    return s;
  }

  double kappa() const override { return kappa_; }
  double decay_order() const override { return 3.0; }
  std::string name() const override { return "rn-ads"; }

  /// Areal radius of the sphere at hyperbolic radius r.
  double areal_radius(double r) const { return radial(r).rb; }

 private:
  struct Radial {
    double r = -1.0;
    double rb = 0.0;      // areal radius
    double alpha = 0.0;   // a_22 = a_33
    double dalpha = 0.0;  // d alpha / dr
  };

  double f(double s) const {
    return 1.0 - 2.0 * M_ / s + Q_ * Q_ / (s * s) + kappa_ * kappa_ * s * s;
  }

  // integral_{rb}^inf (f^{-1/2} - f0^{-1/2}) ds, rationalized so the
  // integrand is (2M/s - Q^2/s^2)/(sqrt(f f0)(sqrt f + sqrt f0)).
  double tail_integral(double rb) const {
    const double k2 = kappa_ * kappa_;
    auto integrand = [&](double u) {
      if (u <= 0.0) return 0.0;
      const double s = rb / u;
      const double fs = f(s);
      if (!(fs > 0.0))
        throw std::runtime_error("RnAdsProvider: chart map outside static region");
      const double f0s = 1.0 + k2 * s * s;
      const double num = 2.0 * M_ / s - Q_ * Q_ / (s * s);
      const double val = num / (std::sqrt(fs * f0s) * (std::sqrt(fs) + std::sqrt(f0s)));
      return val * rb / (u * u);
    };
    return adaptive_simpson(integrand, 0.0, 1.0, 1e-12);
  }

  double r_of_rb(double rb) const {
    return std::asinh(kappa_ * rb) / kappa_ - tail_integral(rb);
  }

  Radial compute_radial(double r) const {
    double rb = std::sinh(kappa_ * r) / kappa_;
    bool converged = false;
    for (int it = 0; it < 60; ++it) {
      const double g = r_of_rb(rb) - r;
      const double step = g * std::sqrt(f(rb));
      rb -= step;
      if (!(rb > 0.0) || !std::isfinite(rb))
        throw std::runtime_error("RnAdsProvider: chart inversion left the domain");
      if (std::abs(step) < 1e-13 * rb) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw std::runtime_error("RnAdsProvider: chart inversion did not converge");

    const double k = kappa_;
    const double I = tail_integral(rb);
    // D = rb - sinh(kr)/k via sinh(asinh(k rb) - k I); exact to roundoff of I.
    const double D = rb * (1.0 - std::cosh(k * I)) +
                     std::sqrt(1.0 + k * k * rb * rb) * std::sinh(k * I) / k;
    const double u = rb - D;  // sinh(kr)/k
    const double sh = k * u;
    const double ch = std::sqrt(1.0 + sh * sh);
    Radial out;
    out.r = r;
    out.rb = rb;
    out.alpha = D * (2.0 * rb - D) / (u * u);
    // alpha' = (2 k^2 rb / sh^2)(f^{1/2} - k rb ch/sh); the bracket is
    // rationalized to (-2M/rb + Q^2/rb^2 - alpha)/(f^{1/2} + k rb ch/sh).
    const double bracket =
        (-2.0 * M_ / rb + Q_ * Q_ / (rb * rb) - out.alpha) /
        (std::sqrt(f(rb)) + k * rb * ch / sh);
    out.dalpha = 2.0 * k * k * rb / (sh * sh) * bracket;
    return out;
  }

  // Charge integrals evaluate whole spheres at a fixed radius, so a
  // single-slot per-thread memo removes the repeated chart inversions.
  const Radial& radial(double r) const {
    thread_local Radial cache;
    thread_local const RnAdsProvider* owner = nullptr;
    if (owner != this || cache.r != r) {
      cache = compute_radial(r);
      owner = this;
    }
    return cache;
  }

  double M_, Q_, kappa_;
};

//! \brief Leading-order t-slice fields of Kerr-Newman-AdS, with
//! B = 1 - a^2 k^2 sin^2(theta) the oblateness factor. All derivatives
//! are analytic.
class KnAdsAsymptoticProvider final : public InitialDataProvider {
 public:
  KnAdsAsymptoticProvider(double m, double a, double e, double kappa)
      : m_(m), a_(a), e_(e), kappa_(kappa) {
    if (!(kappa > 0))
      throw std::invalid_argument("KnAdsAsymptoticProvider: kappa must be > 0");
    if (!(1.0 - kappa * kappa * a * a > 0.0))
      throw std::invalid_argument("KnAdsAsymptoticProvider: requires kappa^2 a^2 < 1");
  }

  FieldSample sample(const FramePoint& pt) const override {
    require_valid(pt);
    const double k = kappa_;
    const double sth = std::sin(pt.theta), cth = std::cos(pt.theta);
    const double B = 1.0 - a_ * a_ * k * k * sth * sth;
    const double dB = -2.0 * a_ * a_ * k * k * sth * cth;
    const double Bm32 = std::pow(B, -1.5), Bm52 = std::pow(B, -2.5);
    const double Bm72 = std::pow(B, -3.5);
    const double ex3 = std::exp(-3.0 * k * pt.r);
    const double e2scale = k / std::sinh(k * pt.r);  // frame factor for d/dtheta

    FieldSample s;
    const double a11 = 16.0 * m_ * k * Bm32 * ex3;
    const double a33 = 16.0 * m_ * a_ * a_ * k * k * k * Bm52 * sth * sth * ex3;
    const double p13 = 24.0 * m_ * a_ * k * k * k * Bm52 * sth * ex3;
    s.a(0, 0) = a11;
    s.a(2, 2) = a33;
    s.p(0, 2) = p13;
    s.p(2, 0) = p13;
    s.E(0) = 4.0 * k * k * e_ * Bm32 * std::exp(-2.0 * k * pt.r);
    s.B(0) = 16.0 * k * k * k * e_ * a_ * Bm52 * cth * ex3;

    // radial frame derivatives: every field carries e^{-3 k r}
    s.da[0](0, 0) = -3.0 * k * a11;
    s.da[0](2, 2) = -3.0 * k * a33;
    s.dp[0](0, 2) = s.dp[0](2, 0) = -3.0 * k * p13;

    // theta direction (e_2 = (k/sinh kr) d_theta)
    const double da11_dth = 16.0 * m_ * k * (-1.5) * Bm52 * dB * ex3;
    const double da33_dth = 16.0 * m_ * a_ * a_ * k * k * k * ex3 *
                            ((-2.5) * Bm72 * dB * sth * sth + Bm52 * 2.0 * sth * cth);
    const double dp13_dth = 24.0 * m_ * a_ * k * k * k * ex3 *
                            ((-2.5) * Bm72 * dB * sth + Bm52 * cth);
    s.da[1](0, 0) = e2scale * da11_dth;
    s.da[1](2, 2) = e2scale * da33_dth;
    s.dp[1](0, 2) = s.dp[1](2, 0) = e2scale * dp13_dth;
    s.has_dp = true;
    return s;
  }

  double kappa() const override { return kappa_; }
  double decay_order() const override { return 3.0; }
  std::string name() const override { return "kn-ads"; }

 private:
  double m_, a_, e_, kappa_;
};

//! \brief Adapter for user-defined data given as a field function; frame
//! derivatives of a (and p) are filled by central differences unless the
//! function provides them itself.
class FunctionProvider final : public InitialDataProvider {
 public:
  using Fn = std::function<FieldSample(const FramePoint&)>;

  FunctionProvider(Fn fn, double kappa, double decay_order, std::string name,
                   bool fd_derivatives = true)
      : fn_(std::move(fn)),
        kappa_(kappa),
        decay_order_(decay_order),
        name_(std::move(name)),
        fd_(fd_derivatives) {}

  FieldSample sample(const FramePoint& p) const override {
    FieldSample s = fn_(p);
    if (fd_) {
      for (int k = 1; k <= 3; ++k) {
        s.da[k - 1] = frame_derivative(
            [&](const FramePoint& q) -> Eigen::Matrix3d { return fn_(q).a; }, k, p);
        s.dp[k - 1] = frame_derivative(
            [&](const FramePoint& q) -> Eigen::Matrix3d { return fn_(q).p; }, k, p);
      }
      s.has_dp = true;
    }
    return s;
  }

  double kappa() const override { return kappa_; }
  double decay_order() const override { return decay_order_; }
  std::string name() const override { return name_; }

 private:
  Fn fn_;
  double kappa_;
  double decay_order_;
  std::string name_;
  bool fd_;
};

inline AdsProvider provider_ads(double kappa) { return AdsProvider(kappa); }

inline RnAdsProvider provider_rn_ads(double M, double Q, double kappa) {
  return RnAdsProvider(M, Q, kappa);
}

inline KnAdsAsymptoticProvider provider_kn_ads_asymptotic(double m, double a,
                                                          double e, double kappa) {
  return KnAdsAsymptoticProvider(m, a, e, kappa);
}

// ---------------------------------------------------------------------------
// Decay validation
// ---------------------------------------------------------------------------

//! \brief Fitted decay rates sigma per field family from sup norms over
//! spheres: sup |f| ~ e^{-sigma kappa r}. Fields that vanish identically
//! report infinite order.
struct DecayReport {
  struct Field {
    std::string name;
    double sigma = 0.0;
    bool infinite = false;
    bool flagged = false;  // set only for the families with a required rate
  };
  std::vector<Field> fields;
  bool pass = true;
};

inline DecayReport validate_decay(const InitialDataProvider& provider,
                                  const std::vector<double>& radii, double tau) {
  if (radii.size() < 3)
    throw std::invalid_argument("validate_decay: need at least 3 radii");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1]))
      throw std::invalid_argument("validate_decay: radii must be increasing");

  const SphereQuadrature quad = sphere_quadrature(24, 48);
  const double k = provider.kappa();
  constexpr int kNumFields = 5;
  const std::array<std::string, kNumFields> names = {"a", "da", "p", "E", "B"};
  std::array<std::vector<double>, kNumFields> sup;

  for (double r : radii) {
    std::array<double, kNumFields> m{};
    for (const auto& node : quad.nodes) {
      const FieldSample s = provider.sample({r, node.theta, node.psi, k});
      m[0] = std::max(m[0], s.a.cwiseAbs().maxCoeff());
      double dmax = 0.0;
      for (const auto& d : s.da) dmax = std::max(dmax, d.cwiseAbs().maxCoeff());
      m[1] = std::max(m[1], dmax);
      m[2] = std::max(m[2], s.p.cwiseAbs().maxCoeff());
      m[3] = std::max(m[3], s.E.cwiseAbs().maxCoeff());
      m[4] = std::max(m[4], s.B.cwiseAbs().maxCoeff());
    }
    for (int f = 0; f < kNumFields; ++f) sup[f].push_back(m[f]);
  }

  // required rates; 0 = report only. Slack absorbs fit curvature from
  // subleading terms.
  const std::array<double, kNumFields> required = {tau, 0.0, 0.0, 2.0, 2.0};
  constexpr double kFitSlack = 0.05;

  DecayReport report;
  for (int f = 0; f < kNumFields; ++f) {
    DecayReport::Field field;
    field.name = names[f];
    const bool all_zero =
        std::all_of(sup[f].begin(), sup[f].end(), [](double v) { return v == 0.0; });
    if (all_zero) {
      field.infinite = true;
      field.sigma = std::numeric_limits<double>::infinity();
    } else {
      std::vector<double> x, y;
      for (std::size_t i = 0; i < radii.size(); ++i) {
        if (sup[f][i] <= 0.0) continue;
        x.push_back(k * radii[i]);
        y.push_back(std::log(sup[f][i]));
      }
      if (x.size() < 2) {
        field.infinite = true;
        field.sigma = std::numeric_limits<double>::infinity();
      } else {
        field.sigma = -fit_line(x, y).second;
      }
    }
    if (required[f] > 0.0 && field.sigma < required[f] - kFitSlack) {
      field.flagged = true;
      report.pass = false;
    }
    report.fields.push_back(field);
  }
  return report;
}

}  // namespace adsem
