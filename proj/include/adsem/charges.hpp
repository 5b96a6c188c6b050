#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "adsem/hyperbolic.hpp"
#include "adsem/initial_data.hpp"
#include "adsem/numeric.hpp"

namespace adsem {

//! \brief The conserved charges: total energy E0, momenta c and c', angular
//! momenta J, electric charge q, magnetic momenta b0 and b. Units are the
//! geometric units set by kappa.
struct ChargeSet {
  double E0 = 0.0;
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  Eigen::Vector3d c_prime = Eigen::Vector3d::Zero();
  Eigen::Vector3d J = Eigen::Vector3d::Zero();
  double q = 0.0;
  double b0 = 0.0;
  Eigen::Vector3d b = Eigen::Vector3d::Zero();
};

enum class ChargeId {
  E0, C1, C2, C3, Cp1, Cp2, Cp3, J1, J2, J3, Q, B0, B1, B2, B3
};

inline constexpr std::array<ChargeId, 15> kAllCharges = {
    ChargeId::E0,  ChargeId::C1,  ChargeId::C2, ChargeId::C3, ChargeId::Cp1,
    ChargeId::Cp2, ChargeId::Cp3, ChargeId::J1, ChargeId::J2, ChargeId::J3,
    ChargeId::Q,   ChargeId::B0,  ChargeId::B1, ChargeId::B2, ChargeId::B3};

inline const char* charge_name(ChargeId id) {
  switch (id) {
    case ChargeId::E0: return "E0";
    case ChargeId::C1: return "c1";
    case ChargeId::C2: return "c2";
    case ChargeId::C3: return "c3";
    case ChargeId::Cp1: return "c_prime1";
    case ChargeId::Cp2: return "c_prime2";
    case ChargeId::Cp3: return "c_prime3";
    case ChargeId::J1: return "J1";
    case ChargeId::J2: return "J2";
    case ChargeId::J3: return "J3";
    case ChargeId::Q: return "q";
    case ChargeId::B0: return "b0";
    case ChargeId::B1: return "b1";
    case ChargeId::B2: return "b2";
    case ChargeId::B3: return "b3";
  }
  return "?";
}

inline double& charge_ref(ChargeSet& cs, ChargeId id) {
  switch (id) {
    case ChargeId::E0: return cs.E0;
    case ChargeId::C1: return cs.c(0);
    case ChargeId::C2: return cs.c(1);
    case ChargeId::C3: return cs.c(2);
    case ChargeId::Cp1: return cs.c_prime(0);
    case ChargeId::Cp2: return cs.c_prime(1);
    case ChargeId::Cp3: return cs.c_prime(2);
    case ChargeId::J1: return cs.J(0);
    case ChargeId::J2: return cs.J(1);
    case ChargeId::J3: return cs.J(2);
    case ChargeId::Q: return cs.q;
    case ChargeId::B0: return cs.b0;
    case ChargeId::B1: return cs.b(0);
    case ChargeId::B2: return cs.b(1);
    case ChargeId::B3: return cs.b(2);
  }
  throw std::out_of_range("charge_ref");
}

inline double charge_value(const ChargeSet& cs, ChargeId id) {
  return charge_ref(const_cast<ChargeSet&>(cs), id);
}

// ---------------------------------------------------------------------------
// Finite-radius surface integrals
// ---------------------------------------------------------------------------

//! \brief One charge integrand over S_r against omega = area * sin th dth dps.
//! Prefactors follow the definitions: E0-type (kappa/16pi) Ecal_1 U^(0);
//! c'/J-type (kappa/8pi) sum_{j=2,3} Pcal_j1 U^(j); q (1/4pi) E^1;
//! b_alpha (1/4pi) B^1 n^alpha e^{kappa r}.
struct ChargeIntegral {
  double value = 0.0;
  double condition = 1.0;  // max |node term| / |sum|; large = cancellation
};

inline ChargeIntegral charge_integral_diag(const InitialDataProvider& provider,
                                           ChargeId id, double r,
                                           const SphereQuadrature& quad) {
  const double kappa = provider.kappa();
  const double area = sphere_area_factor(r, kappa);
  const bool is_b = id == ChargeId::B0 || id == ChargeId::B1 ||
                    id == ChargeId::B2 || id == ChargeId::B3;
  std::vector<double> terms(quad.nodes.size());

  for (std::size_t n = 0; n < quad.nodes.size(); ++n) {
    const auto& node = quad.nodes[n];
    const FramePoint pt{r, node.theta, node.psi, kappa};
    double integrand = 0.0;
    switch (id) {
      case ChargeId::E0:
        integrand = kappa / (16.0 * M_PI) * aspect(provider, pt).Ecal(0) *
                    killing_vector(KillingIndex::U40, pt)[0];
        break;
      case ChargeId::C1:
      case ChargeId::C2:
      case ChargeId::C3: {
        const auto idx = id == ChargeId::C1   ? KillingIndex::U14
                         : id == ChargeId::C2 ? KillingIndex::U24
                                              : KillingIndex::U34;
        integrand = kappa / (16.0 * M_PI) * aspect(provider, pt).Ecal(0) *
                    killing_vector(idx, pt)[0];
        break;
      }
      case ChargeId::Cp1:
      case ChargeId::Cp2:
      case ChargeId::Cp3: {
        const auto idx = id == ChargeId::Cp1   ? KillingIndex::U10
                         : id == ChargeId::Cp2 ? KillingIndex::U20
                                               : KillingIndex::U30;
        const auto U = killing_vector(idx, pt);
        const Eigen::Matrix3d Pcal = aspect(provider, pt).Pcal;
        integrand = kappa / (8.0 * M_PI) * (Pcal(1, 0) * U[2] + Pcal(2, 0) * U[3]);
        break;
      }
      case ChargeId::J1:
      case ChargeId::J2:
      case ChargeId::J3: {
        const auto idx = id == ChargeId::J1   ? KillingIndex::V1
                         : id == ChargeId::J2 ? KillingIndex::V2
                                              : KillingIndex::V3;
        const auto V = killing_vector(idx, pt);
        const Eigen::Matrix3d Pcal = aspect(provider, pt).Pcal;
        integrand = kappa / (8.0 * M_PI) * (Pcal(1, 0) * V[2] + Pcal(2, 0) * V[3]);
        break;
      }
      case ChargeId::Q:
        integrand = provider.sample(pt).E(0) / (4.0 * M_PI);
        break;
      case ChargeId::B0:
      case ChargeId::B1:
      case ChargeId::B2:
      case ChargeId::B3: {
        double nalpha = 1.0;
        if (id == ChargeId::B1) nalpha = std::sin(node.theta) * std::cos(node.psi);
        if (id == ChargeId::B2) nalpha = std::sin(node.theta) * std::sin(node.psi);
        if (id == ChargeId::B3) nalpha = std::cos(node.theta);
        integrand = provider.sample(pt).B(0) * nalpha / (4.0 * M_PI);
        break;
      }
    }
    terms[n] = node.weight * area * integrand;
  }

  ChargeIntegral out;
  out.value = pairwise_sum(terms);
  // the growing e^{kappa r} weight is applied after forming B^1 so the
  // summed terms stay O(e^{-2 kappa r})
  if (is_b) out.value *= std::exp(kappa * r);
  double maxterm = 0.0;
  for (double t : terms) maxterm = std::max(maxterm, std::abs(t));
  out.condition = std::abs(out.value) > 0.0
                      ? maxterm * (is_b ? std::exp(kappa * r) : 1.0) / std::abs(out.value)
                      : 1.0;
  return out;
}

inline double charge_integral(const InitialDataProvider& provider, ChargeId id,
                              double r, const SphereQuadrature& quad) {
  return charge_integral_diag(provider, id, r, quad).value;
}

// ---------------------------------------------------------------------------
// Radius extrapolation
// ---------------------------------------------------------------------------

//! \brief Limit of a radius sequence under the model v(r) = L + A e^{-beta kappa r},
//! beta >= 1. The error estimate is conservative: max of the rms fit residual
//! and the last increment. A degenerate fit (the model explains the data no
//! better than a constant) falls back to the final sample.
struct Extrapolation {
  double limit = 0.0;
  double error = 0.0;
  double beta = 0.0;
  bool degenerate = false;
};

namespace detail {

struct ExpFit {
  double L = 0.0, A = 0.0, sse = std::numeric_limits<double>::infinity();
};

inline ExpFit fit_exp_at_beta(const std::vector<std::pair<double, double>>& samples,
                              double beta, double kappa) {
  const double n = static_cast<double>(samples.size());
  double se = 0, see = 0, sv = 0, sev = 0;
  for (const auto& [r, v] : samples) {
    const double e = std::exp(-beta * kappa * r);
    se += e;
    see += e * e;
    sv += v;
    sev += e * v;
  }
  const double det = n * see - se * se;
  ExpFit fit;
  if (std::abs(det) < 1e-300) return fit;
  fit.A = (n * sev - se * sv) / det;
  fit.L = (sv - fit.A * se) / n;
  fit.sse = 0.0;
  for (const auto& [r, v] : samples) {
    const double resid = v - fit.L - fit.A * std::exp(-beta * kappa * r);
    fit.sse += resid * resid;
  }
  return fit;
}

}  // namespace detail

inline Extrapolation extrapolate(const std::vector<std::pair<double, double>>& samples,
                                 double kappa = 1.0) {
  if (samples.size() < 3)
    throw std::invalid_argument("extrapolate: need at least 3 samples");
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].first > samples[i - 1].first))
      throw std::invalid_argument("extrapolate: radii must be increasing");

  const double vlast = samples.back().second;
  const double vprev = samples[samples.size() - 2].second;
  const double last_increment = std::abs(vlast - vprev);

  double mean = 0.0;
  for (const auto& [r, v] : samples) mean += v;
  mean /= static_cast<double>(samples.size());
  double const_sse = 0.0;
  for (const auto& [r, v] : samples) const_sse += (v - mean) * (v - mean);

  Extrapolation out;
  const double scale = std::max(std::abs(mean), std::abs(vlast));
  const double rms = std::sqrt(const_sse / static_cast<double>(samples.size()));
  // Already flat to quadrature roundoff (includes exact zeros): nothing to fit.
  const double noise_floor = 1e-12 * std::max(1.0, scale);
  if (rms <= noise_floor) {
    out.limit = vlast;
    out.error = last_increment;
    out.beta = std::numeric_limits<double>::infinity();
    return out;
  }

  // coarse beta grid, then golden-section refinement of the best bracket
  double best_beta = 1.0;
  detail::ExpFit best;
  for (double beta = 1.0; beta <= 10.0 + 1e-9; beta += 0.05) {
    const auto fit = detail::fit_exp_at_beta(samples, beta, kappa);
    if (fit.sse < best.sse) {
      best = fit;
      best_beta = beta;
    }
  }
  {
    double lo = std::max(1.0, best_beta - 0.05), hi = std::min(10.0, best_beta + 0.05);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = detail::fit_exp_at_beta(samples, x1, kappa).sse;
    double f2 = detail::fit_exp_at_beta(samples, x2, kappa).sse;
    for (int it = 0; it < 80; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = detail::fit_exp_at_beta(samples, x1, kappa).sse;
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = detail::fit_exp_at_beta(samples, x2, kappa).sse;
      }
    }
    const double beta = 0.5 * (lo + hi);
    const auto fit = detail::fit_exp_at_beta(samples, beta, kappa);
    if (fit.sse < best.sse) {
      best = fit;
      best_beta = beta;
    }
  }

  if (!(best.sse < 0.1 * const_sse)) {
    out.degenerate = true;
    out.limit = vlast;
    out.error = std::max(last_increment, std::sqrt(const_sse));
    out.beta = best_beta;
    return out;
  }
  out.limit = best.L;
  out.beta = best_beta;
  out.error = std::max(std::sqrt(best.sse / static_cast<double>(samples.size())),
                       last_increment);
  return out;
}

// ---------------------------------------------------------------------------
// Full charge computation
// ---------------------------------------------------------------------------

struct RadiusSchedule {
  std::vector<double> radii;
  SphereQuadrature quad;
  double tolerance = 1e-6;
};

/// kappa r in {6..10}, 48 x 96 nodes: the theta variation is controlled by
/// B^{-5/2} with kappa^2 a^2 < 1, far inside Gauss-Legendre convergence, and
/// e^{-2 kappa 6} ~ 6e-6 bounds what extrapolation has to remove.
inline RadiusSchedule default_radius_schedule(double kappa) {
  RadiusSchedule s;
  for (int kr = 6; kr <= 10; ++kr) s.radii.push_back(kr / kappa);
  s.quad = sphere_quadrature(48, 96);
  return s;
}

struct ChargeReport {
  ChargeSet values;
  ChargeSet errors;
  std::array<Extrapolation, 15> extrapolations;
  std::array<double, 15> condition{};  // worst node-cancellation per charge
  std::vector<double> radii;
  int n_theta = 0, n_psi = 0;
  bool any_degenerate = false;
};

inline ChargeReport compute_charges(const InitialDataProvider& provider,
                                    const RadiusSchedule& schedule) {
  if (schedule.radii.size() < 3)
    throw std::invalid_argument("compute_charges: schedule needs >= 3 radii");
  ChargeReport report;
  report.radii = schedule.radii;
  report.n_theta = schedule.quad.n_theta;
  report.n_psi = schedule.quad.n_psi;
  const double kappa = provider.kappa();

  for (std::size_t ci = 0; ci < kAllCharges.size(); ++ci) {
    const ChargeId id = kAllCharges[ci];
    std::vector<std::pair<double, double>> samples;
    double worst_cond = 1.0;
    for (double r : schedule.radii) {
      const ChargeIntegral integral = charge_integral_diag(provider, id, r, schedule.quad);
      samples.emplace_back(r, integral.value);
      worst_cond = std::max(worst_cond, integral.condition);
    }
    const Extrapolation ex = extrapolate(samples, kappa);
    charge_ref(report.values, id) = ex.limit;
    charge_ref(report.errors, id) = ex.error;
    report.extrapolations[ci] = ex;
    report.condition[ci] = worst_cond;
    if (ex.degenerate) report.any_degenerate = true;
  }
  return report;
}

inline ChargeReport compute_charges(const InitialDataProvider& provider) {
  return compute_charges(provider, default_radius_schedule(provider.kappa()));
}

}  // namespace adsem
