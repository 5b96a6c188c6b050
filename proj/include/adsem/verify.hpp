#pragma once

#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "adsem/bounds.hpp"
#include "adsem/charges.hpp"
#include "adsem/clifford.hpp"
#include "adsem/hyperbolic.hpp"
#include "adsem/initial_data.hpp"
#include "adsem/killing_spinor.hpp"

namespace adsem::verify {

struct SuiteResult {
  std::string name;
  bool pass = true;
  double max_residual = 0.0;
  double seconds = 0.0;
  std::string detail;  // names the first failed relation, if any
};

using GammaFn = std::function<CliffordElement(int)>;

namespace detail {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

inline void record(SuiteResult& s, double residual, double tol, const std::string& what) {
  s.max_residual = std::max(s.max_residual, residual);
  if (residual > tol && s.pass) {
    s.pass = false;
    s.detail = what;
  }
}

}  // namespace detail

/// Generator relations, (skew-)Hermiticity, volume element algebra, and the
/// epsilon contraction identity, all to 1e-14. The gamma table is injectable
/// so a corrupted representation is detected and named.
inline SuiteResult clifford_suite(const GammaFn& g = [](int a) { return gamma(a); }) {
  detail::Timer timer;
  SuiteResult s;
  s.name = "clifford";
  const double eta[4] = {1.0, -1.0, -1.0, -1.0};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const CliffordElement anti = g(a) * g(b) + g(b) * g(a);
      const CliffordElement want =
          (a == b) ? CliffordElement(2.0 * eta[a] * CliffordElement::Identity())
                   : CliffordElement(CliffordElement::Zero());
      detail::record(s, (anti - want).cwiseAbs().maxCoeff(), 1e-14,
                     "anticommutator e_" + std::to_string(a) + " e_" + std::to_string(b));
    }
  detail::record(s, (g(0).adjoint() - g(0)).cwiseAbs().maxCoeff(), 1e-14,
                 "e_0 Hermiticity");
  for (int k = 1; k <= 3; ++k)
    detail::record(s, (g(k).adjoint() + g(k)).cwiseAbs().maxCoeff(), 1e-14,
                   "e_" + std::to_string(k) + " skew-Hermiticity");

  const CliffordElement w = g(1) * g(2) * g(3);
  detail::record(s, (w * w - CliffordElement::Identity()).cwiseAbs().maxCoeff(), 1e-14,
                 "volume element square");
  detail::record(s, (w.adjoint() - w).cwiseAbs().maxCoeff(), 1e-14,
                 "volume element Hermiticity");
  for (int k = 1; k <= 3; ++k)
    detail::record(s, (w * g(k) - g(k) * w).cwiseAbs().maxCoeff(), 1e-14,
                   "volume element commutator e_" + std::to_string(k));

  // eps_jkl D_ij (e_k e_l e_i + e_i e_k e_l) = 4 tr(D) e_1 e_2 e_3
  std::mt19937_64 rng(20240817);
  std::normal_distribution<double> normal;
  const int eps[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                            {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                            {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Matrix3d D;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) D(i, j) = normal(rng);
    CliffordElement lhs = CliffordElement::Zero();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l)
            if (eps[j][k][l] != 0)
              lhs += D(i, j) * eps[j][k][l] *
                     (g(k + 1) * g(l + 1) * g(i + 1) + g(i + 1) * g(k + 1) * g(l + 1));
    const CliffordElement rhs = 4.0 * D.trace() * w;
    detail::record(s, (lhs - rhs).cwiseAbs().maxCoeff(), 1e-13 * (1.0 + D.cwiseAbs().maxCoeff()),
                   "epsilon contraction identity");
  }
  s.seconds = timer.seconds();
  return s;
}

inline SuiteResult quadrature_suite() {
  detail::Timer timer;
  SuiteResult s;
  s.name = "quadrature";
  const SphereQuadrature q = sphere_quadrature(24, 48);
  detail::record(s, std::abs(q.total_weight() - 4.0 * M_PI), 1e-12, "weight sum 4 pi");
  detail::record(
      s,
      std::abs(q.integrate([](double th, double) { return std::cos(th) * std::cos(th); }) -
               4.0 * M_PI / 3.0),
      1e-12, "integral of cos^2 theta");
  detail::record(
      s, std::abs(q.integrate([](double th, double ps) { return std::sin(th) * std::cos(ps); })),
      1e-13, "odd psi mode");
  // rotation invariance of the psi node set
  const double shift = 2.0 * M_PI / 7.0;
  const double v0 = q.integrate(
      [](double th, double ps) { return std::exp(std::sin(th) * std::cos(ps)); });
  const double v1 = q.integrate([shift](double th, double ps) {
    return std::exp(std::sin(th) * std::cos(ps + shift));
  });
  detail::record(s, std::abs(v0 - v1), 1e-12 * std::abs(v0), "psi rotation invariance");
  s.seconds = timer.seconds();
  return s;
}

inline SuiteResult killing_vector_suite(int n_points = 50) {
  detail::Timer timer;
  SuiteResult s;
  s.name = "killing-vectors";
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> ur(0.5, 3.0), uth(0.3, M_PI - 0.3),
      ups(0.0, 2.0 * M_PI), uk(0.5, 2.0);
  const KillingIndex spatial[6] = {KillingIndex::U10, KillingIndex::U20,
                                   KillingIndex::U30, KillingIndex::V1,
                                   KillingIndex::V2,  KillingIndex::V3};
  for (int n = 0; n < n_points; ++n) {
    const FramePoint p{ur(rng), uth(rng), ups(rng), uk(rng)};
    for (KillingIndex idx : spatial)
      detail::record(s, killing_residual(idx, p).cwiseAbs().maxCoeff(), 1e-8,
                     std::string("Killing residual ") + killing_name(idx));
  }
  s.seconds = timer.seconds();
  return s;
}

inline SuiteResult killing_spinor_suite(int n_triples = 100) {
  detail::Timer timer;
  SuiteResult s;
  s.name = "killing-spinors";
  std::mt19937_64 rng(1234);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> ur(0.5, 3.0), uth(0.3, M_PI - 0.3),
      ups(0.0, 2.0 * M_PI), uk(0.5, 2.0);
  std::uniform_int_distribution<int> udir(1, 3);
  for (int n = 0; n < n_triples; ++n) {
    LambdaVector lv;
    for (int k = 0; k < 4; ++k) lv(k) = Complex(normal(rng), normal(rng));
    const FramePoint p{ur(rng), uth(rng), ups(rng), uk(rng)};
    const int dir = udir(rng);
    const double rel = killing_residual_spinor(lv, p, dir).norm() /
                       killing_spinor(lv, p).norm();
    detail::record(s, rel, 1e-8, "Killing spinor residual, direction " + std::to_string(dir));
  }
  s.seconds = timer.seconds();
  return s;
}

/// KN-AdS charges against the closed forms E0 = m/Sigma^2, J3 = m kappa a/Sigma^2,
/// q = e/Sigma, b3 = 4 kappa a e/(3 Sigma).
inline SuiteResult kn_charge_suite() {
  detail::Timer timer;
  SuiteResult s;
  s.name = "kn-ads-charges";
  const double m = 1.0, a = 0.3, e = 0.2, kappa = 1.0;
  const double Sigma = 1.0 - kappa * kappa * a * a;
  const KnAdsAsymptoticProvider provider = provider_kn_ads_asymptotic(m, a, e, kappa);
  const ChargeReport report = compute_charges(provider);
  auto rel = [](double got, double want) { return std::abs(got - want) / std::abs(want); };
  detail::record(s, rel(report.values.E0, m / (Sigma * Sigma)), 1e-4, "E0 closed form");
  detail::record(s, rel(report.values.J(2), m * kappa * a / (Sigma * Sigma)), 1e-4,
                 "J3 closed form");
  detail::record(s, rel(report.values.q, e / Sigma), 1e-4, "q closed form");
  detail::record(s, rel(report.values.b(2), 4.0 * kappa * a * e / (3.0 * Sigma)), 1e-4,
                 "b3 closed form");
  s.seconds = timer.seconds();
  return s;
}

/// Boundary form of the integrated Weitzenbock identity against
/// 8 pi lambda^H Q lambda, Q built from computed charges.
inline SuiteResult boundary_identity_suite(int n_lambda = 10) {
  detail::Timer timer;
  SuiteResult s;
  s.name = "boundary-identity";
  const KnAdsAsymptoticProvider provider = provider_kn_ads_asymptotic(1.0, 0.3, 0.2, 1.0);
  const ChargeReport report = compute_charges(provider);
  const QMatrix Q = build_Q(report.values);
  const SphereQuadrature quad = sphere_quadrature(48, 96);
  std::mt19937_64 rng(99);
  std::normal_distribution<double> normal;
  for (int n = 0; n < n_lambda; ++n) {
    LambdaVector lv;
    for (int k = 0; k < 4; ++k) lv(k) = Complex(normal(rng), normal(rng));
    const BoundaryForm bf = boundary_form(lv, provider, 10.0, quad);
    const double qf = q_form(lv, Q);
    detail::record(s, std::abs(bf.value - qf) / (std::abs(qf) + 1e-12), 1e-3,
                   "boundary form vs 8 pi lambda^H Q lambda");
  }
  s.seconds = timer.seconds();
  return s;
}

inline std::vector<SuiteResult> run_verify(bool full,
                                           const GammaFn& g = [](int a) { return gamma(a); }) {
  std::vector<SuiteResult> results;
  results.push_back(clifford_suite(g));
  results.push_back(quadrature_suite());
  results.push_back(killing_vector_suite());
  results.push_back(killing_spinor_suite());
  if (full) {
    results.push_back(boundary_identity_suite());
    results.push_back(kn_charge_suite());
  }
  return results;
}

}  // namespace adsem::verify
