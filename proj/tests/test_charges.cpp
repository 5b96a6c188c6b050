#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "adsem/charges.hpp"
#include "adsem/initial_data.hpp"

using namespace adsem;
using Catch::Approx;

TEST_CASE("charge integrals on pure AdS vanish") {
  const AdsProvider provider = provider_ads(1.0);
  const SphereQuadrature quad = sphere_quadrature(12, 24);
  for (ChargeId id : kAllCharges)
    CHECK(std::abs(charge_integral(provider, id, 6.0, quad)) < 1e-14);
}

TEST_CASE("KN-AdS finite-radius integrals") {
  const double m = 1.0, a = 0.3, e = 0.2, kappa = 1.0;
  const double Sigma = 1.0 - kappa * kappa * a * a;
  const KnAdsAsymptoticProvider provider = provider_kn_ads_asymptotic(m, a, e, kappa);
  const SphereQuadrature quad = sphere_quadrature(32, 64);

  // q = e/Sigma = 0.2/0.91 at r = 8 to 1e-6
  CHECK(charge_integral(provider, ChargeId::Q, 8.0, quad) ==
        Approx(e / Sigma).margin(1e-6));
  // B^1 ~ cos(theta) integrates to zero against n^0 = 1
  CHECK(std::abs(charge_integral(provider, ChargeId::B0, 8.0, quad)) < 1e-12);
}

TEST_CASE("quadrature refinement changes integrals below 1e-10") {
  const KnAdsAsymptoticProvider provider = provider_kn_ads_asymptotic(1.0, 0.3, 0.2, 1.0);
  const SphereQuadrature coarse = sphere_quadrature(48, 96);
  const SphereQuadrature fine = sphere_quadrature(96, 192);
  for (ChargeId id : {ChargeId::E0, ChargeId::J3, ChargeId::Q, ChargeId::B3}) {
    const double v1 = charge_integral(provider, id, 7.0, coarse);
    const double v2 = charge_integral(provider, id, 7.0, fine);
    CHECK(std::abs(v1 - v2) < 1e-10);
  }
}

TEST_CASE("extrapolation") {
  SECTION("constant sequence") {
    const Extrapolation ex = extrapolate({{4.0, 2.5}, {5.0, 2.5}, {6.0, 2.5}});
    CHECK(ex.limit == 2.5);
    CHECK(ex.error == 0.0);
    CHECK_FALSE(ex.degenerate);
  }

  SECTION("synthetic exponential approach") {
    std::vector<std::pair<double, double>> samples;
    for (double r : {4.0, 5.0, 6.0, 7.0})
      samples.emplace_back(r, 1.0 + 0.5 * std::exp(-2.0 * r));
    const Extrapolation ex = extrapolate(samples);
    CHECK(ex.limit == Approx(1.0).margin(1e-8));
    CHECK(ex.beta == Approx(2.0).margin(1e-3));
    CHECK_FALSE(ex.degenerate);
  }

  SECTION("oscillating samples fall back and flag") {
    const Extrapolation ex =
        extrapolate({{4.0, 1.0}, {5.0, -1.0}, {6.0, 1.0}, {7.0, -1.0}});
    CHECK(ex.degenerate);
    CHECK(ex.error >= 2.0);
  }

  CHECK_THROWS_AS(extrapolate({{4.0, 1.0}, {5.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(extrapolate({{4.0, 1.0}, {4.0, 1.0}, {5.0, 1.0}}),
                  std::invalid_argument);
}

TEST_CASE("compute_charges reproduces the KN-AdS closed forms") {
  const double m = 1.0, a = 0.3, e = 0.2, kappa = 1.0;
  const double Sigma = 1.0 - kappa * kappa * a * a;
  const KnAdsAsymptoticProvider provider = provider_kn_ads_asymptotic(m, a, e, kappa);
  const ChargeReport report = compute_charges(provider);

  CHECK(report.values.E0 == Approx(m / (Sigma * Sigma)).epsilon(1e-4));
  CHECK(report.values.J(2) == Approx(m * kappa * a / (Sigma * Sigma)).epsilon(1e-4));
  CHECK(report.values.q == Approx(e / Sigma).epsilon(1e-4));
  CHECK(report.values.b(2) == Approx(4.0 * kappa * a * e / (3.0 * Sigma)).epsilon(1e-4));
  CHECK(report.values.c.norm() < 1e-8);
  CHECK(report.values.c_prime.norm() < 1e-8);
  CHECK(std::abs(report.values.J(0)) < 1e-8);
  CHECK(std::abs(report.values.J(1)) < 1e-8);
  CHECK(std::abs(report.values.b0) < 1e-8);
  CHECK(std::abs(report.values.b(0)) < 1e-8);
  CHECK(std::abs(report.values.b(1)) < 1e-8);
  CHECK_FALSE(report.any_degenerate);
}

TEST_CASE("radius convergence rate of the KN integrals is e^{-2 kappa r}") {
  const KnAdsAsymptoticProvider provider = provider_kn_ads_asymptotic(1.0, 0.3, 0.2, 1.0);
  const ChargeReport report = compute_charges(provider);
  // fitted beta for the nonzero charges should be 2 within 10%
  for (std::size_t ci = 0; ci < kAllCharges.size(); ++ci) {
    const ChargeId id = kAllCharges[ci];
    if (id == ChargeId::E0 || id == ChargeId::J3 || id == ChargeId::Q ||
        id == ChargeId::B3)
      CHECK(report.extrapolations[ci].beta == Approx(2.0).epsilon(0.1));
  }
}

TEST_CASE("energy is linear in the mass parameter") {
  const KnAdsAsymptoticProvider p1 = provider_kn_ads_asymptotic(1.0, 0.3, 0.0, 1.0);
  const KnAdsAsymptoticProvider p2 = provider_kn_ads_asymptotic(2.0, 0.3, 0.0, 1.0);
  const SphereQuadrature quad = sphere_quadrature(24, 48);
  const double e1 = charge_integral(p1, ChargeId::E0, 7.0, quad);
  const double e2 = charge_integral(p2, ChargeId::E0, 7.0, quad);
  CHECK(e2 / e1 == Approx(2.0).epsilon(1e-8));
}

TEST_CASE("compute_charges on RN-AdS") {
  const RnAdsProvider provider = provider_rn_ads(1.0, 0.5, 1.0);
  const ChargeReport report = compute_charges(provider);
  CHECK(report.values.q == Approx(0.5).margin(1e-6));
  CHECK(report.values.E0 == Approx(1.0).margin(1e-4));
  CHECK(report.values.J.norm() < 1e-8);
  CHECK(report.values.c.norm() < 1e-8);
  CHECK(report.values.c_prime.norm() < 1e-8);
  CHECK(report.values.b.norm() + std::abs(report.values.b0) < 1e-8);
}

TEST_CASE("compute_charges on pure AdS gives identical zeros") {
  const AdsProvider provider = provider_ads(1.0);
  const ChargeReport report = compute_charges(
      provider, {{6.0, 7.0, 8.0}, sphere_quadrature(12, 24), 1e-6});
  for (ChargeId id : kAllCharges)
    CHECK(std::abs(charge_value(report.values, id)) < 1e-12);
}
