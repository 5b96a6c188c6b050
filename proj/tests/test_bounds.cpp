#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "adsem/bounds.hpp"
#include "adsem/charges.hpp"
#include "adsem/initial_data.hpp"
#include "adsem/killing_spinor.hpp"

using namespace adsem;
using Catch::Approx;

namespace {

ChargeSet random_charges(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ChargeSet cs;
  cs.E0 = normal(rng);
  for (int k = 0; k < 3; ++k) {
    cs.c(k) = normal(rng);
    cs.c_prime(k) = normal(rng);
    cs.J(k) = normal(rng);
    cs.b(k) = normal(rng);
  }
  cs.q = normal(rng);
  cs.b0 = normal(rng);
  return cs;
}

/// E0 enters Q as E0 * I; shifting it to -lambda_min + delta puts Q exactly
/// delta above the PSD boundary, the hardest regime for the bounds.
ChargeSet shift_to_psd(ChargeSet cs, double delta) {
  cs.E0 = 0.0;
  const Eigen::SelfAdjointEigenSolver<QMatrix> es(build_Q(cs));
  cs.E0 = -es.eigenvalues().minCoeff() + delta;
  return cs;
}

Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = normal(rng);
  const Eigen::HouseholderQR<Eigen::Matrix3d> qr(m);
  Eigen::Matrix3d rot = qr.householderQ();
  if (rot.determinant() < 0) rot.col(0) *= -1.0;
  return rot;
}

}  // namespace

TEST_CASE("build_Q structure") {
  SECTION("zero charges give the zero matrix") {
    CHECK(build_Q(ChargeSet{}).cwiseAbs().maxCoeff() == 0.0);
  }

  SECTION("KN-AdS entries") {
    ChargeSet cs;
    cs.E0 = 1.207583;
    cs.J(2) = 0.362275;
    cs.q = 0.219780;
    cs.b(2) = 0.087912;
    const QMatrix Q = build_Q(cs);
    CHECK(Q(0, 0).real() == Approx(1.119671));
    CHECK(Q(0, 2) == Complex(0.0, 0.219780 - 0.362275));
    CHECK(std::abs(Q(0, 2).imag() - (-0.142495)) < 1e-6);
  }

  SECTION("Hermitian for random charges") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 50; ++trial) {
      const QMatrix Q = build_Q(random_charges(rng));
      CHECK((Q - Q.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    }
  }

  SECTION("|L|^2 identity") {
    std::mt19937_64 rng(103);
    const ChargeSet cs = random_charges(rng);
    const QMatrix Q = build_Q(cs);
    const double L2 = Q.block<2, 2>(0, 2).cwiseAbs2().sum();
    CHECK(L2 == Approx(L_squared(cs)));
  }
}

TEST_CASE("psd_report") {
  SECTION("scaled identity is PSD with positive minors") {
    ChargeSet cs;
    cs.E0 = 1.0;
    const PsdReport report = psd_report(build_Q(cs));
    CHECK(report.psd);
    CHECK(report.minors.size() == 15);
    for (const auto& minor : report.minors) CHECK(minor.value > 0.0);
    for (double ev : report.eigenvalues) CHECK(ev == Approx(1.0));
  }

  SECTION("KN-AdS charges give a PSD Q") {
    ChargeSet cs;
    cs.E0 = 1.207583;
    cs.J(2) = 0.362275;
    cs.q = 0.219780;
    cs.b(2) = 0.087912;
    CHECK(psd_report(build_Q(cs)).psd);
  }

  SECTION("E0 = 0 with q = 1 violates a second-order minor") {
    ChargeSet cs;
    cs.q = 1.0;
    const PsdReport report = psd_report(build_Q(cs));
    CHECK_FALSE(report.psd);
    bool found = false;
    for (const auto& minor : report.minors)
      if (minor.indices == std::vector<int>{1, 3}) {
        CHECK(minor.value == Approx(-1.0));
        found = true;
      }
    CHECK(found);
  }
}

TEST_CASE("bound_thm51") {
  CHECK(bound_thm51(ChargeSet{}) == 0.0);

  SECTION("orthogonal c' and J with unit norms") {
    ChargeSet cs;
    cs.c_prime(0) = 1.0;
    cs.J(1) = 1.0;
    CHECK(bound_thm51(cs) == Approx(2.0));
  }

  SECTION("pure c") {
    ChargeSet cs;
    cs.c(0) = 1.0;
    CHECK(bound_thm51(cs) == Approx(std::sqrt(2.0) - 1.0));
  }

  SECTION("electromagnetic charges are rejected") {
    ChargeSet cs;
    cs.q = 0.5;
    CHECK_THROWS_AS(bound_thm51(cs), std::invalid_argument);
    ChargeSet cs2;
    cs2.b(1) = 0.5;
    CHECK_THROWS_AS(bound_thm51(cs2), std::invalid_argument);
  }
}

TEST_CASE("bound_thm52") {
  CHECK(bound_thm52(ChargeSet{}) == 0.0);

  SECTION("KN-AdS branches") {
    ChargeSet cs;
    cs.E0 = 1.207583;
    cs.J(2) = 0.362275;
    cs.q = 0.219780;
    cs.b(2) = 0.087912;
    const BoundReport report = bound_thm52_report(cs);
    // first branch sqrt((J3^2 + q^2)/2)
    CHECK(report.branches[0] == Approx(0.299622).margin(1e-6));
    CHECK(cs.E0 >= report.bound);
  }

  SECTION("pure b0 is the PSD boundary case") {
    ChargeSet cs;
    cs.b0 = 1.0;
    CHECK(bound_thm52(cs) == Approx(1.0));
    cs.E0 = 1.0;
    const PsdReport psd = psd_report(build_Q(cs));
    CHECK(psd.psd);
    CHECK(psd.min_eigenvalue == Approx(0.0).margin(1e-12));
  }

  SECTION("invariant under simultaneous rotations of (c, c', J, b)") {
    std::mt19937_64 rng(107);
    const ChargeSet cs = random_charges(rng);
    const double bound = bound_thm52(cs);
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::Matrix3d rot = random_rotation(rng);
      ChargeSet rotated = cs;
      rotated.c = rot * cs.c;
      rotated.c_prime = rot * cs.c_prime;
      rotated.J = rot * cs.J;
      rotated.b = rot * cs.b;
      CHECK(bound_thm52(rotated) == Approx(bound).epsilon(1e-12));
    }
  }
}

TEST_CASE("PSD of Q implies the energy bounds (property)") {
  std::mt19937_64 rng(109);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> mode(0, 2);
  int checked52 = 0, checked51 = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const double delta =
        std::array<double, 3>{0.0, 0.1, 1.0}[mode(rng)] * std::abs(normal(rng));

    ChargeSet cs = shift_to_psd(random_charges(rng), delta);
    if (psd_report(build_Q(cs)).psd) {
      ++checked52;
      CHECK(cs.E0 >= bound_thm52(cs) - 1e-10);
    }

    ChargeSet grav = cs;
    grav.q = grav.b0 = 0.0;
    grav.b.setZero();
    grav = shift_to_psd(grav, delta);
    if (psd_report(build_Q(grav)).psd) {
      ++checked51;
      CHECK(grav.E0 >= bound_thm51(grav) - 1e-10);
      CHECK(grav.E0 >= bound_thm52(grav) - 1e-10);
    }
  }
  CHECK(checked52 == 10000);
  CHECK(checked51 == 10000);
}

TEST_CASE("q_form is nonnegative when Q is PSD") {
  std::mt19937_64 rng(113);
  std::normal_distribution<double> normal;
  const ChargeSet cs = shift_to_psd(random_charges(rng), 0.05);
  const QMatrix Q = build_Q(cs);
  REQUIRE(psd_report(Q).psd);
  for (int trial = 0; trial < 100; ++trial) {
    LambdaVector lv;
    for (int k = 0; k < 4; ++k) lv(k) = Complex(normal(rng), normal(rng));
    CHECK(q_form(lv, Q) >= -1e-10);
  }
}

TEST_CASE("mu_nu") {
  SECTION("hyperbolic vacuum slice") {
    const double kappa = 1.3;
    const EnergyConditionSample s =
        mu_nu(-6.0 * kappa * kappa, Eigen::Matrix3d::Zero(), Eigen::Vector3d::Zero(),
              Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero(),
              0.0, 0.0, kappa);
    CHECK(s.mu == 0.0);
    CHECK(s.nu.norm() == 0.0);
    CHECK(s.nu_prime.norm() == 0.0);
  }

  SECTION("epsilon term signs") {
    Eigen::Vector3d E = Eigen::Vector3d::Zero(), B = Eigen::Vector3d::Zero();
    E(0) = 0.7;
    B(1) = 0.4;
    const EnergyConditionSample s =
        mu_nu(0.0, Eigen::Matrix3d::Zero(), Eigen::Vector3d::Zero(),
              Eigen::Vector3d::Zero(), E, B, 0.0, 0.0, 1.0);
    CHECK(s.nu(2) == Approx(2.0 * B(1) * E(0)));
    CHECK(s.nu_prime(2) == Approx(-2.0 * B(1) * E(0)));
  }

  SECTION("extrinsic terms scale quadratically") {
    Eigen::Matrix3d p;
    p << 1, 0.2, 0, 0.2, -0.5, 0.1, 0, 0.1, 0.3;
    const double trp = p.trace();
    const double quad1 = trp * trp - p.squaredNorm();
    Eigen::Matrix3d p2 = 2.0 * p;
    const double quad2 = p2.trace() * p2.trace() - p2.squaredNorm();
    CHECK(quad2 == Approx(4.0 * quad1));
  }
}

TEST_CASE("dec_check examples") {
  const double kappa = 1.3, k2 = kappa * kappa;

  EnergyConditionSample zero;
  zero.kappa = kappa;
  const DecResult r0 = dec_check(zero);
  CHECK(r0.pass);
  CHECK(r0.margin == 0.0);

  EnergyConditionSample s1;
  s1.kappa = kappa;
  s1.mu = 10.0 * k2;
  s1.absB = kappa;
  const DecResult r1 = dec_check(s1);
  CHECK(r1.pass);
  CHECK(r1.margin == Approx(k2).epsilon(1e-12));

  EnergyConditionSample s2;
  s2.kappa = kappa;
  s2.divE = k2;
  const DecResult r2 = dec_check(s2);
  CHECK_FALSE(r2.pass);
  CHECK(r2.margin == Approx(-k2).epsilon(1e-12));
}

TEST_CASE("DEC margin decays in the KN-AdS far field") {
  const double kappa = 1.0;
  const KnAdsAsymptoticProvider provider = provider_kn_ads_asymptotic(1.0, 0.3, 0.2, kappa);
  // |margin| <= C e^{-2 kappa r}: the envelope constant from the first
  // radius must cover the later ones
  double C = 0.0;
  bool first = true;
  for (double r : {6.0, 7.0, 8.0, 9.0}) {
    const EnergyConditionSample s =
        energy_condition_sample(provider, {r, 1.1, 0.4, kappa});
    const double margin = dec_check(s).margin;
    const double envelope = std::abs(margin) * std::exp(2.0 * kappa * r);
    if (first) {
      C = envelope;
      first = false;
    } else {
      CHECK(std::abs(margin) <= 2.0 * C * std::exp(-2.0 * kappa * r));
    }
  }
}
