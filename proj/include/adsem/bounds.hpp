#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "adsem/charges.hpp"
#include "adsem/killing_spinor.hpp"

namespace adsem {

//! \brief Hermitian charge matrix Q = [[E, L], [L^H, E-hat]].
//!
//! NOTE the b2 sign in the E-hat off-diagonal: E-hat_12 = -c1 + i c2 + b1 - i b2.
//! Both the boundary-form limit and the principal-minor identities behind the
//! energy bounds single out this sign; the variant with +i b2 satisfies
//! neither. E0 enters as E0 * I, so shifting E0 shifts every eigenvalue.
inline QMatrix build_Q(const ChargeSet& cs) {
  const Complex i{0.0, 1.0};
  const double c1 = cs.c(0), c2 = cs.c(1), c3 = cs.c(2);
  const double cp1 = cs.c_prime(0), cp2 = cs.c_prime(1), cp3 = cs.c_prime(2);
  const double J1 = cs.J(0), J2 = cs.J(1), J3 = cs.J(2);
  const double b1 = cs.b(0), b2 = cs.b(1), b3 = cs.b(2);

  QMatrix Q = QMatrix::Zero();
  // block E
  Q(0, 0) = cs.E0 - c3 + cs.b0 - b3;
  Q(0, 1) = c1 - i * c2 + b1 - i * b2;
  Q(1, 0) = std::conj(Q(0, 1));
  Q(1, 1) = cs.E0 + c3 + cs.b0 + b3;
  // block E-hat
  Q(2, 2) = cs.E0 + c3 - cs.b0 - b3;
  Q(2, 3) = -c1 + i * c2 + b1 - i * b2;
  Q(3, 2) = std::conj(Q(2, 3));
  Q(3, 3) = cs.E0 - c3 - cs.b0 + b3;
  // block L
  Q(0, 2) = cp3 + i * (cs.q - J3);
  Q(0, 3) = -cp1 + J2 + i * (cp2 + J1);
  Q(1, 2) = -cp1 - J2 + i * (J1 - cp2);
  Q(1, 3) = -cp3 + i * (J3 + cs.q);
  Q(2, 0) = std::conj(Q(0, 2));
  Q(3, 0) = std::conj(Q(0, 3));
  Q(2, 1) = std::conj(Q(1, 2));
  Q(3, 1) = std::conj(Q(1, 3));
  return Q;
}

/// |L|^2 = 2(|c'|^2 + |J|^2 + q^2).
inline double L_squared(const ChargeSet& cs) {
  return 2.0 * (cs.c_prime.squaredNorm() + cs.J.squaredNorm() + cs.q * cs.q);
}

/// A = b0^2 + |c|^2 + |b|^2 + |c'|^2 + |J|^2 + q^2.
inline double A_invariant(const ChargeSet& cs) {
  return cs.b0 * cs.b0 + cs.c.squaredNorm() + cs.b.squaredNorm() +
         cs.c_prime.squaredNorm() + cs.J.squaredNorm() + cs.q * cs.q;
}

// ---------------------------------------------------------------------------
// PSD analysis
// ---------------------------------------------------------------------------

//! \brief All 15 principal minors (traceability to the proofs), the four
//! eigenvalues, and the PSD verdict (min eigenvalue >= -tol).
struct PsdReport {
  struct Minor {
    std::vector<int> indices;  // 1-based rows/columns kept
    double value = 0.0;
  };
  std::vector<Minor> minors;
  std::array<double, 4> eigenvalues{};
  double min_eigenvalue = 0.0;
  bool psd = false;
};

inline PsdReport psd_report(const QMatrix& Q, double tol = 1e-12) {
  if ((Q - Q.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("psd_report: Q is not Hermitian");
  PsdReport report;
  for (int mask = 1; mask < 16; ++mask) {
    std::vector<int> idx;
    for (int k = 0; k < 4; ++k)
      if (mask & (1 << k)) idx.push_back(k);
    Eigen::MatrixXcd block(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) block(a, b) = Q(idx[a], idx[b]);
    PsdReport::Minor minor;
    for (int k : idx) minor.indices.push_back(k + 1);
    minor.value = block.determinant().real();
    report.minors.push_back(minor);
  }
  Eigen::SelfAdjointEigenSolver<QMatrix> es(Q);
  for (int k = 0; k < 4; ++k) report.eigenvalues[k] = es.eigenvalues()(k);
  report.min_eigenvalue = es.eigenvalues().minCoeff();
  report.psd = report.min_eigenvalue >= -tol;
  return report;
}

// ---------------------------------------------------------------------------
// Energy lower bounds
// ---------------------------------------------------------------------------

inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

//! \brief Lower bound for the purely gravitational class (q = b0 = b = 0):
//! max{ (|L|^2/2 + 2|c|^2)^{1/2} - |c|,
//!      ((|L|^2/2 + 2|c' x J| - F^2)_+)^{1/2} - |c| }
//! with F^2 = sqrt(2)|c||L| + 2^{1/4}|c|^{1/2}|L|^{3/2}.
inline double bound_thm51(const ChargeSet& cs) {
  const double em = std::max({std::abs(cs.q), std::abs(cs.b0), cs.b.cwiseAbs().maxCoeff()});
  if (em > 1e-10)
    throw std::invalid_argument(
        "bound_thm51: requires q = b0 = b = 0 (use bound_thm52 for charged data)");
  const double L2 = L_squared(cs);
  const double L = std::sqrt(L2);
  const double nc = cs.c.norm();
  const double cross = cs.c_prime.cross(cs.J).norm();
  const double F2 = std::sqrt(2.0) * nc * L + std::pow(2.0, 0.25) * std::sqrt(nc) * std::pow(L, 1.5);
  const double branch1 = std::sqrt(0.5 * L2 + 2.0 * nc * nc) - nc;
  const double branch2 = std::sqrt(positive_part(0.5 * L2 + 2.0 * cross - F2)) - nc;
  return std::max(branch1, branch2);
}

struct BoundReport {
  std::array<double, 4> branches{};
  double bound = 0.0;
  int active_branch = 0;  // 1-based, matching printed order
};

//! \brief The four-branch lower bound for charged data. Branch 4 uses
//! s = (sum_i (b0 c_i + q J_i)^2 + |c' x J|^2)^{1/2} and
//! F = 32|c' x J|^2 + 4|c x J|^2 + 36 sum_i(b0 c_i + q J_i)^2
//!     + 4(b.c)^2 + 4(b.J)^2 + 4(b.c')^2 - 8 sqrt(2) s A.
inline BoundReport bound_thm52_report(const ChargeSet& cs) {
  const double L2 = L_squared(cs);
  const double A = A_invariant(cs);
  const double nb = cs.b.norm(), nc = cs.c.norm();
  const Eigen::Vector3d bc_qJ = cs.b0 * cs.c + cs.q * cs.J;
  const double cross_cpJ2 = cs.c_prime.cross(cs.J).squaredNorm();
  const double s = std::sqrt(bc_qJ.squaredNorm() + cross_cpJ2);
  const double F = 32.0 * cross_cpJ2 + 4.0 * cs.c.cross(cs.J).squaredNorm() +
                   36.0 * bc_qJ.squaredNorm() + 4.0 * std::pow(cs.b.dot(cs.c), 2) +
                   4.0 * std::pow(cs.b.dot(cs.J), 2) +
                   4.0 * std::pow(cs.b.dot(cs.c_prime), 2) -
                   8.0 * std::sqrt(2.0) * s * A;

  BoundReport report;
  report.branches[0] = std::sqrt(cs.b0 * cs.b0 + 0.25 * L2);
  report.branches[1] = std::sqrt(0.5 * (nc * nc + nb * nb) + 0.125 * L2);
  report.branches[2] = std::sqrt(A + nb * nb + nc * nc) - nb - nc;
  report.branches[3] = std::sqrt(positive_part(
      A - 4.0 * std::sqrt(2.0) * s + std::sqrt(positive_part(F))));
  report.bound = report.branches[0];
  report.active_branch = 1;
  for (int k = 1; k < 4; ++k)
    if (report.branches[k] > report.bound) {
      report.bound = report.branches[k];
      report.active_branch = k + 1;
    }
  return report;
}

inline double bound_thm52(const ChargeSet& cs) { return bound_thm52_report(cs).bound; }

// ---------------------------------------------------------------------------
// Pointwise modified dominant energy condition
// ---------------------------------------------------------------------------

//! \brief Endomorphism data of the Weitzenbock curvature term:
//! mu = (R + (tr p)^2 - |p|^2)/2 + 3 kappa^2 - |E|^2 - |B|^2 and
//! nu_i / nu'_i = div(p)_i - grad(tr p)_i -/+ 2 eps_ijk B_j E_k.
struct EnergyConditionSample {
  double mu = 0.0;
  Eigen::Vector3d nu = Eigen::Vector3d::Zero();
  Eigen::Vector3d nu_prime = Eigen::Vector3d::Zero();
  double divE = 0.0;
  double divB = 0.0;
  double absB = 0.0;
  double kappa = 1.0;
};

inline EnergyConditionSample mu_nu(double R, const Eigen::Matrix3d& p,
                                   const Eigen::Vector3d& div_p,
                                   const Eigen::Vector3d& grad_trp,
                                   const Eigen::Vector3d& E, const Eigen::Vector3d& B,
                                   double divE, double divB, double kappa) {
  EnergyConditionSample s;
  const double trp = p.trace();
  s.mu = 0.5 * (R + trp * trp - p.squaredNorm()) + 3.0 * kappa * kappa -
         E.squaredNorm() - B.squaredNorm();
  const Eigen::Vector3d BxE = B.cross(E);  // (eps_ijk B_j E_k)_i
  s.nu = div_p - grad_trp - 2.0 * BxE;
  s.nu_prime = div_p - grad_trp + 2.0 * BxE;
  s.divE = divE;
  s.divB = divB;
  s.absB = B.norm();
  s.kappa = kappa;
  return s;
}

struct DecResult {
  bool pass = false;
  double margin = 0.0;
};

/// margin = mu/2 - max{ sqrt(|nu|^2/4 + divE^2 + divB^2) + kappa |B|,
///                      sqrt(|nu'|^2/4 + divE^2 + divB^2) + 4 kappa |B| }.
inline DecResult dec_check(const EnergyConditionSample& s) {
  const double d2 = s.divE * s.divE + s.divB * s.divB;
  const double lhs1 = std::sqrt(0.25 * s.nu.squaredNorm() + d2) + s.kappa * s.absB;
  const double lhs2 =
      std::sqrt(0.25 * s.nu_prime.squaredNorm() + d2) + 4.0 * s.kappa * s.absB;
  DecResult out;
  out.margin = 0.5 * s.mu - std::max(lhs1, lhs2);
  out.pass = out.margin >= 0.0;
  return out;
}

/// Assembles the DEC inputs from a provider: div(p) and grad(tr p) from the
/// sample derivatives (finite differences when the provider supplies none),
/// div E / div B by finite differences plus the frame divergence terms.
/// R defaults to the background value -6 kappa^2; providers built from
/// leading-order expansions carry curvature corrections of the same order
/// as their truncation, so the margin inherits that accuracy.
inline EnergyConditionSample energy_condition_sample(
    const InitialDataProvider& provider, const FramePoint& pt,
    double R = std::numeric_limits<double>::quiet_NaN()) {
  require_valid(pt);
  const FieldSample s = provider.sample(pt);
  const FrameConnection conn = frame_connection(pt);
  const double kappa = provider.kappa();
  if (std::isnan(R)) R = -6.0 * kappa * kappa;

  std::array<Eigen::Matrix3d, 3> dp = s.dp;
  if (!s.has_dp) {
    for (int k = 1; k <= 3; ++k)
      dp[k - 1] = frame_derivative(
          [&](const FramePoint& q) -> Eigen::Matrix3d { return provider.sample(q).p; },
          k, pt);
  }

  // nabla_k p_ij, then contractions
  Eigen::Vector3d div_p = Eigen::Vector3d::Zero();
  Eigen::Vector3d grad_trp = Eigen::Vector3d::Zero();
  for (int k = 0; k < 3; ++k) {
    Eigen::Matrix3d nabla;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double v = dp[k](i, j);
        for (int l = 0; l < 3; ++l)
          v -= conn.coeff(k, i, l) * s.p(l, j) + conn.coeff(k, j, l) * s.p(i, l);
        nabla(i, j) = v;
      }
    for (int i = 0; i < 3; ++i) div_p(i) += nabla(i, k);
    grad_trp(k) = nabla.trace();
  }

  // div X = sum_i e_i(X^i) + 2C X^1 + T X^2 for a frame vector field X
  auto divergence = [&](auto field) {
    double d = 0.0;
    for (int k = 1; k <= 3; ++k)
      d += frame_derivative(
          [&](const FramePoint& q) { return field(q)(k - 1); }, k, pt);
    const Eigen::Vector3d X = field(pt);
    return d + 2.0 * conn.C * X(0) + conn.T * X(1);
  };
  const double divE =
      divergence([&](const FramePoint& q) { return provider.sample(q).E; });
  const double divB =
      divergence([&](const FramePoint& q) { return provider.sample(q).B; });

  return mu_nu(R, s.p, div_p, grad_trp, s.E, s.B, divE, divB, kappa);
}

}  // namespace adsem
