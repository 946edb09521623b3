#pragma once

// Closed forms for two peaks. Pure arithmetic on purpose: these formulas serve
// as a reference that shares no code path with the general transform.

#include <cmath>
#include <optional>
#include <utility>

#include "chpeakon/errors.hpp"
#include "chpeakon/inverse_spectral.hpp"
#include "chpeakon/real.hpp"
#include "chpeakon/types.hpp"

namespace chpeakon {

template <RealScalar Real = real>
struct TwoPeakonData {
  Real lambda1, lambda2;  // lambda1 < lambda2
  Real gamma1, gamma2;    // gamma^2 at t0
  Real t0 = 0;

  /// Opposite-sign eigenvalues: a peakon meets an antipeakon exactly once.
  bool is_antipeakon() const { return lambda1 * lambda2 < 0; }
};

template <RealScalar Real>
TwoPeakonData<Real> make_two_peakon_data(Real lambda1, Real lambda2, Real gamma1, Real gamma2, Real t0 = Real(0)) {
  if (lambda2 < lambda1) {
    std::swap(lambda1, lambda2);
    std::swap(gamma1, gamma2);
  }
  if (lambda1 == lambda2 || lambda1 == 0 || lambda2 == 0 || !(lambda1 * gamma1 > 0) || !(lambda2 * gamma2 > 0))
    throw Error(ErrorCode::InvalidSpectralData, "need distinct nonzero eigenvalues with lambda gamma^2 > 0");
  return {std::move(lambda1), std::move(lambda2), std::move(gamma1), std::move(gamma2), std::move(t0)};
}

/// W(z) = 1 - (omega1 + omega2) z + omega1 omega2 (1 - e^{-(x2 - x1)}) z^2 and
/// gamma^2 = omega1 e^{-x1} (1 - lambda omega2 (1 - e^{x1 - x2}))^2 + omega2 e^{-x2}.
template <RealScalar Real>
TwoPeakonData<Real> two_peakon_spectrum(const Real& omega1, const Real& omega2, const Real& x1, const Real& x2,
                                        const Real& t0 = Real(0)) {
  using std::exp;
  using std::sqrt;
  if (omega1 == 0 || omega2 == 0) throw Error(ErrorCode::NullAtom, "both weights must be nonzero");
  if (!(x1 < x2)) throw Error(ErrorCode::NonIncreasingPositions, "x1 < x2 required");
  const Real shrink = 1 - exp(x1 - x2);
  const Real a = omega1 * omega2 * shrink;
  const Real b = -(omega1 + omega2);
  const Real disc = b * b - 4 * a;
  // Avoid cancellation: q = -(b + sgn(b) sqrt(disc)) / 2, roots q/a and 1/q.
  const Real q = -(b + (b < 0 ? -sqrt(disc) : sqrt(disc))) / 2;
  Real r1 = q / a, r2 = 1 / q;
  if (r2 < r1) std::swap(r1, r2);
  auto gamma2_at = [&](const Real& lambda) {
    const Real f = 1 - lambda * omega2 * shrink;
    return omega1 * exp(-x1) * f * f + omega2 * exp(-x2);
  };
  return make_two_peakon_data(r1, r2, gamma2_at(r1), gamma2_at(r2), t0);
}

template <RealScalar Real>
std::optional<Real> two_peakon_collision_time(const TwoPeakonData<Real>& d) {
  using std::log;
  if (!d.is_antipeakon()) return std::nullopt;
  return d.t0 + 2 * d.lambda1 * d.lambda2 / (d.lambda2 - d.lambda1) * log(-d.gamma1 / d.gamma2);
}

/// Snapshot at time t: two atoms while s_1(t) != 0, one atom with a dipole when s_1 vanishes.
template <RealScalar Real>
MeasureSnapshot<Real> two_peakon_state(const TwoPeakonData<Real>& d, const Real& t) {
  using std::abs;
  using std::exp;
  using std::log;
  const Real& l1 = d.lambda1;
  const Real& l2 = d.lambda2;
  const Real g1 = exp(-(t - d.t0) / (2 * l1)) * d.gamma1;
  const Real g2 = exp(-(t - d.t0) / (2 * l2)) * d.gamma2;
  const Real s0m1 = 1 / (l1 * g1) + 1 / (l2 * g2);  // s_0 - 1
  const Real s1 = 1 / g1 + 1 / g2;
  const Real s2 = l1 / g1 + l2 / g2;
  const Real s3 = l1 * l1 / g1 + l2 * l2 / g2;

  DiscreteMeasurePair<Real> m;
  if (abs(s1) <= zero_threshold(s1) * (1 / abs(g1) + 1 / abs(g2))) {
    m.positions = {log(s0m1)};
    m.omega = {1 / l1 + 1 / l2};
    m.upsilon = {-1 / (l1 * l2)};
  } else {
    const Real gap = l2 - l1;
    m.positions = {log(gap * gap / (l1 * l2 * (l2 * g1 + l1 * g2))), log(s0m1)};
    m.omega = {s2 * (s0m1 * s2 - s1 * s1) / (s1 * (s1 * s3 - s2 * s2)), s0m1 / s1};
    m.upsilon = {s1 * 0, s1 * 0};
  }
  return make_snapshot(std::move(m), t);
}

}  // namespace chpeakon
