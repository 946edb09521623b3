#pragma once

// The classical multi-peakon system
//   q_n' = sum_k p_k e^{-|q_n - q_k|},  p_n' = sum_k p_n p_k sgn(q_n - q_k) e^{-|q_n - q_k|},
// integrated with an adaptive Dormand-Prince 5(4) pair. Independent of the
// spectral machinery; it only ever runs between collisions.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "chpeakon/errors.hpp"
#include "chpeakon/real.hpp"
#include "chpeakon/types.hpp"

namespace chpeakon {

template <RealScalar Real = double>
struct PeakonVelocity {
  std::vector<Real> dq;
  std::vector<Real> dp;
};

template <RealScalar Real>
PeakonVelocity<Real> ode_rhs(const PeakonState<Real>& s) {
  using std::abs;
  using std::exp;
  const std::size_t n = s.size();
  if (s.heights.size() != n) throw Error(ErrorCode::LengthMismatch, "heights and positions differ in length");
  PeakonVelocity<Real> v{std::vector<Real>(n, Real(0)), std::vector<Real>(n, Real(0))};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k != i && s.positions[i] == s.positions[k])
        throw Error(ErrorCode::CoincidentPositions, "two peaks share a position");
      const Real e = exp(-abs(s.positions[i] - s.positions[k]));
      v.dq[i] += s.heights[k] * e;
      if (k == i) continue;  // sgn(0) = 0
      const Real sign = s.positions[i] > s.positions[k] ? Real(1) : Real(-1);
      v.dp[i] += sign * s.heights[i] * s.heights[k] * e;
    }
  }
  return v;
}

/// H = 1/2 sum_{n,k} p_n p_k e^{-|q_n - q_k|}.
template <RealScalar Real>
Real hamiltonian(const PeakonState<Real>& s) {
  using std::abs;
  using std::exp;
  Real h = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t k = 0; k < s.size(); ++k)
      h += s.heights[i] * s.heights[k] * exp(-abs(s.positions[i] - s.positions[k]));
  return h / 2;
}

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double min_gap = 1e-6;       // stop once two neighbours are closer than this
  double initial_step = 1e-3;
  double min_step = 1e-14;     // relative to max(1, |t|)
  std::size_t max_steps = 2'000'000;
};

enum class OdeTermination { Completed, CollisionImminent };

template <RealScalar Real = double>
struct OdeTrajectory {
  std::vector<PeakonState<Real>> states;  // first entry is the initial state
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  OdeTermination termination = OdeTermination::Completed;

  const PeakonState<Real>& back() const { return states.back(); }
};

namespace detail {

template <RealScalar Real>
Real min_gap(const std::vector<Real>& q) {
  Real g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < q.size(); ++i) g = std::min<Real>(g, q[i] - q[i - 1]);
  return g;
}

template <RealScalar Real>
PeakonState<Real> axpy_state(const PeakonState<Real>& s, const Real& h,
                             const std::vector<std::pair<Real, const PeakonVelocity<Real>*>>& parts) {
  PeakonState<Real> out = s;
  for (const auto& [w, v] : parts) {
    if (w == 0) continue;
    for (std::size_t i = 0; i < s.size(); ++i) {
      out.positions[i] += h * w * v->dq[i];
      out.heights[i] += h * w * v->dp[i];
    }
  }
  return out;
}

}  // namespace detail

/// Integrates from s.time to t_end. When `checkpoints` is non-empty the steps
/// land exactly on each checkpoint (which must lie in (s.time, t_end]) and only
/// those states are recorded; otherwise every accepted step is recorded.
template <RealScalar Real>
OdeTrajectory<Real> integrate(const PeakonState<Real>& initial, const Real& t_end, const OdeOptions& opt = {},
                              std::vector<Real> checkpoints = {}) {
  using std::abs;
  using std::max;
  using std::min;
  using std::pow;
  // Dormand-Prince tableau
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                          b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
  (void)c2, (void)c3, (void)c4, (void)c5;  // autonomous system

  for (std::size_t i = 1; i < initial.size(); ++i)
    if (!(initial.positions[i - 1] < initial.positions[i]))
      throw Error(ErrorCode::NonIncreasingPositions, "positions must be strictly increasing");
  std::sort(checkpoints.begin(), checkpoints.end());
  for (const Real& c : checkpoints)
    if (!(c > initial.time) || c > t_end) throw Error(ErrorCode::InvalidArgument, "checkpoint outside (t0, t_end]");
  const bool record_all = checkpoints.empty();
  if (record_all) checkpoints.push_back(t_end);

  OdeTrajectory<Real> traj;
  traj.states.push_back(initial);
  PeakonState<Real> y = initial;
  PeakonVelocity<Real> k1 = ode_rhs(y);
  Real h = opt.initial_step;
  std::size_t next_cp = 0;

  while (next_cp < checkpoints.size()) {
    if (detail::min_gap(y.positions) < opt.min_gap) {
      traj.termination = OdeTermination::CollisionImminent;
      if (!record_all) traj.states.push_back(y);
      return traj;
    }
    if (traj.accepted_steps + traj.rejected_steps >= opt.max_steps)
      throw Error(ErrorCode::StepSizeUnderflow, "step budget exhausted");
    const Real target = checkpoints[next_cp];
    bool lands = false;
    if (y.time + h >= target) {
      h = target - y.time;
      lands = true;
    }
    if (h < opt.min_step * max(Real(1), abs(y.time)))
      throw Error(ErrorCode::StepSizeUnderflow, "step size collapsed near t = " + format_real(y.time, 12));

    using P = std::pair<Real, const PeakonVelocity<Real>*>;
    const auto k2 = ode_rhs(detail::axpy_state(y, h, {P{a21, &k1}}));
    const auto k3 = ode_rhs(detail::axpy_state(y, h, {P{a31, &k1}, P{a32, &k2}}));
    const auto k4 = ode_rhs(detail::axpy_state(y, h, {P{a41, &k1}, P{a42, &k2}, P{a43, &k3}}));
    const auto k5 = ode_rhs(detail::axpy_state(y, h, {P{a51, &k1}, P{a52, &k2}, P{a53, &k3}, P{a54, &k4}}));
    const auto k6 =
        ode_rhs(detail::axpy_state(y, h, {P{a61, &k1}, P{a62, &k2}, P{a63, &k3}, P{a64, &k4}, P{a65, &k5}}));
    PeakonState<Real> next = detail::axpy_state(y, h, {P{b1, &k1}, P{b3, &k3}, P{b4, &k4}, P{b5, &k5}, P{b6, &k6}});
    next.time = lands ? target : y.time + h;

    bool ordered = true;
    for (std::size_t i = 1; i < next.size(); ++i) ordered = ordered && next.positions[i - 1] < next.positions[i];
    PeakonVelocity<Real> k7;
    Real err = 0;
    if (ordered) {
      k7 = ode_rhs(next);
      const auto diff =
          detail::axpy_state(PeakonState<Real>{std::vector<Real>(y.size(), Real(0)),
                                               std::vector<Real>(y.size(), Real(0)), Real(0)},
                             h, {P{e1, &k1}, P{e3, &k3}, P{e4, &k4}, P{e5, &k5}, P{e6, &k6}, P{e7, &k7}});
      for (std::size_t i = 0; i < y.size(); ++i) {
        const Real sq = opt.atol + opt.rtol * max(abs(y.positions[i]), abs(next.positions[i]));
        const Real sp = opt.atol + opt.rtol * max(abs(y.heights[i]), abs(next.heights[i]));
        err = max(err, abs(diff.positions[i]) / sq);
        err = max(err, abs(diff.heights[i]) / sp);
      }
    }
    if (!ordered || err > 1) {
      ++traj.rejected_steps;
      h *= ordered ? max(Real(0.2), Real(0.9) * pow(err, Real(-0.2))) : Real(0.25);
      continue;
    }
    ++traj.accepted_steps;
    y = std::move(next);
    k1 = std::move(k7);
    if (record_all || lands) traj.states.push_back(y);
    if (lands) ++next_cp;
    const Real grow = err == 0 ? Real(5) : min(Real(5), Real(0.9) * pow(err, Real(-0.2)));
    h *= grow;
  }
  return traj;
}

}  // namespace chpeakon
