#pragma once

// Physical-space views of a measure pair: u on a grid, the H^1 energy in closed
// form, heights from nodal samples, and limits of peak data at a collision.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "chpeakon/errors.hpp"
#include "chpeakon/real.hpp"
#include "chpeakon/types.hpp"

namespace chpeakon {

template <RealScalar Real = real>
struct SolutionSample {
  std::vector<Real> grid;
  std::vector<Real> u_values;
  std::vector<Real> ux_left;   // one-sided derivatives; they differ only at atoms
  std::vector<Real> ux_right;
  std::vector<std::pair<Real, Real>> mu_singular_atoms;  // (position, upsilon_n) with upsilon_n > 0

  /// Absolutely continuous density u^2 + u_x^2 of mu at grid point i, using the right derivative.
  Real mu_ac_density(std::size_t i) const { return u_values[i] * u_values[i] + ux_right[i] * ux_right[i]; }
};

/// u(x) = 1/2 sum omega_n exp(-|x - x_n|) with one-sided u_x.
template <RealScalar Real>
SolutionSample<Real> evaluate_u(const DiscreteMeasurePair<Real>& m, const std::vector<Real>& grid) {
  using std::abs;
  using std::exp;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid[i] < grid[i - 1]) throw Error(ErrorCode::InvalidArgument, "grid must be sorted");
  SolutionSample<Real> out;
  out.grid = grid;
  for (const Real& x : grid) {
    Real u = x * 0, left = u, right = u;
    for (std::size_t n = 0; n < m.size(); ++n) {
      const Real d = x - m.positions[n];
      const Real term = m.omega[n] * exp(-abs(d)) / 2;
      u += term;
      // d/dx exp(-|d|): -sgn(d) exp(-|d|), with the kink at d = 0
      if (d > 0) {
        left -= term;
        right -= term;
      } else if (d < 0) {
        left += term;
        right += term;
      } else {
        left += term;
        right -= term;
      }
    }
    out.u_values.push_back(u);
    out.ux_left.push_back(left);
    out.ux_right.push_back(right);
  }
  for (std::size_t n = 0; n < m.size(); ++n)
    if (m.upsilon[n] > 0) out.mu_singular_atoms.emplace_back(m.positions[n], m.upsilon[n]);
  return out;
}

/// int (u^2 + u_x^2) dx, interval by interval. Between atoms u = A e^x + B e^{-x}
/// and the integrand is 2A^2 e^{2x} + 2B^2 e^{-2x}.
template <RealScalar Real>
Real energy_integral(const DiscreteMeasurePair<Real>& m) {
  using std::exp;
  const std::size_t n_atoms = m.size();
  if (n_atoms == 0) return Real(0);
  // A_i = 1/2 sum_{n >= i} omega_n e^{-x_n}, B_i = 1/2 sum_{n < i} omega_n e^{x_n}
  std::vector<Real> a(n_atoms + 1, m.positions[0] * 0), b(n_atoms + 1, m.positions[0] * 0);
  for (std::size_t n = n_atoms; n-- > 0;) a[n] = a[n + 1] + m.omega[n] * exp(-m.positions[n]) / 2;
  for (std::size_t n = 0; n < n_atoms; ++n) b[n + 1] = b[n] + m.omega[n] * exp(m.positions[n]) / 2;

  Real total = a[0] * a[0] * exp(2 * m.positions[0]);
  for (std::size_t i = 1; i < n_atoms; ++i) {
    const Real& lo = m.positions[i - 1];
    const Real& hi = m.positions[i];
    const Real r_hi = a[i] * exp(hi), r_lo = a[i] * exp(lo);
    const Real l_lo = b[i] * exp(-lo), l_hi = b[i] * exp(-hi);
    total += (r_hi * r_hi - r_lo * r_lo) + (l_lo * l_lo - l_hi * l_hi);
  }
  total += b[n_atoms] * b[n_atoms] * exp(-2 * m.positions.back());
  return total;
}

/// mu(R) = int (u^2 + u_x^2) dx + sum upsilon_n.
template <RealScalar Real>
Real mu_total(const DiscreteMeasurePair<Real>& m) {
  Real total = energy_integral(m);
  for (const Real& v : m.upsilon) total += v;
  return total;
}

/// E = (exp(-|q_i - q_j|)), the map from heights to nodal values of u.
template <RealScalar Real>
std::vector<std::vector<Real>> peak_gram_matrix(const std::vector<Real>& q) {
  using std::abs;
  using std::exp;
  std::vector<std::vector<Real>> e(q.size(), std::vector<Real>(q.size()));
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) e[i][j] = exp(-abs(q[i] - q[j]));
  return e;
}

/// Tridiagonal inverse J of the Gram matrix: diagonal a_n = (coth d_{n-1} + coth d_n)/2
/// with d_n = q_{n+1} - q_n and coth of a missing (infinite) gap equal to 1;
/// off-diagonal b_n = -1 / (2 sinh d_n).
template <RealScalar Real = real>
struct Tridiagonal {
  std::vector<Real> diagonal;
  std::vector<Real> off_diagonal;  // symmetric; size N - 1

  std::vector<Real> apply(const std::vector<Real>& v) const {
    std::vector<Real> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      out[i] = diagonal[i] * v[i];
      if (i > 0) out[i] += off_diagonal[i - 1] * v[i - 1];
      if (i + 1 < v.size()) out[i] += off_diagonal[i] * v[i + 1];
    }
    return out;
  }
};

template <RealScalar Real>
Tridiagonal<Real> tridiagonal_inverse(const std::vector<Real>& q) {
  using std::cosh;
  using std::sinh;
  const std::size_t n = q.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (q[i] == q[i - 1]) throw Error(ErrorCode::CoincidentPositions, "positions must be distinct");
    if (q[i] < q[i - 1]) throw Error(ErrorCode::NonIncreasingPositions, "positions must increase");
  }
  Tridiagonal<Real> j;
  if (n == 0) return j;
  std::vector<Real> coth_gap(n + 1, q[0] * 0 + 1);  // coth_gap[i] = coth(q_i - q_{i-1}); ends stay 1
  for (std::size_t i = 1; i < n; ++i) {
    const Real d = q[i] - q[i - 1];
    const Real sh = sinh(d);
    coth_gap[i] = cosh(d) / sh;
    j.off_diagonal.push_back(-1 / (2 * sh));
  }
  for (std::size_t i = 0; i < n; ++i) j.diagonal.push_back((coth_gap[i] + coth_gap[i + 1]) / 2);
  return j;
}

/// Heights p from nodal samples u(q_n): p = J u.
template <RealScalar Real>
std::vector<Real> heights_from_samples(const std::vector<Real>& q, const std::vector<Real>& u_at_q) {
  if (q.size() != u_at_q.size()) throw Error(ErrorCode::LengthMismatch, "one sample per position");
  return tridiagonal_inverse(q).apply(u_at_q);
}

/// State of two neighbouring peaks at time t before a collision.
template <RealScalar Real = real>
struct PairSample {
  Real t;
  Real p_left, p_right;
  Real q_left, q_right;
};

template <RealScalar Real = real>
struct CollisionLimits {
  Real height_sum;  // lim p_n + p_{n+1}
  Real atom_mass;   // lim 4 p_n p_{n+1} (q_n - q_{n+1})
  Real height_sum_spread;
  Real atom_mass_spread;
};

namespace detail {

/// Value at delta = 0 of the quadratic through three (delta, y) points (Neville).
template <RealScalar Real>
Real extrapolate_to_zero(const std::array<Real, 3>& d, const std::array<Real, 3>& y) {
  Real p01 = (d[1] * y[0] - d[0] * y[1]) / (d[1] - d[0]);
  Real p12 = (d[2] * y[1] - d[1] * y[2]) / (d[2] - d[1]);
  return (d[2] * p01 - d[0] * p12) / (d[2] - d[0]);
}

}  // namespace detail

/// Limits of p_n + p_{n+1} and 4 p_n p_{n+1} (q_n - q_{n+1}) as t -> t_cross, by
/// quadratic extrapolation in delta = t_cross - t through the three samples nearest
/// the collision. With four or more samples the next triple out must agree to
/// within `agreement` (absolute, scaled by max(1, |limit|)), else ExtrapolationUnstable.
template <RealScalar Real>
CollisionLimits<Real> collision_limit_diagnostics(std::vector<PairSample<Real>> samples, const Real& t_cross,
                                                  double agreement = 1e-4) {
  using std::abs;
  if (samples.size() < 3) throw Error(ErrorCode::InvalidArgument, "need at least three samples");
  for (const auto& s : samples)
    if (!(s.t < t_cross)) throw Error(ErrorCode::InvalidArgument, "samples must precede the collision");
  std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.t > b.t; });

  auto triple = [&](std::size_t first) {
    std::array<Real, 3> d, h, m;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& s = samples[first + i];
      d[i] = t_cross - s.t;
      h[i] = s.p_left + s.p_right;
      m[i] = 4 * s.p_left * s.p_right * (s.q_left - s.q_right);
    }
    return std::pair<Real, Real>{detail::extrapolate_to_zero(d, h), detail::extrapolate_to_zero(d, m)};
  };
  const auto [h0, m0] = triple(0);
  CollisionLimits<Real> out{h0, m0, h0 * 0, m0 * 0};
  if (samples.size() >= 4) {
    const auto [h1, m1] = triple(1);
    out.height_sum_spread = abs(h1 - h0);
    out.atom_mass_spread = abs(m1 - m0);
    const Real one = h0 * 0 + 1;
    if (out.height_sum_spread > agreement * std::max(one, abs(h0)) ||
        out.atom_mass_spread > agreement * std::max(one, abs(m0)))
      throw Error(ErrorCode::ExtrapolationUnstable, "successive extrapolations disagree");
  }
  return out;
}

}  // namespace chpeakon
