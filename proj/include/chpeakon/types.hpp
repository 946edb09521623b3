#pragma once

// Domain values shared by every stage of the transform.
//
// Two notations meet here. The PDE side writes u = sum p_n exp(-|x - q_n|);
// the spectral side writes u = 1/2 sum omega_n exp(-|x - x_n|) with an extra
// non-negative dipole weight upsilon_n at collision times. Hence
// omega_n = 2 p_n and x_n = q_n.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "chpeakon/errors.hpp"
#include "chpeakon/real.hpp"

namespace chpeakon {

/// Discrete measures omega = sum omega_n delta_{x_n}, upsilon = sum upsilon_n delta_{x_n}.
///
/// Invariants (enforced by validate_measure): positions strictly increasing,
/// upsilon_n >= 0 and |omega_n| + upsilon_n > 0. The empty measure is valid.
template <RealScalar Real = real>
struct DiscreteMeasurePair {
  std::vector<Real> positions;
  std::vector<Real> omega;
  std::vector<Real> upsilon;

  std::size_t size() const { return positions.size(); }
  bool empty() const { return positions.empty(); }

  /// Number of atoms carrying a dipole (upsilon_n > 0).
  std::size_t dipole_count() const {
    return static_cast<std::size_t>(
        std::count_if(upsilon.begin(), upsilon.end(), [](const Real& v) { return v > 0; }));
  }
  bool has_dipoles() const { return dipole_count() > 0; }
};

template <RealScalar Real>
DiscreteMeasurePair<Real> validate_measure(std::vector<Real> positions, std::vector<Real> omega,
                                           std::vector<Real> upsilon) {
  if (positions.size() != omega.size() || positions.size() != upsilon.size())
    throw Error(ErrorCode::LengthMismatch, "positions, omega and upsilon must have equal length");
  for (std::size_t n = 1; n < positions.size(); ++n) {
    if (!(positions[n - 1] < positions[n]))
      throw Error(ErrorCode::NonIncreasingPositions,
                  "position " + std::to_string(n) + " does not exceed its predecessor");
  }
  for (std::size_t n = 0; n < positions.size(); ++n) {
    using std::abs;
    if (upsilon[n] < 0)
      throw Error(ErrorCode::NegativeDipole, "upsilon[" + std::to_string(n) + "] < 0");
    if (abs(omega[n]) + upsilon[n] == 0)
      throw Error(ErrorCode::NullAtom, "atom " + std::to_string(n) + " carries no weight");
  }
  return DiscreteMeasurePair<Real>{std::move(positions), std::move(omega), std::move(upsilon)};
}

template <RealScalar Real>
DiscreteMeasurePair<Real> validate_measure(const DiscreteMeasurePair<Real>& m) {
  return validate_measure(m.positions, m.omega, m.upsilon);
}

/// Classical multi-peakon state u(x) = sum p_n exp(-|x - q_n|).
template <RealScalar Real = real>
struct PeakonState {
  std::vector<Real> heights;    // p_n
  std::vector<Real> positions;  // q_n
  Real time = 0;

  std::size_t size() const { return positions.size(); }
};

template <RealScalar Real>
DiscreteMeasurePair<Real> peakons_to_measure(const PeakonState<Real>& state) {
  if (state.heights.size() != state.positions.size())
    throw Error(ErrorCode::LengthMismatch, "heights and positions must have equal length");
  std::vector<Real> omega(state.heights.size());
  std::transform(state.heights.begin(), state.heights.end(), omega.begin(),
                 [](const Real& p) { return 2 * p; });
  return validate_measure(state.positions, std::move(omega),
                          std::vector<Real>(state.positions.size(), Real(0)));
}

template <RealScalar Real>
PeakonState<Real> measure_to_peakons(const DiscreteMeasurePair<Real>& m, const Real& time = Real(0)) {
  if (m.has_dipoles())
    throw Error(ErrorCode::DipolePresent, "a measure with dipoles has no classical peakon form");
  PeakonState<Real> state;
  state.positions = m.positions;
  state.heights.resize(m.size());
  std::transform(m.omega.begin(), m.omega.end(), state.heights.begin(),
                 [](const Real& w) { return w / 2; });
  state.time = time;
  return state;
}

/// Eigenvalues with their (modified) norming constants at a base time.
///
/// Invariants (enforced by make_spectral_data): eigenvalues sorted ascending,
/// pairwise distinct and nonzero, and lambda * gamma2 > 0 for every entry.
template <RealScalar Real = real>
struct SpectralData {
  std::vector<Real> eigenvalues;
  std::vector<Real> norming;  // gamma_lambda^2
  Real base_time = 0;

  std::size_t size() const { return eigenvalues.size(); }
  bool empty() const { return eigenvalues.empty(); }
};

/// Validates and sorts (lambda, gamma^2) pairs.
template <RealScalar Real>
SpectralData<Real> make_spectral_data(std::vector<Real> eigenvalues, std::vector<Real> norming,
                                      Real base_time = Real(0)) {
  if (eigenvalues.size() != norming.size())
    throw Error(ErrorCode::LengthMismatch, "eigenvalues and norming constants differ in length");
  std::vector<std::size_t> order(eigenvalues.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return eigenvalues[a] < eigenvalues[b]; });
  SpectralData<Real> out;
  out.base_time = std::move(base_time);
  out.eigenvalues.reserve(order.size());
  out.norming.reserve(order.size());
  for (std::size_t i : order) {
    const Real& lambda = eigenvalues[i];
    const Real& gamma2 = norming[i];
    if (lambda == 0) throw Error(ErrorCode::InvalidSpectralData, "zero eigenvalue");
    if (!(lambda * gamma2 > 0))
      throw Error(ErrorCode::InvalidSpectralData, "lambda * gamma^2 must be positive");
    if (!out.eigenvalues.empty() && !(out.eigenvalues.back() < lambda))
      throw Error(ErrorCode::InvalidSpectralData, "eigenvalues must be distinct");
    out.eigenvalues.push_back(lambda);
    out.norming.push_back(gamma2);
  }
  return out;
}

template <RealScalar Real>
SpectralData<Real> make_spectral_data(const SpectralData<Real>& s) {
  return make_spectral_data(s.eigenvalues, s.norming, s.base_time);
}

/// Reconstructed measure at a given time. `is_collision_time` is set iff some
/// upsilon_n > 0.
template <RealScalar Real = real>
struct MeasureSnapshot {
  DiscreteMeasurePair<Real> measure;
  Real time = 0;
  bool is_collision_time = false;
};

template <RealScalar Real>
MeasureSnapshot<Real> make_snapshot(DiscreteMeasurePair<Real> m, Real time) {
  const bool collision = m.has_dipoles();
  return MeasureSnapshot<Real>{std::move(m), std::move(time), collision};
}

/// Precision-widened copies, used when a computation is retried at higher precision.
template <RealScalar Real>
std::vector<Real> with_digits10(const std::vector<Real>& v, unsigned digits10) {
  std::vector<Real> out;
  out.reserve(v.size());
  for (const Real& x : v) out.push_back(with_digits10(x, digits10));
  return out;
}

template <RealScalar Real>
SpectralData<Real> with_digits10(const SpectralData<Real>& s, unsigned digits10) {
  return SpectralData<Real>{with_digits10(s.eigenvalues, digits10), with_digits10(s.norming, digits10),
                            with_digits10(s.base_time, digits10)};
}

/// Smallest decimal precision carried by any entry (the working precision of the data).
template <RealScalar Real>
unsigned working_digits10(const std::vector<Real>& v) {
  if (v.empty()) return digits10_of(Real(0));
  unsigned d = digits10_of(v.front());
  for (const Real& x : v) d = std::min(d, digits10_of(x));
  return d;
}

}  // namespace chpeakon
