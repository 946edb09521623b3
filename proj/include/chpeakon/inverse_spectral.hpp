#pragma once

// Inverse map: (eigenvalues, norming constants) -> (omega, upsilon).
//
// Everything flows from the moments of the Weyl function and four rows of
// Hankel determinants Delta_{j,k} = det[s_{j+a+b}]_{a,b<k}, j = -1..2. Zeros of
// the Delta_{1,.} row mark atoms that carry a dipole.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "chpeakon/determinant.hpp"
#include "chpeakon/errors.hpp"
#include "chpeakon/real.hpp"
#include "chpeakon/types.hpp"

namespace chpeakon {

/// s_{-1}, s_0, s_1, ... as a vector offset by one: values[k + 1] = s_k.
template <RealScalar Real = real>
struct MomentSequence {
  std::vector<Real> values;
  // same layout, norming constants replaced by |gamma^2|: the Hankel rows of
  // these bound the cancellation in the signed ones
  std::vector<Real> unsigned_values;

  /// s_k, for -1 <= k <= max_index().
  const Real& operator()(int k) const { return values.at(static_cast<std::size_t>(k + 1)); }
  int max_index() const { return static_cast<int>(values.size()) - 2; }
};

/// Moments s_{-1} = 0, s_0 = 1 + sum 1/(lambda gamma^2), s_k = sum lambda^{k-1}/gamma^2,
/// through s_{2|sigma|+2}, the last index any table entry reads.
template <RealScalar Real>
MomentSequence<Real> moments(const SpectralData<Real>& s) {
  using std::abs;
  const std::size_t sigma = s.size();
  const int top = 2 * static_cast<int>(sigma) + 2;
  const Real zero = with_digits10(Real(0), s.empty() ? digits10_of(Real(0)) : working_digits10(s.norming));
  MomentSequence<Real> mom;
  mom.values.assign(static_cast<std::size_t>(top + 2), zero);
  mom.values[1] = zero + 1;
  mom.unsigned_values = mom.values;
  for (std::size_t i = 0; i < sigma; ++i) {
    const Real& lambda = s.eigenvalues[i];
    Real term = 1 / (lambda * s.norming[i]);  // lambda^{k-1} / gamma^2 at k = 0
    Real unsigned_term = abs(term);
    if (lambda < 0) unsigned_term = -unsigned_term;
    for (int k = 0; k <= top; ++k) {
      mom.values[static_cast<std::size_t>(k + 1)] += term;
      mom.unsigned_values[static_cast<std::size_t>(k + 1)] += unsigned_term;
      term *= lambda;
      unsigned_term *= lambda;
    }
  }
  return mom;
}

/// Rows Delta_{-1,k} (k = 1..|sigma|+2) and Delta_{0,k}, Delta_{1,k}, Delta_{2,k}
/// (k = 0..|sigma|+1, with the k = 0 entries equal to 1). Delta_{-1,0} is left at 1 as
/// well so every row is indexed directly by k.
template <RealScalar Real = real>
struct HankelTable {
  std::size_t sigma = 0;
  std::vector<Real> d_minus1;
  std::vector<Real> d0;
  std::vector<Real> d1;
  std::vector<Real> d2;
  std::vector<bool> d1_zero;  // flagged zeros of Delta_{1,k}; d1_zero[0] is always false
  std::vector<Real> d1_scale;  // sum of |Cauchy-Binet terms| of Delta_{1,k}

  const Real& operator()(int row, std::size_t k) const {
    switch (row) {
      case -1: return d_minus1.at(k);
      case 0: return d0.at(k);
      case 1: return d1.at(k);
      default: return d2.at(k);
    }
  }
};

/// Relative threshold under which a Delta_{1,k} counts as zero: 10^{-0.4 P} for P
/// working decimal digits.
template <RealScalar Real>
Real zero_threshold(const Real& like) {
  using std::pow;
  return pow(with_digits10(Real(10), digits10_of(like)), -Real(0.4) * static_cast<double>(digits10_of(like)));
}

/// `significant_digits` sets the zero threshold; 0 means the working precision
/// of the moments. Pass the input precision when working wider than the data.
template <RealScalar Real>
HankelTable<Real> hankel_table(const MomentSequence<Real>& mom, unsigned significant_digits = 0) {
  using std::abs;
  using std::sqrt;
  const int top = mom.max_index();
  const std::size_t sigma = static_cast<std::size_t>((top - 2) / 2);
  auto s = [&mom](int k) { return mom(k); };

  HankelTable<Real> t;
  t.sigma = sigma;
  const Real one = mom(0) * 0 + 1;
  t.d_minus1.push_back(one);
  for (std::size_t k = 1; k <= sigma + 2; ++k) t.d_minus1.push_back(hankel_determinant<Real>(s, -1, k));
  // Delta_{0,|sigma|+2} only enters the zero-flag scale of Delta_{1,|sigma|+1}.
  for (std::size_t k = 0; k <= sigma + 2; ++k) t.d0.push_back(hankel_determinant<Real>(s, 0, k));
  for (std::size_t k = 0; k <= sigma + 1; ++k) t.d1.push_back(hankel_determinant<Real>(s, 1, k));
  for (std::size_t k = 0; k <= sigma + 1; ++k) t.d2.push_back(hankel_determinant<Real>(s, 2, k));

  for (std::size_t k = 1; k <= sigma + 1; ++k)
    if (!(t.d0[k] > 0))
      throw Error(ErrorCode::NonPositiveHankel, "Delta_{0," + std::to_string(k) + "} is not positive");
  for (std::size_t k = 1; k <= sigma; ++k)
    if (!(t.d2[k] > 0))
      throw Error(ErrorCode::NonPositiveHankel, "Delta_{2," + std::to_string(k) + "} is not positive");

  const Real tau = significant_digits == 0 ? zero_threshold(one)
                                           : zero_threshold(with_digits10(Real(1), significant_digits));
  // Delta_{1,k} = sum over k-subsets S of prod_S 1/gamma^2 * Vandermonde(S)^2; with
  // |gamma^2| every term is positive and the same determinant is their absolute sum.
  auto unsigned_s = [&mom](int k) { return mom.unsigned_values.at(static_cast<std::size_t>(k + 1)); };
  t.d1_zero.assign(sigma + 2, false);
  t.d1_scale.push_back(one);
  for (std::size_t k = 1; k <= sigma; ++k) {
    t.d1_scale.push_back(mom.unsigned_values.empty() ? sqrt(t.d0[k] * t.d0[k + 1])
                                                     : hankel_determinant<Real>(unsigned_s, 1, k));
    t.d1_zero[k] = abs(t.d1[k]) < tau * t.d1_scale[k];
  }
  // Delta_{1,|sigma|+1} is the determinant of a rank-deficient matrix.
  t.d1_zero[sigma + 1] = true;
  for (std::size_t k = 1; k <= sigma; ++k)
    if (t.d1_zero[k] && t.d1_zero[k + 1])
      throw Error(ErrorCode::ConsecutiveZeros,
                  "Delta_{1," + std::to_string(k) + "} and Delta_{1," + std::to_string(k + 1) + "} both vanish");
  return t;
}

/// kappa(n) for n = 0..N: the (n+1)-th nonzero Delta_{1,k} counting down from
/// k = |sigma| (Delta_{1,0} = 1 always counts). kappa_0 = number of flagged zeros
/// in Delta_{1,1..|sigma|}, and N = |sigma| - kappa_0.
struct KappaMap {
  std::vector<std::size_t> kappa;
  std::size_t kappa0 = 0;
  std::size_t atoms = 0;
};

template <RealScalar Real>
KappaMap kappa_map(const HankelTable<Real>& t) {
  KappaMap km;
  for (std::size_t k = t.sigma + 1; k-- > 0;) {
    if (k > 0 && t.d1_zero[k])
      ++km.kappa0;
    else
      km.kappa.push_back(k);
  }
  km.atoms = t.sigma - km.kappa0;
  return km;
}

namespace detail {

template <RealScalar Real>
MeasureSnapshot<Real> reconstruct_once(const SpectralData<Real>& s, unsigned significant_digits = 0) {
  using std::log;
  const HankelTable<Real> t = hankel_table(moments(s), significant_digits);
  const KappaMap km = kappa_map(t);
  const std::size_t n_atoms = km.atoms;

  std::vector<Real> x(n_atoms), omega(n_atoms), upsilon(n_atoms);
  for (std::size_t n = 1; n <= n_atoms; ++n) {
    const std::size_t k = km.kappa[n];
    const Real ratio = t.d0[k + 1] / t.d2[k];
    if (!(ratio > 1))
      throw Error(ErrorCode::LogDomainError,
                  "Delta_{0,k+1}/Delta_{2,k} <= 1 at k = " + std::to_string(k));
    x[n - 1] = log(ratio - 1);
    const Real common = t.d2[k] * (t.d0[k + 1] - t.d2[k]);
    if (!t.d1_zero[k + 1]) {
      omega[n - 1] = common / (t.d1[k] * t.d1[k + 1]);
      upsilon[n - 1] = common * 0;
    } else {
      // Delta_{1,k+1} = 0: the atom carries a dipole.
      omega[n - 1] = common / (t.d0[k + 1] * t.d0[k + 1]) *
                     (t.d_minus1[k + 1] / t.d1[k] - t.d_minus1[k + 3] / t.d1[k + 2]);
      upsilon[n - 1] = -(t.d0[k + 2] / t.d0[k + 1]) * common / (t.d1[k] * t.d1[k + 2]);
    }
  }
  for (std::size_t n = 1; n < n_atoms; ++n)
    if (!(x[n - 1] < x[n]))
      throw Error(ErrorCode::OrderingViolation, "reconstructed positions are not increasing");
  for (const Real& u : upsilon)
    if (u < 0) throw Error(ErrorCode::OrderingViolation, "reconstructed dipole weight is negative");

  DiscreteMeasurePair<Real> m{std::move(x), std::move(omega), std::move(upsilon)};
  return make_snapshot(std::move(m), s.base_time);
}

inline bool is_precision_symptom(ErrorCode code) {
  return code == ErrorCode::ConsecutiveZeros || code == ErrorCode::LogDomainError ||
         code == ErrorCode::NonPositiveHankel || code == ErrorCode::OrderingViolation;
}

}  // namespace detail

namespace detail {

/// Decimal digits the Hankel elimination can lose on this data: the spread of
/// the moment weights {1} u {1/|lambda gamma^2|}, plus |sigma| times the
/// spread of |lambda| (powers up to lambda^{2|sigma|} meet in one matrix).
/// Far from the base time the weights separate exponentially and this grows
/// linearly in |t - t0|.
template <RealScalar Real>
unsigned conditioning_digits(const SpectralData<Real>& s) {
  using std::abs;
  using std::log10;
  double w_lo = 0, w_hi = 0;
  double l_lo = std::numeric_limits<double>::infinity(), l_hi = -l_lo;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double w = -to_double(log10(abs(s.eigenvalues[i] * s.norming[i])));
    const double l = to_double(log10(abs(s.eigenvalues[i])));
    w_lo = std::min(w_lo, w);
    w_hi = std::max(w_hi, w);
    l_lo = std::min(l_lo, l);
    l_hi = std::max(l_hi, l);
  }
  const double extra = (w_hi - w_lo) + static_cast<double>(s.size()) * (l_hi - l_lo);
  return std::isfinite(extra) ? static_cast<unsigned>(std::ceil(extra)) : 0u;
}

/// reconstruct_once at `digits`, zero-flagged and rounded at `out_digits`.
template <RealScalar Real>
MeasureSnapshot<Real> reconstruct_at(const SpectralData<Real>& s, unsigned digits, unsigned out_digits) {
  MeasureSnapshot<Real> r = reconstruct_once(with_digits10(s, digits), out_digits);
  auto& m = r.measure;
  m.positions = with_digits10(m.positions, out_digits);
  m.omega = with_digits10(m.omega, out_digits);
  m.upsilon = with_digits10(m.upsilon, out_digits);
  r.time = with_digits10(r.time, out_digits);
  return r;
}

}  // namespace detail

/// The unique measure pair with the given spectral data. Working precision is
/// raised by the conditioning estimate first; failures that can only come from
/// exhausted precision are retried once at twice that.
template <RealScalar Real>
MeasureSnapshot<Real> reconstruct(const SpectralData<Real>& s) {
  if (s.empty()) return make_snapshot(DiscreteMeasurePair<Real>{}, s.base_time);
  if constexpr (std::floating_point<Real>) {
    return detail::reconstruct_once(s);
  } else {
    const unsigned digits = working_digits10(s.norming);
    const unsigned wide = digits + detail::conditioning_digits(s);
    try {
      return detail::reconstruct_at(s, wide, digits);
    } catch (const Error& e) {
      if (!detail::is_precision_symptom(e.code())) throw;
      return detail::reconstruct_at(s, 2 * wide, digits);
    }
  }
}

/// Sign structure of a measure pair. Definite means every omega_n has one sign
/// and there are no dipoles.
enum class SignClass { Empty, Positive, Negative, Indefinite };

template <RealScalar Real>
SignClass sign_class(const DiscreteMeasurePair<Real>& m) {
  if (m.empty()) return SignClass::Empty;
  if (m.has_dipoles()) return SignClass::Indefinite;
  const bool all_pos = std::all_of(m.omega.begin(), m.omega.end(), [](const Real& w) { return w > 0; });
  const bool all_neg = std::all_of(m.omega.begin(), m.omega.end(), [](const Real& w) { return w < 0; });
  return all_pos ? SignClass::Positive : all_neg ? SignClass::Negative : SignClass::Indefinite;
}

/// Definite measures give Delta_{1,k} > 0 for every k <= |sigma| (positive case)
/// or sign (-1)^k (negative case). Indefinite classes have no fixed pattern.
template <RealScalar Real>
bool follows_definite_sign_pattern(const HankelTable<Real>& t, SignClass cls) {
  for (std::size_t k = 1; k <= t.sigma; ++k) {
    const bool positive = t.d1[k] > 0;
    const bool negative = t.d1[k] < 0;
    if (cls == SignClass::Positive && !positive) return false;
    if (cls == SignClass::Negative && !(k % 2 == 0 ? positive : negative)) return false;
    if (cls == SignClass::Indefinite) return false;
  }
  return true;
}

}  // namespace chpeakon
