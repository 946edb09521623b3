#pragma once

// Forward spectral problem for the generalized string
//
//   -f'' + f/4 = z omega f + z^2 upsilon f
//
// with discrete omega, upsilon. Between atoms solutions are combinations of
// exp(+-x/2); across an atom f is continuous and f' jumps by
// -(z omega_n + z^2 upsilon_n) f(x_n).

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "chpeakon/complex.hpp"
#include "chpeakon/errors.hpp"
#include "chpeakon/polynomial.hpp"
#include "chpeakon/real.hpp"
#include "chpeakon/types.hpp"

namespace chpeakon {

/// 2x2 matrix of polynomials in z acting on (f, f') data, row-major.
template <RealScalar Real = real>
struct TransferMatrix {
  using Poly = RealPolynomial<Real>;
  std::array<Poly, 4> entries;

  const Poly& operator()(std::size_t r, std::size_t c) const { return entries[2 * r + c]; }

  static TransferMatrix identity() {
    return {{Poly::constant(Real(1)), Poly(), Poly(), Poly::constant(Real(1))}};
  }

  /// Free propagation over `distance` (positive to the right) where -f'' + f/4 = 0.
  static TransferMatrix free_propagation(const Real& distance) {
    using std::cosh;
    using std::sinh;
    const Real h = distance / 2;
    const Real ch = cosh(h), sh = sinh(h);
    return {{Poly::constant(ch), Poly::constant(2 * sh), Poly::constant(sh / 2), Poly::constant(ch)}};
  }

  /// Maps (f, f')(x_n-) to (f, f')(x_n+).
  static TransferMatrix interface_jump(const Real& omega, const Real& upsilon) {
    Poly load(std::vector<Real>{Real(0), -omega, -upsilon});
    return {{Poly::constant(Real(1)), Poly(), std::move(load), Poly::constant(Real(1))}};
  }

  friend TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b) {
    return {{a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
             a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1)}};
  }

  Poly determinant() const { return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0); }
};

/// Product J_N T(x_N - x_{N-1}) J_{N-1} ... T(x_2 - x_1) J_1, multiplied left to
/// right. Maps (f, f')(x_1-) to (f, f')(x_N+).
template <RealScalar Real>
TransferMatrix<Real> transfer_product(const DiscreteMeasurePair<Real>& m) {
  using TM = TransferMatrix<Real>;
  if (m.empty()) return TM::identity();
  const std::size_t n_atoms = m.size();
  TM product = TM::interface_jump(m.omega[n_atoms - 1], m.upsilon[n_atoms - 1]);
  for (std::size_t n = n_atoms - 1; n-- > 0;) {
    product = product * TM::free_propagation(m.positions[n + 1] - m.positions[n]);
    product = product * TM::interface_jump(m.omega[n], m.upsilon[n]);
  }
  return product;
}

/// W(z) = phi_+ phi_-' - phi_+' phi_-, a polynomial with W(0) = 1 and
/// degree N + #{upsilon_n > 0}.
template <RealScalar Real>
RealPolynomial<Real> wronskian(const DiscreteMeasurePair<Real>& m) {
  using Poly = RealPolynomial<Real>;
  if (m.empty()) return Poly::constant(Real(1));
  using std::exp;
  const TransferMatrix<Real> t = transfer_product(m);
  // phi_- = exp(x/2) left of x_1, i.e. (f, f') = exp(x_1/2) (1, 1/2); right of x_N
  // phi_+ = exp(-x/2), so W = exp(-x_N/2) (phi_-' + phi_-/2).
  const Real half(Real(1) / 2);
  const Poly f = t(0, 0) + half * t(0, 1);
  const Poly df = t(1, 0) + half * t(1, 1);
  const Real scale = exp((m.positions.front() - m.positions.back()) / 2);
  Poly w = scale * (df + half * f);

  const int expected = static_cast<int>(m.size() + m.dipole_count());
  if (w.degree() != expected)
    throw Error(ErrorCode::CrossCheckFailure, "Wronskian degree " + std::to_string(w.degree()) +
                                                  " differs from N + #dipoles = " + std::to_string(expected));
  return w;
}

/// Zeros of W, ascending. All are real, simple and nonzero.
template <RealScalar Real>
std::vector<Real> eigenvalues(const RealPolynomial<Real>& w) {
  std::vector<Real> roots = real_simple_roots(w);
  for (const Real& r : roots)
    if (r == 0) throw Error(ErrorCode::RootIsolationFailure, "zero is never an eigenvalue");
  return roots;
}

namespace detail {

/// Values phi(lambda, x_n) at every atom for the solution that equals
/// exp(-x/2) right of x_N (phi_+), propagated leftwards.
template <RealScalar Real>
std::vector<Real> phi_plus_at_atoms(const DiscreteMeasurePair<Real>& m, const Real& lambda) {
  using std::cosh;
  using std::exp;
  using std::sinh;
  const std::size_t n_atoms = m.size();
  std::vector<Real> values(n_atoms);
  Real f = exp(-m.positions.back() / 2);
  Real g = -f / 2;  // f' just right of x_N
  for (std::size_t n = n_atoms; n-- > 0;) {
    values[n] = f;
    g += (lambda * m.omega[n] + lambda * lambda * m.upsilon[n]) * f;  // f' just left of x_n
    if (n == 0) break;
    const Real h = (m.positions[n] - m.positions[n - 1]) / 2;
    const Real ch = cosh(h), sh = sinh(h);
    Real f_prev = ch * f - 2 * sh * g;
    Real g_prev = -sh * f / 2 + ch * g;
    f = std::move(f_prev);
    g = std::move(g_prev);
  }
  return values;
}

/// Values phi_-(lambda, x_n), propagated rightwards from exp(x/2).
template <RealScalar Real>
std::vector<Real> phi_minus_at_atoms(const DiscreteMeasurePair<Real>& m, const Real& lambda) {
  using std::cosh;
  using std::exp;
  using std::sinh;
  const std::size_t n_atoms = m.size();
  std::vector<Real> values(n_atoms);
  Real f = exp(m.positions.front() / 2);
  Real g = f / 2;
  for (std::size_t n = 0; n < n_atoms; ++n) {
    values[n] = f;
    g -= (lambda * m.omega[n] + lambda * lambda * m.upsilon[n]) * f;
    if (n + 1 == n_atoms) break;
    const Real h = (m.positions[n + 1] - m.positions[n]) / 2;
    const Real ch = cosh(h), sh = sinh(h);
    Real f_next = ch * f + 2 * sh * g;
    Real g_next = sh * f / 2 + ch * g;
    f = std::move(f_next);
    g = std::move(g_next);
  }
  return values;
}

}  // namespace detail

template <RealScalar Real>
struct NormingResult {
  SpectralData<Real> data;
  /// Largest relative disagreement between gamma^2 from the eigenfunction
  /// integral and from -W'(lambda) / c_lambda.
  Real max_cross_check_residual = 0;
};

/// Norming constants gamma^2 = int phi_+^2 d omega + 2 lambda int phi_+^2 d upsilon,
/// cross-checked against -W'(lambda) = c_lambda gamma^2 where phi_- = c_lambda phi_+.
template <RealScalar Real>
NormingResult<Real> norming_constants_checked(const DiscreteMeasurePair<Real>& m, const std::vector<Real>& eigs,
                                              const Real& base_time,
                                              double rel_tol = default_relative_tolerance) {
  using std::abs;
  const RealPolynomial<Real> dw = wronskian(m).derivative();
  std::vector<Real> gammas;
  gammas.reserve(eigs.size());
  Real worst = 0;
  for (const Real& lambda : eigs) {
    const std::vector<Real> plus = detail::phi_plus_at_atoms(m, lambda);
    const std::vector<Real> minus = detail::phi_minus_at_atoms(m, lambda);
    Real gamma2 = 0;
    std::size_t pivot = 0;
    for (std::size_t n = 0; n < m.size(); ++n) {
      gamma2 += plus[n] * plus[n] * (m.omega[n] + 2 * lambda * m.upsilon[n]);
      if (abs(plus[n]) > abs(plus[pivot])) pivot = n;
    }
    if (!(lambda * gamma2 > 0))
      throw Error(ErrorCode::CrossCheckFailure, "lambda * gamma^2 is not positive");
    const Real c_lambda = minus[pivot] / plus[pivot];
    const Real lhs = -dw(lambda);
    const Real rhs = c_lambda * gamma2;
    const Real residual = abs(lhs - rhs) / std::max(abs(lhs), abs(rhs));
    if (!(residual <= rel_tol))
      throw Error(ErrorCode::CrossCheckFailure,
                  "-W'(lambda) and c_lambda gamma^2 disagree (relative " + format_real(residual, 6) + ")");
    worst = std::max(worst, residual);
    gammas.push_back(gamma2);
  }
  return {make_spectral_data(eigs, std::move(gammas), base_time), worst};
}

template <RealScalar Real>
SpectralData<Real> norming_constants(const DiscreteMeasurePair<Real>& m, const std::vector<Real>& eigs,
                                     const Real& base_time = Real(0),
                                     double rel_tol = default_relative_tolerance) {
  return norming_constants_checked(m, eigs, base_time, rel_tol).data;
}

/// Full forward map: measure -> (spectrum, norming constants) at `base_time`.
template <RealScalar Real>
SpectralData<Real> forward_transform(const DiscreteMeasurePair<Real>& m, const Real& base_time = Real(0),
                                     double rel_tol = default_relative_tolerance) {
  return norming_constants(m, eigenvalues(wronskian(m)), base_time, rel_tol);
}

template <RealScalar Real>
struct TraceValues {
  Real sum_inv_lambda = 0;
  Real sum_inv_lambda_sq = 0;
};

template <RealScalar Real>
TraceValues<Real> trace_values(const std::vector<Real>& eigs) {
  TraceValues<Real> t;
  for (const Real& lambda : eigs) {
    if (lambda == 0) throw Error(ErrorCode::InvalidSpectralData, "zero eigenvalue");
    const Real inv = 1 / lambda;
    t.sum_inv_lambda += inv;
    t.sum_inv_lambda_sq += inv * inv;
  }
  return t;
}

/// The conserved pair I1 = int d omega, I2 = int u d omega + int d upsilon.
template <RealScalar Real>
struct ConservedQuantities {
  Real i1 = 0;
  Real i2 = 0;
};

template <RealScalar Real>
ConservedQuantities<Real> measure_moments(const DiscreteMeasurePair<Real>& m) {
  using std::exp;
  using std::abs;
  ConservedQuantities<Real> q;
  for (std::size_t n = 0; n < m.size(); ++n) {
    q.i1 += m.omega[n];
    q.i2 += m.upsilon[n];
    // u(x_n) = 1/2 sum_k omega_k exp(-|x_n - x_k|)
    Real u = 0;
    for (std::size_t k = 0; k < m.size(); ++k) u += m.omega[k] * exp(-abs(m.positions[n] - m.positions[k]));
    q.i2 += m.omega[n] * u / 2;
  }
  return q;
}

/// M(z) = z sum gamma^-2 / (lambda (lambda - z)).
template <RealScalar Real>
Complex<Real> weyl_partial_fraction(const SpectralData<Real>& s, const Complex<Real>& z) {
  Complex<Real> acc;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Complex<Real> gap = Complex<Real>(s.eigenvalues[i]) - z;
    if (gap.is_zero()) throw Error(ErrorCode::PoleHit, "z is an eigenvalue");
    acc = acc + Complex<Real>(1 / (s.norming[i] * s.eigenvalues[i])) / gap;
  }
  return z * acc;
}

/// Coefficients of the finite continued fraction of M: lengths l_0..l_N (in
/// tanh(x/2) / 2 coordinates, summing to one) and m_n(z) = (z omega_n + z^2 upsilon_n) 4 cosh^2(x_n / 2).
template <RealScalar Real>
struct ContinuedFractionCoefficients {
  std::vector<Real> lengths;
  std::vector<RealPolynomial<Real>> polys;
};

template <RealScalar Real>
ContinuedFractionCoefficients<Real> continued_fraction_coefficients(const DiscreteMeasurePair<Real>& m) {
  using std::cosh;
  using std::exp;
  using std::sinh;
  ContinuedFractionCoefficients<Real> cf;
  const std::size_t n_atoms = m.size();
  if (n_atoms == 0) {
    cf.lengths.push_back(Real(1));
    return cf;
  }
  cf.lengths.push_back(1 / (1 + exp(-m.positions.front())));
  for (std::size_t n = 0; n + 1 < n_atoms; ++n) {
    const Real& a = m.positions[n];
    const Real& b = m.positions[n + 1];
    cf.lengths.push_back(sinh((b - a) / 2) / (2 * cosh(a / 2) * cosh(b / 2)));
  }
  cf.lengths.push_back(1 / (1 + exp(m.positions.back())));
  for (std::size_t n = 0; n < n_atoms; ++n) {
    const Real c = cosh(m.positions[n] / 2);
    const Real scale = 4 * c * c;
    cf.polys.emplace_back(std::vector<Real>{Real(0), m.omega[n] * scale, m.upsilon[n] * scale});
  }
  return cf;
}

/// M(z) = 1 + 1/(-l_N + 1/(m_N(z) + ... + 1/(-l_1 + 1/(m_1(z) - 1/l_0)))).
template <RealScalar Real>
Complex<Real> weyl_continued_fraction(const DiscreteMeasurePair<Real>& m, const Complex<Real>& z) {
  using C = Complex<Real>;
  const ContinuedFractionCoefficients<Real> cf = continued_fraction_coefficients(m);
  C tail(-1 / cf.lengths[0]);
  for (std::size_t n = 1; n < cf.lengths.size(); ++n) {
    const C denom = cf.polys[n - 1].evaluate(z) + tail;
    if (denom.is_zero()) throw Error(ErrorCode::DivisionByZeroInFraction, "m_n(z) + tail vanished");
    const C inner = C(-cf.lengths[n]) + C(Real(1)) / denom;
    if (inner.is_zero()) throw Error(ErrorCode::DivisionByZeroInFraction, "-l_n + 1/(...) vanished");
    tail = C(Real(1)) / inner;
  }
  return C(Real(1)) + tail;
}

}  // namespace chpeakon
