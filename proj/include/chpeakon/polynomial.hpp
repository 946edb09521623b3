#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "chpeakon/errors.hpp"
#include "chpeakon/real.hpp"
#include "chpeakon/root_refine.hpp"

namespace chpeakon {

/// Dense real polynomial, constant term first. Exact trailing zeros are trimmed,
/// so the leading stored coefficient is nonzero unless the polynomial is zero.
template <RealScalar Real = real>
class RealPolynomial {
 public:
  RealPolynomial() = default;
  explicit RealPolynomial(std::vector<Real> coefficients) : c_(std::move(coefficients)) { trim(); }

  static RealPolynomial constant(Real value) { return RealPolynomial(std::vector<Real>{std::move(value)}); }

  /// value * z^power
  static RealPolynomial monomial(Real value, std::size_t power) {
    std::vector<Real> c(power + 1, Real(0));
    c[power] = std::move(value);
    return RealPolynomial(std::move(c));
  }

  const std::vector<Real>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Real coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : Real(0); }
  const Real& leading() const { return c_.back(); }

  template <class Z>
  Z evaluate(const Z& z) const {
    Z acc = Z(Real(0));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + Z(*it);
    return acc;
  }
  Real operator()(const Real& z) const { return evaluate(z); }

  /// (p(z), p'(z)) in one Horner pass.
  std::pair<Real, Real> value_and_derivative(const Real& z) const {
    Real p = 0, dp = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      dp = dp * z + p;
      p = p * z + *it;
    }
    return {p, dp};
  }

  RealPolynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Real> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
    return RealPolynomial(std::move(d));
  }

  /// Drops every coefficient above `max_degree`.
  RealPolynomial truncated(std::size_t max_degree) const {
    if (c_.size() <= max_degree + 1) return *this;
    return RealPolynomial(std::vector<Real>(c_.begin(), c_.begin() + static_cast<long>(max_degree) + 1));
  }

  friend RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b) {
    std::vector<Real> c(std::max(a.c_.size(), b.c_.size()), Real(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return RealPolynomial(std::move(c));
  }

  friend RealPolynomial operator-(const RealPolynomial& a) {
    std::vector<Real> c(a.c_);
    for (auto& x : c) x = -x;
    return RealPolynomial(std::move(c));
  }

  friend RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b) { return a + (-b); }

  friend RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Real> c(a.c_.size() + b.c_.size() - 1, Real(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return RealPolynomial(std::move(c));
  }

  friend RealPolynomial operator*(const Real& s, const RealPolynomial& a) {
    std::vector<Real> c(a.c_);
    for (auto& x : c) x *= s;
    return RealPolynomial(std::move(c));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Real> c_;
};

/// Every root lies in [-B, B] with B = 1 + max_k |a_k / a_d|.
template <RealScalar Real>
Real cauchy_bound(const RealPolynomial<Real>& p) {
  using std::abs;
  Real m = 0;
  const auto& c = p.coefficients();
  for (std::size_t k = 0; k + 1 < c.size(); ++k) m = std::max(m, abs(c[k] / c.back()));
  return 1 + m;
}

/// Roots of a polynomial known to have only real, simple roots, ascending.
///
/// Isolation is by Rolle: the roots of p' (real and simple as well) split the
/// Cauchy interval into pieces on which p is monotone, so each piece holds at
/// most one root, detected by a sign change and polished by safeguarded Newton.
/// Throws RootIsolationFailure when fewer than deg(p) sign changes are found.
template <RealScalar Real>
std::vector<Real> real_simple_roots(const RealPolynomial<Real>& p) {
  const int d = p.degree();
  if (d <= 0) return {};
  if (d == 1) return {-p.coefficient(0) / p.coefficient(1)};

  const std::vector<Real> critical = real_simple_roots(p.derivative());
  const Real bound = cauchy_bound(p);
  std::vector<Real> breaks;
  breaks.reserve(critical.size() + 2);
  breaks.push_back(-bound);
  for (const Real& c : critical) breaks.push_back(c);
  breaks.push_back(bound);

  auto f = [&p](const Real& z) { return p.value_and_derivative(z); };
  std::vector<Real> roots;
  roots.reserve(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const Real fa = p(breaks[i]);
    const Real fb = p(breaks[i + 1]);
    if (fa == 0 || fb == 0)
      throw Error(ErrorCode::RootIsolationFailure, "root coincides with a critical point");
    if ((fa > 0) != (fb > 0)) roots.push_back(refine_bracketed_root(f, breaks[i], breaks[i + 1]));
  }
  if (roots.size() != static_cast<std::size_t>(d))
    throw Error(ErrorCode::RootIsolationFailure,
                "found " + std::to_string(roots.size()) + " real roots of a degree " + std::to_string(d) +
                    " polynomial");
  return roots;
}

}  // namespace chpeakon
