#pragma once

// Minimal complex arithmetic over any RealScalar. std::complex is only
// specified for float/double/long double.

#include "chpeakon/real.hpp"

namespace chpeakon {

template <RealScalar Real = real>
struct Complex {
  Real re = 0;
  Real im = 0;

  Complex() = default;
  Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  Real norm() const { return re * re + im * im; }
  Real abs() const {
    using std::sqrt;
    return sqrt(norm());
  }
  Complex conj() const { return {re, -im}; }
  bool is_zero() const { return re == 0 && im == 0; }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    const Real n = b.norm();
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
};

}  // namespace chpeakon
