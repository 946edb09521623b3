#pragma once

#include <utility>

#include "chpeakon/errors.hpp"
#include "chpeakon/real.hpp"

namespace chpeakon {

/// Safeguarded Newton iteration on a sign-changing bracket [a, b].
///
/// `f` returns (value, derivative). Newton steps that leave the current
/// bracket fall back to bisection, so convergence is guaranteed; the result is
/// accurate to a few units of roundoff at the working precision of `a`.
template <RealScalar Real, class F>
Real refine_bracketed_root(F&& f, Real a, Real b) {
  using std::abs;
  auto fa = f(a).first;
  auto fb = f(b).first;
  if (fa == 0) return a;
  if (fb == 0) return b;
  if ((fa > 0) == (fb > 0))
    throw Error(ErrorCode::RootIsolationFailure, "bracket does not change sign");
  const bool rising = fb > 0;
  const Real eps = 8 * unit_roundoff(a);
  const unsigned max_iter = 64 + 8 * static_cast<unsigned>(digits10_of(a) * 3.33);

  Real x = (a + b) / 2;
  for (unsigned it = 0; it < max_iter; ++it) {
    const auto [fx, dfx] = f(x);
    if (fx == 0) return x;
    if ((fx > 0) == rising)
      b = x;
    else
      a = x;
    Real next;
    bool newton_ok = dfx != 0;
    if (newton_ok) {
      next = x - fx / dfx;
      newton_ok = next > a && next < b;
    }
    if (!newton_ok) next = (a + b) / 2;
    const Real scale = abs(next) > 1 ? abs(next) : Real(1);
    if (abs(next - x) <= eps * scale || b - a <= eps * scale) return next;
    x = std::move(next);
  }
  return x;
}

}  // namespace chpeakon
