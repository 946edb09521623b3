#pragma once

// Time evolution in spectral coordinates. Eigenvalues are frozen and
// gamma^2(t) = exp(-(t - t0)/(2 lambda)) gamma^2(t0), so every Hankel entry is an
// explicit exponential sum in t. Collisions are the zeros of Delta_{1,k}(t).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chpeakon/errors.hpp"
#include "chpeakon/forward_spectral.hpp"
#include "chpeakon/inverse_spectral.hpp"
#include "chpeakon/real.hpp"
#include "chpeakon/root_refine.hpp"
#include "chpeakon/types.hpp"

namespace chpeakon {

template <RealScalar Real>
SpectralData<Real> evolve_spectral(const SpectralData<Real>& s, const Real& t) {
  using std::exp;
  SpectralData<Real> out = s;
  const Real dt = t - s.base_time;
  for (std::size_t i = 0; i < s.size(); ++i) out.norming[i] = exp(-dt / (2 * s.eigenvalues[i])) * s.norming[i];
  out.base_time = t;
  return out;
}

/// f(t) = sum_i coefficient_i exp(rate_i (t - base_time)).
template <RealScalar Real = real>
struct ExponentialSum {
  struct Term {
    Real coefficient;
    Real rate;
  };
  std::vector<Term> terms;
  Real base_time = 0;

  Real operator()(const Real& t) const { return value_and_derivative(t).first; }

  std::pair<Real, Real> value_and_derivative(const Real& t) const {
    using std::exp;
    const Real tau = t - base_time;
    Real v = tau * 0, dv = tau * 0;
    for (const Term& term : terms) {
      const Real e = term.coefficient * exp(term.rate * tau);
      v += e;
      dv += term.rate * e;
    }
    return {v, dv};
  }

  /// sum_i |coefficient_i| exp(rate_i tau): the natural size of f at t.
  Real magnitude(const Real& t) const {
    using std::abs;
    using std::exp;
    const Real tau = t - base_time;
    Real m = tau * 0;
    for (const Term& term : terms) m += abs(term.coefficient) * exp(term.rate * tau);
    return m;
  }
};

inline constexpr std::size_t max_collision_scan_spectrum = 16;

/// Delta_{1,k}(t) = sum_{|J|=k} (Lambda_J / Gamma_J) exp((t - t0) Sigma_J), with
/// Lambda_J = prod_{lambda<kappa in J} (lambda - kappa)^2, Gamma_J = prod_J gamma^2(t0)
/// and Sigma_J = sum_J 1/(2 lambda).
template <RealScalar Real>
ExponentialSum<Real> delta1_exponential_sum(const SpectralData<Real>& s, std::size_t k) {
  const std::size_t n = s.size();
  if (k < 1 || k > n) throw Error(ErrorCode::InvalidArgument, "k must lie in 1..|sigma|");
  if (n > max_collision_scan_spectrum)
    throw Error(ErrorCode::InvalidArgument,
                "subset enumeration is limited to |sigma| <= " + std::to_string(max_collision_scan_spectrum));
  ExponentialSum<Real> sum;
  sum.base_time = s.base_time;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    Real coefficient = s.eigenvalues[idx[0]] * 0 + 1;
    Real rate = coefficient * 0;
    for (std::size_t a = 0; a < k; ++a) {
      const Real& la = s.eigenvalues[idx[a]];
      coefficient /= s.norming[idx[a]];
      rate += 1 / (2 * la);
      for (std::size_t b = a + 1; b < k; ++b) {
        const Real d = la - s.eigenvalues[idx[b]];
        coefficient *= d * d;
      }
    }
    sum.terms.push_back({std::move(coefficient), std::move(rate)});
    // next combination in lexicographic order
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return sum;
}

template <RealScalar Real>
struct CollisionEvent {
  Real time;
  std::vector<std::size_t> vanishing_k;  // k with Delta_{1,k}(time) = 0
  bool tangential = false;               // some Delta_{1,k} touches zero without changing sign
  MeasureSnapshot<Real> snapshot;
};

template <RealScalar Real>
struct CollisionReport {
  std::vector<CollisionEvent<Real>> events;
  Real window_lo = 0;  // every collision lies in [window_lo, window_hi]
  Real window_hi = 0;

  std::vector<Real> times() const {
    std::vector<Real> t;
    for (const auto& e : events) t.push_back(e.time);
    return t;
  }
};

namespace detail {

/// Terms with equal rates (to relative `tol`) are merged; a merged group that
/// cancels to within `tol` of its parts leaves the asymptotics undetermined.
template <RealScalar Real>
ExponentialSum<Real> merge_equal_rates(ExponentialSum<Real> f, const Real& tol) {
  using std::abs;
  std::sort(f.terms.begin(), f.terms.end(), [](const auto& a, const auto& b) { return a.rate < b.rate; });
  ExponentialSum<Real> out;
  out.base_time = f.base_time;
  for (std::size_t i = 0; i < f.terms.size();) {
    Real coefficient = f.terms[i].coefficient;
    Real largest = abs(coefficient);
    const Real rate = f.terms[i].rate;
    const Real rate_scale = std::max(abs(rate), Real(1));
    std::size_t j = i + 1;
    for (; j < f.terms.size() && abs(f.terms[j].rate - rate) <= tol * rate_scale; ++j) {
      coefficient += f.terms[j].coefficient;
      largest = std::max(largest, abs(f.terms[j].coefficient));
    }
    if (j - i > 1 && abs(coefficient) <= tol * largest)
      throw Error(ErrorCode::WindowDerivationFailure,
                  "terms sharing the rate " + format_real(rate, 12) + " cancel; dominant term is undetermined");
    out.terms.push_back({std::move(coefficient), rate});
    i = j;
  }
  return out;
}

/// [tau_-, tau_+] outside which the extreme-rate term exceeds all others combined.
template <RealScalar Real>
std::pair<Real, Real> dominance_window(const ExponentialSum<Real>& f) {
  using std::abs;
  using std::log;
  const std::size_t m = f.terms.size();
  Real lo = f.base_time * 0, hi = lo;
  if (m < 2) return {lo, hi};
  const auto& first = f.terms.front();
  const auto& last = f.terms.back();
  const Real factor = 2 * static_cast<double>(m);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const auto& term = f.terms[i];
    hi = std::max(hi, log(factor * abs(term.coefficient) / abs(last.coefficient)) / (last.rate - term.rate));
  }
  for (std::size_t i = 1; i < m; ++i) {
    const auto& term = f.terms[i];
    lo = std::min(lo, -log(factor * abs(term.coefficient) / abs(first.coefficient)) / (term.rate - first.rate));
  }
  return {lo, hi};
}

template <RealScalar Real>
struct RootHit {
  Real tau;
  bool tangential;
};

/// Zeros of g(tau) = sum c_i exp(r_i tau) on [lo, hi] for sorted, distinct rates.
///
/// exp(-r_0 tau) g has derivative sum_{i>0} c_i (r_i - r_0) exp((r_i - r_0) tau),
/// one term shorter; its zeros cut [lo, hi] into pieces where g is monotone.
template <RealScalar Real>
std::vector<RootHit<Real>> exponential_sum_zeros(const std::vector<typename ExponentialSum<Real>::Term>& terms,
                                                 const Real& lo, const Real& hi, const Real& zero_tol) {
  using std::abs;
  using std::exp;
  std::vector<RootHit<Real>> roots;
  if (terms.size() < 2) return roots;

  std::vector<typename ExponentialSum<Real>::Term> reduced;
  const Real& r0 = terms.front().rate;
  for (std::size_t i = 1; i < terms.size(); ++i)
    reduced.push_back({terms[i].coefficient * (terms[i].rate - r0), terms[i].rate - r0});
  std::vector<Real> breaks{lo};
  for (const auto& c : exponential_sum_zeros<Real>(reduced, lo, hi, zero_tol)) breaks.push_back(c.tau);
  breaks.push_back(hi);

  auto eval = [&terms, &r0](const Real& tau) {
    Real v = tau * 0, dv = tau * 0, mag = tau * 0;
    for (const auto& t : terms) {
      const Real e = exp((t.rate - r0) * tau);
      v += t.coefficient * e;
      dv += t.coefficient * (t.rate - r0) * e;
      mag += abs(t.coefficient) * e;
    }
    return std::array<Real, 3>{v, dv, mag};
  };

  std::vector<Real> values;
  std::vector<bool> null;
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    const auto [v, dv, mag] = eval(breaks[i]);
    const bool interior = i > 0 && i + 1 < breaks.size();
    const bool touches = interior && abs(v) <= zero_tol * mag;
    if (touches) roots.push_back({breaks[i], true});
    values.push_back(v);
    null.push_back(touches);
  }
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (null[i] || null[i + 1] || values[i] == 0 || values[i + 1] == 0) continue;
    if ((values[i] > 0) == (values[i + 1] > 0)) continue;
    auto f = [&eval](const Real& tau) {
      const auto r = eval(tau);
      return std::pair<Real, Real>{r[0], r[1]};
    };
    roots.push_back({refine_bracketed_root(f, breaks[i], breaks[i + 1]), false});
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return a.tau < b.tau; });
  return roots;
}

/// Fallback for long sums: sign-change grid plus a check of |g| minima for tangential zeros.
template <RealScalar Real>
std::vector<RootHit<Real>> exponential_sum_zeros_grid(const ExponentialSum<Real>& f, const Real& lo,
                                                      const Real& hi, const Real& step, const Real& zero_tol) {
  using std::abs;
  std::vector<RootHit<Real>> roots;
  ExponentialSum<Real> df = f;
  for (auto& term : df.terms) term.coefficient *= term.rate;
  auto at = [&f](const Real& tau) { return f.value_and_derivative(f.base_time + tau); };
  Real a = lo;
  auto [fa, dfa] = at(a);
  while (a < hi) {
    Real b = std::min<Real>(a + step, hi);
    auto [fb, dfb] = at(b);
    if (fa != 0 && fb != 0 && (fa > 0) != (fb > 0)) {
      roots.push_back({refine_bracketed_root(at, a, b), false});
    } else if ((dfa > 0) != (dfb > 0) && dfa != 0 && dfb != 0) {
      // |f| has an interior extremum; a tangential zero shows up as f' changing sign at f ~ 0.
      const Real c = refine_bracketed_root([&df](const Real& tau) { return df.value_and_derivative(df.base_time + tau); },
                                           a, b);
      if (abs(f(f.base_time + c)) <= zero_tol * f.magnitude(f.base_time + c)) roots.push_back({c, true});
    }
    a = std::move(b);
    fa = std::move(fb);
    dfa = std::move(dfb);
  }
  return roots;
}

inline constexpr std::size_t max_rolle_terms = 24;

}  // namespace detail

/// Solution at time t: reconstruct(evolve_spectral(s, t)).
template <RealScalar Real>
MeasureSnapshot<Real> solve_at(const SpectralData<Real>& s, const Real& t) {
  return reconstruct(evolve_spectral(s, t));
}

/// (I1, I2) = (sum 1/lambda, 1/2 sum 1/lambda^2), independent of time.
template <RealScalar Real>
ConservedQuantities<Real> conserved_quantities(const SpectralData<Real>& s) {
  const TraceValues<Real> t = trace_values(s.eigenvalues);
  return {t.sum_inv_lambda, t.sum_inv_lambda_sq / 2};
}

/// Every time at which some Delta_{1,k}(t), 1 <= k < |sigma|, vanishes.
///
/// The search interval is derived per k from coefficient/rate dominance, so the
/// report is complete. `window`, when given, only filters the output.
template <RealScalar Real>
CollisionReport<Real> collision_times(const SpectralData<Real>& s,
                                      const std::optional<std::pair<Real, Real>>& window = std::nullopt) {
  using std::abs;
  using std::sqrt;
  CollisionReport<Real> report;
  report.window_lo = s.base_time;
  report.window_hi = s.base_time;
  if (s.size() < 2) return report;

  const Real one = s.norming.front() * 0 + 1;
  const Real tol = zero_threshold(one);
  Real min_abs_lambda = abs(s.eigenvalues.front());
  for (const Real& l : s.eigenvalues) min_abs_lambda = std::min(min_abs_lambda, abs(l));

  struct Hit {
    Real time;
    std::size_t k;
    bool tangential;
  };
  std::vector<Hit> hits;
  for (std::size_t k = 1; k < s.size(); ++k) {
    const ExponentialSum<Real> f = detail::merge_equal_rates(delta1_exponential_sum(s, k), tol);
    if (f.terms.size() < 2) continue;
    auto [lo, hi] = detail::dominance_window(f);
    report.window_lo = std::min(report.window_lo, s.base_time + lo);
    report.window_hi = std::max(report.window_hi, s.base_time + hi);
    std::vector<detail::RootHit<Real>> roots =
        f.terms.size() <= detail::max_rolle_terms
            ? detail::exponential_sum_zeros<Real>(f.terms, lo, hi, tol)
            : detail::exponential_sum_zeros_grid(f, lo, hi, Real(min_abs_lambda / 5), tol);
    for (auto& r : roots) hits.push_back({s.base_time + r.tau, k, r.tangential});
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.time < b.time; });

  const Real merge_tol = sqrt(tol);
  for (const Hit& h : hits) {
    if (window && (h.time < window->first || h.time > window->second)) continue;
    if (!report.events.empty() &&
        abs(report.events.back().time - h.time) <= merge_tol * std::max(Real(1), abs(h.time))) {
      auto& e = report.events.back();
      e.vanishing_k.push_back(h.k);
      e.tangential = e.tangential || h.tangential;
      continue;
    }
    report.events.push_back({h.time, {h.k}, h.tangential, {}});
  }
  for (auto& e : report.events) e.snapshot = solve_at(s, e.time);
  return report;
}

}  // namespace chpeakon
