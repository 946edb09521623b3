#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "chpeakon/real.hpp"

namespace chpeakon {

/// Determinant of a dense square matrix (row-major, n x n) by fraction-free
/// Bareiss elimination with partial pivoting. Each intermediate entry is itself
/// a minor of the input, which keeps ill-conditioned Hankel determinants honest.
template <RealScalar Real>
Real bareiss_determinant(std::vector<Real> a, std::size_t n) {
  using std::abs;
  if (n == 0) return Real(1);
  Real sign = 1;
  Real prev = 1;
  auto at = [&a, n](std::size_t r, std::size_t c) -> Real& { return a[r * n + c]; };
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (abs(at(r, k)) > abs(at(pivot, k))) pivot = r;
    if (at(pivot, k) == 0) return Real(0);
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(at(k, c), at(pivot, c));
      sign = -sign;
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      for (std::size_t c = k + 1; c < n; ++c) at(r, c) = (at(r, c) * at(k, k) - at(r, k) * at(k, c)) / prev;
      at(r, k) = 0;
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

/// det [s_{offset + i + j}]_{i,j < size}, reading s through `moment(index)`.
template <RealScalar Real, class Moment>
Real hankel_determinant(Moment&& moment, int offset, std::size_t size) {
  std::vector<Real> a(size * size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) a[i * size + j] = moment(offset + static_cast<int>(i + j));
  return bareiss_determinant(std::move(a), size);
}

}  // namespace chpeakon
