#pragma once

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "chpeakon/real.hpp"

namespace chpeakon::testing {

inline real R(const char* text) { return real(text); }

/// |a - b| <= tol * max(|a|, |b|, floor).
template <class A, class B>
::testing::AssertionResult near_relative(const A& a, const B& b, double tol, double floor = 1.0) {
  using std::abs;
  const real x(a);
  const real y(b);
  const real scale = std::max({abs(x), abs(y), real(floor)});
  if (abs(x - y) <= tol * scale) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << format_real(x) << " vs " << format_real(y) << " (diff "
                                       << format_real(abs(x - y), 6) << ", tol " << tol << ")";
}

}  // namespace chpeakon::testing

#define EXPECT_REL(a, b, tol) EXPECT_TRUE(::chpeakon::testing::near_relative((a), (b), (tol)))
#define EXPECT_ERROR_CODE(stmt, expected)                         \
  do {                                                            \
    try {                                                         \
      stmt;                                                       \
      ADD_FAILURE() << "expected " << ::chpeakon::to_string(expected); \
    } catch (const ::chpeakon::Error& e_) {                       \
      EXPECT_EQ(e_.code(), expected) << e_.what();                \
    }                                                             \
  } while (0)
