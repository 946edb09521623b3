#pragma once

// Scalar plumbing: the default multiprecision real, precision control, and the
// small set of traits the algorithms need to stay generic over `double`.

#include <charconv>
#include <cmath>
#include <concepts>
#include <limits>
#include <string>
#include <type_traits>

#include <boost/multiprecision/mpfr.hpp>

namespace chpeakon {

using real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline constexpr unsigned default_precision_bits = 200;
inline constexpr unsigned minimum_precision_bits = 64;

/// Relative tolerance of every internal cross-check at the default precision.
inline constexpr double default_relative_tolerance = 1e-9;

/// ceil(bits * log10(2)).
constexpr unsigned bits_to_digits10(unsigned bits) { return (bits * 30103u + 99999u) / 100000u; }

namespace detail {
inline const bool default_precision_installed = [] {
  real::default_precision(bits_to_digits10(default_precision_bits));
  return true;
}();
}  // namespace detail

/// Working precision (bits) for `real` values created without an explicit precision.
inline unsigned working_precision_bits() {
  return static_cast<unsigned>(std::ceil(real::default_precision() / 0.30102999566398120));
}

/// RAII override of the global default precision. The default is process-wide
/// state: set it before spawning threads, never concurrently with computation.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits) : saved_digits_(real::default_precision()) {
    real::default_precision(bits_to_digits10(bits));
  }
  ~PrecisionScope() { real::default_precision(saved_digits_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits_;
};

template <class T>
struct is_multiprecision : std::false_type {};
template <class Backend, boost::multiprecision::expression_template_option ET>
struct is_multiprecision<boost::multiprecision::number<Backend, ET>> : std::true_type {};

template <class T>
concept RealScalar = std::floating_point<T> || is_multiprecision<T>::value;

/// Decimal digits carried by a value.
template <RealScalar Real>
unsigned digits10_of(const Real& x) {
  if constexpr (std::floating_point<Real>) {
    (void)x;
    return std::numeric_limits<Real>::digits10;
  } else {
    return x.precision();
  }
}

/// Copy of `x` carried at `digits10` decimal digits (identity for hardware floats).
template <RealScalar Real>
Real with_digits10(const Real& x, unsigned digits10) {
  if constexpr (std::floating_point<Real>) {
    (void)digits10;
    return x;
  } else {
    return Real(x, digits10);
  }
}

/// Unit roundoff matching the precision of `like`.
template <RealScalar Real>
Real unit_roundoff(const Real& like) {
  if constexpr (std::floating_point<Real>) {
    (void)like;
    return std::numeric_limits<Real>::epsilon();
  } else {
    using std::pow;
    return pow(Real(10, like.precision()), -static_cast<int>(like.precision()));
  }
}

template <RealScalar Real>
Real from_double(double v) {
  return Real(v);
}

/// Parses a decimal literal at the current working precision.
template <RealScalar Real>
Real parse_real(const std::string& text) {
  if constexpr (std::floating_point<Real>) {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing characters in number: " + text);
    return static_cast<Real>(v);
  } else {
    return Real(text);
  }
}

template <RealScalar Real>
double to_double(const Real& x) {
  return static_cast<double>(x);
}

/// Shortest decimal that survives a round trip, capped at `max_significant` digits.
template <RealScalar Real>
std::string format_real(const Real& x, unsigned max_significant = 25) {
  if constexpr (std::floating_point<Real>) {
    // A double never needs more than 17 significant digits.
    (void)max_significant;
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, static_cast<double>(x));
    (void)ec;
    return std::string(buf, end);
  } else {
    const unsigned digits = std::min<unsigned>(max_significant, x.precision());
    std::string s = x.str(static_cast<std::streamsize>(digits), std::ios_base::fmtflags(0));
    if (s == "-0") s = "0";
    return s;
  }
}

}  // namespace chpeakon
