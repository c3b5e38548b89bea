#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <string>
#include <type_traits>

namespace tenspec {

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};
template <class T>
inline constexpr bool is_complex_v = is_complex<T>::value;

/// Result scalar of an operation mixing two scalar kinds: complex wins.
template <class A, class B>
using common_scalar_t =
    std::conditional_t<is_complex_v<A> || is_complex_v<B>,
                       std::complex<double>, double>;

inline double abs_value(double x) { return std::fabs(x); }
inline double abs_value(const std::complex<double>& z) { return std::abs(z); }

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const std::complex<double>& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline std::complex<double> to_complex(double x) { return {x, 0.0}; }
inline std::complex<double> to_complex(const std::complex<double>& z) { return z; }

/// True when x holds an integer exactly representable in both double and
/// int64 (|x| below 2^53 keeps double sums of such values exact).
inline bool is_exact_integer(double x) {
  return std::isfinite(x) && x == std::nearbyint(x) && std::fabs(x) < 9007199254740992.0;
}
inline bool is_exact_integer(const std::complex<double>& z) {
  return z.imag() == 0.0 && is_exact_integer(z.real());
}

/// Unreduced integer fraction, used to report quotient bounds bit-exactly
/// (e.g. 621/81 is kept as written, not reduced to 23/3).
struct Fraction {
  long long num = 0;
  long long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string str() const {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%lld/%lld", num, den);
    return buf;
  }

  friend bool operator==(const Fraction& a, const Fraction& b) = default;
};

}  // namespace tenspec
