#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace minsos {

using Rational = mpq_class;
using Complex = std::complex<double>;

// Coefficient traits shared by the exact and floating polynomial types.
template <class T>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
  static bool is_zero(const Rational& c) { return sgn(c) == 0; }
  static double magnitude(const Rational& c) { return std::abs(c.get_d()); }
  static Complex to_complex(const Rational& c) { return {c.get_d(), 0.0}; }
  static constexpr bool exact = true;
};

template <>
struct CoeffTraits<double> {
  static bool is_zero(double c) { return c == 0.0; }
  static double magnitude(double c) { return std::abs(c); }
  static Complex to_complex(double c) { return {c, 0.0}; }
  static constexpr bool exact = false;
};

template <>
struct CoeffTraits<Complex> {
  static bool is_zero(const Complex& c) { return c == Complex(0.0, 0.0); }
  static double magnitude(const Complex& c) { return std::abs(c); }
  static Complex to_complex(const Complex& c) { return c; }
  static constexpr bool exact = false;
};

// Explicit coefficient conversion; exact -> float is allowed, the reverse is not.
template <class To, class From>
To convert_coeff(const From& c);

template <>
inline Rational convert_coeff<Rational, Rational>(const Rational& c) { return c; }
template <>
inline double convert_coeff<double, Rational>(const Rational& c) { return c.get_d(); }
template <>
inline Complex convert_coeff<Complex, Rational>(const Rational& c) { return {c.get_d(), 0.0}; }
template <>
inline double convert_coeff<double, double>(const double& c) { return c; }
template <>
inline Complex convert_coeff<Complex, double>(const double& c) { return {c, 0.0}; }
template <>
inline Complex convert_coeff<Complex, Complex>(const Complex& c) { return c; }

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p", "p/q" or a decimal-free integer string.
Rational parse_rational(const std::string& text);

// Best rational approximation with denominator <= max_den via continued
// fractions; empty when no such approximation lies within tol of x.
std::optional<Rational> rationalize(double x, long max_den, double tol);

}  // namespace minsos
