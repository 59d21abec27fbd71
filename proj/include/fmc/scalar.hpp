#pragma once

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

namespace fmc {

enum class ScalarDomain { boolean, rational, floating };

constexpr std::string_view to_string(ScalarDomain d) {
  switch (d) {
    case ScalarDomain::boolean: return "boolean";
    case ScalarDomain::rational: return "rational";
    case ScalarDomain::floating: return "float";
  }
  return "unknown";
}

/// Element of the boolean semiring: + is OR, * is AND.
struct Boolean {
  bool value = false;

  constexpr Boolean() = default;
  constexpr Boolean(bool v) : value(v) {}  // NOLINT(google-explicit-constructor)

  constexpr explicit operator bool() const { return value; }

  friend constexpr Boolean operator+(Boolean a, Boolean b) { return {a.value || b.value}; }
  friend constexpr Boolean operator*(Boolean a, Boolean b) { return {a.value && b.value}; }
  constexpr Boolean& operator+=(Boolean b) {
    value = value || b.value;
    return *this;
  }
  friend constexpr bool operator==(Boolean, Boolean) = default;
};

/// Exact rational; GMP keeps every value in lowest terms after each operation.
using Rational = mpq_class;

template <typename T>
struct scalar_traits;

template <>
struct scalar_traits<Boolean> {
  static constexpr ScalarDomain domain = ScalarDomain::boolean;
  static constexpr bool idempotent_add = true;
  static Boolean zero() { return false; }
  static Boolean one() { return true; }
  static bool nonzero(Boolean x) { return x.value; }
  static double to_double(Boolean x) { return x.value ? 1.0 : 0.0; }
};

template <>
struct scalar_traits<Rational> {
  static constexpr ScalarDomain domain = ScalarDomain::rational;
  static constexpr bool idempotent_add = false;
  static Rational zero() { return 0; }
  static Rational one() { return 1; }
  static bool nonzero(const Rational& x) { return sgn(x) != 0; }
  static double to_double(const Rational& x) { return x.get_d(); }
};

template <>
struct scalar_traits<double> {
  static constexpr ScalarDomain domain = ScalarDomain::floating;
  static constexpr bool idempotent_add = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static bool nonzero(double x) { return x != 0.0; }
  static double to_double(double x) { return x; }
};

template <typename T>
concept Semiring = requires(const T& a, const T& b) {
  { scalar_traits<T>::zero() } -> std::convertible_to<T>;
  { scalar_traits<T>::one() } -> std::convertible_to<T>;
  { a + b };
  { a * b };
};

/// Numeric domains that support subtraction and division.
template <typename T>
concept Field = Semiring<T> && (std::same_as<T, Rational> || std::same_as<T, double>);

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Exact value of a decimal literal such as "0.25", "-3", "1.5e-3". Returns
/// false if `text` is not a finite decimal number.
inline bool parse_decimal_exact(std::string_view text, Rational& out) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long fraction_digits = 0;
  bool any_digit = false;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    digits.push_back(text[pos++]);
    any_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      digits.push_back(text[pos++]);
      ++fraction_digits;
      any_digit = true;
    }
  }
  if (!any_digit) return false;
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size()) return false;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      exponent = exponent * 10 + (text[pos++] - '0');
      if (exponent > 100000) return false;
    }
    if (exp_negative) exponent = -exponent;
  }
  if (pos != text.size()) return false;

  mpz_class mantissa(digits, 10);
  long scale = exponent - fraction_digits;
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  if (scale >= 0) {
    out = Rational(mantissa * ten_pow);
  } else {
    out = Rational(mantissa, ten_pow);
    out.canonicalize();
  }
  if (negative) out = -out;
  return true;
}

}  // namespace fmc
