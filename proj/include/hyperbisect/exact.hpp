#pragma once

// Exact scalar types shared by the combinatorial and geometric modules.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperbisect {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Input that is well-formed but geometrically degenerate (repeated points,
// affinely dependent sets, zero normals).
class degenerate_input : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline BigInt factorial(std::uint64_t n) {
  BigInt r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  if (r > n - r) r = n - r;
  BigInt acc = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    acc *= n - r + i;
    acc /= i;
  }
  return acc;
}

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

inline BigInt numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

// Always "p/q" with q >= 1, including integers ("3/1").
inline std::string to_fraction_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

namespace detail {

inline BigInt parse_integer(std::string_view s) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    negative = s[i] == '-';
    ++i;
  }
  if (i == s.size()) throw std::invalid_argument("empty integer literal");
  BigInt v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') {
      throw std::invalid_argument("bad digit in '" + std::string(s) + "'");
    }
    v = v * 10 + (s[i] - '0');
  }
  return negative ? BigInt(-v) : v;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace detail

// Accepts "p/q", "n" and finite decimals "-1.25"; the value is exact.
inline Rational parse_rational(std::string_view text) {
  auto s = detail::trim(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt den = detail::parse_integer(detail::trim(s.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    return Rational(detail::parse_integer(detail::trim(s.substr(0, slash))), den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string digits(s.substr(0, dot));
    auto frac = s.substr(dot + 1);
    if (frac.empty() && (digits.empty() || digits == "-" || digits == "+")) {
      throw std::invalid_argument("bad decimal '" + std::string(s) + "'");
    }
    digits += frac;
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    return Rational(detail::parse_integer(digits), scale);
  }
  return Rational(detail::parse_integer(s));
}

}  // namespace hyperbisect
