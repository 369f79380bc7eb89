#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace shortilp {

// Arbitrary-precision integer; objective coefficients grow like n^n, far past
// any fixed-width type.
using BigInt = boost::multiprecision::cpp_int;

// Exact rational; all reported times are rationals, no floating point.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(std::int64_t base, std::int64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp > 0) {
    if (exp & 1) result *= b;
    b *= b;
    exp >>= 1;
  }
  return result;
}

// Serializes a rational as "num/den" in lowest terms (cpp_rational keeps the
// canonical form: positive denominator, gcd 1).
inline std::string format_rational(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "num/den" or a bare integer "num". Returns nullopt on malformed
// input or a zero denominator.
inline std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto slash = text.find('/');
  const std::string num_part = text.substr(0, slash);
  const std::string den_part =
      slash == std::string::npos ? "1" : text.substr(slash + 1);
  auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  if (!is_int(num_part) || !is_int(den_part)) return std::nullopt;
  BigInt num(num_part);
  BigInt den(den_part);
  if (den == 0) return std::nullopt;
  return Rational(num, den);
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd64(a, b) * b;
}

}  // namespace shortilp
