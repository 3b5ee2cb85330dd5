#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fpcount {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Number of significant bits; 0 for zero.
inline std::uint64_t bit_length(const BigInt& x) {
  if (x.is_zero()) return 0;
  return boost::multiprecision::msb(x) + 1;
}

inline BigInt pow2_int(std::uint64_t e) {
  BigInt r = 1;
  r <<= e;
  return r;
}

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline BigInt parse_bigint(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  for (char c : text) {
    if (c < '0' || c > '9') throw std::invalid_argument("not a nonnegative decimal integer: " + std::string(text));
  }
  return BigInt(std::string(text));
}

// Parses a nonnegative decimal such as "0.01", "1", "2.5e-3" into an exact rational.
inline Rational parse_decimal(std::string_view text) {
  std::string_view mant = text;
  long long exp10 = 0;
  if (auto pos = text.find_first_of("eE"); pos != std::string_view::npos) {
    mant = text.substr(0, pos);
    std::string e(text.substr(pos + 1));
    std::size_t used = 0;
    try {
      exp10 = std::stoll(e, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (e.empty() || used != e.size()) throw std::invalid_argument("malformed decimal: " + std::string(text));
  }
  std::string digits;
  long long frac = 0;
  bool seen_point = false;
  for (char c : mant) {
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_point) ++frac;
    } else {
      throw std::invalid_argument("malformed decimal: " + std::string(text));
    }
  }
  if (digits.empty()) throw std::invalid_argument("malformed decimal: " + std::string(text));
  Rational value{BigInt(digits)};
  long long shift = exp10 - frac;
  BigInt ten = 10;
  if (shift >= 0) {
    value *= boost::multiprecision::pow(ten, static_cast<unsigned>(shift));
  } else {
    value /= boost::multiprecision::pow(ten, static_cast<unsigned>(-shift));
  }
  return value;
}

// Exact rational from a double (every finite double is a dyadic rational).
inline Rational rational_from_double(double x) {
  if (!(x >= 0) || x > 1e300) throw std::invalid_argument("expected a finite nonnegative value");
  int exp = 0;
  double frac = std::frexp(x, &exp);
  // frac * 2^53 is an integer for normal doubles.
  BigInt num = static_cast<std::int64_t>(std::ldexp(frac, 53));
  exp -= 53;
  Rational r{num};
  if (exp >= 0) {
    r *= Rational{pow2_int(static_cast<std::uint64_t>(exp))};
  } else {
    r /= Rational{pow2_int(static_cast<std::uint64_t>(-exp))};
  }
  return r;
}

// Smallest integer j >= 0 with 2^j >= q, for q > 0.
inline std::uint64_t ceil_log2(const Rational& q) {
  if (q <= 0) throw std::invalid_argument("ceil_log2 of a nonpositive value");
  std::uint64_t j = 0;
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  // 2^j * den >= num
  if (num > den) {
    j = bit_length(num) > bit_length(den) ? bit_length(num) - bit_length(den) - 1 : 0;
    while ((den << j) < num) ++j;
  }
  return j;
}

}  // namespace fpcount
