#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "fpcount/bigint.hpp"

namespace fpcount {

/// A nonnegative value m * 2^(p - t) with a normalized t-bit mantissa m and an
/// exact, unbounded exponent p. Zero is a distinguished value.
///
/// Every operation is "exact dyadic arithmetic, then truncate toward zero", so
/// for any exact x the truncated value y satisfies (1 - 2^(1-t)) x <= y <= x.
/// Values of different precisions never mix.
class ApproxFloat {
 public:
  ApproxFloat() = default;

  static ApproxFloat zero(int precision) {
    check_precision(precision);
    ApproxFloat z;
    z.precision_ = precision;
    return z;
  }

  /// fl(x): keep the leading `precision` bits of x, exponent = bit length of x.
  static ApproxFloat truncate(const BigInt& x, int precision) {
    check_precision(precision);
    if (x < 0) throw std::invalid_argument("ApproxFloat::truncate: negative input");
    ApproxFloat r = zero(precision);
    if (x.is_zero()) return r;
    const std::uint64_t len = bit_length(x);
    const auto t = static_cast<std::uint64_t>(precision);
    r.exponent_ = len;
    r.mantissa_ = len <= t ? BigInt(x << (t - len)) : BigInt(x >> (len - t));
    return r;
  }

  /// fl(num / den) for num, den > 0: the leading bits of the binary expansion.
  static ApproxFloat truncate_ratio(const BigInt& num, const BigInt& den, int precision) {
    check_precision(precision);
    if (num < 0 || den <= 0) throw std::invalid_argument("ApproxFloat::truncate_ratio: bad operands");
    ApproxFloat r = zero(precision);
    if (num.is_zero()) return r;
    // Value lies in [2^(e-1), 2^e) with e = len(num) - len(den) or one more.
    std::int64_t e = static_cast<std::int64_t>(bit_length(num)) - static_cast<std::int64_t>(bit_length(den)) + 1;
    auto scaled_floor = [&](std::int64_t shift) {  // floor(num * 2^shift / den)
      return shift >= 0 ? BigInt((num << static_cast<std::uint64_t>(shift)) / den)
                        : BigInt(num / (den << static_cast<std::uint64_t>(-shift)));
    };
    BigInt m = scaled_floor(precision - e);
    if (bit_length(m) < static_cast<std::uint64_t>(precision)) {
      --e;
      m = scaled_floor(precision - e);
    }
    r.exponent_ = e;
    r.mantissa_ = std::move(m);
    return r;
  }

  /// Exact 2^e: exponent e + 1, mantissa 100...0.
  static ApproxFloat pow2(std::uint64_t e, int precision) {
    check_precision(precision);
    ApproxFloat r = zero(precision);
    r.exponent_ = BigInt(e) + 1;
    r.mantissa_ = pow2_int(static_cast<std::uint64_t>(precision) - 1);
    return r;
  }

  static ApproxFloat one(int precision) { return pow2(0, precision); }

  /// Rebuilds a value from its stored fields; the mantissa must be normalized.
  static ApproxFloat from_fields(const BigInt& exponent, const BigInt& mantissa, int precision) {
    check_precision(precision);
    ApproxFloat r = zero(precision);
    if (mantissa.is_zero()) return r;
    if (bit_length(mantissa) != static_cast<std::uint64_t>(precision)) {
      throw std::invalid_argument("ApproxFloat: mantissa is not normalized to the precision");
    }
    r.exponent_ = exponent;
    r.mantissa_ = mantissa;
    return r;
  }

  bool is_zero() const { return mantissa_.is_zero(); }
  int precision() const { return precision_; }
  const BigInt& exponent() const { return exponent_; }
  const BigInt& mantissa() const { return mantissa_; }

  /// The represented dyadic rational, without rounding.
  Rational exact() const {
    if (is_zero()) return Rational{0};
    const std::int64_t shift = small_exponent() - precision_;
    if (shift >= 0) return Rational{BigInt(mantissa_ << shift)};
    return Rational{mantissa_, pow2_int(static_cast<std::uint64_t>(-shift))};
  }

  /// value * 2^t = m * 2^p, an integer whenever p >= 0 (always true for values >= 1).
  BigInt scaled() const {
    if (is_zero()) return 0;
    const std::int64_t p = small_exponent();
    if (p < 0) throw std::domain_error("ApproxFloat::scaled: value below 2^-t has no integer scaling");
    return mantissa_ << p;
  }

  /// Exact decimal rendering (dyadic rationals terminate in base 10).
  std::string to_decimal() const {
    if (is_zero()) return "0";
    const std::int64_t shift = small_exponent() - precision_;
    if (shift >= 0) return BigInt(mantissa_ << shift).str();
    const auto frac_bits = static_cast<std::uint64_t>(-shift);
    const BigInt whole = mantissa_ >> frac_bits;
    BigInt rem = mantissa_ - (whole << frac_bits);
    // rem / 2^f == rem * 5^f / 10^f
    BigInt scaled_rem = rem * boost::multiprecision::pow(BigInt(5), static_cast<unsigned>(frac_bits));
    std::string digits = scaled_rem.str();
    if (digits.size() < frac_bits) digits.insert(0, frac_bits - digits.size(), '0');
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    std::string out = whole.str();
    if (!digits.empty()) out += "." + digits;
    return out;
  }

  /// Exact hexadecimal rendering, e.g. "0xc" or "0x2.8".
  std::string to_hex() const {
    if (is_zero()) return "0x0";
    const std::int64_t shift = small_exponent() - precision_;
    if (shift >= 0) return "0x" + hex_digits(BigInt(mantissa_ << shift));
    auto frac_bits = static_cast<std::uint64_t>(-shift);
    const std::uint64_t pad = (4 - frac_bits % 4) % 4;
    const BigInt m = mantissa_ << pad;
    frac_bits += pad;
    const BigInt whole = m >> frac_bits;
    const BigInt rem = m - (whole << frac_bits);
    std::string digits = rem.is_zero() ? std::string() : hex_digits(rem);
    const std::size_t want = frac_bits / 4;
    if (digits.size() < want) digits.insert(0, want - digits.size(), '0');
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    std::string out = "0x" + hex_digits(whole);
    if (!digits.empty()) out += "." + digits;
    return out;
  }

  /// Field rendering "p:mantissa-hex"; zero renders as "0:0".
  std::string to_fields_string() const {
    if (is_zero()) return "0:0";
    return exponent_.str() + ":" + hex_digits(mantissa_);
  }

  friend bool operator==(const ApproxFloat& a, const ApproxFloat& b) {
    return a.precision_ == b.precision_ && a.mantissa_ == b.mantissa_ && (a.is_zero() || a.exponent_ == b.exponent_);
  }

  friend std::strong_ordering operator<=>(const ApproxFloat& a, const ApproxFloat& b) {
    require_same_precision(a, b);
    if (a.is_zero() || b.is_zero()) return !a.is_zero() <=> !b.is_zero();
    if (a.exponent_ != b.exponent_) return a.exponent_ < b.exponent_ ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.mantissa_ == b.mantissa_) return std::strong_ordering::equal;
    return a.mantissa_ < b.mantissa_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }

  /// a (+) b = fl(a + b).
  friend ApproxFloat add(const ApproxFloat& a, const ApproxFloat& b) {
    require_same_precision(a, b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const ApproxFloat& hi = a.exponent_ >= b.exponent_ ? a : b;
    const ApproxFloat& lo = a.exponent_ >= b.exponent_ ? b : a;
    const BigInt gap = hi.exponent_ - lo.exponent_;
    // lo < 2^(p_lo) <= one unit in the last place of hi: the sum truncates back to hi.
    if (gap >= hi.precision_) return hi;
    const auto d = static_cast<std::uint64_t>(gap);
    BigInt sum = (hi.mantissa_ << d) + lo.mantissa_;  // units of 2^(p_lo - t)
    return normalize(std::move(sum), lo.exponent_ - lo.precision_, hi.precision_);
  }

  /// a (x) b = fl(a * b).
  friend ApproxFloat mul(const ApproxFloat& a, const ApproxFloat& b) {
    require_same_precision(a, b);
    if (a.is_zero() || b.is_zero()) return zero(a.precision_);
    BigInt prod = a.mantissa_ * b.mantissa_;  // units of 2^(p_a + p_b - 2t)
    return normalize(std::move(prod), a.exponent_ + b.exponent_ - 2 * a.precision_, a.precision_);
  }

 private:
  static void check_precision(int precision) {
    if (precision < 1) throw std::invalid_argument("ApproxFloat: precision must be positive");
  }

  static void require_same_precision(const ApproxFloat& a, const ApproxFloat& b) {
    if (a.precision_ != b.precision_) throw std::invalid_argument("ApproxFloat: mismatched precisions");
  }

  // Truncates value * 2^unit_exp (value > 0) to `precision` bits.
  static ApproxFloat normalize(BigInt value, const BigInt& unit_exp, int precision) {
    ApproxFloat r = zero(precision);
    const std::uint64_t len = bit_length(value);
    const auto t = static_cast<std::uint64_t>(precision);
    r.exponent_ = unit_exp + len;
    r.mantissa_ = len >= t ? BigInt(value >> (len - t)) : BigInt(value << (t - len));
    return r;
  }

  std::int64_t small_exponent() const {
    if (exponent_ > BigInt(INT64_MAX / 4) || exponent_ < BigInt(-(INT64_MAX / 4))) {
      throw std::overflow_error("ApproxFloat: exponent too large to materialize");
    }
    return static_cast<std::int64_t>(exponent_);
  }

  static std::string hex_digits(const BigInt& x) {
    if (x.is_zero()) return "0";
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    BigInt v = x;
    while (!v.is_zero()) {
      out.push_back(kDigits[static_cast<unsigned>(v & 15)]);
      v >>= 4;
    }
    return {out.rbegin(), out.rend()};
  }

  BigInt exponent_ = 0;
  BigInt mantissa_ = 0;
  int precision_ = 1;
};

ApproxFloat add(const ApproxFloat& a, const ApproxFloat& b);
ApproxFloat mul(const ApproxFloat& a, const ApproxFloat& b);

inline Rational to_rational(const ApproxFloat& x) { return x.exact(); }
inline Rational to_rational(const BigInt& x) { return Rational{x}; }

/// Parses the "p:mantissa-hex" field rendering back into a value.
inline ApproxFloat parse_fields(std::string_view text, int precision) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("expected p:mantissa-hex, got " + std::string(text));
  const std::string p(text.substr(0, colon));
  const std::string m(text.substr(colon + 1));
  if (p.empty() || m.empty()) throw std::invalid_argument("expected p:mantissa-hex, got " + std::string(text));
  BigInt exponent;
  BigInt mantissa;
  try {
    exponent = BigInt(p);
    mantissa = BigInt("0x" + m);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected p:mantissa-hex, got " + std::string(text));
  }
  return ApproxFloat::from_fields(exponent, mantissa, precision);
}

}  // namespace fpcount
