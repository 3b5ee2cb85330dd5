#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "fpcount/approx_float.hpp"
#include "fpcount/bigint.hpp"

namespace fpcount {

/// Arithmetic policies driving the counting recurrences. `scalar` is applied
/// exactly once to every exact coefficient before it enters a product.

struct ExactArithmetic {
  using value_type = BigInt;

  std::optional<int> precision() const { return std::nullopt; }
  BigInt zero() const { return 0; }
  BigInt one() const { return 1; }
  BigInt scalar(const BigInt& x) const { return x; }
  BigInt power_of_two(std::uint64_t e) const { return pow2_int(e); }
  BigInt add(const BigInt& a, const BigInt& b) const { return a + b; }
  BigInt mul(const BigInt& a, const BigInt& b) const { return a * b; }

  // value * num / den; the division must be exact.
  BigInt scale(const BigInt& value, const BigInt& num, const BigInt& den) const {
    BigInt q;
    BigInt r;
    boost::multiprecision::divide_qr(BigInt(value * num), den, q, r);
    if (!r.is_zero()) throw std::logic_error("ExactArithmetic::scale: inexact division");
    return q;
  }
};

class TruncatingArithmetic {
 public:
  using value_type = ApproxFloat;

  explicit TruncatingArithmetic(int precision) : t_(precision) {
    if (precision < 1) throw std::invalid_argument("precision must be positive");
  }

  std::optional<int> precision() const { return t_; }
  ApproxFloat zero() const { return ApproxFloat::zero(t_); }
  ApproxFloat one() const { return ApproxFloat::one(t_); }
  ApproxFloat scalar(const BigInt& x) const { return ApproxFloat::truncate(x, t_); }
  ApproxFloat power_of_two(std::uint64_t e) const { return ApproxFloat::pow2(e, t_); }
  ApproxFloat add(const ApproxFloat& a, const ApproxFloat& b) const { return fpcount::add(a, b); }
  ApproxFloat mul(const ApproxFloat& a, const ApproxFloat& b) const { return fpcount::mul(a, b); }

  // fl(num / den) (x) value
  ApproxFloat scale(const ApproxFloat& value, const BigInt& num, const BigInt& den) const {
    return fpcount::mul(ApproxFloat::truncate_ratio(num, den, t_), value);
  }

 private:
  int t_;
};

}  // namespace fpcount
