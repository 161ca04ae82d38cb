#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace rarebasis {

using BigInt = boost::multiprecision::cpp_int;

/// Exact dyadic rational m * 2^e with arbitrary-precision mantissa.
/// Normal form: mantissa odd or zero; zero carries exponent 0. All
/// arithmetic is exact; there is no rounding anywhere in this class.
class Dyadic {
 public:
  Dyadic() : mantissa_(0), exponent_(0) {}
  Dyadic(long long value) : mantissa_(value), exponent_(0) { normalize(); }
  Dyadic(BigInt mantissa, std::int64_t exponent)
      : mantissa_(std::move(mantissa)), exponent_(exponent) {
    normalize();
  }

  static Dyadic pow2(std::int64_t e) { return Dyadic(BigInt(1), e); }

  /// count * 2^unit_exp, e.g. a cell count at a grid resolution.
  static Dyadic from_units(BigInt count, std::int64_t unit_exp) {
    return Dyadic(std::move(count), unit_exp);
  }

  const BigInt& mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }
  bool is_zero() const { return mantissa_.is_zero(); }
  int sign() const { return mantissa_.sign(); }

  Dyadic operator-() const { return Dyadic(-mantissa_, exponent_); }
  Dyadic mul_pow2(std::int64_t e) const {
    if (is_zero()) return Dyadic();
    return Dyadic(mantissa_, exponent_ + e);
  }
  Dyadic div_pow2(std::int64_t e) const { return mul_pow2(-e); }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);

  /// Three-way comparison consistent with the real order.
  static int compare(const Dyadic& a, const Dyadic& b);

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.mantissa_ == b.mantissa_ && a.exponent_ == b.exponent_;
  }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
  friend bool operator<(const Dyadic& a, const Dyadic& b) { return compare(a, b) < 0; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return compare(a, b) <= 0; }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return compare(a, b) > 0; }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return compare(a, b) >= 0; }

  /// "m*2^e" form, e.g. "3*2^-4". Integers render without the power part.
  std::string to_string() const;
  /// Exact decimal expansion (always finite for dyadic rationals).
  std::string to_decimal() const;
  /// Display-only; not used in any verification path.
  double to_double() const;

  /// Accepts "m*2^e" or a plain integer literal.
  static std::optional<Dyadic> parse(std::string_view text);

 private:
  void normalize();

  BigInt mantissa_;
  std::int64_t exponent_;
};

/// Exact ratio of integers, for report fields whose denominator is not a
/// power of two (e.g. normalizations by k^(n-1)). Canonical: den > 0, reduced.
struct ExactRatio {
  BigInt num;
  BigInt den;

  ExactRatio() : num(0), den(1) {}
  ExactRatio(BigInt n, BigInt d);

  /// value = d / den_extra, with d dyadic.
  static ExactRatio from_dyadic_over(const Dyadic& d, const BigInt& den_extra);

  std::string to_string() const;
  double to_double() const;
  friend bool operator==(const ExactRatio& a, const ExactRatio& b) {
    return a.num == b.num && a.den == b.den;
  }
};

/// C(n, r) by the multiplicative formula; exact.
BigInt binomial(std::int64_t n, std::int64_t r);

/// base^exp for exp >= 0; exact.
BigInt ipow(BigInt base, std::int64_t exp);

}  // namespace rarebasis
