#include "rarebasis/dyadic.hpp"

#include <cstdlib>
#include <stdexcept>

namespace rarebasis {

namespace mp = boost::multiprecision;

void Dyadic::normalize() {
  if (mantissa_.is_zero()) {
    exponent_ = 0;
    return;
  }
  const unsigned tz = mp::lsb(mp::abs(mantissa_));
  if (tz > 0) {
    mantissa_ >>= tz;
    exponent_ += static_cast<std::int64_t>(tz);
  }
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::int64_t e = std::min(a.exponent_, b.exponent_);
  BigInt m = (a.mantissa_ << static_cast<unsigned>(a.exponent_ - e)) +
             (b.mantissa_ << static_cast<unsigned>(b.exponent_ - e));
  return Dyadic(std::move(m), e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero() || b.is_zero()) return Dyadic();
  return Dyadic(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
}

int Dyadic::compare(const Dyadic& a, const Dyadic& b) {
  const int sa = a.sign();
  const int sb = b.sign();
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  const std::int64_t e = std::min(a.exponent_, b.exponent_);
  const BigInt ma = a.mantissa_ << static_cast<unsigned>(a.exponent_ - e);
  const BigInt mb = b.mantissa_ << static_cast<unsigned>(b.exponent_ - e);
  return ma.compare(mb);
}

std::string Dyadic::to_string() const {
  if (exponent_ == 0) return mantissa_.str();
  return mantissa_.str() + "*2^" + std::to_string(exponent_);
}

std::string Dyadic::to_decimal() const {
  if (is_zero()) return "0";
  const bool neg = mantissa_ < 0;
  const BigInt mag = mp::abs(mantissa_);
  std::string digits;
  if (exponent_ >= 0) {
    digits = BigInt(mag << static_cast<unsigned>(exponent_)).str();
    return neg ? "-" + digits : digits;
  }
  const auto frac = static_cast<unsigned>(-exponent_);
  // m / 2^f == m * 5^f / 10^f, so the expansion is finite with f digits.
  digits = BigInt(mag * mp::pow(BigInt(5), frac)).str();
  if (digits.size() <= frac) digits.insert(0, frac + 1 - digits.size(), '0');
  digits.insert(digits.size() - frac, ".");
  return neg ? "-" + digits : digits;
}

double Dyadic::to_double() const {
  return std::ldexp(static_cast<double>(mantissa_), static_cast<int>(exponent_));
}

std::optional<Dyadic> Dyadic::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  const auto star = text.find("*2^");
  std::string_view mant = text.substr(0, star);
  std::string_view expo = star == std::string_view::npos ? "" : text.substr(star + 3);
  auto parse_int = [](std::string_view s, bool* ok) -> BigInt {
    *ok = false;
    if (s.empty()) return 0;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return 0;
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9') return 0;
    }
    *ok = true;
    return BigInt(std::string(s));
  };
  bool ok = false;
  BigInt m = parse_int(mant, &ok);
  if (!ok) return std::nullopt;
  std::int64_t e = 0;
  if (star != std::string_view::npos) {
    BigInt eb = parse_int(expo, &ok);
    if (!ok || eb > INT64_MAX || eb < INT64_MIN) return std::nullopt;
    e = static_cast<std::int64_t>(eb);
  }
  return Dyadic(std::move(m), e);
}

ExactRatio::ExactRatio(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw std::invalid_argument("ExactRatio: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  BigInt g = mp::gcd(mp::abs(num), den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

ExactRatio ExactRatio::from_dyadic_over(const Dyadic& d, const BigInt& den_extra) {
  BigInt n = d.mantissa();
  BigInt dd = den_extra;
  if (d.exponent() >= 0) {
    n <<= static_cast<unsigned>(d.exponent());
  } else {
    dd <<= static_cast<unsigned>(-d.exponent());
  }
  return ExactRatio(std::move(n), std::move(dd));
}

std::string ExactRatio::to_string() const {
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double ExactRatio::to_double() const {
  return static_cast<double>(num) / static_cast<double>(den);
}

BigInt binomial(std::int64_t n, std::int64_t r) {
  if (r < 0 || n < 0 || r > n) return 0;
  r = std::min(r, n - r);
  BigInt result = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    result *= n - r + i;
    result /= i;
  }
  return result;
}

BigInt ipow(BigInt base, std::int64_t exp) {
  if (exp < 0) throw std::invalid_argument("ipow: negative exponent");
  BigInt result = 1;
  while (exp > 0) {
    if (exp & 1) result *= base;
    base *= base;
    exp >>= 1;
  }
  return result;
}

}  // namespace rarebasis
