#include "ctp/rational.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace ctp {
namespace {

using i128 = __int128;

std::int64_t narrow(i128 v, const char* ctx) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw DomainError(std::string("rational overflow in ") + ctx);
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator)
    : num_(numerator), den_(denominator) {
  if (den_ == 0) throw DomainError("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational& Rational::operator+=(const Rational& o) {
  const i128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
  const i128 d = i128(den_) * o.den_;
  num_ = narrow(n, "+");
  den_ = narrow(d, "+");
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  // Cross-reduce first so intermediates stay small.
  const std::int64_t g1 = std::gcd(num_, o.den_);
  const std::int64_t g2 = std::gcd(o.num_, den_);
  const i128 n = i128(num_ / g1) * (o.num_ / g2);
  const i128 d = i128(den_ / g2) * (o.den_ / g1);
  num_ = narrow(n, "*");
  den_ = narrow(d, "*");
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw DomainError("rational division by zero");
  return *this *= Rational(o.den_, o.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const i128 lhs = i128(a.num_) * b.den_;
  const i128 rhs = i128(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational lcm_periods(const Rational& a, const Rational& b) {
  if (!a.is_positive() || !b.is_positive()) {
    throw DomainError("lcm_periods requires positive periods");
  }
  // For reduced a = p/q, c = r/s: lcm = lcm(p, r) / gcd(q, s).
  const std::int64_t g = std::gcd(a.num(), b.num());
  const i128 l = i128(a.num() / g) * b.num();
  if (l > std::numeric_limits<std::int64_t>::max()) {
    throw DomainError("rational overflow in lcm_periods");
  }
  return Rational(static_cast<std::int64_t>(l), std::gcd(a.den(), b.den()));
}

bool divides(const Rational& b, const Rational& a) {
  if (b.is_zero()) return false;
  const Rational q = a / b;
  return q.den() == 1;
}

Rational factorial(int n) {
  if (n < 0) throw DomainError("factorial of negative integer");
  if (n > 20) throw DomainError("factorial overflows 64-bit integer");
  std::int64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return Rational(f);
}

double period_T(double omega_cap) {
  if (omega_cap == 0.0 || !std::isfinite(omega_cap)) {
    throw DomainError("period requires a finite nonvanishing frequency");
  }
  return 2.0 * std::numbers::pi / std::abs(omega_cap);
}

}  // namespace ctp
