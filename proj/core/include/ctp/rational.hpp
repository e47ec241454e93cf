#pragma once

#include <cstdint>
#include <compare>
#include <string>

#include "ctp/errors.hpp"

namespace ctp {

/// Exact rational number on 64-bit integers.
///
/// Always stored reduced with a positive denominator. Arithmetic is checked:
/// overflow throws DomainError instead of silently wrapping, since period
/// bookkeeping multiplies factorials and must never degrade to float
/// reasoning.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t numerator, std::int64_t denominator = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  double as_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_positive() const noexcept { return num_ > 0; }

  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "7/2", or "7" when the denominator is 1.
  std::string str() const;

 private:
  void normalize();

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Smallest positive rational that is an integer multiple of both a and b.
/// Both inputs must be positive.
Rational lcm_periods(const Rational& a, const Rational& b);

/// True when a is an integer multiple of b.
bool divides(const Rational& b, const Rational& a);

/// n! as a Rational; throws DomainError on 64-bit overflow (n > 20).
Rational factorial(int n);

/// The period 2*pi/|Omega| attached to a nonvanishing real frequency.
double period_T(double omega_cap);

}  // namespace ctp
