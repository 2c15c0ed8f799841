#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace qcc {

using Integer = mpz_class;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : value_(v) {}            // NOLINT(google-explicit-constructor)
  Rational(long v) : value_(v) {}           // NOLINT(google-explicit-constructor)
  Rational(long long v);                    // NOLINT(google-explicit-constructor)
  Rational(const Integer& v) : value_(v) {} // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  Rational(const Integer& num, const Integer& den);
  explicit Rational(mpq_class v);

  /// Parses "p" or "p/q" in decimal. Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  const mpq_class& value() const { return value_; }
  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  /// Throws std::domain_error on division by zero.
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Rational abs() const { return Rational(mpq_class(::abs(value_))); }
  Rational inverse() const { return Rational(1) / *this; }

  /// "p" for integers, "p/q" otherwise.
  std::string to_string() const;

 private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Decimal string of an arbitrary-precision integer.
std::string to_string(const Integer& v);

}  // namespace qcc
