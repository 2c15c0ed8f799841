#pragma once

#include "qcc/rational.hpp"

#include <string>
#include <vector>

namespace qcc {

/// Dense univariate polynomial with integer coefficients, lowest degree first.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Integer> coeffs);
  /// c * z^k.
  static UniPoly monomial(const Integer& c, int k);

  const std::vector<Integer>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Integer leading() const;
  Integer coeff(int k) const;
  Integer content() const;
  Integer eval(const Integer& z) const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  std::string to_string(char var = 'z') const;

 private:
  void trim();
  std::vector<Integer> c_;
};

/// Primitive gcd over Q with positive leading coefficient.
/// Throws std::invalid_argument if both inputs are zero.
UniPoly poly_gcd(const UniPoly& p, const UniPoly& q);

/// Resultant of two nonzero polynomials, computed by the Euclidean
/// remainder sequence over Q. Zero iff they share a root.
Integer resultant(const UniPoly& p, const UniPoly& q);

}  // namespace qcc
