#pragma once

#include "qcc/gaussian.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace qcc {

using SymbolId = std::uint32_t;

/// Sorted multiset of symbol ids; a repeated id is a higher power.
using Monomial = std::vector<SymbolId>;

/// Image of a symbol under complex conjugation: sign * symbol.
struct SymbolConjugate {
  SymbolId id = 0;
  int sign = 1;
};

/// Registry of formal function symbols. Symbol ids are assigned in insertion
/// order, which is the fixed term order for monomials.
class SymbolTable {
 public:
  SymbolId add(std::string name);
  /// Declares conj(a) = sign * b and conj(b) = sign * a.
  void set_conjugate(SymbolId a, SymbolId b, int sign = 1);

  std::size_t size() const { return names_.size(); }
  const std::string& name(SymbolId id) const { return names_.at(id); }
  /// Symbols without a declared partner are real.
  SymbolConjugate conjugate(SymbolId id) const { return conj_.at(id); }

 private:
  std::vector<std::string> names_;
  std::vector<SymbolConjugate> conj_;
};

/// Sparse multivariate polynomial in formal symbols with Gaussian-rational
/// coefficients. No zero coefficient is ever stored.
class Poly {
 public:
  using Terms = std::map<Monomial, GaussianRational>;

  Poly() = default;
  Poly(int c) : Poly(GaussianRational(c)) {}          // NOLINT(google-explicit-constructor)
  Poly(const Rational& c) : Poly(GaussianRational(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(const GaussianRational& c);                     // NOLINT(google-explicit-constructor)
  static Poly symbol(SymbolId id, const GaussianRational& coeff = GaussianRational(1));
  static Poly i() { return Poly(GaussianRational::i()); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the empty monomial.
  GaussianRational constant_term() const;
  GaussianRational coefficient(const Monomial& m) const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  std::set<SymbolId> symbols() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const GaussianRational& c);
  void add_term(const Monomial& m, const GaussianRational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  Poly derivative(SymbolId s) const;
  /// Antilinear on coefficients, maps each symbol to its declared conjugate.
  Poly conj(const SymbolTable& table) const;
  /// Replaces every symbol by the polynomial returned from `value`.
  Poly substitute(const std::function<Poly(SymbolId)>& value) const;

  std::string to_string(const SymbolTable* table = nullptr) const;

 private:
  Terms terms_;
};

Monomial multiply(const Monomial& a, const Monomial& b);

}  // namespace qcc
