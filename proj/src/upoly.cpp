#include "qcc/upoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace qcc {

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

QPoly to_q(const UniPoly& p) {
  QPoly out;
  for (const auto& c : p.coeffs()) out.emplace_back(c);
  return out;
}

// Remainder of a modulo b, b nonzero.
QPoly rem(QPoly a, const QPoly& b) {
  const auto db = b.size() - 1;
  while (!a.empty() && a.size() - 1 >= db) {
    const Rational f = a.back() / b.back();
    const auto shift = a.size() - 1 - db;
    for (std::size_t k = 0; k <= db; ++k) a[shift + k] -= f * b[k];
    a.pop_back();
    trim(a);
  }
  return a;
}

UniPoly primitive_from_q(const QPoly& p) {
  Integer l = 1;
  for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.denominator().get_mpz_t());
  std::vector<Integer> out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(c.numerator() * (l / c.denominator()));
  UniPoly r(std::move(out));
  const Integer g = r.content();
  std::vector<Integer> c = r.coeffs();
  const int s = sgn(r.leading());
  for (auto& x : c) x = x / g * s;
  return UniPoly(std::move(c));
}

}  // namespace

UniPoly::UniPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::monomial(const Integer& c, int k) {
  if (k < 0) throw std::invalid_argument("UniPoly: negative exponent");
  std::vector<Integer> v(static_cast<std::size_t>(k) + 1, Integer(0));
  v.back() = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Integer UniPoly::leading() const { return c_.empty() ? Integer(0) : c_.back(); }

Integer UniPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return c_[static_cast<std::size_t>(k)];
}

Integer UniPoly::content() const {
  Integer g = 0;
  for (const auto& c : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

Integer UniPoly::eval(const Integer& z) const {
  Integer acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()), Integer(0));
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()), Integer(0));
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
  return UniPoly(std::move(c));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> c(a.c_.size() + b.c_.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return UniPoly(std::move(c));
}

std::string UniPoly::to_string(char var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Integer& c = c_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    const bool neg = c < 0;
    const Integer a = abs(c);
    if (!out.empty()) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    if (a != 1 || k == 0) out += a.get_str(10);
    if (k >= 1) out += var;
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out;
}

UniPoly poly_gcd(const UniPoly& p, const UniPoly& q) {
  if (p.is_zero() && q.is_zero()) throw std::invalid_argument("poly_gcd: both inputs are zero");
  QPoly a = to_q(p);
  QPoly b = to_q(q);
  while (!b.empty()) {
    QPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return primitive_from_q(a);
}

Integer resultant(const UniPoly& p, const UniPoly& q) {
  if (p.is_zero() || q.is_zero()) return 0;
  QPoly a = to_q(p);
  QPoly b = to_q(q);
  Rational acc = 1;
  // res(a, b) = (-1)^{deg a deg b} lc(b)^{deg a - deg r} res(b, r), r = a mod b.
  while (b.size() > 1) {
    const auto da = static_cast<long>(a.size()) - 1;
    const auto db = static_cast<long>(b.size()) - 1;
    QPoly r = rem(a, b);
    if (r.empty()) return 0;
    const auto dr = static_cast<long>(r.size()) - 1;
    if ((da * db) % 2 != 0) acc = -acc;
    for (long k = 0; k < da - dr; ++k) acc *= b.back();
    a = std::move(b);
    b = std::move(r);
  }
  // b is a nonzero constant: res(a, c) = c^{deg a}.
  for (std::size_t k = 1; k < a.size(); ++k) acc *= b[0];
  if (!acc.is_integer()) throw std::logic_error("resultant: non-integral result");
  return acc.numerator();
}

}  // namespace qcc
