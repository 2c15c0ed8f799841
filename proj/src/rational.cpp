#include "qcc/rational.hpp"
#include "qcc/gaussian.hpp"

#include <ostream>
#include <stdexcept>

namespace qcc {

static_assert(sizeof(long) == sizeof(long long), "LP64 assumed");

Rational::Rational(long long v) : value_(static_cast<long>(v)) {}

Rational::Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  const std::string s(text);
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s, 10));
    return Rational(Integer(s.substr(0, slash), 10), Integer(s.substr(slash + 1), 10));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("Rational: cannot parse '" + s + "'");
  }
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= o.value_;
  return *this;
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str(10);
  return value_.get_num().get_str(10) + "/" + value_.get_den().get_str(10);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

std::string to_string(const Integer& v) { return v.get_str(10); }

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (o.im_.is_zero()) {
    re_ *= o.re_;
    im_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  const Rational n = o.norm2();
  if (n.is_zero()) throw std::domain_error("GaussianRational: division by zero");
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

std::string GaussianRational::to_string() const {
  if (im_.is_zero()) return re_.to_string();
  std::string imag;
  if (im_ == Rational(1)) imag = "i";
  else if (im_ == Rational(-1)) imag = "-i";
  else imag = im_.to_string() + "i";
  if (re_.is_zero()) return imag;
  if (im_.sign() > 0) return re_.to_string() + "+" + imag;
  return re_.to_string() + imag;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

}  // namespace qcc
