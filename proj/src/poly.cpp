#include "qcc/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace qcc {

SymbolId SymbolTable::add(std::string name) {
  const auto id = static_cast<SymbolId>(names_.size());
  names_.push_back(std::move(name));
  conj_.push_back({id, 1});
  return id;
}

void SymbolTable::set_conjugate(SymbolId a, SymbolId b, int sign) {
  if (a >= size() || b >= size()) throw std::out_of_range("SymbolTable: unknown symbol");
  if (sign != 1 && sign != -1) throw std::invalid_argument("SymbolTable: sign must be +-1");
  conj_[a] = {b, sign};
  conj_[b] = {a, sign};
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Poly::Poly(const GaussianRational& c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

Poly Poly::symbol(SymbolId id, const GaussianRational& coeff) {
  Poly p;
  if (!coeff.is_zero()) p.terms_.emplace(Monomial{id}, coeff);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

GaussianRational Poly::constant_term() const { return coefficient({}); }

GaussianRational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussianRational() : it->second;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.size()));
  return d;
}

std::set<SymbolId> Poly::symbols() const {
  std::set<SymbolId> out;
  for (const auto& [m, c] : terms_) out.insert(m.begin(), m.end());
  return out;
}

void Poly::add_term(const Monomial& m, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  if (a.is_zero() || b.is_zero()) return out;
  if (b.is_constant()) return Poly(a) *= b.constant_term();
  if (a.is_constant()) return Poly(b) *= a.constant_term();
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), ca * cb);
  return out;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly Poly::derivative(SymbolId s) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    const auto lo = std::lower_bound(m.begin(), m.end(), s);
    const auto hi = std::upper_bound(lo, m.end(), s);
    const auto power = hi - lo;
    if (power == 0) continue;
    Monomial rest(m.begin(), lo);
    rest.insert(rest.end(), lo + 1, m.end());
    out.add_term(rest, c * GaussianRational(static_cast<long>(power)));
  }
  return out;
}

Poly Poly::conj(const SymbolTable& table) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    Monomial img;
    img.reserve(m.size());
    int sign = 1;
    for (SymbolId s : m) {
      const auto cj = table.conjugate(s);
      img.push_back(cj.id);
      sign *= cj.sign;
    }
    std::sort(img.begin(), img.end());
    GaussianRational v = c.conj();
    if (sign < 0) v = -v;
    out.add_term(img, v);
  }
  return out;
}

Poly Poly::substitute(const std::function<Poly(SymbolId)>& value) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    Poly term(c);
    for (SymbolId s : m) term *= value(s);
    out += term;
  }
  return out;
}

std::string Poly::to_string(const SymbolTable* table) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string coeff = c.to_string();
    if (!c.is_real() && !c.re().is_zero()) coeff = "(" + coeff + ")";
    if (!first) out += (coeff[0] == '-') ? " " : " + ";
    first = false;
    if (m.empty()) {
      out += coeff;
      continue;
    }
    if (c == GaussianRational(1)) coeff.clear();
    else if (c == GaussianRational(-1)) coeff = "-";
    else coeff += "*";
    out += coeff;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k) out += "*";
      out += table ? table->name(m[k]) : "s" + std::to_string(m[k]);
    }
  }
  return out;
}

}  // namespace qcc
