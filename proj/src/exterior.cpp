#include "qcc/exterior.hpp"

#include <algorithm>
#include <stdexcept>

namespace qcc {

GenId Catalog::add(std::string family, std::vector<int> index, std::string name) {
  const auto id = static_cast<GenId>(gens_.size());
  if (!lookup_.emplace(std::make_pair(family, index), id).second)
    throw std::invalid_argument("Catalog: duplicate generator " + name);
  gens_.push_back({std::move(family), std::move(index), std::move(name), id, 1});
  return id;
}

void Catalog::set_conjugate(GenId a, GenId b, int sign) {
  if (a >= size() || b >= size()) throw std::out_of_range("Catalog: unknown generator");
  gens_[a].conj_id = b;
  gens_[a].conj_sign = sign;
  gens_[b].conj_id = a;
  gens_[b].conj_sign = sign;
}

std::optional<GenId> Catalog::find(const std::string& family, const std::vector<int>& index) const {
  auto it = lookup_.find({family, index});
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

GenId Catalog::at(const std::string& family, const std::vector<int>& index) const {
  if (auto id = find(family, index)) return *id;
  std::string idx;
  for (int i : index) idx += " " + std::to_string(i);
  throw std::out_of_range("Catalog: no generator " + family + idx);
}

namespace {

// Sorts gens in place; returns the permutation sign, or 0 on a repeat.
int sort_sign(Blade& g) {
  int sign = 1;
  for (std::size_t i = 1; i < g.size(); ++i)
    for (std::size_t j = i; j > 0 && g[j - 1] >= g[j]; --j) {
      if (g[j - 1] == g[j]) return 0;
      std::swap(g[j - 1], g[j]);
      sign = -sign;
    }
  return sign;
}

// Sign of merging two sorted disjoint blades; 0 if they intersect.
int merge_sign(const Blade& a, const Blade& b, Blade& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t inversions = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return 0;
    if (a[i] < b[j]) {
      out.push_back(a[i++]);
    } else {
      inversions += a.size() - i;
      out.push_back(b[j++]);
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return (inversions % 2 == 0) ? 1 : -1;
}

void accumulate(Form::Terms& terms, const Blade& b, const Poly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(b, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

}  // namespace

Form Form::generator(GenId id, const Poly& coeff) {
  Form f(1);
  if (!coeff.is_zero()) f.terms_.emplace(Blade{id}, coeff);
  return f;
}

Form Form::scalar(const Poly& c) {
  Form f(0);
  if (!c.is_zero()) f.terms_.emplace(Blade{}, c);
  return f;
}

Poly Form::coefficient(const Blade& b) const {
  auto it = terms_.find(b);
  return it == terms_.end() ? Poly() : it->second;
}

void Form::add_term(Blade gens, const Poly& c) {
  if (static_cast<int>(gens.size()) != degree_) throw std::invalid_argument("Form: degree mismatch");
  const int s = sort_sign(gens);
  if (s == 0 || c.is_zero()) return;
  accumulate(terms_, gens, s > 0 ? c : -c);
}

Form Form::operator-() const {
  Form out = *this;
  for (auto& [b, c] : out.terms_) c = -c;
  return out;
}

Form& Form::operator+=(const Form& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) degree_ = o.degree_;
  if (o.degree_ != degree_) throw std::invalid_argument("Form: adding forms of different degree");
  for (const auto& [b, c] : o.terms_) accumulate(terms_, b, c);
  return *this;
}

Form& Form::operator-=(const Form& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) degree_ = o.degree_;
  if (o.degree_ != degree_) throw std::invalid_argument("Form: adding forms of different degree");
  for (const auto& [b, c] : o.terms_) accumulate(terms_, b, -c);
  return *this;
}

Form& Form::operator*=(const Poly& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    if (it->second.is_zero()) it = terms_.erase(it);
    else ++it;
  }
  return *this;
}

Form Form::conj(const Catalog& cat, const SymbolTable& syms) const {
  Form out(degree_);
  for (const auto& [b, c] : terms_) {
    Blade img;
    img.reserve(b.size());
    int sign = 1;
    for (GenId g : b) {
      const auto& inf = cat.info(g);
      img.push_back(inf.conj_id);
      sign *= inf.conj_sign;
    }
    const Poly cc = c.conj(syms);
    out.add_term(std::move(img), sign > 0 ? cc : -cc);
  }
  return out;
}

Form Form::map_coefficients(const std::function<Poly(const Poly&)>& f) const {
  Form out(degree_);
  for (const auto& [b, c] : terms_) accumulate(out.terms_, b, f(c));
  return out;
}

std::set<GenId> Form::generators() const {
  std::set<GenId> out;
  for (const auto& [b, c] : terms_) out.insert(b.begin(), b.end());
  return out;
}

std::string Form::to_string(const Catalog& cat, const SymbolTable* syms) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [b, c] : terms_) {
    if (!out.empty()) out += "\n";
    out += "(" + c.to_string(syms) + ")";
    for (std::size_t k = 0; k < b.size(); ++k) out += (k ? "^" : " ") + cat.name(b[k]);
  }
  return out;
}

Form wedge(const Form& a, const Form& b) {
  Form out(a.degree() + b.degree());
  Form::Terms terms;
  Blade merged;
  for (const auto& [ba, ca] : a.terms())
    for (const auto& [bb, cb] : b.terms()) {
      const int s = merge_sign(ba, bb, merged);
      if (s == 0) continue;
      Poly c = ca * cb;
      accumulate(terms, merged, s > 0 ? c : -c);
    }
  for (const auto& [bl, c] : terms) out.add_term(bl, c);
  return out;
}

Form substitute(const Form& f, const std::map<GenId, Form>& rules, Unmapped mode) {
  Form out(f.degree());
  for (const auto& [b, c] : f.terms()) {
    Form acc = Form::scalar(c);
    for (GenId g : b) {
      auto it = rules.find(g);
      if (it == rules.end()) {
        if (mode == Unmapped::error)
          throw std::invalid_argument("substitute: no rule for generator " + std::to_string(g));
        acc = wedge(acc, Form::generator(g));
        continue;
      }
      if (it->second.degree() != 1 && !it->second.is_zero())
        throw std::invalid_argument("substitute: rules must be one-forms");
      Form image = it->second;
      if (image.is_zero()) image = Form(1);
      acc = wedge(acc, image);
    }
    out += acc;
  }
  return out;
}

void DerivationTable::set(GenId g, Form f) { gens_[g] = std::move(f); }
void DerivationTable::set_symbol(SymbolId s, Form f) { syms_[s] = std::move(f); }

const Form& DerivationTable::of(GenId g) const {
  auto it = gens_.find(g);
  if (it == gens_.end()) throw std::invalid_argument("differentiate: generator " + std::to_string(g) + " not covered");
  return it->second;
}

const Form& DerivationTable::of_symbol(SymbolId s) const {
  auto it = syms_.find(s);
  if (it == syms_.end()) throw std::invalid_argument("differentiate: symbol " + std::to_string(s) + " not covered");
  return it->second;
}

Form differentiate(const Form& f, const DerivationTable& table) {
  Form out(f.degree() + 1);
  for (const auto& [b, c] : f.terms()) {
    Form tail(static_cast<int>(b.size()));
    tail.add_term(b, Poly(1));
    // Coefficient part.
    for (SymbolId s : c.symbols()) {
      const Poly dc = c.derivative(s);
      out += wedge(dc * table.of_symbol(s), tail);
    }
    // Generator part with the graded sign.
    for (std::size_t j = 0; j < b.size(); ++j) {
      Form left = Form::scalar(j % 2 == 0 ? c : -c);
      for (std::size_t k = 0; k < j; ++k) left = wedge(left, Form::generator(b[k]));
      Form piece = wedge(left, table.of(b[j]));
      for (std::size_t k = j + 1; k < b.size(); ++k) piece = wedge(piece, Form::generator(b[k]));
      out += piece;
    }
  }
  return out;
}

Tableau tableau_extract(const Form& f, const std::function<bool(GenId)>& is_unknown,
                        const std::vector<GenId>& base) {
  if (!f.is_zero() && f.degree() != 3) throw std::invalid_argument("tableau_extract: expected a three-form");
  std::map<GenId, int> pos;
  for (std::size_t k = 0; k < base.size(); ++k) pos[base[k]] = static_cast<int>(k);
  Tableau t;
  for (const auto& [b, c] : f.terms()) {
    int unknown_at = -1;
    for (std::size_t k = 0; k < b.size(); ++k)
      if (is_unknown(b[k])) {
        if (unknown_at >= 0) throw std::invalid_argument("tableau_extract: term with two unknown factors");
        unknown_at = static_cast<int>(k);
      }
    if (unknown_at < 0) throw std::invalid_argument("tableau_extract: term without an unknown factor");
    std::vector<GenId> rest;
    for (std::size_t k = 0; k < b.size(); ++k)
      if (static_cast<int>(k) != unknown_at) rest.push_back(b[k]);
    auto pb = pos.find(rest[0]);
    auto pc = pos.find(rest[1]);
    if (pb == pos.end() || pc == pos.end()) {
      t.outside.emplace_back(b, c);
      continue;
    }
    int sign = unknown_at % 2 == 0 ? 1 : -1;
    int lo = pb->second;
    int hi = pc->second;
    if (lo > hi) {
      std::swap(lo, hi);
      sign = -sign;
    }
    auto& slot = t.pi[{lo, hi}][b[static_cast<std::size_t>(unknown_at)]];
    slot += sign > 0 ? c : -c;
  }
  for (auto it = t.pi.begin(); it != t.pi.end();) {
    for (auto jt = it->second.begin(); jt != it->second.end();) {
      if (jt->second.is_zero()) jt = it->second.erase(jt);
      else ++jt;
    }
    if (it->second.empty()) it = t.pi.erase(it);
    else ++it;
  }
  return t;
}

Form tableau_assemble(const Tableau& t, const std::vector<GenId>& base) {
  Form out(3);
  for (const auto& [bc, vec] : t.pi)
    for (const auto& [g, c] : vec) out.add_term({g, base.at(static_cast<std::size_t>(bc.first)), base.at(static_cast<std::size_t>(bc.second))}, c);
  for (const auto& [b, c] : t.outside) out.add_term(b, c);
  return out;
}

}  // namespace qcc
