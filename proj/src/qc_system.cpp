#include "qcc/qc_system.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qcc {

namespace {

const char* const kStarFamilies[] = {"S", "V", "Vb", "L", "M", "Mb", "C", "Cb",
                                     "H", "Hb", "P", "Pb", "Q", "Qb", "R"};

int star_arity(const std::string& fam) {
  const char c = fam[0];
  switch (c) {
    case 'S': return 4;
    case 'V': return 3;
    case 'L': case 'M': return 2;
    case 'C': case 'H': return 1;
    default: return 0;
  }
}

bool is_bar_family(const std::string& fam) { return fam.size() > 1 && fam.back() == 'b'; }

std::string base_family(const std::string& fam) {
  return is_bar_family(fam) ? fam.substr(0, fam.size() - 1) : fam;
}

std::string index_label(const std::vector<int>& idx, int dim) {
  std::string out;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k && dim > 9) out += ",";
    out += std::to_string(idx[k] + 1);
  }
  return out;
}

// U+0304 combining macron.
const std::string kBar = "̄";

std::string pretty_family(const std::string& fam) {
  const std::string base = base_family(fam);
  return is_bar_family(fam) ? base + kBar : base;
}

struct SecondOrderFamily {
  std::string name;  // symbol family
  int arity;
};

const std::vector<SecondOrderFamily>& second_order_symbols() {
  static const std::vector<SecondOrderFamily> fams = {
      {"A", 5},  {"B", 4},  {"C4", 4}, {"D", 3},  {"E", 3},  {"F", 3},  {"G", 2},  {"X", 2},
      {"Y", 2},  {"Z", 2},  {"N1", 1}, {"N2", 1}, {"N3", 1}, {"N4", 1}, {"N5", 1}, {"U1", 0},
      {"U2", 0}, {"U3", 0}, {"W1", 0}, {"W2", 0}, {"W3", 0},
  };
  return fams;
}

// Partner multi-index and the sign prod_k sign(i_k).
std::pair<MultiIndex, int> partner_of(const IndexSpec& s, const std::vector<int>& idx) {
  MultiIndex p(idx.begin(), idx.end());
  int sign = 1;
  for (int& i : p) {
    sign *= s.sign(i);
    i = s.partner(i);
  }
  return {canonical(p), sign};
}

const GaussianRational kI = GaussianRational::i();

// Formula vocabulary shared by the structure equations, the Bianchi forms
// and the integral element.
struct Ops {
  const QcSystem& s;
  const IndexSpec& ix;
  int m;

  explicit Ops(const QcSystem& sys) : s(sys), ix(sys.spec()), m(sys.spec().dim()) {}

  int p(int a, int b) const { return ix.pi(a, b); }
  Form g(GenId id) const { return Form::generator(id); }
  Form T(int a) const { return g(s.theta(a)); }
  Form Tb(int a) const { return g(s.theta_bar(a)); }
  Form Eta(int k) const { return g(s.eta(k)); }
  Form E2p() const { return Eta(2) + Poly(kI) * Eta(3); }
  Form E2m() const { return Eta(2) - Poly(kI) * Eta(3); }
  Form F0() const { return g(s.phi0()); }
  Form Fs(int k) const { return g(s.phi(k)); }
  Form G(int a, int b) const { return g(s.gamma(a, b)); }
  Form Gb(int a, int b) const { return bar(G(a, b)); }
  Form pl(int a) const { return g(s.phi_lower(a)); }
  Form plb(int a) const { return g(s.phi_lower_bar(a)); }
  // phi^a = phi_{abar}, phi^{abar} = phi_a.
  Form pu(int a) const { return plb(a); }
  Form pub(int a) const { return pl(a); }
  Form Psi(int k) const { return g(s.psi(k)); }
  Form St(const std::string& fam, std::vector<int> idx = {}) const { return g(s.star(fam, std::move(idx))); }
  Form bar(const Form& f) const { return f.conj(s.catalog(), s.symbols()); }

  Poly sy(const std::string& fam, std::vector<int> idx = {}) const {
    return Poly::symbol(s.symbol(fam, std::move(idx)));
  }
  Poly bar(const Poly& c) const { return c.conj(s.symbols()); }
  // (jT)_I = sign(I) conj(T_{I'}).
  Poly j(const std::string& fam, const std::vector<int>& idx) const {
    auto [q, sign] = partner_of(ix, idx);
    Poly v = bar(sy(fam, q));
    return sign > 0 ? v : -v;
  }
};

Form w(const Form& a, const Form& b) { return wedge(a, b); }
Form w(const Form& a, const Form& b, const Form& c) { return wedge(wedge(a, b), c); }

const Poly kHalf = Poly(Rational(1, 2));

}  // namespace

const Form& BianchiSet::get(const std::string& name) const {
  for (const auto& f : forms)
    if (f.name == name) return f.form;
  throw std::out_of_range("BianchiSet: no form " + name);
}

bool operator==(const BianchiSet& a, const BianchiSet& b) {
  if (a.forms.size() != b.forms.size()) return false;
  for (std::size_t k = 0; k < a.forms.size(); ++k)
    if (a.forms[k].name != b.forms[k].name || !(a.forms[k].form == b.forms[k].form)) return false;
  return true;
}

bool DSquaredReport::passed() const { return nonzero() == 0 && conjugation_mismatches == 0; }

std::size_t DSquaredReport::nonzero() const {
  return static_cast<std::size_t>(
      std::count_if(residuals.begin(), residuals.end(), [](const Residual& r) { return r.terms != 0; }));
}

long long d1_formula(int n) { return binomial(2LL * n + 5, 2); }

long long d2_formula(int n) {
  const long long m = n;
  return (2 * m + 5) * (2 * m + 3) * (m + 2) * (m + 1) / 6;
}

QcSystem QcSystem::build(int n) {
  if (n < 1) throw std::invalid_argument("build_system: n must be >= 1");
  QcSystem sys(n);
  sys.build_catalog();
  sys.build_symbols();
  sys.build_equations();
  sys.build_symbol_derivatives();
  return sys;
}

void QcSystem::build_catalog() {
  const int m = spec_.dim();
  const auto lbl = [m](const std::vector<int>& idx) { return index_label(idx, m); };
  auto add = [this](const std::string& fam, std::vector<int> idx, const std::string& name, bool coframe) {
    const GenId id = cat_.add(fam, std::move(idx), name);
    if (coframe) coframe_.push_back(id);
    return id;
  };
  for (int k = 1; k <= 3; ++k) add("eta", {k}, "η_" + std::to_string(k), true);
  for (int a = 0; a < m; ++a) add("theta", {a}, "θ^" + lbl({a}), true);
  for (int a = 0; a < m; ++a) add("thetab", {a}, "θ^" + lbl({a}) + kBar, true);
  add("phi0", {}, "φ_0", true);
  for (int k = 1; k <= 3; ++k) add("phi", {k}, "φ_" + std::to_string(k), true);
  for (const auto& ab : multisets(m, 2)) add("Gamma", ab, "Γ_" + lbl(ab), true);
  for (int a = 0; a < m; ++a) add("phiL", {a}, "ϕ_" + lbl({a}), true);
  for (int a = 0; a < m; ++a) add("phiLb", {a}, "ϕ_" + lbl({a}) + kBar, true);
  for (int k = 1; k <= 3; ++k) add("psi", {k}, "ψ_" + std::to_string(k), true);

  for (int a = 0; a < m; ++a) cat_.set_conjugate(theta(a), theta_bar(a));
  for (int a = 0; a < m; ++a) cat_.set_conjugate(phi_lower(a), phi_lower_bar(a));
  for (const auto& ab : multisets(m, 2)) {
    auto [q, sign] = partner_of(spec_, ab);
    cat_.set_conjugate(cat_.at("Gamma", ab), cat_.at("Gamma", q), sign);
  }

  first_star_ = static_cast<GenId>(cat_.size());
  for (const char* fam : kStarFamilies) {
    const std::string f = fam;
    for (const auto& idx : multisets(m, star_arity(f))) {
      const std::string sub = idx.empty() ? "" : "_" + lbl(idx);
      starred_.push_back(cat_.add("*" + f, idx, pretty_family(f) + "*" + sub));
    }
  }
  for (const char* fam : kStarFamilies) {
    const std::string f = fam;
    for (const auto& idx : multisets(m, star_arity(f))) {
      const GenId g = cat_.at("*" + f, idx);
      if (is_bar_family(f)) {
        cat_.set_conjugate(cat_.at("*" + base_family(f), idx), g);
      } else if (f == "S" || f == "L") {
        auto [q, sign] = partner_of(spec_, idx);
        cat_.set_conjugate(g, cat_.at("*" + f, q), sign);
      }
    }
  }

  first_eps_ = static_cast<GenId>(cat_.size());
  for (int k = 1; k <= 2 * m + 3; ++k) epsilon_.push_back(cat_.add("eps", {k}, "ε^" + std::to_string(k)));
}

void QcSystem::build_symbols() {
  const int m = spec_.dim();
  auto add_family = [&](const std::string& fam, int arity, bool paired) {
    for (const auto& idx : multisets(m, arity)) {
      const std::string sub = idx.empty() ? "" : "_" + index_label(idx, m);
      const SymbolId id = syms_.add(fam + sub);
      sym_lookup_[{fam, idx}] = id;
      if (paired) {
        const SymbolId b = syms_.add(fam + kBar + sub);
        sym_lookup_[{fam + "b", idx}] = b;
        syms_.set_conjugate(id, b);
      }
    }
  };
  add_family("S", 4, false);
  add_family("V", 3, true);
  add_family("L", 2, false);
  add_family("M", 2, true);
  add_family("C", 1, true);
  add_family("H", 1, true);
  add_family("P", 0, true);
  add_family("Q", 0, true);
  add_family("R", 0, false);
  for (const char* fam : {"S", "L"})
    for (const auto& idx : multisets(m, fam[0] == 'S' ? 4 : 2)) {
      auto [q, sign] = partner_of(spec_, idx);
      syms_.set_conjugate(symbol(fam, idx), symbol(fam, q), sign);
    }
  for (const auto& f : second_order_symbols()) add_family(f.name, f.arity, true);
}

bool QcSystem::is_starred(GenId g) const { return g >= first_star_ && g < first_eps_; }
bool QcSystem::is_epsilon(GenId g) const { return g >= first_eps_; }

GenId QcSystem::eta(int s) const { return cat_.at("eta", {s}); }
GenId QcSystem::theta(int a) const { return cat_.at("theta", {a}); }
GenId QcSystem::theta_bar(int a) const { return cat_.at("thetab", {a}); }
GenId QcSystem::phi0() const { return cat_.at("phi0", {}); }
GenId QcSystem::phi(int s) const { return cat_.at("phi", {s}); }
GenId QcSystem::gamma(int a, int b) const { return cat_.at("Gamma", canonical({a, b})); }
GenId QcSystem::phi_lower(int a) const { return cat_.at("phiL", {a}); }
GenId QcSystem::phi_lower_bar(int a) const { return cat_.at("phiLb", {a}); }
GenId QcSystem::psi(int s) const { return cat_.at("psi", {s}); }

GenId QcSystem::star(const std::string& family, std::vector<int> idx) const {
  return cat_.at("*" + family, canonical(std::move(idx)));
}

SymbolId QcSystem::symbol(const std::string& family, std::vector<int> idx) const {
  auto it = sym_lookup_.find({family, canonical(std::move(idx))});
  if (it == sym_lookup_.end()) throw std::out_of_range("QcSystem: no symbol in family " + family);
  return it->second;
}

bool QcSystem::has_symbol(const std::string& family, std::vector<int> idx) const {
  return sym_lookup_.count({family, canonical(std::move(idx))}) != 0;
}

void QcSystem::build_equations() {
  const Ops o(*this);
  const int m = o.m;
  const Poly i(kI);
  auto row = [this](std::string tag, GenId lhs, Form rhs) {
    table_.set(lhs, rhs);
    equations_.push_back({std::move(tag), lhs, std::move(rhs)});
  };

  // Contact forms.
  {
    Form d1 = -w(o.F0(), o.Eta(1)) - w(o.Fs(2), o.Eta(3)) + w(o.Fs(3), o.Eta(2));
    Form d2 = -w(o.F0(), o.Eta(2)) - w(o.Fs(3), o.Eta(1)) + w(o.Fs(1), o.Eta(3));
    Form d3 = -w(o.F0(), o.Eta(3)) - w(o.Fs(1), o.Eta(2)) + w(o.Fs(2), o.Eta(1));
    for (int a = 0; a < m; ++a) d1 += Poly(GaussianRational(0, 2)) * w(o.T(a), o.Tb(a));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        const int p = o.p(a, b);
        if (!p) continue;
        d2 += Poly(p) * (w(o.T(a), o.T(b)) + w(o.Tb(a), o.Tb(b)));
        d3 += Poly(p) * (-i * w(o.T(a), o.T(b)) + i * w(o.Tb(a), o.Tb(b)));
      }
    row("d eta_1", eta(1), d1);
    row("d eta_2", eta(2), d2);
    row("d eta_3", eta(3), d3);
  }

  // d theta^a and its conjugate.
  std::vector<Form> dtheta;
  for (int a = 0; a < m; ++a) {
    Form f = -i * w(o.plb(a), o.Eta(1));
    for (int sg = 0; sg < m; ++sg)
      if (const int p = o.p(sg, a)) f -= Poly(p) * w(o.pl(sg), o.E2p());
    for (int sg = 0; sg < m; ++sg)
      if (const int p = o.p(a, sg))
        for (int b = 0; b < m; ++b) f -= Poly(p) * w(o.G(sg, b), o.T(b));
    f -= kHalf * w(o.F0() + i * o.Fs(1), o.T(a));
    for (int b = 0; b < m; ++b)
      if (const int p = o.p(b, a)) f -= kHalf * Poly(p) * w(o.Fs(2) + i * o.Fs(3), o.Tb(b));
    dtheta.push_back(f);
  }
  for (int a = 0; a < m; ++a) row("d theta^" + index_label({a}, m), theta(a), dtheta[static_cast<std::size_t>(a)]);
  for (int a = 0; a < m; ++a)
    row("d theta^" + index_label({a}, m) + " bar", theta_bar(a), o.bar(dtheta[static_cast<std::size_t>(a)]));

  // d phi_0 .. d phi_3.
  {
    Form f0 = -w(o.Psi(1), o.Eta(1)) - w(o.Psi(2), o.Eta(2)) - w(o.Psi(3), o.Eta(3));
    Form f1 = -w(o.Fs(2), o.Fs(3)) - w(o.Psi(2), o.Eta(3)) + w(o.Psi(3), o.Eta(2));
    Form f2 = -w(o.Fs(3), o.Fs(1)) - w(o.Psi(3), o.Eta(1)) + w(o.Psi(1), o.Eta(3));
    Form f3 = -w(o.Fs(1), o.Fs(2)) - w(o.Psi(1), o.Eta(2)) + w(o.Psi(2), o.Eta(1));
    for (int b = 0; b < m; ++b) {
      f0 -= Poly(2) * (w(o.pl(b), o.T(b)) + w(o.plb(b), o.Tb(b)));
      f1 += Poly(GaussianRational(0, 2)) * (w(o.pl(b), o.T(b)) - w(o.plb(b), o.Tb(b)));
    }
    for (int sg = 0; sg < m; ++sg)
      for (int b = 0; b < m; ++b)
        if (const int p = o.p(sg, b)) {
          const Form up = w(o.pu(sg), o.T(b));
          const Form dn = w(o.pub(sg), o.Tb(b));
          f2 -= Poly(2 * p) * (up + dn);
          f3 += Poly(GaussianRational(0, 2 * p)) * (up - dn);
        }
    row("d phi_0", phi0(), f0);
    row("d phi_1", phi(1), f1);
    row("d phi_2", phi(2), f2);
    row("d phi_3", phi(3), f3);
  }

  // d Gamma_ab.
  for (const auto& ab : multisets(m, 2)) {
    const int al = ab[0];
    const int be = ab[1];
    Form f(2);
    for (int sg = 0; sg < m; ++sg)
      for (int t = 0; t < m; ++t)
        if (const int p = o.p(sg, t)) f -= Poly(p) * w(o.G(al, sg), o.G(t, be));
    for (int sg = 0; sg < m; ++sg) {
      if (const int p = o.p(al, sg)) f += Poly(2 * p) * (w(o.pl(be), o.T(sg)) - w(o.plb(sg), o.Tb(be)));
      if (const int p = o.p(be, sg)) f += Poly(2 * p) * (w(o.pl(al), o.T(sg)) - w(o.plb(sg), o.Tb(al)));
    }
    for (int ga = 0; ga < m; ++ga)
      for (int de = 0; de < m; ++de)
        for (int sg = 0; sg < m; ++sg)
          if (const int p = o.p(de, sg)) f += Poly(p) * o.sy("S", {al, be, ga, sg}) * w(o.T(ga), o.Tb(de));
    Form v1(1);
    for (int ga = 0; ga < m; ++ga) v1 += o.sy("V", {al, be, ga}) * o.T(ga);
    for (int sg = 0; sg < m; ++sg)
      for (int t = 0; t < m; ++t)
        if (const int p = o.p(al, sg) * o.p(be, t))
          for (int ga = 0; ga < m; ++ga) v1 += Poly(p) * o.sy("Vb", {sg, t, ga}) * o.Tb(ga);
    f += w(v1, o.Eta(1));
    for (int ga = 0; ga < m; ++ga)
      for (int sg = 0; sg < m; ++sg)
        if (const int p = o.p(ga, sg)) f -= i * Poly(p) * o.sy("V", {al, be, sg}) * w(o.Tb(ga), o.E2p());
    for (int ga = 0; ga < m; ++ga) f += i * o.j("V", {al, be, ga}) * w(o.T(ga), o.E2m());
    f -= i * o.sy("L", {al, be}) * w(o.E2p(), o.E2m());
    f += o.sy("M", {al, be}) * w(o.Eta(1), o.E2p());
    f += o.j("M", {al, be}) * w(o.Eta(1), o.E2m());
    row("d Gamma_" + index_label(ab, m), gamma(al, be), f);
  }

  // d phi_a and its conjugate.
  std::vector<Form> dphi;
  for (int al = 0; al < m; ++al) {
    Form f = kHalf * w(o.F0() + i * o.Fs(1), o.pl(al));
    for (int ga = 0; ga < m; ++ga)
      if (const int p = o.p(al, ga)) f += kHalf * Poly(p) * w(o.Fs(2) - i * o.Fs(3), o.pu(ga));
    for (int sg = 0; sg < m; ++sg)
      if (const int p = o.p(al, sg))
        for (int ga = 0; ga < m; ++ga) f -= Poly(p) * w(o.Gb(sg, ga), o.pub(ga));
    f -= Poly(GaussianRational(Rational(0), Rational(1, 2))) * w(o.Psi(1), o.Tb(al));
    for (int ga = 0; ga < m; ++ga)
      if (const int p = o.p(al, ga)) f -= kHalf * Poly(p) * w(o.Psi(2) - i * o.Psi(3), o.T(ga));
    for (int ga = 0; ga < m; ++ga)
      for (int de = 0; de < m; ++de)
        for (int sg = 0; sg < m; ++sg)
          if (const int p = o.p(de, sg)) f -= i * Poly(p) * o.sy("V", {al, ga, sg}) * w(o.T(ga), o.Tb(de));
    for (int ga = 0; ga < m; ++ga) f += o.sy("M", {al, ga}) * w(o.T(ga), o.Eta(1));
    for (int sg = 0; sg < m; ++sg)
      if (const int p = o.p(al, sg))
        for (int ga = 0; ga < m; ++ga) f += Poly(p) * o.bar(o.sy("L", {sg, ga})) * w(o.Tb(ga), o.Eta(1));
    for (int ga = 0; ga < m; ++ga) f += i * o.sy("L", {al, ga}) * w(o.T(ga), o.E2m());
    for (int ga = 0; ga < m; ++ga)
      for (int sg = 0; sg < m; ++sg)
        if (const int p = o.p(ga, sg)) f -= i * Poly(p) * o.sy("M", {al, sg}) * w(o.Tb(ga), o.E2p());
    f -= o.sy("C", {al}) * w(o.E2p(), o.E2m());
    f += o.sy("H", {al}) * w(o.Eta(1), o.E2p());
    for (int sg = 0; sg < m; ++sg)
      if (const int p = o.p(al, sg)) f += i * Poly(p) * o.sy("Cb", {sg}) * w(o.Eta(1), o.E2m());
    dphi.push_back(f);
  }
  for (int a = 0; a < m; ++a) row("d varphi_" + index_label({a}, m), phi_lower(a), dphi[static_cast<std::size_t>(a)]);
  for (int a = 0; a < m; ++a)
    row("d varphi_" + index_label({a}, m) + " bar", phi_lower_bar(a), o.bar(dphi[static_cast<std::size_t>(a)]));

  // d psi_1.
  {
    Form f = w(o.F0(), o.Psi(1)) - w(o.Fs(2), o.Psi(3)) + w(o.Fs(3), o.Psi(2));
    for (int ga = 0; ga < m; ++ga) f -= Poly(GaussianRational(0, 4)) * w(o.pl(ga), o.pu(ga));
    for (int ga = 0; ga < m; ++ga)
      for (int de = 0; de < m; ++de)
        for (int sg = 0; sg < m; ++sg)
          if (const int p = o.p(de, sg)) f += Poly(4 * p) * o.sy("L", {ga, sg}) * w(o.T(ga), o.Tb(de));
    for (int ga = 0; ga < m; ++ga) {
      f += Poly(4) * o.sy("C", {ga}) * w(o.T(ga), o.Eta(1));
      f += Poly(4) * o.sy("Cb", {ga}) * w(o.Tb(ga), o.Eta(1));
    }
    for (int ga = 0; ga < m; ++ga)
      for (int sg = 0; sg < m; ++sg)
        if (const int p = o.p(ga, sg)) {
          f -= Poly(GaussianRational(0, 4 * p)) * o.sy("C", {sg}) * w(o.Tb(ga), o.E2p());
          f += Poly(GaussianRational(0, 4 * p)) * o.sy("Cb", {sg}) * w(o.T(ga), o.E2m());
        }
    f += o.sy("P") * w(o.Eta(1), o.E2p());
    f += o.sy("Pb") * w(o.Eta(1), o.E2m());
    f += i * o.sy("R") * w(o.E2p(), o.E2m());
    row("d psi_1", psi(1), f);
  }

  // d psi_2 + i d psi_3, split into real and imaginary parts.
  {
    Form f = w(o.F0() - i * o.Fs(1), o.Psi(2) + i * o.Psi(3)) + i * w(o.Fs(2) + i * o.Fs(3), o.Psi(1));
    for (int ga = 0; ga < m; ++ga)
      for (int de = 0; de < m; ++de)
        if (const int p = o.p(ga, de)) f += Poly(4 * p) * w(o.pu(ga), o.pu(de));
    for (int ga = 0; ga < m; ++ga)
      for (int sg = 0; sg < m; ++sg)
        if (const int p = o.p(ga, sg)) {
          for (int de = 0; de < m; ++de)
            f += Poly(GaussianRational(0, 4 * p)) * o.sy("Mb", {sg, de}) * w(o.T(ga), o.Tb(de));
          f += Poly(GaussianRational(0, 4 * p)) * o.sy("Cb", {sg}) * w(o.T(ga), o.Eta(1));
          f -= Poly(GaussianRational(0, 4 * p)) * o.sy("Hb", {sg}) * w(o.T(ga), o.E2m());
        }
    for (int ga = 0; ga < m; ++ga) {
      f -= Poly(4) * o.sy("Hb", {ga}) * w(o.Tb(ga), o.Eta(1));
      f -= Poly(4) * o.sy("Cb", {ga}) * w(o.Tb(ga), o.E2p());
    }
    f -= i * o.sy("R") * w(o.Eta(1), o.E2p());
    f += o.sy("Qb") * w(o.Eta(1), o.E2m());
    f -= o.sy("Pb") * w(o.E2p(), o.E2m());
    const Form fb = o.bar(f);
    row("d psi_2", psi(2), kHalf * (f + fb));
    row("d psi_3", psi(3), Poly(GaussianRational(Rational(0), Rational(-1, 2))) * (f - fb));
  }
}

void QcSystem::build_symbol_derivatives() {
  const Ops o(*this);
  const int m = o.m;
  const Poly i(kI);
  const auto ci = [](long re, long im) { return Poly(GaussianRational(Rational(re), Rational(im))); };
  const auto half = [](long re, long im) { return Poly(GaussianRational(Rational(re, 2), Rational(im, 2))); };

  // Connection action on lower indices: sum p(t, nu) T_{.. t ..} Gamma_{nu a}.
  auto connection = [&](const std::string& fam, const std::vector<int>& idx) {
    Form f(1);
    for (std::size_t slot = 0; slot < idx.size(); ++slot)
      for (int t = 0; t < m; ++t)
        for (int nu = 0; nu < m; ++nu)
          if (const int p = o.p(t, nu)) {
            auto k = idx;
            k[slot] = t;
            f += Poly(p) * o.sy(fam, k) * o.G(nu, idx[slot]);
          }
    return f;
  };
  auto set_pair = [&](const std::string& fam, const std::vector<int>& idx, const Form& f) {
    table_.set_symbol(symbol(fam, idx), f);
    table_.set_symbol(symbol(fam + "b", idx), o.bar(f));
  };

  for (const auto& I : multisets(m, 4)) {
    const int a = I[0], b = I[1], c = I[2], d = I[3];
    Form f = o.St("S", I) + connection("S", I) + o.sy("S", I) * o.F0();
    for (int t = 0; t < m; ++t) {
      Poly k = Poly(o.p(a, t)) * o.sy("V", {d, b, c}) + Poly(o.p(b, t)) * o.sy("V", {a, c, d}) +
               Poly(o.p(c, t)) * o.sy("V", {a, b, d}) + Poly(o.p(d, t)) * o.sy("V", {a, b, c});
      f += ci(0, 2) * k * o.T(t);
    }
    f += ci(0, 2) * (o.j("V", {d, b, c}) * o.Tb(a) + o.j("V", {a, d, c}) * o.Tb(b) +
                     o.j("V", {a, b, d}) * o.Tb(c) + o.j("V", {a, b, c}) * o.Tb(d));
    table_.set_symbol(symbol("S", I), f);
  }

  for (const auto& I : multisets(m, 3)) {
    const int a = I[0], b = I[1], c = I[2];
    Form f = o.St("V", I) + connection("V", I);
    for (int t = 0; t < m; ++t)
      for (int sg = 0; sg < m; ++sg)
        if (const int p = o.p(t, sg)) f -= i * Poly(p) * o.sy("S", {a, b, c, sg}) * o.pub(t);
    f += o.sy("V", I) * (half(3, 0) * o.F0() + half(0, 1) * o.Fs(1));
    f -= o.j("V", I) * (half(1, 0) * o.Fs(2) + half(0, -1) * o.Fs(3));
    for (int t = 0; t < m; ++t) {
      Poly k = Poly(o.p(a, t)) * o.sy("M", {b, c}) + Poly(o.p(b, t)) * o.sy("M", {a, c}) +
               Poly(o.p(c, t)) * o.sy("M", {a, b});
      f -= Poly(2) * k * o.T(t);
    }
    f -= Poly(2) * (o.sy("L", {b, c}) * o.Tb(a) + o.sy("L", {a, c}) * o.Tb(b) + o.sy("L", {a, b}) * o.Tb(c));
    set_pair("V", I, f);
  }

  for (const auto& I : multisets(m, 2)) {
    const int a = I[0], b = I[1];
    Form f = o.St("L", I) + connection("L", I) + Poly(2) * o.sy("L", I) * o.F0();
    f += kHalf * o.sy("M", I) * (o.Fs(2) + i * o.Fs(3));
    f += kHalf * o.j("M", I) * (o.Fs(2) - i * o.Fs(3));
    for (int sg = 0; sg < m; ++sg) f += o.sy("V", {a, b, sg}) * o.pu(sg);
    for (int mu = 0; mu < m; ++mu)
      for (int nu = 0; nu < m; ++nu)
        if (const int p = o.p(a, mu) * o.p(b, nu))
          for (int sg = 0; sg < m; ++sg) f += Poly(p) * o.sy("Vb", {mu, nu, sg}) * o.pub(sg);
    for (int t = 0; t < m; ++t)
      f += ci(0, 2) * (Poly(o.p(a, t)) * o.sy("C", {b}) + Poly(o.p(b, t)) * o.sy("C", {a})) * o.T(t);
    for (int sg = 0; sg < m; ++sg) {
      if (const int p = o.p(b, sg)) f += ci(0, 2 * p) * o.sy("Cb", {sg}) * o.Tb(a);
      if (const int p = o.p(a, sg)) f += ci(0, 2 * p) * o.sy("Cb", {sg}) * o.Tb(b);
    }
    table_.set_symbol(symbol("L", I), f);
  }

  for (const auto& I : multisets(m, 2)) {
    const int a = I[0], b = I[1];
    Form f = o.St("M", I) + connection("M", I);
    f += o.sy("M", I) * (Poly(2) * o.F0() + i * o.Fs(1));
    f -= o.sy("L", I) * (o.Fs(2) - i * o.Fs(3));
    for (int t = 0; t < m; ++t)
      for (int sg = 0; sg < m; ++sg)
        if (const int p = o.p(t, sg)) f -= Poly(2 * p) * o.sy("V", {a, b, sg}) * o.pub(t);
    for (int t = 0; t < m; ++t)
      f -= Poly(2) * (Poly(o.p(a, t)) * o.sy("H", {b}) + Poly(o.p(b, t)) * o.sy("H", {a})) * o.T(t);
    f += ci(0, 2) * (o.sy("C", {b}) * o.Tb(a) + o.sy("C", {a}) * o.Tb(b));
    set_pair("M", I, f);
  }

  for (int a = 0; a < m; ++a) {
    Form f = o.St("C", {a}) + connection("C", {a});
    f += o.sy("C", {a}) * (half(5, 0) * o.F0() + half(0, 1) * o.Fs(1));
    for (int sg = 0; sg < m; ++sg)
      if (const int p = o.p(a, sg)) f -= Poly(p) * o.sy("Cb", {sg}) * (o.Fs(2) - i * o.Fs(3));
    for (int t = 0; t < m; ++t)
      for (int sg = 0; sg < m; ++sg)
        if (const int p = o.p(t, sg)) f -= ci(0, 2 * p) * o.sy("L", {a, sg}) * o.pub(t);
    for (int t = 0; t < m; ++t) f += i * o.sy("M", {a, t}) * o.pu(t);
    f += half(0, 1) * o.sy("H", {a}) * (o.Fs(2) + i * o.Fs(3));
    for (int t = 0; t < m; ++t)
      if (const int p = o.p(a, t)) f -= half(p, 0) * o.sy("P") * o.T(t);
    f += kHalf * o.sy("R") * o.Tb(a);
    set_pair("C", {a}, f);

    Form h = o.St("H", {a}) + connection("H", {a});
    h += o.sy("H", {a}) * (half(5, 0) * o.F0() + half(0, 3) * o.Fs(1));
    h += half(0, 3) * o.sy("C", {a}) * (o.Fs(2) - i * o.Fs(3));
    for (int t = 0; t < m; ++t)
      for (int sg = 0; sg < m; ++sg)
        if (const int p = o.p(t, sg)) h -= Poly(3 * p) * o.sy("M", {a, sg}) * o.pub(t);
    for (int t = 0; t < m; ++t)
      if (const int p = o.p(a, t)) h += half(p, 0) * o.sy("Q") * o.T(t);
    h += half(0, 1) * o.sy("P") * o.Tb(a);
    set_pair("H", {a}, h);
  }

  {
    Form r = o.St("R") + Poly(3) * o.sy("R") * o.F0();
    r -= o.sy("P") * (o.Fs(2) + i * o.Fs(3));
    r -= o.sy("Pb") * (o.Fs(2) - i * o.Fs(3));
    for (int t = 0; t < m; ++t) {
      r -= Poly(8) * o.sy("C", {t}) * o.pu(t);
      r -= Poly(8) * o.sy("Cb", {t}) * o.pub(t);
    }
    table_.set_symbol(symbol("R", {}), r);

    Form p = o.St("P") + o.sy("P") * (Poly(3) * o.F0() + i * o.Fs(1));
    p -= half(0, 1) * o.sy("Q") * (o.Fs(2) + i * o.Fs(3));
    p += half(3, 0) * o.sy("R") * (o.Fs(2) - i * o.Fs(3));
    for (int t = 0; t < m; ++t) p += ci(0, 4) * o.sy("H", {t}) * o.pu(t);
    for (int t = 0; t < m; ++t)
      for (int sg = 0; sg < m; ++sg)
        if (const int q = o.p(t, sg)) p -= Poly(12 * q) * o.sy("C", {sg}) * o.pub(t);
    set_pair("P", {}, p);

    Form q = o.St("Q") + o.sy("Q") * (Poly(3) * o.F0() + ci(0, 2) * o.Fs(1));
    q -= ci(0, 2) * o.sy("P") * (o.Fs(2) - i * o.Fs(3));
    for (int t = 0; t < m; ++t)
      for (int sg = 0; sg < m; ++sg)
        if (const int pp = o.p(t, sg)) q += Poly(16 * pp) * o.sy("H", {sg}) * o.pub(t);
    set_pair("Q", {}, q);
  }
}

void QcSystem::override_equation(GenId lhs, Form rhs) {
  for (auto& r : equations_)
    if (r.lhs == lhs) {
      r.rhs = rhs;
      table_.set(lhs, std::move(rhs));
      return;
    }
  throw std::invalid_argument("override_equation: not a coframe generator");
}

BianchiSet QcSystem::bianchi_forms() const {
  const Ops o(*this);
  const int m = o.m;
  const Poly i(kI);
  BianchiSet out;

  for (const auto& ab : multisets(m, 2)) {
    const int al = ab[0];
    const int be = ab[1];
    Form f(3);
    for (int ga = 0; ga < m; ++ga)
      for (int de = 0; de < m; ++de)
        for (int sg = 0; sg < m; ++sg)
          if (const int p = o.p(de, sg)) f += Poly(p) * w(o.St("S", {al, be, ga, sg}), o.T(ga), o.Tb(de));
    for (int ga = 0; ga < m; ++ga) f += w(o.St("V", {al, be, ga}), o.T(ga), o.Eta(1));
    for (int mu = 0; mu < m; ++mu)
      for (int nu = 0; nu < m; ++nu)
        if (const int p = o.p(al, mu) * o.p(be, nu)) {
          for (int ga = 0; ga < m; ++ga) {
            f += Poly(p) * w(o.St("Vb", {mu, nu, ga}), o.Tb(ga), o.Eta(1));
            for (int xi = 0; xi < m; ++xi)
              if (const int q = o.p(ga, xi)) f += i * Poly(p * q) * w(o.St("Vb", {mu, nu, xi}), o.T(ga), o.E2m());
          }
          f += Poly(p) * w(o.St("Mb", {mu, nu}), o.Eta(1), o.E2m());
        }
    for (int ga = 0; ga < m; ++ga)
      for (int sg = 0; sg < m; ++sg)
        if (const int p = o.p(ga, sg)) f -= i * Poly(p) * w(o.St("V", {al, be, sg}), o.Tb(ga), o.E2p());
    f -= i * w(o.St("L", ab), o.E2p(), o.E2m());
    f += w(o.St("M", ab), o.Eta(1), o.E2p());
    out.forms.push_back({"Delta_" + index_label(ab, m), f});
  }

  for (int al = 0; al < m; ++al) {
    Form f(3);
    for (int be = 0; be < m; ++be)
      for (int ga = 0; ga < m; ++ga)
        for (int nu = 0; nu < m; ++nu)
          if (const int p = o.p(ga, nu)) f -= i * Poly(p) * w(o.St("V", {al, be, nu}), o.T(be), o.Tb(ga));
    for (int mu = 0; mu < m; ++mu)
      if (const int p = o.p(al, mu)) {
        for (int be = 0; be < m; ++be) f += Poly(p) * w(o.bar(o.St("L", {mu, be})), o.Tb(be), o.Eta(1));
        f += i * Poly(p) * w(o.St("Cb", {mu}), o.Eta(1), o.E2m());
      }
    for (int be = 0; be < m; ++be) {
      f += w(o.St("M", {al, be}), o.T(be), o.Eta(1));
      f += i * w(o.St("L", {al, be}), o.T(be), o.E2m());
      for (int nu = 0; nu < m; ++nu)
        if (const int p = o.p(be, nu)) f -= i * Poly(p) * w(o.St("M", {al, nu}), o.Tb(be), o.E2p());
    }
    f -= w(o.St("C", {al}), o.E2p(), o.E2m());
    f += w(o.St("H", {al}), o.Eta(1), o.E2p());
    out.forms.push_back({"Delta_" + index_label({al}, m), f});
  }

  {
    Form f(3);
    for (int be = 0; be < m; ++be)
      for (int ga = 0; ga < m; ++ga)
        for (int mu = 0; mu < m; ++mu)
          if (const int p = o.p(ga, mu)) f += Poly(4 * p) * w(o.St("L", {be, mu}), o.T(be), o.Tb(ga));
    for (int be = 0; be < m; ++be) {
      f += Poly(4) * w(o.St("C", {be}), o.T(be), o.Eta(1));
      f += Poly(4) * w(o.St("Cb", {be}), o.Tb(be), o.Eta(1));
    }
    for (int be = 0; be < m; ++be)
      for (int mu = 0; mu < m; ++mu)
        if (const int p = o.p(be, mu)) {
          f += Poly(GaussianRational(0, 4 * p)) * w(o.St("Cb", {mu}), o.T(be), o.E2m());
          f -= Poly(GaussianRational(0, 4 * p)) * w(o.St("C", {mu}), o.Tb(be), o.E2p());
        }
    f += w(o.St("P"), o.Eta(1), o.E2p());
    f += w(o.St("Pb"), o.Eta(1), o.E2m());
    f += i * w(o.St("R"), o.E2p(), o.E2m());
    out.forms.push_back({"Psi_1", f});
  }

  {
    Form f(3);
    for (int be = 0; be < m; ++be)
      for (int mu = 0; mu < m; ++mu)
        if (const int p = o.p(be, mu)) {
          for (int ga = 0; ga < m; ++ga)
            f += Poly(GaussianRational(0, 4 * p)) * w(o.St("Mb", {mu, ga}), o.T(be), o.Tb(ga));
          f += Poly(GaussianRational(0, 4 * p)) * w(o.St("Cb", {mu}), o.T(be), o.Eta(1));
          f -= Poly(GaussianRational(0, 4 * p)) * w(o.St("Hb", {mu}), o.T(be), o.E2m());
        }
    for (int ga = 0; ga < m; ++ga) {
      f -= Poly(4) * w(o.St("Hb", {ga}), o.Tb(ga), o.Eta(1));
      f -= Poly(4) * w(o.St("Cb", {ga}), o.Tb(ga), o.E2p());
    }
    f -= i * w(o.St("R"), o.Eta(1), o.E2p());
    f += w(o.St("Qb"), o.Eta(1), o.E2m());
    f -= w(o.St("Pb"), o.E2p(), o.E2m());
    out.forms.push_back({"Psi_23", f});
  }
  return out;
}

bool QcSystem::bianchi_j_symmetric(const BianchiSet& b) const {
  const Ops o(*this);
  for (const auto& ab : multisets(o.m, 2)) {
    auto [q, sign] = partner_of(spec_, ab);
    const Form& lhs = b.get("Delta_" + index_label(ab, o.m));
    Form rhs = o.bar(b.get("Delta_" + index_label(q, o.m)));
    if (sign < 0) rhs = -rhs;
    if (!(lhs == rhs)) return false;
  }
  return true;
}

DSquaredReport QcSystem::verify_d_squared() const {
  const Ops o(*this);
  const int m = o.m;
  const BianchiSet b = bianchi_forms();
  const Poly i(kI);
  DSquaredReport rep;

  auto expected = [&](GenId g) -> Form {
    const auto& inf = cat_.info(g);
    if (inf.family == "Gamma") return b.get("Delta_" + index_label(inf.index, m));
    if (inf.family == "phiL") return b.get("Delta_" + index_label(inf.index, m));
    if (inf.family == "phiLb") return o.bar(b.get("Delta_" + index_label(inf.index, m)));
    if (inf.family == "psi") {
      if (inf.index[0] == 1) return b.get("Psi_1");
      const Form& z = b.get("Psi_23");
      const Form zb = o.bar(z);
      if (inf.index[0] == 2) return kHalf * (z + zb);
      return Poly(GaussianRational(Rational(0), Rational(-1, 2))) * (z - zb);
    }
    return Form(3);
  };

  for (const auto& r : equations_) {
    Form res = differentiate(r.rhs, table_) - expected(r.lhs);
    Residual out{r.tag, res.size(), ""};
    if (!res.is_zero()) {
      std::string text = res.to_string(cat_, &syms_);
      if (text.size() > 2000) text = text.substr(0, 2000) + "\n...";
      out.detail = text;
    }
    rep.residuals.push_back(std::move(out));
  }

  // Conjugation consistency of the table for the self-paired families.
  for (GenId g : coframe_) {
    const auto& inf = cat_.info(g);
    Form lhs = o.bar(table_.of(g));
    if (inf.conj_sign < 0) lhs = -lhs;
    if (!(lhs == table_.of(inf.conj_id))) ++rep.conjugation_mismatches;
  }
  for (SymbolId s = 0; s < syms_.size(); ++s) {
    if (!table_.has_symbol(s)) continue;
    const auto cj = syms_.conjugate(s);
    Form lhs = o.bar(table_.of_symbol(s));
    if (cj.sign < 0) lhs = -lhs;
    if (!(lhs == table_.of_symbol(cj.id))) ++rep.conjugation_mismatches;
  }
  return rep;
}

std::map<GenId, Form> QcSystem::integral_element() const {
  const Ops o(*this);
  const int m = o.m;
  const Poly i(kI);
  std::map<GenId, Form> out;
  const auto ci = [](long re, long im) { return Poly(GaussianRational(Rational(re), Rational(im))); };
  auto set_pair = [&](const std::string& fam, const std::vector<int>& idx, const Form& f) {
    out[star(fam, idx)] = f;
    out[star(fam + "b", idx)] = o.bar(f);
  };
  auto cat = [](std::vector<int> a, int b) {
    a.push_back(b);
    return a;
  };

  for (const auto& I : multisets(m, 4)) {
    Form f(1);
    for (int e = 0; e < m; ++e) f += o.sy("A", cat(I, e)) * o.T(e);
    for (int e = 0; e < m; ++e)
      for (int sg = 0; sg < m; ++sg)
        if (const int p = o.p(e, sg)) f -= Poly(p) * o.j("A", cat(I, sg)) * o.Tb(e);
    f += (o.sy("B", I) + o.j("B", I)) * o.Eta(1);
    f += i * o.sy("C4", I) * o.E2p();
    f -= i * o.j("C4", I) * o.E2m();
    out[star("S", I)] = f;
  }
  for (const auto& I : multisets(m, 3)) {
    Form f(1);
    for (int e = 0; e < m; ++e) f += o.sy("C4", cat(I, e)) * o.T(e);
    for (int e = 0; e < m; ++e)
      for (int sg = 0; sg < m; ++sg)
        if (const int p = o.p(e, sg)) f += Poly(p) * o.sy("B", cat(I, sg)) * o.Tb(e);
    f += o.sy("D", I) * o.Eta(1) + o.sy("E", I) * o.E2p() + o.sy("F", I) * o.E2m();
    set_pair("V", I, f);
  }
  for (const auto& I : multisets(m, 2)) {
    Form l(1);
    for (int e = 0; e < m; ++e) l -= o.j("F", cat(I, e)) * o.T(e);
    for (int e = 0; e < m; ++e)
      for (int sg = 0; sg < m; ++sg)
        if (const int p = o.p(e, sg)) l -= Poly(p) * o.sy("F", cat(I, sg)) * o.Tb(e);
    l += i * (o.j("Z", I) - o.sy("Z", I)) * o.Eta(1);
    l += i * o.sy("G", I) * o.E2p();
    l -= i * o.j("G", I) * o.E2m();
    out[star("L", I)] = l;

    Form mm(1);
    for (int e = 0; e < m; ++e) mm -= o.sy("E", cat(I, e)) * o.T(e);
    for (int e = 0; e < m; ++e)
      for (int sg = 0; sg < m; ++sg)
        if (const int p = o.p(e, sg)) mm += Poly(p) * (o.j("F", cat(I, sg)) - i * o.sy("D", cat(I, sg))) * o.Tb(e);
    mm += o.sy("X", I) * o.Eta(1) + o.sy("Y", I) * o.E2p() + o.sy("Z", I) * o.E2m();
    set_pair("M", I, mm);
  }
  for (int a = 0; a < m; ++a) {
    Form c(1);
    for (int e = 0; e < m; ++e) c += o.sy("G", {a, e}) * o.T(e);
    for (int e = 0; e < m; ++e)
      for (int sg = 0; sg < m; ++sg)
        if (const int p = o.p(e, sg)) c -= i * Poly(p) * o.sy("Z", {a, sg}) * o.Tb(e);
    c += o.sy("N1", {a}) * o.Eta(1) + o.sy("N2", {a}) * o.E2p() + o.sy("N3", {a}) * o.E2m();
    set_pair("C", {a}, c);

    Form h(1);
    for (int e = 0; e < m; ++e) h -= o.sy("Y", {a, e}) * o.T(e);
    for (int e = 0; e < m; ++e)
      for (int sg = 0; sg < m; ++sg)
        if (const int p = o.p(e, sg)) h += i * Poly(p) * (o.sy("G", {a, sg}) - o.sy("X", {a, sg})) * o.Tb(e);
    h += o.sy("N4", {a}) * o.Eta(1) + o.sy("N5", {a}) * o.E2p();
    Poly tail = o.sy("N1", {a});
    for (int sg = 0; sg < m; ++sg)
      if (const int p = o.p(a, sg)) tail += i * Poly(p) * o.sy("N3b", {sg});
    h += tail * o.E2m();
    set_pair("H", {a}, h);
  }
  {
    Form r(1);
    for (int e = 0; e < m; ++e)
      for (int sg = 0; sg < m; ++sg)
        if (const int p = o.p(e, sg)) {
          r += Poly(4 * p) * o.sy("N3b", {sg}) * o.T(e);
          r += Poly(4 * p) * o.sy("N3", {sg}) * o.Tb(e);
        }
    r += i * (o.sy("U3") - o.sy("U3b")) * o.Eta(1);
    r -= i * (o.sy("U1") + o.sy("W3")) * o.E2p();
    r += i * (o.sy("U1b") + o.sy("W3b")) * o.E2m();
    out[star("R", {})] = r;

    Form p(1);
    for (int e = 0; e < m; ++e) {
      p -= Poly(4) * o.sy("N2", {e}) * o.T(e);
      Poly k = o.sy("N3b", {e});
      for (int sg = 0; sg < m; ++sg)
        if (const int q = o.p(e, sg)) k += i * Poly(q) * o.sy("N1", {sg});
      p -= Poly(4) * k * o.Tb(e);
    }
    p += o.sy("U1") * o.Eta(1) + o.sy("U2") * o.E2p() + o.sy("U3") * o.E2m();
    set_pair("P", {}, p);

    Form q(1);
    for (int e = 0; e < m; ++e) q += Poly(4) * o.sy("N5", {e}) * o.T(e);
    for (int e = 0; e < m; ++e)
      for (int sg = 0; sg < m; ++sg)
        if (const int pp = o.p(e, sg)) q += ci(0, 4 * pp) * (o.sy("N2", {sg}) + o.sy("N4", {sg})) * o.Tb(e);
    q += o.sy("W1") * o.Eta(1) + o.sy("W2") * o.E2p() + o.sy("W3") * o.E2m();
    set_pair("Q", {}, q);
  }
  return out;
}

namespace {

// Values of the second-order symbols (and their conjugates) from constants.
std::map<SymbolId, GaussianRational> symbol_values(const QcSystem& s, const PointConstants& c) {
  std::map<SymbolId, GaussianRational> v;
  for (const auto& f : second_order_symbols()) {
    auto it = c.second_order.find(f.name);
    if (it == c.second_order.end()) throw std::invalid_argument("constants: missing family " + f.name);
    for (const auto& idx : multisets(s.spec().dim(), f.arity)) {
      const GaussianRational z = it->second.get(idx);
      v[s.symbol(f.name, idx)] = z;
      v[s.symbol(f.name + "b", idx)] = z.conj();
    }
  }
  return v;
}

}  // namespace

std::map<GenId, Form> QcSystem::integral_element(const PointConstants& values) const {
  values.validate(spec_);
  const auto v = symbol_values(*this, values);
  const auto eval = [&v](const Poly& c) {
    return c.substitute([&v](SymbolId s) {
      auto it = v.find(s);
      if (it == v.end()) throw std::invalid_argument("integral_element: unexpected symbol");
      return Poly(it->second);
    });
  };
  std::map<GenId, Form> out;
  for (const auto& [g, f] : integral_element()) out[g] = f.map_coefficients(eval);
  return out;
}

BianchiSet QcSystem::substitute_starred(const BianchiSet& b, const std::map<GenId, Form>& rules) const {
  BianchiSet out;
  for (const auto& f : b.forms) out.forms.push_back({f.name, substitute(f.form, rules, Unmapped::keep)});
  return out;
}

BianchiSet QcSystem::shifted_system(const PointConstants& constants) const {
  const auto shift = integral_element(constants);
  std::map<GenId, Form> rules;
  for (GenId g : starred_) {
    auto it = shift.find(g);
    if (it == shift.end()) throw std::logic_error("shifted_system: starred form without expansion");
    rules[g] = Form::generator(g) - it->second;
  }
  return substitute_starred(bianchi_forms(), rules);
}

PointConstants PointConstants::zero(const IndexSpec& spec) {
  PointConstants c;
  for (const auto& f : curvature_families()) c.curvature.emplace(f.tag, SymArray(spec, f.tag, f.arity, f.constraint));
  for (const auto& f : second_order_symbols()) c.second_order.emplace(f.name, SymArray(spec, f.name, f.arity));
  return c;
}

PointConstants PointConstants::random(const IndexSpec& spec, std::mt19937_64& rng) {
  PointConstants c;
  for (const auto& f : curvature_families())
    c.curvature.emplace(f.tag, SymArray::random(spec, f.tag, f.arity, f.constraint, rng));
  for (const auto& f : second_order_symbols())
    c.second_order.emplace(f.name, SymArray::random(spec, f.name, f.arity, Constraint::none, rng));
  return c;
}

void PointConstants::validate(const IndexSpec& spec) const {
  for (const auto& f : curvature_families()) {
    auto it = curvature.find(f.tag);
    if (it == curvature.end()) throw std::invalid_argument("constants: missing curvature family " + f.tag);
    const SymArray& a = it->second;
    if (a.arity() != f.arity || a.spec().n != spec.n)
      throw std::invalid_argument("constants: family " + f.tag + " has the wrong shape");
    SymArray probe(spec, f.tag, f.arity, f.constraint);
    for (const auto& [k, z] : a.components()) probe.set(k, z);
    if (!probe.satisfies_constraint())
      throw std::invalid_argument("constants: family " + f.tag + " violates its reality condition");
  }
  for (const auto& f : second_order_symbols()) {
    auto it = second_order.find(f.name);
    if (it == second_order.end()) throw std::invalid_argument("constants: missing family " + f.name);
    if (it->second.arity() != f.arity || it->second.spec().n != spec.n)
      throw std::invalid_argument("constants: family " + f.name + " has the wrong shape");
  }
}

std::map<GenId, Form> QcSystem::epsilon_rules() const {
  const int n = spec_.n;
  const Poly i(kI);
  auto e = [this](int k) { return Form::generator(epsilon_.at(static_cast<std::size_t>(k))); };
  // 0-based positions: xi^a = a, zeta^a = n + a, eta_s = 2n + s - 1,
  // mu^a = 2n + 3 + a, nu^a = 3n + 3 + a.
  auto xi_b = [&](int a) { return e(a); };
  auto zeta_b = [&](int a) { return e(n + a); };
  auto eta_f = [&](int s) { return e(2 * n + s - 1); };
  auto mu = [&](int a) { return e(2 * n + 3 + a); };
  auto nu = [&](int a) { return e(3 * n + 3 + a); };
  auto wrap = [n](int k) { return ((k % n) + n) % n; };

  std::vector<Form> xi(static_cast<std::size_t>(2 * n)), zeta(static_cast<std::size_t>(2 * n));
  for (int a = 0; a < n; ++a) {
    xi[static_cast<std::size_t>(a)] = xi_b(a);
    zeta[static_cast<std::size_t>(a)] = zeta_b(a);
    xi[static_cast<std::size_t>(n + a)] = a == 0 ? mu(0) + zeta_b(n - 1) + eta_f(3) : mu(a) + zeta_b(a - 1);
    zeta[static_cast<std::size_t>(n + a)] = nu(a) + mu(wrap(a - 2));
  }
  std::map<GenId, Form> rules;
  for (int a = 0; a < 2 * n; ++a) {
    const auto k = static_cast<std::size_t>(a);
    rules[theta(a)] = xi[k] + i * zeta[k];
    rules[theta_bar(a)] = xi[k] - i * zeta[k];
  }
  for (int s = 1; s <= 3; ++s) rules[eta(s)] = eta_f(s);
  return rules;
}

std::map<GenId, Form> QcSystem::epsilon_inverse_rules() const {
  const int n = spec_.n;
  auto wrap = [n](int k) { return ((k % n) + n) % n; };
  const Poly half = kHalf;
  const Poly mhalf_i(GaussianRational(Rational(0), Rational(-1, 2)));
  auto xi = [&](int a) { return half * (Form::generator(theta(a)) + Form::generator(theta_bar(a))); };
  auto zeta = [&](int a) { return mhalf_i * (Form::generator(theta(a)) - Form::generator(theta_bar(a))); };
  std::vector<Form> mu(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    Form f = xi(n + a) - (a == 0 ? zeta(n - 1) + Form::generator(eta(3)) : zeta(a - 1));
    mu[static_cast<std::size_t>(a)] = f;
  }
  std::map<GenId, Form> rules;
  for (int a = 0; a < n; ++a) {
    rules[epsilon_[static_cast<std::size_t>(a)]] = xi(a);
    rules[epsilon_[static_cast<std::size_t>(n + a)]] = zeta(a);
    rules[epsilon_[static_cast<std::size_t>(2 * n + 3 + a)]] = mu[static_cast<std::size_t>(a)];
    rules[epsilon_[static_cast<std::size_t>(3 * n + 3 + a)]] = zeta(n + a) - mu[static_cast<std::size_t>(wrap(a - 2))];
  }
  for (int s = 1; s <= 3; ++s) rules[epsilon_[static_cast<std::size_t>(2 * n + s - 1)]] = Form::generator(eta(s));
  return rules;
}

BianchiSet QcSystem::to_epsilon_basis(const BianchiSet& b) const {
  const auto rules = epsilon_rules();
  BianchiSet out;
  for (const auto& f : b.forms) out.forms.push_back({f.name, substitute(f.form, rules, Unmapped::keep)});
  return out;
}

BianchiSet QcSystem::from_epsilon_basis(const BianchiSet& b) const {
  const auto rules = epsilon_inverse_rules();
  BianchiSet out;
  for (const auto& f : b.forms) out.forms.push_back({f.name, substitute(f.form, rules, Unmapped::keep)});
  return out;
}

std::string QcSystem::dump() const {
  std::ostringstream os;
  os << "n = " << spec_.n << "\n";
  os << "coframe (" << coframe_.size() << "):";
  for (GenId g : coframe_) os << " " << cat_.name(g);
  os << "\nstarred (" << starred_.size() << "):";
  for (GenId g : starred_) os << " " << cat_.name(g);
  os << "\nepsilon (" << epsilon_.size() << "):";
  for (GenId g : epsilon_) os << " " << cat_.name(g);
  os << "\n\n";
  for (const auto& r : equations_) {
    os << "[" << r.tag << "] d " << cat_.name(r.lhs) << " =\n" << r.rhs.to_string(cat_, &syms_) << "\n\n";
  }
  return os.str();
}

RealCoordinates::RealCoordinates(const QcSystem& sys) {
  const Catalog& cat = sys.catalog();
  for (GenId g : sys.starred()) {
    if (slot_.count(g)) continue;
    const auto& inf = cat.info(g);
    Slot s;
    s.rep = g;
    s.partner = inf.conj_id;
    s.sign = inf.conj_sign;
    if (inf.conj_id == g) {
      s.kind = inf.conj_sign > 0 ? 1 : 2;
      s.x = count_++;
      slot_[g] = s;
    } else {
      s.kind = 0;
      s.x = count_++;
      s.y = count_++;
      slot_[g] = s;
      slot_[inf.conj_id] = s;
    }
  }
}

std::map<std::size_t, GaussianRational> RealCoordinates::realify(const std::map<GenId, Poly>& v) const {
  std::map<std::size_t, GaussianRational> out;
  auto add = [&out](std::size_t k, const GaussianRational& z) {
    if (z.is_zero()) return;
    auto [it, ins] = out.try_emplace(k, z);
    if (!ins) {
      it->second += z;
      if (it->second.is_zero()) out.erase(it);
    }
  };
  for (const auto& [g, c] : v) {
    if (!c.is_constant()) throw std::invalid_argument("realify: non-constant coefficient");
    const GaussianRational z = c.constant_term();
    auto it = slot_.find(g);
    if (it == slot_.end()) throw std::invalid_argument("realify: not a starred generator");
    const Slot& s = it->second;
    if (s.kind == 1) {
      add(s.x, z);
    } else if (s.kind == 2) {
      add(s.x, z * GaussianRational::i());
    } else if (g == s.rep) {
      // g = x + i y.
      add(s.x, z);
      add(s.y, z * GaussianRational::i());
    } else {
      // h = sign conj(g) = sign (x - i y).
      const GaussianRational zs = s.sign > 0 ? z : -z;
      add(s.x, zs);
      add(s.y, -(zs * GaussianRational::i()));
    }
  }
  return out;
}

}  // namespace qcc
