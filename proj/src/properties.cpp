#include "qcc/properties.hpp"

#include "qcc/exterior.hpp"
#include "qcc/involution.hpp"
#include "qcc/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace qcc {

namespace {

class Tally {
 public:
  explicit Tally(std::string name) { r_.name = std::move(name); }
  void check(bool ok, const std::string& what) {
    ++r_.instances;
    if (ok) return;
    if (r_.failures++ == 0) r_.first_failure = what;
  }
  PropertyResult result() const { return r_; }

 private:
  PropertyResult r_;
};

struct FormWorld {
  Catalog cat;
  SymbolTable syms;
  std::vector<GenId> gens;
  std::vector<SymbolId> symbols;
  DerivationTable table;
};

int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Poly random_coeff(const FormWorld& w, std::mt19937_64& rng) {
  Poly p(random_gaussian(rng));
  if (pick(rng, 0, 1)) p += Poly::symbol(w.symbols[static_cast<std::size_t>(pick(rng, 0, 1))], random_gaussian(rng));
  return p;
}

Form random_form(const FormWorld& w, int degree, std::mt19937_64& rng, int max_terms = 4) {
  Form f(degree);
  const int terms = pick(rng, 1, max_terms);
  for (int t = 0; t < terms; ++t) {
    Blade b;
    for (int k = 0; k < degree; ++k) b.push_back(w.gens[static_cast<std::size_t>(pick(rng, 0, 7))]);
    f.add_term(b, random_coeff(w, rng));
  }
  return f;
}

FormWorld make_world(std::mt19937_64& rng) {
  FormWorld w;
  for (int k = 0; k < 8; ++k) w.gens.push_back(w.cat.add("g", {k}, "g" + std::to_string(k + 1)));
  w.symbols.push_back(w.syms.add("s"));
  w.symbols.push_back(w.syms.add("t"));
  for (GenId g : w.gens) w.table.set(g, random_form(w, 2, rng, 3));
  for (SymbolId s : w.symbols) w.table.set_symbol(s, random_form(w, 1, rng, 3));
  return w;
}

std::map<GenId, Form> random_rules(const FormWorld& w, std::mt19937_64& rng) {
  std::map<GenId, Form> rules;
  for (GenId g : w.gens) rules.emplace(g, random_form(w, 1, rng, 3));
  return rules;
}

int sign_of(int p, int q) { return (p * q) % 2 ? -1 : 1; }

}  // namespace

std::vector<PropertyResult> form_algebra_laws(std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  const FormWorld w = make_world(rng);
  Tally assoc("wedge.associative"), comm("wedge.graded_commutative"), bilin("wedge.bilinear"),
      square("wedge.one_form_square"), sub_lin("substitute.linear"), sub_mult("substitute.multiplicative"),
      sub_id("substitute.identity"), sub_comp("substitute.composition"), d_lin("differentiate.linear"),
      d_leib("differentiate.leibniz");
  std::map<GenId, Form> identity;
  for (GenId g : w.gens) identity.emplace(g, Form::generator(g));

  for (int t = 0; t < trials; ++t) {
    const std::string tag = "trial " + std::to_string(t);
    const int p = pick(rng, 0, 3), q = pick(rng, 0, 3 - p), r = pick(rng, 0, 3 - p - q);
    const Form a = random_form(w, p, rng), b = random_form(w, q, rng), c = random_form(w, r, rng);
    const Form b2 = random_form(w, q, rng);
    const Poly k = random_coeff(w, rng);

    assoc.check(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)), tag);
    comm.check(wedge(a, b) == Poly(sign_of(p, q)) * wedge(b, a), tag);
    bilin.check(wedge(a, k * b + b2) == k * wedge(a, b) + wedge(a, b2), tag);
    const Form one = random_form(w, 1, rng);
    square.check(wedge(one, one).is_zero(), tag);

    const auto r1 = random_rules(w, rng);
    const auto r2 = random_rules(w, rng);
    sub_lin.check(substitute(k * b + b2, r1) == k * substitute(b, r1) + substitute(b2, r1), tag);
    sub_mult.check(substitute(wedge(a, b), r1) == wedge(substitute(a, r1), substitute(b, r1)), tag);
    sub_id.check(substitute(a, identity) == a, tag);
    std::map<GenId, Form> composed;
    for (const auto& [g, f] : r1) composed.emplace(g, substitute(f, r2));
    sub_comp.check(substitute(substitute(a, r1), r2) == substitute(a, composed), tag);

    if (q < 3) {
      d_lin.check(differentiate(b + b2, w.table) == differentiate(b, w.table) + differentiate(b2, w.table), tag);
    }
    if (p + q < 3) {
      const Form lhs = differentiate(wedge(a, b), w.table);
      const Form rhs = wedge(differentiate(a, w.table), b) + Poly(p % 2 ? -1 : 1) * wedge(a, differentiate(b, w.table));
      d_leib.check(lhs == rhs, tag);
    }
  }
  return {assoc.result(),   comm.result(),    bilin.result(),    square.result(), sub_lin.result(),
          sub_mult.result(), sub_id.result(), sub_comp.result(), d_lin.result(),  d_leib.result()};
}

PropertyResult rank_permutation_invariance(std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  Tally tally("rank.permutation_invariance");
  for (int t = 0; t < trials; ++t) {
    const int rows = pick(rng, 1, 12), cols = pick(rng, 1, 12);
    const int target = pick(rng, 0, std::min(rows, cols));
    // M = B C with B rows x target and C target x cols: rank <= target.
    std::vector<std::vector<Rational>> B(static_cast<std::size_t>(rows), std::vector<Rational>(static_cast<std::size_t>(target)));
    std::vector<std::vector<Rational>> C(static_cast<std::size_t>(target), std::vector<Rational>(static_cast<std::size_t>(cols)));
    for (auto& row : B)
      for (auto& x : row) x = pick(rng, 0, 2) ? random_rational(rng) : Rational(0);
    for (auto& row : C)
      for (auto& x : row) x = random_rational(rng);
    std::vector<std::vector<Rational>> M(static_cast<std::size_t>(rows), std::vector<Rational>(static_cast<std::size_t>(cols)));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        for (int k = 0; k < target; ++k)
          M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
              B[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * C[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    std::vector<std::size_t> pr(static_cast<std::size_t>(rows)), pc(static_cast<std::size_t>(cols));
    std::iota(pr.begin(), pr.end(), 0);
    std::iota(pc.begin(), pc.end(), 0);
    std::shuffle(pr.begin(), pr.end(), rng);
    std::shuffle(pc.begin(), pc.end(), rng);
    auto P = M;
    for (std::size_t i = 0; i < pr.size(); ++i)
      for (std::size_t j = 0; j < pc.size(); ++j) P[i][j] = M[pr[i]][pc[j]];
    std::vector<std::vector<Rational>> T(static_cast<std::size_t>(cols), std::vector<Rational>(static_cast<std::size_t>(rows)));
    for (std::size_t i = 0; i < M.size(); ++i)
      for (std::size_t j = 0; j < M[i].size(); ++j) T[j][i] = M[i][j];
    const std::size_t r0 = exact_rank(M);
    tally.check(r0 == exact_rank(P) && r0 == exact_rank(T) && r0 <= static_cast<std::size_t>(target),
                "trial " + std::to_string(t));
  }
  return tally.result();
}

PropertyResult j_involution(int n, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  const IndexSpec spec(n);
  Tally tally("j.involution n=" + std::to_string(n));
  for (int t = 0; t < count; ++t) {
    IndexedArray x(spec, {false, false});
    for (std::size_t k = 0; k < x.size(); ++k) x.flat(k) = random_gaussian(rng);
    const GaussianRational c = random_gaussian(rng);
    IndexedArray cx = x;
    for (std::size_t k = 0; k < cx.size(); ++k) cx.flat(k) = c * x.flat(k);
    const IndexedArray jx = j_apply(x);
    IndexedArray conj_c_jx = jx;
    for (std::size_t k = 0; k < jx.size(); ++k) conj_c_jx.flat(k) = c.conj() * jx.flat(k);
    const std::string tag = "instance " + std::to_string(t);
    tally.check(j_apply(jx) == x, tag + " jj");
    tally.check(j_apply(cx) == conj_c_jx, tag + " antilinear");
    const SymArray s = SymArray::random(spec, "T", 4, Constraint::none, rng);
    tally.check(s.j().j().components() == s.components(), tag + " four-index");
  }
  return tally.result();
}

PropertyResult sp_condition_equivalence(int n, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  const IndexSpec spec(n);
  Tally tally("sp.condition_equivalence n=" + std::to_string(n));
  for (int t = 0; t < count; ++t) {
    const int kind = t % 4;
    IndexedArray x(spec, {false, true});
    bool expect_member = false;
    if (kind == 0) {
      x = sp_from_symmetric(SymArray::random(spec, "Y", 2, Constraint::j_real, rng).to_dense());
      expect_member = true;
    } else if (kind == 1) {
      for (std::size_t k = 0; k < x.size(); ++k) x.flat(k) = random_gaussian(rng);
    } else if (kind == 2) {
      // Symmetric Y without j-reality.
      x = sp_from_symmetric(SymArray::random(spec, "Y", 2, Constraint::none, rng).to_dense());
    } else {
      // A member with one entry perturbed.
      x = sp_from_symmetric(SymArray::random(spec, "Y", 2, Constraint::j_real, rng).to_dense());
      const std::size_t k = static_cast<std::size_t>(pick(rng, 0, static_cast<int>(x.size()) - 1));
      x.flat(k) += GaussianRational(Rational(1), Rational(pick(rng, 0, 1)));
    }
    const SpVerdict v = sp_membership(x);
    const bool ok = v.condition2 == v.condition3 && (!expect_member || v.in_spn()) && (kind != 3 || !v.in_spn());
    tally.check(ok, "instance " + std::to_string(t) + " kind " + std::to_string(kind));
  }
  return tally.result();
}

}  // namespace qcc
