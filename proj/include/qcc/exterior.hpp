#pragma once

#include "qcc/poly.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qcc {

using GenId = std::uint32_t;

struct GeneratorInfo {
  std::string family;
  std::vector<int> index;
  std::string name;
  GenId conj_id = 0;
  int conj_sign = 1;
};

/// Ordered list of formal one-form generators. Ids are assigned in insertion
/// order, which is the total order used for blades.
class Catalog {
 public:
  GenId add(std::string family, std::vector<int> index, std::string name);
  /// Declares conj(a) = sign * b and conj(b) = sign * a.
  void set_conjugate(GenId a, GenId b, int sign = 1);

  std::size_t size() const { return gens_.size(); }
  const GeneratorInfo& info(GenId id) const { return gens_.at(id); }
  const std::string& name(GenId id) const { return gens_.at(id).name; }
  std::optional<GenId> find(const std::string& family, const std::vector<int>& index) const;
  GenId at(const std::string& family, const std::vector<int>& index) const;

 private:
  std::vector<GeneratorInfo> gens_;
  std::map<std::pair<std::string, std::vector<int>>, GenId> lookup_;
};

/// Strictly increasing generator tuple.
using Blade = std::vector<GenId>;

/// Homogeneous exterior form with polynomial coefficients.
class Form {
 public:
  using Terms = std::map<Blade, Poly>;

  explicit Form(int degree = 0) : degree_(degree) {}
  static Form generator(GenId id, const Poly& coeff = Poly(1));
  static Form scalar(const Poly& c);

  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Poly coefficient(const Blade& b) const;

  /// Adds c * (g_1 ^ ... ^ g_k) for an arbitrary generator sequence.
  void add_term(Blade gens, const Poly& c);

  Form operator-() const;
  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form& operator*=(const Poly& c);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const Poly& c, Form f) { return f *= c; }
  friend Form operator*(Form f, const Poly& c) { return f *= c; }
  friend bool operator==(const Form& a, const Form& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  /// Complex conjugation of generators and coefficients.
  Form conj(const Catalog& cat, const SymbolTable& syms) const;
  /// Applies a map to every coefficient.
  Form map_coefficients(const std::function<Poly(const Poly&)>& f) const;
  std::set<GenId> generators() const;

  std::string to_string(const Catalog& cat, const SymbolTable* syms = nullptr) const;

 private:
  int degree_;
  Terms terms_;
};

Form wedge(const Form& a, const Form& b);
inline Form operator^(const Form& a, const Form& b) { return wedge(a, b); }

enum class Unmapped { error, keep };

/// Replaces generators by degree-1 forms. Generators without a rule either
/// raise std::invalid_argument or stay as they are.
Form substitute(const Form& f, const std::map<GenId, Form>& rules, Unmapped mode = Unmapped::error);

/// Exterior derivative data: generator -> (degree+1) form and
/// symbol -> one-form.
class DerivationTable {
 public:
  void set(GenId g, Form f);
  void set_symbol(SymbolId s, Form f);
  bool has(GenId g) const { return gens_.count(g) != 0; }
  bool has_symbol(SymbolId s) const { return syms_.count(s) != 0; }
  const Form& of(GenId g) const;
  const Form& of_symbol(SymbolId s) const;

 private:
  std::map<GenId, Form> gens_;
  std::map<SymbolId, Form> syms_;
};

/// d(c g_1^...^g_k) = dc ^ g + c sum_j (-1)^{j} g_1^..^dg_j^..^g_k,
/// dc = sum_s (dc/ds) d(s). Throws std::invalid_argument on an uncovered
/// generator or symbol.
Form differentiate(const Form& f, const DerivationTable& table);

/// Pi_{bc} decomposition of a three-form that is linear in the unknowns.
struct Tableau {
  /// (b, c) with b < c are positions in the base list.
  std::map<std::pair<int, int>, std::map<GenId, Poly>> pi;
  /// Terms whose two remaining factors are not both in the base list.
  std::vector<std::pair<Blade, Poly>> outside;
};

/// Throws std::invalid_argument for a term with zero or several unknowns.
Tableau tableau_extract(const Form& f, const std::function<bool(GenId)>& is_unknown,
                        const std::vector<GenId>& base);
/// Sum over (b, c) of Pi_{bc} ^ base_b ^ base_c, plus the outside terms.
Form tableau_assemble(const Tableau& t, const std::vector<GenId>& base);

}  // namespace qcc
