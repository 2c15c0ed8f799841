#pragma once

#include "qcc/exterior.hpp"
#include "qcc/tensor.hpp"

#include <map>
#include <string>
#include <vector>

namespace qcc {

/// One row of the structure-equation table: d(lhs) = rhs.
struct EquationRow {
  std::string tag;
  GenId lhs = 0;
  Form rhs;
};

struct NamedForm {
  std::string name;
  Form form;
};

/// The Bianchi three-forms: Delta_{ab} (a <= b), Delta_a, Psi_1 and
/// Psi_2 + i Psi_3, in that order.
struct BianchiSet {
  std::vector<NamedForm> forms;

  const Form& get(const std::string& name) const;
  friend bool operator==(const BianchiSet& a, const BianchiSet& b);
};

struct Residual {
  std::string tag;
  std::size_t terms = 0;
  std::string detail;  // pretty-printed residual, truncated
};

struct DSquaredReport {
  std::vector<Residual> residuals;  // one per coframe generator
  std::size_t conjugation_mismatches = 0;
  bool passed() const;
  std::size_t nonzero() const;
};

/// Constant values for the curvature functions and their second-order
/// covariant derivatives at a point. Scalars are arity-0 arrays; the
/// families U and W are stored as U1..U3, W1..W3.
struct PointConstants {
  std::map<std::string, SymArray> curvature;
  std::map<std::string, SymArray> second_order;

  static PointConstants zero(const IndexSpec& spec);
  static PointConstants random(const IndexSpec& spec, std::mt19937_64& rng);
  /// Throws std::invalid_argument naming the first violated requirement.
  void validate(const IndexSpec& spec) const;
};

class QcSystem {
 public:
  /// Throws std::invalid_argument if n < 1.
  static QcSystem build(int n);

  int n() const { return spec_.n; }
  const IndexSpec& spec() const { return spec_; }
  const Catalog& catalog() const { return cat_; }
  const SymbolTable& symbols() const { return syms_; }

  std::size_t coframe_size() const { return coframe_.size(); }
  std::size_t starred_size() const { return starred_.size(); }
  const std::vector<GenId>& coframe() const { return coframe_; }
  const std::vector<GenId>& starred() const { return starred_; }
  /// epsilon^1 .. epsilon^{4n+3}.
  const std::vector<GenId>& epsilon() const { return epsilon_; }
  bool is_starred(GenId g) const;
  bool is_epsilon(GenId g) const;

  // Coframe generators; a, b are 0-based Greek indices, s in 1..3.
  GenId eta(int s) const;
  GenId theta(int a) const;
  GenId theta_bar(int a) const;
  GenId phi0() const;
  GenId phi(int s) const;
  GenId gamma(int a, int b) const;
  GenId phi_lower(int a) const;
  GenId phi_lower_bar(int a) const;
  GenId psi(int s) const;
  /// Starred generator of a family ("S", "V", "Vb", ...); index any order.
  GenId star(const std::string& family, std::vector<int> idx) const;
  /// Formal symbol ("S", "Vb", "A", "N3b", "U1", ...); index any order.
  SymbolId symbol(const std::string& family, std::vector<int> idx) const;
  bool has_symbol(const std::string& family, std::vector<int> idx) const;

  const std::vector<EquationRow>& equations() const { return equations_; }
  /// Coframe and curvature-symbol derivatives.
  const DerivationTable& table() const { return table_; }
  /// Replaces the right-hand side of one structure equation (negative controls).
  void override_equation(GenId lhs, Form rhs);

  BianchiSet bianchi_forms() const;
  /// Bianchi j-symmetry: Delta_I = sign(I) conj(Delta_{I'}) for every I.
  bool bianchi_j_symmetric(const BianchiSet& b) const;

  DSquaredReport verify_d_squared() const;

  /// Starred generator -> one-form over theta, theta-bar, eta whose
  /// coefficients are linear in the second-order symbols.
  std::map<GenId, Form> integral_element() const;
  /// Same with the second-order symbols replaced by the given values.
  std::map<GenId, Form> integral_element(const PointConstants& values) const;
  /// Substitutes a starred map into every Bianchi form (other generators kept).
  BianchiSet substitute_starred(const BianchiSet& b, const std::map<GenId, Form>& rules) const;

  /// Bianchi forms with every starred form replaced by its hatted shift.
  BianchiSet shifted_system(const PointConstants& constants) const;

  /// theta, theta-bar, eta -> epsilon rules and the inverse.
  std::map<GenId, Form> epsilon_rules() const;
  std::map<GenId, Form> epsilon_inverse_rules() const;
  BianchiSet to_epsilon_basis(const BianchiSet& b) const;
  BianchiSet from_epsilon_basis(const BianchiSet& b) const;

  /// Human-readable dump of the generator list and structure equations.
  std::string dump() const;

 private:
  explicit QcSystem(int n) : spec_(n) {}
  void build_catalog();
  void build_symbols();
  void build_equations();
  void build_symbol_derivatives();

  IndexSpec spec_;
  Catalog cat_;
  SymbolTable syms_;
  std::map<std::pair<std::string, std::vector<int>>, SymbolId> sym_lookup_;
  std::vector<GenId> coframe_;
  std::vector<GenId> starred_;
  std::vector<GenId> epsilon_;
  GenId first_star_ = 0;
  GenId first_eps_ = 0;
  std::vector<EquationRow> equations_;
  DerivationTable table_;
};

/// Real coordinates for the starred unknowns: one or two per conjugation
/// orbit, d2 in total.
class RealCoordinates {
 public:
  explicit RealCoordinates(const QcSystem& sys);
  std::size_t size() const { return count_; }
  /// Complex coefficient vector over real coordinates for a complex
  /// combination of starred generators.
  std::map<std::size_t, GaussianRational> realify(const std::map<GenId, Poly>& v) const;

 private:
  struct Slot {
    std::size_t x = 0;
    std::size_t y = 0;
    GenId rep = 0;
    GenId partner = 0;
    int sign = 1;
    int kind = 0;  // 0 pair, 1 real, 2 imaginary
  };
  std::map<GenId, Slot> slot_;
  std::size_t count_ = 0;
};

/// d1 = C(2n+5, 2), d2 = (2n+5)(2n+3)(n+2)(n+1)/6 evaluated exactly.
long long d1_formula(int n);
long long d2_formula(int n);

}  // namespace qcc
