#pragma once

#include "qcc/gaussian.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace qcc {

/// Index machinery for rank n. Greek indices are 0-based in 0..2n-1;
/// printed labels add one.
struct IndexSpec {
  int n = 1;

  explicit IndexSpec(int rank);

  int dim() const { return 2 * n; }
  /// alpha' = alpha + n for 0 <= alpha < n.
  int primed(int a) const;
  /// The partner index paired with a by pi: a + n or a - n.
  int partner(int a) const { return a < n ? a + n : a - n; }
  /// +1 on the first half, -1 on the second half; pi(a, partner(a)) = sign(a).
  int sign(int a) const { return a < n ? 1 : -1; }
  /// pi_{ab}: 1 if b = a + n, -1 if a = b + n, 0 otherwise.
  int pi(int a, int b) const;
  /// g_{a bbar}: the Kronecker pairing.
  int g(int a, int b) const { return a == b ? 1 : 0; }

  /// Least residue of k modulo n in 1..n (residue 0 maps to n).
  static long bracket(long k, long n);
};

/// Weakly increasing index tuple; the canonical key of a symmetric component.
using MultiIndex = std::vector<int>;

MultiIndex canonical(MultiIndex idx);
/// All weakly increasing tuples of length k over 0..m-1, lexicographic.
std::vector<MultiIndex> multisets(int m, int k);
long long binomial(long long n, long long k);

/// Dense complex array of arity k over 0..2n-1 with a bar flag per slot.
class IndexedArray {
 public:
  IndexedArray(const IndexSpec& spec, std::vector<bool> barred);

  const IndexSpec& spec() const { return spec_; }
  int arity() const { return static_cast<int>(barred_.size()); }
  const std::vector<bool>& barred() const { return barred_; }

  const GaussianRational& at(const std::vector<int>& idx) const { return data_[offset(idx)]; }
  GaussianRational& at(const std::vector<int>& idx) { return data_[offset(idx)]; }
  std::size_t size() const { return data_.size(); }
  const GaussianRational& flat(std::size_t k) const { return data_[k]; }
  GaussianRational& flat(std::size_t k) { return data_[k]; }
  std::vector<int> unflatten(std::size_t k) const;

  bool is_zero() const;
  bool is_symmetric() const;
  friend bool operator==(const IndexedArray& a, const IndexedArray& b);

 private:
  std::size_t offset(const std::vector<int>& idx) const;
  IndexSpec spec_;
  std::vector<bool> barred_;
  std::vector<GaussianRational> data_;
};

/// (jT)_I = sum_J prod_k pi(i_k, j_k) conj(T_J). Antilinear.
IndexedArray j_apply(const IndexedArray& t);

enum class Constraint { none, j_real, real };

/// Totally symmetric array stored by canonical multi-index.
class SymArray {
 public:
  SymArray(const IndexSpec& spec, std::string tag, int arity, Constraint c = Constraint::none);

  const IndexSpec& spec() const { return spec_; }
  const std::string& tag() const { return tag_; }
  int arity() const { return arity_; }
  Constraint constraint() const { return constraint_; }

  /// Any index order; canonicalized on access. Missing components are zero.
  GaussianRational get(const std::vector<int>& idx) const;
  void set(const std::vector<int>& idx, const GaussianRational& v);
  const std::map<MultiIndex, GaussianRational>& components() const { return comps_; }

  /// Throws std::invalid_argument unless the dense array is totally symmetric.
  static SymArray from_dense(const IndexedArray& a, std::string tag,
                             Constraint c = Constraint::none);
  IndexedArray to_dense() const;

  /// Whether the declared constraint holds exactly.
  bool satisfies_constraint() const;
  SymArray j() const;

  /// Seeded random array satisfying the declared constraint; entries are
  /// small Gaussian rationals.
  static SymArray random(const IndexSpec& spec, std::string tag, int arity, Constraint c,
                         std::mt19937_64& rng);

 private:
  IndexSpec spec_;
  std::string tag_;
  int arity_;
  Constraint constraint_;
  std::map<MultiIndex, GaussianRational> comps_;
};

/// Random rational p/q with |p| <= 9, 1 <= q <= 5.
Rational random_rational(std::mt19937_64& rng);
GaussianRational random_gaussian(std::mt19937_64& rng);

struct SpVerdict {
  bool condition2 = false;
  bool condition3 = false;
  /// First violated relation for a negative verdict, empty otherwise.
  std::string witness;
  bool in_spn() const { return condition2 && condition3; }
};

/// X given as X_{alpha betabar}: slots (unbarred, barred).
SpVerdict sp_membership(const IndexedArray& x);
/// X^alpha_beta = pi^{alpha sigma} Y_{sigma beta} for a symmetric two-tensor Y.
IndexedArray sp_from_symmetric(const IndexedArray& y);
/// U^sigma_alpha stored as u.at({alpha, sigma}) with slots (unbarred, unbarred).
bool sp_group_membership(const IndexedArray& u);

struct FamilyDescriptor {
  std::string tag;
  int arity = 0;
  Constraint constraint = Constraint::none;
  int multiplicity = 1;
};

/// Real dimension of a family of totally symmetric arrays over 2n values.
long long constrained_dimension(int n, const FamilyDescriptor& f);
const std::vector<FamilyDescriptor>& curvature_families();
const std::vector<FamilyDescriptor>& second_order_families();

}  // namespace qcc
