#pragma once

#include "qcc/rational.hpp"
#include "qcc/upoly.hpp"

#include <map>
#include <vector>

namespace qcc {

/// a_1 = 1, a_2 = 0, a_3 = -1, a_{k+3} = -a_k - a_{k+1}. Throws for k < 1.
Integer recurrence(int k);
/// a_1 .. a_count.
std::vector<Integer> recurrence_values(int count);

/// Power sums p_k of the roots of z^3 + z + 1 (p_0 = 3).
std::vector<Integer> root_power_sums(int count);

/// a_k = alpha p_k + beta p_{k+1} + gamma p_{k+2}, solved from a_1..a_3.
struct RecurrenceClosedForm {
  Rational alpha;
  Rational beta;
  Rational gamma;
  Rational value(const std::vector<Integer>& p, int k) const;
};
RecurrenceClosedForm recurrence_closed_form();

/// Linear combination of x_1 .. x_n, keyed by the 1-based index.
using LinearForm = std::map<int, Integer>;

/// Q_[k] = x_[k] + x_[k+4] + x_[k+6].
LinearForm circulant_row(int n, long k);

struct TelescopingResult {
  int n = 0;
  int m = 0;
  bool identity_odd = false;    // sum a_k Q_[2k-1]
  bool identity_plus1 = false;  // sum a_k Q_[2k+1]
  bool identity_plus3 = false;  // sum a_k Q_[2k+3]
  /// Some bracketed indices in the identities coincide modulo n.
  bool collapsed = false;
  bool passed() const { return identity_odd && identity_plus1 && identity_plus3; }
};

/// Throws std::invalid_argument for n < 1 or m < 1.
TelescopingResult telescoping_check(int n, int m);

struct Nondegeneracy {
  int n = 0;
  std::size_t rank = 0;
  int gcd_degree = 0;
  Integer resultant;     // Res(z^n - 1, z^6 + z^4 + 1)
  Integer det_product;   // |resultant| = |det| of the circulant matrix
  Integer root_product;  // (z_1^n - 1)(z_2^n - 1)(z_3^n - 1)
  Integer root_product_resultant;  // Res(z^3 + z + 1, z^n - 1)
  bool full_rank = false;
  /// rank, gcd and resultant agree and the root product is nonzero and
  /// matches its resultant form.
  bool passed() const;
};

/// Throws std::invalid_argument for n < 1.
Nondegeneracy nondegeneracy(int n);

struct Det3Result {
  int n = 0;
  Integer printed_det;       // matrix as displayed
  Integer derived_det;       // matrix from the telescoping identities
  Integer printed_expansion; // displayed polynomial in a_{n-2} .. a_{n+2}
  Integer root_product;      // (z_1^n - 1)(z_2^n - 1)(z_3^n - 1)
  bool literal_equal = false;          // printed_det == root_product
  bool expansion_is_derived_det = false;
  bool derived_is_minus_product = false;
  bool nonvanishing = false;
};

/// Throws std::invalid_argument for n < 3.
Det3Result det3_check(int n);

}  // namespace qcc
