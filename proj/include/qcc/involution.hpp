#pragma once

#include "qcc/qc_system.hpp"
#include "qcc/rational.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace qcc {

/// Sparse row: strictly increasing column indices with nonzero entries.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

/// Incremental row echelon form over Q. Pivot = first nonzero column.
class RowSpace {
 public:
  /// Reduces the row against the stored pivots; returns true if it was
  /// independent (and stores it).
  bool add(SparseRow row);
  std::size_t rank() const { return pivots_.size(); }

 private:
  std::map<std::size_t, SparseRow> pivots_;  // leading column -> row with leading 1
};

std::size_t exact_rank(const std::vector<SparseRow>& rows);
std::size_t exact_rank(const std::vector<std::vector<Rational>>& dense);

/// Realified tableau of the Bianchi system over the epsilon flag: for each
/// pair b < c of epsilon positions, the real rows (real and imaginary parts
/// of every Pi_bc) over the d2 real starred coordinates.
struct RealTableau {
  std::size_t columns = 0;  // d2
  std::size_t base = 0;     // 4n + 3
  std::map<std::pair<int, int>, std::vector<SparseRow>> rows;
  /// Complex Pi_bc per form, with coordinates already realified.
  std::vector<std::map<std::pair<int, int>, std::map<std::size_t, GaussianRational>>> complex_pi;
};

RealTableau real_tableau(const QcSystem& sys, const BianchiSet& epsilon_forms);

struct ClosedForms {
  int n = 0;
  long long d1 = 0;
  long long d2 = 0;
  long long D = 0;
  long long D_binomial = 0;   // sum over the second-order families
  long long dim_F_n = 0;
  std::vector<long long> v;  // v_1 .. v_{d1}
};

ClosedForms closed_form_counts(int n);

struct CharacterOptions {
  bool compute_nullity = true;
  /// Recompute every filtration rank from scratch and compare with the
  /// incremental ranks.
  bool verify_from_scratch = false;
  unsigned jobs = 1;
};

struct CharacterReport {
  int n = 0;
  long long d1 = 0;
  long long d2 = 0;
  std::vector<long long> filtration;  // dim F_1 .. dim F_{d1}
  std::vector<long long> v;           // v_1 .. v_{d1}
  long long dim_F_n = 0;
  long long D_closed = 0;
  long long D_nullity = -1;  // -1 when not computed
  long long nullity_rank = -1;
  long long nullity_unknowns = -1;
  long long cartan_sum = 0;
  bool scratch_agrees = true;
  bool involutive = false;
};

/// Characters of the system at the integral element (starred forms zero).
CharacterReport characters(const QcSystem& sys, const CharacterOptions& opt = {});

struct NullityResult {
  std::size_t unknowns = 0;
  std::size_t rank = 0;
  std::size_t nullity = 0;
};

/// Nullity of the linear system for p_{x,d}: x = sum_d p_{x,d} eps^d over
/// the d2 real starred coordinates, all Bianchi forms set to zero.
NullityResult solution_space_nullity(const RealTableau& t);

struct CartanVerdict {
  bool involutive = false;
  long long sum = 0;
  std::vector<long long> contributions;  // lambda * v_lambda
};

CartanVerdict cartan_test(const CharacterReport& r);

}  // namespace qcc
