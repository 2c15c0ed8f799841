#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qcc {

/// Outcome of one randomized law over a batch of seeded instances.
struct PropertyResult {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::string first_failure;  // empty when every instance holds
  bool passed() const { return failures == 0 && instances > 0; }
};

/// wedge, substitute and differentiate laws on random forms of degree <= 3
/// over 8 generators with symbol-valued coefficients.
std::vector<PropertyResult> form_algebra_laws(std::uint64_t seed, int trials);

/// exact_rank(M) = exact_rank(P M Q) = exact_rank(M^T) on random rational
/// matrices of prescribed rank.
PropertyResult rank_permutation_invariance(std::uint64_t seed, int trials);

/// j(jT) = T and antilinearity on two-index lower arrays, and on four-index
/// symmetric arrays.
PropertyResult j_involution(int n, std::uint64_t seed, int count);

/// The two sp(n) membership conditions agree on members built from
/// symmetric j-real Y and on several families of non-members.
PropertyResult sp_condition_equivalence(int n, std::uint64_t seed, int count);

}  // namespace qcc
