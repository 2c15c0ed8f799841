#include "qcc/circulant.hpp"

#include <doctest.h>

using namespace qcc;

namespace {

// Bareiss determinant of an integer matrix.
Integer bareiss(std::vector<std::vector<Integer>> m) {
  const std::size_t N = m.size();
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < N; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < N && m[r][k] == 0) ++r;
      if (r == N) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < N; ++i)
      for (std::size_t j = k + 1; j < N; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[N - 1][N - 1];
}

std::vector<std::vector<Integer>> circulant_matrix(int n) {
  std::vector<std::vector<Integer>> m(static_cast<std::size_t>(n), std::vector<Integer>(static_cast<std::size_t>(n), 0));
  for (int k = 1; k <= n; ++k)
    for (int off : {0, 4, 6}) m[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>((k - 1 + off) % n)] += 1;
  return m;
}

}  // namespace

TEST_SUITE("circulant_lemma") {
  TEST_CASE("recurrence") {
    const std::vector<Integer> a = recurrence_values(6);
    CHECK(a == std::vector<Integer>{1, 0, -1, -1, 1, 2});
    CHECK(recurrence(1) == 1);
    CHECK(recurrence(6) == 2);
    CHECK_THROWS_AS(recurrence(0), std::invalid_argument);
    const auto v = recurrence_values(104);
    for (std::size_t k = 0; k < 100; ++k) CHECK(v[k] + v[k + 1] + v[k + 3] == 0);
  }

  TEST_CASE("recurrence matches the root power-sum closed form") {
    const auto p = root_power_sums(110);
    // Newton's identities for z^3 + z + 1 by direct recomputation.
    CHECK(p[0] == 3);
    CHECK(p[1] == 0);
    CHECK(p[2] == -2);
    CHECK(p[3] == -3);
    const RecurrenceClosedForm cf = recurrence_closed_form();
    const auto a = recurrence_values(100);
    for (int k = 1; k <= 100; ++k) CHECK(cf.value(p, k) == Rational(a[static_cast<std::size_t>(k - 1)]));
  }

  TEST_CASE("telescoping identities") {
    const TelescopingResult t = telescoping_check(7, 7);
    CHECK(t.passed());
    CHECK(telescoping_check(5, 1).passed());
    // Q_1 for n = 5 is x1 + x5 + x2.
    CHECK(circulant_row(5, 1) == LinearForm{{1, 1}, {2, 1}, {5, 1}});
    for (int n = 1; n <= 30; ++n)
      for (int m = 1; m <= n + 2; ++m) CHECK(telescoping_check(n, m).passed());
    CHECK(telescoping_check(3, 1).collapsed);
    CHECK_FALSE(telescoping_check(40, 3).collapsed);
    CHECK_THROWS_AS(telescoping_check(5, 0), std::invalid_argument);
  }

  TEST_CASE("nondegeneracy oracles") {
    const Nondegeneracy n1 = nondegeneracy(1);
    CHECK(n1.rank == 1);
    CHECK(n1.full_rank);
    CHECK(n1.det_product == 3);
    CHECK(nondegeneracy(2).det_product == 9);
    for (int n = 1; n <= 40; ++n) {
      const Nondegeneracy d = nondegeneracy(n);
      CHECK(d.passed());
      CHECK(d.det_product == abs(bareiss(circulant_matrix(n))));
    }
    for (int n = 41; n <= 200; ++n) CHECK(nondegeneracy(n).passed());
    CHECK_THROWS_AS(nondegeneracy(0), std::invalid_argument);
  }

  TEST_CASE("3x3 reduction determinant") {
    for (int n = 3; n <= 50; ++n) {
      const Det3Result d = det3_check(n);
      // The rows come from the telescoping identities; their determinant is
      // the displayed expansion and equals -(z1^n-1)(z2^n-1)(z3^n-1).
      CHECK(d.expansion_is_derived_det);
      CHECK(d.derived_is_minus_product);
      CHECK(d.nonvanishing);
    }
    CHECK(det3_check(3).derived_det == 9);
    CHECK(det3_check(3).root_product == -9);
    CHECK_THROWS_AS(det3_check(2), std::invalid_argument);
  }
}
