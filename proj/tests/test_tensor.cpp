#include "qcc/tensor.hpp"
#include "qcc/properties.hpp"

#include <doctest.h>

using namespace qcc;

TEST_SUITE("tensor_conventions") {
  TEST_CASE("index helpers") {
    const IndexSpec s(3);
    CHECK(s.primed(0) == 3);
    CHECK(s.partner(4) == 1);
    CHECK(s.pi(0, 3) == 1);
    CHECK(s.pi(3, 0) == -1);
    CHECK(s.pi(0, 1) == 0);
    CHECK(IndexSpec::bracket(7, 7) == 7);
    CHECK(IndexSpec::bracket(15, 7) == 1);
    CHECK(IndexSpec::bracket(-1, 5) == 4);
    CHECK_THROWS_AS(IndexSpec(0), std::invalid_argument);
    // pi^a_sbar pi^sbar_b = -delta^a_b.
    for (int n = 1; n <= 3; ++n) {
      const IndexSpec t(n);
      for (int a = 0; a < t.dim(); ++a)
        for (int b = 0; b < t.dim(); ++b) {
          int acc = 0;
          for (int sg = 0; sg < t.dim(); ++sg) acc += t.pi(a, sg) * t.pi(sg, b);
          CHECK(acc == (a == b ? -1 : 0));
        }
    }
  }

  TEST_CASE("j on two lower indices by direct evaluation") {
    const IndexSpec s(1);
    IndexedArray t(s, {false, false});
    CHECK(j_apply(t).is_zero());
    t.at({0, 1}) = 1;
    const IndexedArray jt = j_apply(t);
    // (jT)_{ab} = pi(a,c) pi(b,d) conj T_{cd}: only (a,b) = (2,1) with pi(2,1) pi(1,2) = -1.
    CHECK(jt.at({1, 0}) == GaussianRational(-1));
    CHECK(jt.at({0, 1}).is_zero());
    CHECK(jt.at({0, 0}).is_zero());
    CHECK(jt.at({1, 1}).is_zero());
    t.at({0, 1}) = GaussianRational::i();
    CHECK(j_apply(t).at({1, 0}) == GaussianRational::i());
  }

  TEST_CASE("j involution and sp equivalence on 100 seeded instances") {
    for (int n = 1; n <= 3; ++n) {
      CHECK(j_involution(n, 5, 100).passed());
      const PropertyResult r = sp_condition_equivalence(n, 11, 100);
      CHECK_MESSAGE(r.passed(), r.first_failure);
      CHECK(r.instances == 100);
    }
  }

  TEST_CASE("sp membership examples") {
    const IndexSpec s(2);
    IndexedArray x(s, {false, true});
    CHECK(sp_membership(x).in_spn());
    x.at({0, 0}) = 1;
    const SpVerdict v = sp_membership(x);
    CHECK_FALSE(v.in_spn());
    CHECK(v.condition2 == v.condition3);
    CHECK_FALSE(v.witness.empty());
    std::mt19937_64 rng(1);
    const IndexedArray y = SymArray::random(s, "Y", 2, Constraint::j_real, rng).to_dense();
    const IndexedArray m = sp_from_symmetric(y);
    CHECK(sp_membership(m).in_spn());
    CHECK_THROWS_AS(sp_membership(IndexedArray(s, {false, false})), std::invalid_argument);
  }

  TEST_CASE("identity lies in Sp(n)") {
    for (int n = 1; n <= 3; ++n) {
      const IndexSpec s(n);
      IndexedArray u(s, {false, false});
      for (int a = 0; a < s.dim(); ++a) u.at({a, a}) = 1;
      CHECK(sp_group_membership(u));
      u.at({0, 0}) = 2;
      CHECK_FALSE(sp_group_membership(u));
    }
  }

  TEST_CASE("symmetric arrays and constraints") {
    const IndexSpec s(2);
    SymArray a(s, "T", 3);
    a.set({2, 0, 1}, GaussianRational(Rational(1), Rational(2)));
    CHECK(a.get({1, 2, 0}) == GaussianRational(Rational(1), Rational(2)));
    CHECK(a.to_dense().is_symmetric());
    std::mt19937_64 rng(4);
    for (Constraint c : {Constraint::none, Constraint::j_real}) {
      const SymArray r = SymArray::random(s, "S", 4, c, rng);
      CHECK(r.satisfies_constraint());
      CHECK(SymArray::from_dense(r.to_dense(), "S", c).components() == r.components());
    }
    CHECK(SymArray::random(IndexSpec(1), "R", 0, Constraint::real, rng).satisfies_constraint());
    IndexedArray bad(s, {false, false});
    bad.at({0, 1}) = 1;
    CHECK_THROWS_AS(SymArray::from_dense(bad, "B"), std::invalid_argument);
  }

  TEST_CASE("constrained dimensions") {
    CHECK(constrained_dimension(1, {"S", 4, Constraint::j_real, 1}) == 5);
    CHECK(constrained_dimension(1, {"R", 0, Constraint::real, 1}) == 1);
    const long long expect[] = {35, 126, 330};
    for (int n = 1; n <= 3; ++n) {
      long long d2 = 0;
      for (const auto& f : curvature_families()) d2 += constrained_dimension(n, f);
      CHECK(d2 == expect[n - 1]);
    }
    CHECK(curvature_families().size() == 9);
    CHECK(second_order_families().size() == 17);
    long long D = 0;
    for (const auto& f : second_order_families()) D += constrained_dimension(1, f);
    CHECK(D == 112);
  }
}
