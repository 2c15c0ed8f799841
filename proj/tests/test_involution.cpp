#include "qcc/involution.hpp"
#include "qcc/properties.hpp"

#include <doctest.h>

#include <random>

using namespace qcc;

TEST_SUITE("involution_engine") {
  TEST_CASE("exact rank examples") {
    std::vector<std::vector<Rational>> id(5, std::vector<Rational>(5));
    for (int k = 0; k < 5; ++k) id[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] = 1;
    CHECK(exact_rank(id) == 5);
    std::mt19937_64 rng(6);
    std::vector<Rational> u(6), v(4);
    for (auto& x : u) x = random_rational(rng) + Rational(10);
    for (auto& x : v) x = random_rational(rng) + Rational(10);
    std::vector<std::vector<Rational>> outer(6, std::vector<Rational>(4));
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 4; ++j) outer[i][j] = u[i] * v[j];
    CHECK(exact_rank(outer) == 1);
    CHECK(exact_rank(std::vector<SparseRow>{}) == 0);
    const PropertyResult r = rank_permutation_invariance(17, 150);
    CHECK_MESSAGE(r.passed(), r.first_failure);
  }

  TEST_CASE("closed forms") {
    const ClosedForms c1 = closed_form_counts(1), c2 = closed_form_counts(2), c3 = closed_form_counts(3);
    CHECK(c1.D == 112);
    CHECK(c2.D == 504);
    CHECK(c2.dim_F_n == 21);
    CHECK(c3.D == 1584);
    CHECK(c3.dim_F_n == 92);
    CHECK(c3.dim_F_n == c3.v[1] + c3.v[2]);
    for (int n = 1; n <= 8; ++n) {
      const ClosedForms c = closed_form_counts(n);
      CHECK(c.D == c.D_binomial);
      long long s = 0, w = 0;
      for (std::size_t l = 0; l < c.v.size(); ++l) {
        CHECK(c.v[l] >= 0);
        s += c.v[l];
        w += static_cast<long long>(l + 1) * c.v[l];
      }
      CHECK(s == c.d2);
      CHECK(w == c.D);
    }
    CHECK_THROWS_AS(closed_form_counts(0), std::invalid_argument);
  }

  TEST_CASE("characters, filtration and nullity for n = 1, 2") {
    const std::vector<std::vector<long long>> expect = {{0, 10, 12, 9, 4}, {0, 21, 30, 30, 24, 15, 6}};
    for (int n = 1; n <= 2; ++n) {
      CharacterOptions opt;
      opt.verify_from_scratch = true;
      opt.jobs = 2;
      const CharacterReport r = characters(QcSystem::build(n), opt);
      std::vector<long long> head(r.v.begin(), r.v.begin() + static_cast<long>(expect[static_cast<std::size_t>(n - 1)].size()));
      CHECK(head == expect[static_cast<std::size_t>(n - 1)]);
      for (std::size_t l = head.size(); l < r.v.size(); ++l) CHECK(r.v[l] == 0);
      CHECK(r.scratch_agrees);
      CHECK(r.filtration[0] == 0);
      for (std::size_t l = 1; l < r.filtration.size(); ++l) CHECK(r.filtration[l] >= r.filtration[l - 1]);
      CHECK(r.filtration[static_cast<std::size_t>(2 * n + 2)] == r.d2);
      CHECK(r.D_nullity == r.D_closed);
      CHECK(r.nullity_rank + r.D_nullity == r.nullity_unknowns);
      CHECK(r.nullity_unknowns == r.d2 * (4 * n + 3));
      CHECK(r.involutive);
      CHECK(r.cartan_sum == r.D_closed);
    }
  }

  TEST_CASE("full n = 1 tableau has rank d2 and reassembles exactly") {
    const QcSystem s = QcSystem::build(1);
    const BianchiSet eps = s.to_epsilon_basis(s.bianchi_forms());
    const RealTableau t = real_tableau(s, eps);
    std::vector<SparseRow> all;
    for (const auto& [bc, rows] : t.rows) all.insert(all.end(), rows.begin(), rows.end());
    CHECK(exact_rank(all) == 35);
    const auto unknown = [&s](GenId g) { return s.is_starred(g); };
    for (const auto& f : eps.forms) {
      const Tableau tab = tableau_extract(f.form, unknown, s.epsilon());
      CHECK(tab.outside.empty());
      CHECK(tableau_assemble(tab, s.epsilon()) == f.form);
    }
    const NullityResult nr = solution_space_nullity(t);
    CHECK(nr.nullity == 112);
  }

  TEST_CASE("cartan test rejects a perturbed report") {
    CharacterReport r = characters(QcSystem::build(1), {});
    CHECK(cartan_test(r).involutive);
    const auto contributions = cartan_test(r).contributions;
    CHECK(contributions[1] == 20);
    CHECK(contributions[4] == 20);
    r.v[1] -= 1;
    CHECK_FALSE(cartan_test(r).involutive);
    r.v[1] += 1;
    r.D_nullity = 111;
    CHECK_FALSE(cartan_test(r).involutive);
  }
}
