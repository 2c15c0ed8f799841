#include "qcc/qc_system.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace qcc;

namespace {

std::size_t residual_terms(const BianchiSet& b) {
  std::size_t t = 0;
  for (const auto& f : b.forms) t += f.form.size();
  return t;
}

Form eps(const QcSystem& s, int k) { return Form::generator(s.epsilon().at(static_cast<std::size_t>(k - 1))); }

}  // namespace

TEST_SUITE("qc_structure") {
  TEST_CASE("catalog sizes") {
    const std::size_t d1[] = {21, 36, 55}, d2[] = {35, 126, 330};
    for (int n = 1; n <= 3; ++n) {
      const QcSystem s = QcSystem::build(n);
      CHECK(s.coframe_size() == d1[n - 1]);
      CHECK(RealCoordinates(s).size() == d2[n - 1]);
      CHECK(s.starred_size() == d2[n - 1]);
      CHECK(s.epsilon().size() == static_cast<std::size_t>(4 * n + 3));
      CHECK(d1_formula(n) == static_cast<long long>(d1[n - 1]));
      CHECK(d2_formula(n) == static_cast<long long>(d2[n - 1]));
      for (GenId g : s.coframe()) CHECK(s.table().has(g));
    }
    CHECK_THROWS_AS(QcSystem::build(0), std::invalid_argument);
  }

  TEST_CASE("Bianchi forms: shape, linearity and j-symmetry") {
    for (int n = 1; n <= 2; ++n) {
      const QcSystem s = QcSystem::build(n);
      const BianchiSet b = s.bianchi_forms();
      const std::size_t dim = static_cast<std::size_t>(s.spec().dim());
      CHECK(b.forms.size() == dim * (dim + 1) / 2 + dim + 2);
      const std::set<GenId> allowed_partners = [&] {
        std::set<GenId> p;
        for (int k = 1; k <= 3; ++k) p.insert(s.eta(k));
        for (int a = 0; a < s.spec().dim(); ++a) {
          p.insert(s.theta(a));
          p.insert(s.theta_bar(a));
        }
        return p;
      }();
      for (const auto& f : b.forms)
        for (const auto& [blade, c] : f.form.terms()) {
          int stars = 0;
          for (GenId g : blade) {
            if (s.is_starred(g)) ++stars;
            else CHECK(allowed_partners.count(g) == 1);
          }
          CHECK(stars == 1);
        }
      CHECK(s.bianchi_j_symmetric(b));
      std::map<GenId, Form> zero;
      for (GenId g : s.starred()) zero.emplace(g, Form(1));
      CHECK(residual_terms(s.substitute_starred(b, zero)) == 0);
      if (n == 1) {
        const std::vector<std::string> names{"Delta_11", "Delta_12", "Delta_22", "Delta_1", "Delta_2", "Psi_1", "Psi_23"};
        for (std::size_t k = 0; k < names.size(); ++k) CHECK(b.forms[k].name == names[k]);
      }
    }
  }

  TEST_CASE("Delta_11 carries every S* component with first indices 1,1") {
    const QcSystem s = QcSystem::build(1);
    const BianchiSet b = s.bianchi_forms();
    const Form& d11 = b.forms.front().form;
    std::set<GenId> present;
    for (const auto& [blade, c] : d11.terms())
      for (GenId g : blade) present.insert(g);
    for (int g = 0; g < 2; ++g)
      for (int sg = 0; sg < 2; ++sg) {
        const GenId st = s.star("S", {0, 0, g, sg});
        const GenId conj = s.catalog().info(st).conj_id;
        CHECK((present.count(st) || present.count(conj)));
      }
  }

  TEST_CASE("d squared vanishes and the corrupted table is caught") {
    for (int n = 1; n <= 2; ++n) {
      const QcSystem s = QcSystem::build(n);
      const DSquaredReport r = s.verify_d_squared();
      CHECK(r.passed());
      CHECK(r.nonzero() == 0);
      CHECK(r.conjugation_mismatches == 0);
      CHECK(r.residuals.size() == s.coframe_size());
    }
    QcSystem bad = QcSystem::build(1);
    Form rhs = bad.table().of(bad.phi0());
    for (int b = 0; b < 2; ++b) rhs += Poly(4) * wedge(Form::generator(bad.phi_lower(b)), Form::generator(bad.theta(b)));
    bad.override_equation(bad.phi0(), rhs);
    const DSquaredReport r = bad.verify_d_squared();
    CHECK_FALSE(r.passed());
    bool phi0_hit = false;
    for (const auto& x : r.residuals)
      if (x.tag == "d phi_0" && x.terms > 0) phi0_hit = true;
    CHECK(phi0_hit);
  }

  TEST_CASE("integral element closes the Bianchi system") {
    const QcSystem s1 = QcSystem::build(1);
    CHECK(residual_terms(s1.substitute_starred(s1.bianchi_forms(), s1.integral_element())) == 0);
    const QcSystem s2 = QcSystem::build(2);
    std::mt19937_64 rng(2024);
    const PointConstants c = PointConstants::random(s2.spec(), rng);
    CHECK_NOTHROW(c.validate(s2.spec()));
    CHECK(residual_terms(s2.substitute_starred(s2.bianchi_forms(), s2.integral_element(c))) == 0);
    for (const auto& [g, f] : s1.integral_element(PointConstants::zero(s1.spec()))) CHECK(f.is_zero());
  }

  TEST_CASE("constants violating the symmetry relations are rejected") {
    const QcSystem s = QcSystem::build(1);
    std::mt19937_64 rng(8);
    PointConstants c = PointConstants::random(s.spec(), rng);
    auto it = c.curvature.find("R");
    REQUIRE(it != c.curvature.end());
    it->second.set({}, GaussianRational::i());
    CHECK_THROWS_AS(c.validate(s.spec()), std::invalid_argument);
    CHECK_THROWS(s.shifted_system(c));
  }

  TEST_CASE("shifted system equals the original") {
    for (int n = 1; n <= 2; ++n) {
      const QcSystem s = QcSystem::build(n);
      const BianchiSet orig = s.bianchi_forms();
      CHECK(s.shifted_system(PointConstants::zero(s.spec())) == orig);
      std::mt19937_64 rng(42);
      for (int k = 0; k < 3; ++k) CHECK(s.shifted_system(PointConstants::random(s.spec(), rng)) == orig);
    }
  }

  TEST_CASE("epsilon basis") {
    const QcSystem s = QcSystem::build(1);
    const auto rules = s.epsilon_rules();
    CHECK(rules.at(s.eta(1)) == eps(s, 3));
    CHECK(rules.at(s.eta(2)) == eps(s, 4));
    CHECK(rules.at(s.eta(3)) == eps(s, 5));
    CHECK(rules.at(s.theta(0)) == eps(s, 1) + Poly::i() * eps(s, 2));
    CHECK(rules.at(s.theta_bar(0)) == eps(s, 1) - Poly::i() * eps(s, 2));
    for (int n = 1; n <= 3; ++n) {
      const QcSystem t = QcSystem::build(n);
      const auto fwd = t.epsilon_rules();
      CHECK(t.epsilon_rules().at(t.eta(1)) == eps(t, 2 * n + 1));
      const auto inv = t.epsilon_inverse_rules();
      for (const auto& [g, f] : fwd) CHECK(substitute(f, inv) == Form::generator(g));
      const BianchiSet b = t.bianchi_forms();
      CHECK(t.from_epsilon_basis(t.to_epsilon_basis(b)) == b);
    }
  }

  TEST_CASE("system dump lists the equations") {
    const std::string d = QcSystem::build(1).dump();
    CHECK(d.find("d eta_1") != std::string::npos);
    CHECK(d.find("d psi_3") != std::string::npos);
  }
}
