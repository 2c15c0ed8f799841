#include "qcc/exterior.hpp"
#include "qcc/properties.hpp"

#include <doctest.h>

using namespace qcc;

namespace {

struct Mini {
  Catalog cat;
  GenId e1, e2, e3, xi, zeta, th, thb, u;
  Mini() {
    e1 = cat.add("eps", {1}, "e1");
    e2 = cat.add("eps", {2}, "e2");
    e3 = cat.add("eps", {3}, "e3");
    xi = cat.add("xi", {1}, "xi");
    zeta = cat.add("zeta", {1}, "zeta");
    th = cat.add("theta", {1}, "theta");
    thb = cat.add("thetab", {1}, "thetab");
    u = cat.add("U", {}, "U");
    cat.set_conjugate(th, thb);
  }
  Form g(GenId id) const { return Form::generator(id); }
};

}  // namespace

TEST_SUITE("exterior_algebra") {
  TEST_CASE("wedge examples") {
    const Mini m;
    CHECK(wedge(m.g(m.e1), m.g(m.e1)).is_zero());
    CHECK(wedge(m.g(m.e2), m.g(m.e1)) == -wedge(m.g(m.e1), m.g(m.e2)));
    const Form a = m.g(m.xi) + Poly::i() * m.g(m.zeta);
    const Form b = m.g(m.xi) - Poly::i() * m.g(m.zeta);
    CHECK(wedge(a, b) == Poly(GaussianRational(Rational(0), Rational(-2))) * wedge(m.g(m.xi), m.g(m.zeta)));
    Form f(2);
    f.add_term({m.e2, m.e1}, 1);
    CHECK(f == -wedge(m.g(m.e1), m.g(m.e2)));
    f.add_term({m.e1, m.e1}, 5);
    CHECK(f.size() == 1);
  }

  TEST_CASE("substitute examples") {
    const Mini m;
    const Form f = Poly(GaussianRational(Rational(0), Rational(2))) * wedge(m.g(m.th), m.g(m.thb));
    std::map<GenId, Form> rules{{m.th, m.g(m.xi) + Poly::i() * m.g(m.zeta)},
                                {m.thb, m.g(m.xi) - Poly::i() * m.g(m.zeta)}};
    CHECK(substitute(f, rules) == Poly(4) * wedge(m.g(m.xi), m.g(m.zeta)));
    std::map<GenId, Form> id{{m.th, m.g(m.th)}, {m.thb, m.g(m.thb)}};
    CHECK(substitute(f, id) == f);
    CHECK_THROWS_AS(substitute(f, {{m.th, m.g(m.xi)}}), std::invalid_argument);
    CHECK(substitute(f, {{m.th, m.g(m.xi)}}, Unmapped::keep) ==
          Poly(GaussianRational(Rational(0), Rational(2))) * wedge(m.g(m.xi), m.g(m.thb)));
  }

  TEST_CASE("differentiate basics") {
    const Mini m;
    DerivationTable t;
    t.set(m.e1, wedge(m.g(m.e2), m.g(m.e3)));
    t.set(m.e2, Form(2));
    CHECK(differentiate(Form::scalar(Poly(7)), t).is_zero());
    CHECK(differentiate(m.g(m.e1), t) == wedge(m.g(m.e2), m.g(m.e3)));
    CHECK(differentiate(wedge(m.g(m.e1), m.g(m.e2)), t).is_zero());
    CHECK_THROWS_AS(differentiate(m.g(m.e3), t), std::invalid_argument);
  }

  TEST_CASE("randomized algebra laws") {
    for (const auto& r : form_algebra_laws(21, 150)) {
      INFO(r.name);
      CHECK_MESSAGE(r.passed(), r.first_failure);
    }
  }

  TEST_CASE("tableau extraction") {
    const Mini m;
    const std::vector<GenId> base{m.e1, m.e2, m.e3};
    const auto unknown = [&m](GenId g) { return g == m.u; };
    const Tableau t = tableau_extract(wedge(wedge(m.g(m.u), m.g(m.e1)), m.g(m.e2)), unknown, base);
    REQUIRE(t.pi.size() == 1);
    CHECK(t.pi.at({0, 1}).at(m.u) == Poly(1));
    const Form rev = wedge(wedge(m.g(m.u), m.g(m.e2)), m.g(m.e1));
    CHECK(tableau_extract(rev, unknown, base).pi.at({0, 1}).at(m.u) == Poly(-1));
    const Form mixed = Poly(3) * rev + wedge(wedge(m.g(m.u), m.g(m.e3)), m.g(m.xi));
    const Tableau tm = tableau_extract(mixed, unknown, base);
    CHECK(tm.outside.size() == 1);
    CHECK(tableau_assemble(tm, base) == mixed);
    CHECK_THROWS_AS(tableau_extract(wedge(wedge(m.g(m.e1), m.g(m.e2)), m.g(m.e3)), unknown, base),
                    std::invalid_argument);
  }

  TEST_CASE("pretty printing is stable") {
    const Mini m;
    const Form f = Poly(2) * wedge(m.g(m.e1), m.g(m.e2)) - wedge(m.g(m.e1), m.g(m.e3));
    const std::string text = f.to_string(m.cat);
    CHECK(text.rfind("(2) e1^e2\n(-1) e1^e3", 0) == 0);
  }
}
