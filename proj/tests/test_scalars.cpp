#include "qcc/gaussian.hpp"
#include "qcc/poly.hpp"
#include "qcc/rational.hpp"
#include "qcc/tensor.hpp"
#include "qcc/upoly.hpp"

#include <doctest.h>

#include <random>

using namespace qcc;

TEST_SUITE("exact_scalars") {
  TEST_CASE("rationals stay reduced with a positive denominator") {
    const Rational r(6, -4);
    CHECK(r.numerator() == -3);
    CHECK(r.denominator() == 2);
    CHECK(Rational(0, 7).denominator() == 1);
    CHECK(Rational::parse("10/-15") == Rational(-2, 3));
    CHECK((Rational(1, 6) + Rational(1, 3)).to_string() == "1/2");
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    CHECK_THROWS_AS(Rational::parse("1/x"), std::invalid_argument);
  }

  TEST_CASE("rational field laws on seeded samples") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 200; ++k) {
      const Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      const Rational s = a * b + c;
      CHECK(gcd(abs(s.numerator()), s.denominator()) == 1);
      CHECK(s.denominator() > 0);
    }
  }

  TEST_CASE("gaussian rationals") {
    const GaussianRational z(Rational(1, 2), Rational(1));
    CHECK(z * z.conj() == GaussianRational(Rational(5, 4)));
    CHECK(z.norm2() == Rational(5, 4));
    CHECK(z.conj().conj() == z);
    CHECK(GaussianRational::i() * GaussianRational::i() == GaussianRational(-1));
    CHECK(GaussianRational(1) / GaussianRational::i() == -GaussianRational::i());
  }

  TEST_CASE("polynomial arithmetic and conjugation") {
    SymbolTable t;
    const SymbolId x = t.add("x");
    const SymbolId xb = t.add("xb");
    const SymbolId y = t.add("y");
    t.set_conjugate(x, xb);
    const Poly px = Poly::symbol(x), py = Poly::symbol(y);
    CHECK((px + py) * (px - py) == px * px - py * py);
    CHECK((Poly::i() * px).conj(t) == -Poly::i() * Poly::symbol(xb));
    CHECK(py.conj(t) == py);
    const Poly q = (Poly(GaussianRational(Rational(2), Rational(3))) * px + py) * Poly::symbol(xb);
    CHECK(q.conj(t).conj(t) == q);
    CHECK((q * q).degree() == q.degree() * 2);
    CHECK((px - px).is_zero());
    CHECK((px * py).derivative(x) == py);
  }

  TEST_CASE("poly_gcd examples") {
    const UniPoly z2m1({-1, 0, 1}), zm1({-1, 1}), cubic({1, 1, 0, 1});
    CHECK(poly_gcd(z2m1, zm1) == zm1);
    CHECK(poly_gcd(cubic, cubic) == cubic);
    CHECK(poly_gcd(UniPoly({-1, 0, 0, 0, 0, 0, 0, 1}), UniPoly({1, 0, 0, 0, 1, 0, 1})).degree() == 0);
    CHECK(poly_gcd(UniPoly({2, 2}), UniPoly({-3, -3})) == UniPoly({1, 1}));
    CHECK(poly_gcd(UniPoly({-2, -2}), UniPoly()) == UniPoly({1, 1}));
    CHECK_THROWS_AS(poly_gcd(UniPoly(), UniPoly()), std::invalid_argument);
  }

  TEST_CASE("resultant agrees with the Sylvester determinant") {
    // Independent oracle: fraction-free Bareiss elimination of the Sylvester matrix.
    auto sylvester_det = [](const UniPoly& p, const UniPoly& q) {
      const int m = p.degree(), n = q.degree(), N = m + n;
      std::vector<std::vector<Integer>> s(static_cast<std::size_t>(N), std::vector<Integer>(static_cast<std::size_t>(N), 0));
      for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = p.coeff(m - k);
      for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + k)] = q.coeff(n - k);
      Integer prev = 1;
      int sign = 1;
      for (int k = 0; k < N - 1; ++k) {
        if (s[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] == 0) {
          int r = k + 1;
          while (r < N && s[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] == 0) ++r;
          if (r == N) return Integer(0);
          std::swap(s[static_cast<std::size_t>(k)], s[static_cast<std::size_t>(r)]);
          sign = -sign;
        }
        for (int i = k + 1; i < N; ++i)
          for (int j = k + 1; j < N; ++j) {
            auto& e = s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            e = (e * s[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] -
                 s[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * s[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) /
                prev;
          }
        prev = s[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
      }
      return Integer(sign * s[static_cast<std::size_t>(N - 1)][static_cast<std::size_t>(N - 1)]);
    };
    const UniPoly q({1, 0, 0, 0, 1, 0, 1});
    for (int n = 1; n <= 12; ++n) {
      const UniPoly zn = UniPoly::monomial(1, n) - UniPoly::monomial(1, 0);
      CHECK(resultant(zn, q) == sylvester_det(zn, q));
    }
    CHECK(resultant(UniPoly({-1, 1}), q) == 3);
    CHECK(resultant(UniPoly({-1, 1}), UniPoly({-1, 0, 1})) == 0);
  }
}
