#include <doctest.h>

#include "fixtures.hpp"

using namespace minsos;
using namespace fixtures;

namespace {

BinaryFormQ bf(std::vector<long> c) {
  std::vector<Rational> q;
  for (long v : c) q.emplace_back(v);
  return BinaryFormQ(q);
}

}  // namespace

TEST_SUITE("biform") {
  TEST_CASE("monomial product adds bidegrees") {
    const auto p = (S() * X()) * (T() * Y());
    CHECK(p.bidegree() == Bidegree{2, 2});
    CHECK(p.size() == 1);
    CHECK(p.coeff({1, 1, 1, 1}) == 1);
  }

  TEST_CASE("product with zero is zero of the summed bidegree") {
    const BiformQ zero(2, {1, 1});
    const auto p = (S() * X()) * zero;
    CHECK(p.is_zero());
    CHECK(p.bidegree() == Bidegree{2, 2});
  }

  TEST_CASE("non-generic fixture splits as a product plus a square") {
    const auto s = S(), t = T(), x = X(), y = Y();
    const auto prod = (x - y) * (s * s - t * t) * ((x + y) * (s * s - C(9) * t * t));
    CHECK(prod.bidegree() == Bidegree{4, 2});
    CHECK(prod.coeff({4, 0, 2, 0}) == 1);
    CHECK(prod.coeff({4, 0, 0, 2}) == -1);
    CHECK(prod.coeff({0, 4, 2, 0}) == 9);
    CHECK(prod + x * x * (s * s - C(4) * t * t).pow(2) == nongeneric());
  }

  TEST_CASE("evaluation") {
    const auto f = S() * S() * X() * X();
    const std::vector<Complex> p = {1.0, 0.0, 2.0, 0.0};
    CHECK(std::abs(f.eval(p) - Complex(4.0)) < 1e-15);
    const std::vector<Complex> q = {0.0, 1.0, 1.0, 0.0};
    CHECK(std::abs(genus_one().eval(q) - Complex(1.0)) < 1e-15);
  }

  TEST_CASE("bihomogenize from the chart t = y = 1") {
    ChartPoly<Rational> p;
    p[{0, 0}] = 1;
    p[{1, 1}] = 1;
    CHECK(bihomogenize(p, 2, {1, 1}) == T() * Y() + S() * X());
    CHECK(bihomogenize(dehomogenize(genus_two()), 2, {4, 2}) == genus_two());
    ChartPoly<Rational> big;
    big[{3, 0}] = 1;
    CHECK_THROWS_AS(bihomogenize(big, 2, {2, 1}), Error);
  }

  TEST_CASE("mismatched bidegrees do not add") {
    CHECK_THROWS_AS(S() * X() + S() * S() * X(), Error);
  }
}

TEST_SUITE("surface") {
  TEST_CASE("linear bases") {
    const auto b11 = monomial_basis(SurfaceSpec::scroll(1, 1), 1);
    REQUIRE(b11.size() == 4);
    CHECK(b11.monomials[0] == Exponent{0, 1, 0, 1});  // yt
    CHECK(b11.monomials[1] == Exponent{1, 0, 0, 1});  // ys
    CHECK(b11.monomials[2] == Exponent{0, 1, 1, 0});  // xt
    CHECK(b11.monomials[3] == Exponent{1, 0, 1, 0});  // xs
    const auto b21 = monomial_basis(SurfaceSpec::scroll(2, 1), 1);
    REQUIRE(b21.size() == 5);
    CHECK(b21.monomials[3] == Exponent{0, 2, 1, 0});
    CHECK(b21.monomials[4] == Exponent{1, 1, 1, 0});
    CHECK(monomial_basis(SurfaceSpec::veronese(), 1).size() == 6);
    CHECK(monomial_basis(SurfaceSpec::cone_rnc(4), 1).size() == 6);
    CHECK(monomial_basis(SurfaceSpec::prism({1, 1, 1}), 1).size() == 6);
  }

  TEST_CASE("quadratic bases") {
    CHECK(monomial_basis(SurfaceSpec::scroll(2, 2), 2).size() == 15);
    CHECK(monomial_basis(SurfaceSpec::scroll(1, 1), 2).size() == 9);
    CHECK(monomial_basis(SurfaceSpec::veronese(), 2).size() == 15);
    CHECK_THROWS_AS(monomial_basis(SurfaceSpec::scroll(1, 1), 3), Error);
  }

  TEST_CASE("dimension counts") {
    // dim R[X]_2 - dim Sym^2 R[X]_1 = dim of the Gram kernel.
    for (const auto& spec : {SurfaceSpec::scroll(1, 1), SurfaceSpec::scroll(2, 1), SurfaceSpec::scroll(3, 2),
                             SurfaceSpec::veronese(), SurfaceSpec::cone_rnc(3)}) {
      const int n = monomial_basis(spec, 1).size();
      CHECK(spec.ambient_dim() == n - 1);
      CHECK(spec.degree() == spec.codim() + 1);
    }
  }

  TEST_CASE("Hilbert data") {
    const auto h11 = hilbert_data(SurfaceSpec::scroll(1, 1));
    CHECK(h11.genus == 1);
    CHECK(h11.curve_degree == 4);
    CHECK(h11.ehrhart[0] == 1);
    CHECK(h11.ehrhart[1] == 2);
    CHECK(h11.ehrhart[2] == 1);
    const auto h21 = hilbert_data(SurfaceSpec::scroll(2, 1));
    CHECK(h21.genus == 2);
    CHECK(h21.curve_degree == 6);
    CHECK(h21.ehrhart[0] == make_rational(3, 2));
    CHECK(h21.ehrhart[1] == make_rational(5, 2));
    const auto h31 = hilbert_data(SurfaceSpec::scroll(3, 1));
    CHECK(h31.genus == 3);
    CHECK(h31.curve_degree == 8);
    CHECK(h31.ehrhart[0] == 2);
    CHECK(h31.ehrhart[1] == 3);
    CHECK_THROWS_AS(hilbert_data(SurfaceSpec::veronese()), Error);
  }

  TEST_CASE("Hilbert polynomial counts lattice points") {
    // Oracle: lattice points of k P_{d,e} by direct count.
    for (auto [d, e] : {std::pair{1, 1}, {2, 1}, {3, 1}, {3, 2}, {4, 3}}) {
      const auto h = hilbert_data(SurfaceSpec::scroll(d, e));
      for (int k = 0; k <= 3; ++k) {
        long count = 0;
        for (int j = 0; j <= k; ++j) count += k * d - j * (d - e) + 1;
        const Rational poly = h.ehrhart[0] * k * k + h.ehrhart[1] * k + h.ehrhart[2];
        CHECK(poly == count);
      }
    }
  }

  TEST_CASE("discriminants") {
    const auto d1 = discriminant(genus_one(), SurfaceSpec::scroll(1, 1));
    CHECK(d1 == -(bf({1, 0, 1}) * bf({2, 2, 2})));
    const auto d2 = discriminant(genus_two(), SurfaceSpec::scroll(2, 1));
    CHECK(d2.degree() == 6);
    CHECK(d2 == -(bf({1, 0, 1}) * bf({1, 0, 1, 0, 1})));
    // b = 0, a = c.
    const auto a = (S() * S() + T() * T());
    const auto f = a * X() * X() + a * Y() * Y();
    CHECK(discriminant(f, SurfaceSpec::scroll(1, 1)) == -(bf({1, 0, 1}) * bf({1, 0, 1})));
  }

  TEST_CASE("genericity") {
    CHECK(genericity_check(genus_one(), SurfaceSpec::scroll(1, 1)).generic());
    CHECK(genericity_check(nongeneric(), SurfaceSpec::scroll(2, 2)).discriminant_squarefree);
    const auto a = (S() * S() + T() * T());
    const auto f = a * X() * X() + a * Y() * Y();
    CHECK_FALSE(genericity_check(f, SurfaceSpec::scroll(1, 1)).discriminant_squarefree);
    CHECK_FALSE(genericity_check(genus_one(), SurfaceSpec::veronese()).applicable);
  }

  TEST_CASE("squarefree test sees the root at infinity") {
    CHECK(is_squarefree(bf({1, 0, 1})));
    CHECK_FALSE(is_squarefree(bf({1, 0, 2, 0, 1})));
    CHECK_FALSE(is_squarefree(bf({0, 0, 1})));  // s^2
    CHECK_FALSE(is_squarefree(bf({1, 0, 0})));  // t^2
    CHECK(is_squarefree(bf({0, 1, 0})));        // st
  }

  TEST_CASE("support check") {
    CHECK(is_quadratic_form_on(genus_two(), SurfaceSpec::scroll(2, 1)));
    CHECK_FALSE(is_quadratic_form_on(S().pow(4) * X() * X(), SurfaceSpec::scroll(2, 1)));
    CHECK_FALSE(is_quadratic_form_on(genus_one(), SurfaceSpec::scroll(2, 1)));
  }

  TEST_CASE("invalid specs") {
    CHECK_THROWS_AS(SurfaceSpec::scroll(1, 2), Error);
    CHECK_THROWS_AS(SurfaceSpec::cone_rnc(1), Error);
    CHECK_THROWS_AS(SurfaceSpec::prism({}), Error);
  }
}
