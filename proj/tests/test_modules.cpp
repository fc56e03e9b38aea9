#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "fixtures.hpp"

using namespace minsos;
using namespace fixtures;

namespace {

BinaryFormQ bf(std::vector<long> c) {
  std::vector<Rational> q;
  for (long v : c) q.emplace_back(v);
  return BinaryFormQ(q);
}

std::optional<ErrorKind> kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

double min_eigenvalue(const Eigen::MatrixXd& g) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g).eigenvalues().minCoeff();
}

}  // namespace

TEST_SUITE("binary_sos") {
  TEST_CASE("roots with multiplicity and infinity") {
    const auto r = roots(bf({0, 0, 1, 0, 0}).cast<double>());
    CHECK(r.total_multiplicity() == 4);
    REQUIRE(r.roots.size() == 2);
    CHECK(std::abs(r.roots[0].value) < 1e-12);
    CHECK(r.roots[0].multiplicity == 2);
    CHECK(r.roots[1].at_infinity);
    CHECK(r.roots[1].multiplicity == 2);
  }

  TEST_CASE("roots of s^4 + t^4 are the primitive eighth roots of unity") {
    const auto r = roots(bf({1, 0, 0, 0, 1}).cast<double>());
    REQUIRE(r.roots.size() == 4);
    for (const auto& p : r.roots) {
      CHECK(p.multiplicity == 1);
      CHECK(std::abs(std::abs(p.value) - 1.0) < 1e-12);
      CHECK(std::abs(std::pow(p.value, 4) + 1.0) < 1e-12);
    }
  }

  TEST_CASE("nonnegativity") {
    CHECK(is_nonnegative(bf({1, 0, 0, 0, 1})));
    CHECK(is_nonnegative(bf({0, 0, 1, 0, 0})));
    CHECK(is_nonnegative(bf({1, 0, 2, 0, 1})));
    CHECK_FALSE(is_nonnegative(bf({0, 1, 0, 0, 0})));
    CHECK_FALSE(is_nonnegative(bf({-1, 0, 0, 0, 1})));
    CHECK_FALSE(is_nonnegative(bf({-1, 0, -1})));
  }

  TEST_CASE("two squares of s^4 + t^4") {
    const auto f = bf({1, 0, 0, 0, 1}).cast<double>();
    const auto res = enumerate_two_squares(f);
    CHECK(res.simple_roots);
    CHECK(res.conjugate_pairs == 2);
    CHECK(res.expected_count() == 2);
    REQUIRE(res.representations.size() == 2);
    for (const auto& r : res.representations) {
      CHECK(r.residual < 1e-12);
      CHECK((r.p * r.p + r.q * r.q - f).coeffs().size() == 5);
      const auto g = two_squares_gram(r);
      CHECK(min_eigenvalue(g) > -1e-12);
    }
    const auto g0 = two_squares_gram(res.representations[0]), g1 = two_squares_gram(res.representations[1]);
    CHECK((g0 - g1).norm() > 0.1);
  }

  TEST_CASE("two squares with double roots") {
    const auto res = enumerate_two_squares(bf({1, 0, 2, 0, 1}).cast<double>());
    CHECK_FALSE(res.simple_roots);
    REQUIRE_FALSE(res.representations.empty());
    // Double roots are only located to about sqrt(eps).
    for (const auto& r : res.representations) CHECK(r.residual < 1e-7);
  }

  TEST_CASE("negative forms are rejected") {
    CHECK(kind_of([] { enumerate_two_squares(bf({-1, 0, 1}).cast<double>()); }) == ErrorKind::NotNonnegative);
  }

  TEST_CASE("random positive forms have 2^(d-1) representations") {
    Rng rng(3);
    for (int d = 1; d <= 4; ++d) {
      const auto f = random_positive_binary_form(d, rng);
      const auto res = enumerate_two_squares(f.cast<double>());
      CHECK(res.representations.size() == static_cast<size_t>(1 << (d - 1)));
      for (const auto& r : res.representations) CHECK(r.residual < 1e-9 * f.cast<double>().coeffs()[0]);
    }
  }
}

TEST_SUITE("cone") {
  TEST_CASE("split and reduce") {
    const auto s = S(), t = T(), x = X(), y = Y();
    const auto z = x * t * t;
    const auto f = C(2) * z * z + C(2) * z * (y * t * t) + (y * t * t).pow(2) + (y * t * s).pow(2);
    const auto parts = split(f, SurfaceSpec::cone_rnc(2));
    CHECK(parts.a == 2);
    CHECK(parts.b == bf({1, 0, 0}));
    CHECK(parts.c == bf({1, 0, 1, 0, 0}));
    std::vector<Rational> g = {make_rational(1, 2), 0, 1, 0, 0};
    CHECK(reduce(parts) == BinaryFormQ(g));
  }

  TEST_CASE("apex coefficient must be positive") {
    const auto t = T(), y = Y();
    const auto f = (y * t * t).pow(2);
    CHECK(kind_of([&] { split(f, SurfaceSpec::cone_rnc(2)); }) == ErrorKind::ApexCoefficientNotPositive);
  }

  TEST_CASE("lifted Gram matrices reduce back") {
    Rng rng(8);
    for (int d = 2; d <= 4; ++d) {
      const auto spec = SurfaceSpec::cone_rnc(d);
      const auto f = random_generic_positive_form(spec, rng);
      const auto parts = split(f, spec);
      QMatrix base(d + 1, d + 1);
      for (int i = 0; i <= d; ++i) base(i, i) = i + 1;
      const auto lifted = lift_gram(base, parts);
      CHECK(reduce_gram(lifted) == base);
      CHECK(lifted(d + 1, d + 1) == parts.a);
      const Eigen::MatrixXd bd = base.to_double();
      CHECK((reduce_gram(lift_gram(bd, parts)) - bd).norm() < 1e-10);
    }
  }

  TEST_CASE("lifting a base identity gives a cone identity") {
    Rng rng(12);
    const auto spec = SurfaceSpec::cone_rnc(3);
    const auto f = random_generic_positive_form(spec, rng);
    const auto parts = split(f, spec);
    const auto g = reduce(parts);
    // Base identity from the two-squares enumeration of the reduced form.
    const auto two = enumerate_two_squares(g.cast<double>());
    REQUIRE_FALSE(two.representations.empty());
    const auto& r = two.representations.front();
    RepresentationD base;
    for (const auto* p : {&r.p, &r.q}) {
      BiformD l(0, {3, 0});
      for (int i = 0; i <= 3; ++i) l.add_term({i, 3 - i}, (*p)[i]);
      base.forms.push_back(l);
      base.signs.push_back(1);
    }
    const auto lifted = lift(base, parts);
    CHECK(lifted.size() == 3);
    CHECK(verify_representation(f.cast<double>(), lifted) < 1e-9 * f.max_abs_coeff());
  }
}

TEST_SUITE("factorization") {
  TEST_CASE("degree pattern") {
    const SymMatrixPoly a(2, {bf({0, 0, 1}), bf({0, 1, 0}), bf({0, 1, 0}), bf({1, 0, 0})});
    CHECK(degree_pattern(a) == std::vector<int>{1, 1});
    const SymMatrixPoly b(2, {bf({0, 0, 1}), bf({0, 1}), bf({0, 1}), bf({1, 0, 0})});
    CHECK(kind_of([&] { degree_pattern(b); }) == ErrorKind::OffDiagonalDegreeMismatch);
    const SymMatrixPoly c(2, {bf({0, 0, 0, 1}), bf({0}), bf({0}), bf({1, 0, 0})});
    CHECK(kind_of([&] { degree_pattern(c); }) == ErrorKind::OddDiagonalDegree);
    CHECK(kind_of([] { SymMatrixPoly(2, {bf({1}), bf({1}), bf({2}), bf({1})}); }) == ErrorKind::NonSymmetric);
  }

  TEST_CASE("embedding on a prism") {
    std::vector<BinaryFormQ> e(9, bf({0, 0, 0}));
    for (int i = 0; i < 3; ++i) e[i * 4] = bf({1, 0, 1});
    const auto emb = embed(SymMatrixPoly(3, e));
    CHECK(emb.prism.ambient_dim() == 5);
    CHECK(monomial_basis(emb.prism, 1).size() == 6);
    CHECK(emb.form.bidegree() == Bidegree{2, 2});
  }

  TEST_CASE("diagonal matrix factors") {
    const SymMatrixPoly a(2, {bf({1, 0, 1}), bf({0, 0, 0}), bf({0, 0, 0}), bf({1, 0, 1})});
    const auto fac = factor(a);
    REQUIRE(fac.b.size() == 2);
    CHECK(fac.b[0].size() == 3);
    CHECK(fac.residual < 1e-8);
    CHECK(factorization_residual(a, fac.b) == doctest::Approx(fac.residual).epsilon(1e-6));
  }

  TEST_CASE("indefinite matrix is rejected") {
    const SymMatrixPoly a(2, {bf({0, 0, 1}), bf({0, 2, 0}), bf({0, 2, 0}), bf({1, 0, 0})});
    CHECK(kind_of([&] { factor(a); }) == ErrorKind::NotPSD);
  }

  TEST_CASE("random psd matrices factor with n + 1 columns") {
    Rng rng(21);
    for (int n : {1, 2, 2, 3}) {
      const auto a = random_psd_matrix_poly(n, rng, 2);
      const auto fac = factor(a);
      REQUIRE(static_cast<int>(fac.b.size()) == n);
      for (const auto& row : fac.b) CHECK(static_cast<int>(row.size()) == n + 1);
      CHECK(fac.residual <= 1e-8 * std::max(1.0, a.max_abs_coeff()));
    }
  }

  TEST_CASE("alternating projections on the genus-one family") {
    const auto f = genus_one();
    const auto space = build_gram_space(f, SurfaceSpec::scroll(1, 1));
    const auto res = psd_feasible(space, 1e-10);
    CHECK(min_eigenvalue(res.gram) > -1e-9);
    const auto rep = extract_representation(space, res.gram);
    CHECK(verify_representation(f.cast<double>(), rep) < 1e-8);
  }

  TEST_CASE("rank reduction reaches a rank-three boundary point") {
    const auto space = build_gram_space(genus_one(), SurfaceSpec::scroll(1, 1));
    const double g = space.g0(0, 3).get_d(), k = space.kernel[0](0, 3).get_d();
    const auto start = gram_at(space, std::vector<double>{-g / k});
    REQUIRE(inertia(start) == Inertia{4, 0, 0});
    const auto red = rank_reduce(space, start, 3);
    CHECK(red.reached_target);
    CHECK(red.rank == 3);
    CHECK(inertia(red.gram, 1e-8) == Inertia{3, 0, 1});
    CHECK(std::abs(std::abs(red.gram(0, 3)) - 1.0) < 1e-8);
  }
}

TEST_SUITE("serialize") {
  TEST_CASE("biform round trip") {
    for (const auto& f : {genus_one(), genus_two(), nongeneric()}) CHECK(biform_from_json(to_json(f)) == f);
    Rational huge("123456789012345678901234567891/7");
    huge.canonicalize();
    const auto big = genus_one() * huge;
    CHECK(biform_from_json(to_json(big)) == big);
  }

  TEST_CASE("binary form round trip") {
    const auto f = bf({3, -1, 0, 5});
    CHECK(binary_form_from_json(to_json(f)) == f);
  }

  TEST_CASE("surface names") {
    CHECK(to_json(parse_surface("scroll(2,1)")) == to_json(SurfaceSpec::scroll(2, 1)));
    CHECK(to_json(parse_surface("veronese")) == to_json(SurfaceSpec::veronese()));
    CHECK(to_json(parse_surface("cone_rnc(4)")) == to_json(SurfaceSpec::cone_rnc(4)));
    CHECK(kind_of([] { parse_surface("torus"); }) == ErrorKind::InputError);
  }

  TEST_CASE("malformed input") {
    CHECK(kind_of([] { biform_from_json(Json::parse(R"({"terms": 3})")); }) == ErrorKind::InputError);
    CHECK(kind_of([] { biform_from_json(Json::parse(R"({"terms": [{"s": 1}]})")); }) == ErrorKind::InputError);
    CHECK(kind_of([] { rational_from_json(Json::parse(R"({"num": 1, "den": 0})")); }) == ErrorKind::InputError);
    CHECK(kind_of([] { matrix_from_json(Json::parse(R"({"n": 2, "entries": {"2,0": 1}})")); }) ==
          ErrorKind::InputError);
  }

  TEST_CASE("exact certificate reloads and verifies") {
    const auto spec = SurfaceSpec::scroll(1, 1);
    const auto basis = monomial_basis(spec, 1);
    const auto j = certificate_json(genus_one(), spec, genus_one_identity(), basis, 0.0);
    const auto back = certificate_from_json(Json::parse(j.dump()));
    CHECK(back.exact);
    CHECK(back.form == genus_one());
    CHECK(verifies_exactly(back.form, back.exact_rep));
  }

  TEST_CASE("float certificate keeps the form exact") {
    const auto spec = SurfaceSpec::scroll(2, 1);
    const auto space = build_gram_space(genus_two(), spec);
    const auto rep = extract_representation(space, canonical_gram(genus_two_identity(), space.basis).to_double());
    const auto j = certificate_json(genus_two(), spec, rep, space.basis, 1e-15);
    const auto back = certificate_from_json(Json::parse(j.dump()));
    CHECK_FALSE(back.exact);
    CHECK(back.form == genus_two());
    CHECK(verify_representation(back.form.cast<double>(), back.float_rep) < 1e-12);
  }

  TEST_CASE("matrix input") {
    const auto a = matrix_from_json(Json::parse(
        R"({"n": 2, "entries": {"0,0": {"deg": 2, "coeffs": [1, 0, 1]}, "1,1": {"deg": 2, "coeffs": [1, 0, 1]}}})"));
    CHECK(a.n() == 2);
    CHECK(a(0, 1).is_zero());
    CHECK(degree_pattern(a) == std::vector<int>{1, 1});
  }
}
