#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"

using namespace minsos;
using namespace fixtures;

namespace {

RepresentationD to_double(const RepresentationQ& r) {
  RepresentationD d;
  for (const auto& f : r.forms) d.forms.push_back(f.cast<double>());
  d.signs = r.signs;
  return d;
}

// Value of theta that puts alpha at the free (yt, xs) entry of the genus-one
// family.
double theta_for(const GramSpace& space, double alpha) {
  const double g = space.g0(0, 3).get_d(), k = space.kernel[0](0, 3).get_d();
  return (alpha - g) / k;
}

// The k = 1 smoke system theta^2 - 1.
class UnitCircle : public HomogeneousSystem {
 public:
  int variables() const override { return 1; }
  std::vector<int> degrees() const override { return {2}; }
  void evaluate(const Eigen::VectorXcd& z, Eigen::VectorXcd& f, Eigen::MatrixXcd& jac) const override {
    f(0) = z(1) * z(1) - z(0) * z(0);
    jac(0, 0) = -2.0 * z(0);
    jac(0, 1) = 2.0 * z(1);
  }
};

}  // namespace

TEST_SUITE("gram") {
  TEST_CASE("genus-one family") {
    const auto space = build_gram_space(genus_one(), SurfaceSpec::scroll(1, 1));
    REQUIRE(space.dim() == 1);
    // Entries forced by the form: y-block [[2,1],[1,2]], x-block identity.
    CHECK(space.g0(0, 0) == 2);
    CHECK(space.g0(0, 1) == 1);
    CHECK(space.g0(1, 1) == 2);
    CHECK(space.g0(2, 2) == 1);
    CHECK(space.g0(2, 3) == 0);
    CHECK(space.g0(3, 3) == 1);
    CHECK(space.g0(0, 2) == 0);
    CHECK(space.g0(1, 3) == 0);
    CHECK(space.g0(0, 3) + space.g0(1, 2) == 0);
    const auto& k = space.kernel[0];
    CHECK(k(0, 3) != 0);
    CHECK(k(0, 3) == -k(1, 2));
    int nonzero = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) nonzero += k(i, j) != 0;
    CHECK(nonzero == 4);
  }

  TEST_CASE("genus-two family has three parameters") {
    const auto space = build_gram_space(genus_two(), SurfaceSpec::scroll(2, 1));
    CHECK(space.dim() == 3);
    CHECK(space.size() == 5);
  }

  TEST_CASE("single monomial") {
    const auto f = (Y() * T()) * (Y() * T());
    const auto space = build_gram_space(f, SurfaceSpec::scroll(1, 1));
    QMatrix e(4, 4);
    e(0, 0) = 1;
    CHECK(space.g0 == e);
    const auto rep = extract_representation(space, e.to_double());
    REQUIRE(rep.size() == 1);
    CHECK(rep.signs[0] == 1);
    CHECK(std::abs(std::abs(rep.forms[0].coeff({0, 1, 0, 1})) - 1.0) < 1e-12);
  }

  TEST_CASE("fiber identity on random rational theta") {
    Rng rng(11);
    for (const auto& spec : {SurfaceSpec::scroll(1, 1), SurfaceSpec::scroll(3, 2), SurfaceSpec::veronese(),
                             SurfaceSpec::cone_rnc(3)}) {
      const auto f = random_generic_positive_form(spec, rng);
      const auto space = build_gram_space(f, spec);
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<Rational> th(space.dim());
        for (auto& x : th) x = make_rational(rng.integer(-30, 30), rng.integer(1, 7));
        CHECK(quadratic_form(space, gram_at(space, th)) == f);
      }
    }
  }

  TEST_CASE("theta = 0 gives G0") {
    const auto space = build_gram_space(genus_two(), SurfaceSpec::scroll(2, 1));
    CHECK(gram_at(space, std::vector<Rational>(3)) == space.g0);
  }

  TEST_CASE("inertia along the genus-one family") {
    const auto space = build_gram_space(genus_one(), SurfaceSpec::scroll(1, 1));
    const auto at = [&](double alpha) { return gram_at(space, std::vector<double>{theta_for(space, alpha)}); };
    CHECK(inertia(at(1.0)) == Inertia{3, 0, 1});
    CHECK(inertia(at(-1.0)) == Inertia{3, 0, 1});
    CHECK(inertia(at(std::sqrt(3.0))) == Inertia{2, 1, 1});
    CHECK(inertia(at(0.0)) == Inertia{4, 0, 0});
    CHECK(inertia(Eigen::MatrixXd::Zero(5, 5)) == Inertia{0, 0, 5});
  }

  TEST_CASE("inertia is invariant under congruence") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::MatrixXd d = Eigen::MatrixXd::Zero(5, 5);
      d(0, 0) = 3;
      d(1, 1) = 1;
      d(2, 2) = -2;
      Eigen::MatrixXd p(5, 5);
      for (int i = 0; i < 25; ++i) p(i) = rng.normal();
      CHECK(inertia(p * d * p.transpose(), 1e-9) == Inertia{2, 1, 2});
    }
  }

  TEST_CASE("extraction at alpha = 1 recovers the displayed identity") {
    const auto space = build_gram_space(genus_one(), SurfaceSpec::scroll(1, 1));
    const auto g = gram_at(space, std::vector<double>{theta_for(space, 1.0)});
    const auto rep = extract_representation(space, g);
    CHECK(rep.size() == 3);
    CHECK(rep.all_positive());
    CHECK(equivalent(rep, to_double(genus_one_identity()), space.basis));
    CHECK(verify_representation(genus_one().cast<double>(), rep) < 1e-12);
  }

  TEST_CASE("the displayed identities verify exactly") {
    CHECK(verifies_exactly(genus_one(), genus_one_identity()));
    CHECK(verifies_exactly(genus_two(), genus_two_identity()));
    auto flipped = genus_one_identity();
    flipped.signs[1] = -1;
    CHECK_FALSE(verifies_exactly(genus_one(), flipped));
    CHECK(verify_representation(genus_one(), flipped) > 0);
  }

  TEST_CASE("equivalence") {
    const auto space = build_gram_space(genus_one(), SurfaceSpec::scroll(1, 1));
    const auto plus = extract_representation(space, gram_at(space, std::vector<double>{theta_for(space, 1.0)}));
    const auto minus = extract_representation(space, gram_at(space, std::vector<double>{theta_for(space, -1.0)}));
    CHECK_FALSE(equivalent(plus, minus, space.basis));
    // A rotation of the squares is the same representation.
    const double c = std::cos(0.7), s = std::sin(0.7);
    RepresentationD rot = plus;
    rot.forms[0] = plus.forms[0] * c + plus.forms[1] * s;
    rot.forms[1] = plus.forms[0] * (-s) + plus.forms[1] * c;
    CHECK(equivalent(plus, rot, space.basis));
  }

  TEST_CASE("exact certificates from rational Gram matrices") {
    const auto space = build_gram_space(genus_one(), SurfaceSpec::scroll(1, 1));
    const Rational th = (Rational(1) - space.g0(0, 3)) / space.kernel[0](0, 3);
    const auto g = gram_at(space, std::vector<Rational>{th});
    CHECK(exact_inertia(g) == Inertia{3, 0, 1});
    const auto rep = exact_representation(space, g);
    CHECK(rep.size() == 3);
    CHECK(verifies_exactly(genus_one(), rep));
    CHECK(canonical_gram(rep, space.basis) == g);
  }
}

TEST_SUITE("rank_enumerator") {
  TEST_CASE("total-degree smoke test") {
    const UnitCircle sys;
    const auto run = track_total_degree(sys, 3);
    REQUIRE(run.paths.size() == 2);
    std::vector<double> roots;
    for (const auto& p : run.paths) {
      REQUIRE(p.status == PathStatus::Finite);
      Eigen::VectorXcd th = p.z.tail(1) / p.z(0);
      newton_polish(sys, th);
      CHECK(std::abs(th(0).imag()) < 1e-10);
      roots.push_back(th(0).real());
    }
    std::sort(roots.begin(), roots.end());
    CHECK(roots[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(roots[1] == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("Jacobian matches finite differences") {
    const auto space = build_gram_space(genus_two(), SurfaceSpec::scroll(2, 1));
    const MinorSystem sys(space, 3, 17);
    CHECK(sys.variables() == 3);
    CHECK(sys.degrees() == std::vector<int>{4, 4, 4});
    Rng rng(2);
    Eigen::VectorXcd z(4);
    for (int i = 0; i < 4; ++i) z(i) = rng.complex_normal();
    Eigen::VectorXcd f(3), fp(3), fm(3);
    Eigen::MatrixXcd jac(3, 4), scratch(3, 4);
    sys.evaluate(z, f, jac);
    const double h = 1e-6;
    for (int v = 0; v < 4; ++v) {
      Eigen::VectorXcd zp = z, zm = z;
      zp(v) += h;
      zm(v) -= h;
      sys.evaluate(zp, fp, scratch);
      sys.evaluate(zm, fm, scratch);
      const Eigen::VectorXcd fd = (fp - fm) / (2 * h);
      CHECK((fd - jac.col(v)).norm() <= 1e-6 * std::max(1.0, jac.col(v).norm()));
    }
  }

  TEST_CASE("full rank is rejected") {
    const auto space = build_gram_space(genus_one(), SurfaceSpec::scroll(1, 1));
    CHECK_THROWS_AS(MinorSystem(space, 4, 1), Error);
  }

  TEST_CASE("genus-one rank-three points") {
    const auto space = build_gram_space(genus_one(), SurfaceSpec::scroll(1, 1));
    const auto sols = enumerate_rank_points(space, 3, {});
    REQUIRE(sols.points.size() == 4);
    std::vector<double> alphas;
    for (const auto& p : sols.points) {
      CHECK(p.real);
      const double g = space.g0(0, 3).get_d(), k = space.kernel[0](0, 3).get_d();
      alphas.push_back(g + k * p.theta(0).real());
    }
    std::sort(alphas.begin(), alphas.end());
    const double r3 = std::sqrt(3.0);
    CHECK(std::abs(alphas[0] + r3) < 1e-8);
    CHECK(std::abs(alphas[1] + 1) < 1e-8);
    CHECK(std::abs(alphas[2] - 1) < 1e-8);
    CHECK(std::abs(alphas[3] - r3) < 1e-8);
    const auto counts = classify(space, sols);
    CHECK(counts.complex == 4);
    CHECK(counts.real == 4);
    CHECK(counts.psd == 2);
    CHECK(counts.indefinite == 2);
  }

  TEST_CASE("genus-two count") {
    const auto space = build_gram_space(genus_two(), SurfaceSpec::scroll(2, 1));
    const auto counts = classify(space, enumerate_rank_points(space, 3, {}));
    CHECK(counts.complex == 16);
    CHECK(counts.real == 4);
    CHECK(counts.psd == 4);
    CHECK(counts.indefinite == 0);
  }

  TEST_CASE("seed determinism") {
    const auto space = build_gram_space(genus_two(), SurfaceSpec::scroll(2, 1));
    EnumerationOptions a, b;
    a.seed = b.seed = 9;
    b.tracker.threads = 2;
    const auto sa = enumerate_rank_points(space, 3, a), sb = enumerate_rank_points(space, 3, b);
    REQUIRE(sa.points.size() == sb.points.size());
    for (size_t i = 0; i < sa.points.size(); ++i) CHECK(sa.points[i].theta == sb.points[i].theta);
  }

  TEST_CASE("expected counts") {
    const auto s22 = expected_counts(SurfaceSpec::scroll(2, 2));
    REQUIRE(s22);
    CHECK(s22->complex == 64);
    CHECK(s22->real == 16);
    CHECK(s22->psd == 8);
    const auto s21 = expected_counts(SurfaceSpec::scroll(2, 1));
    REQUIRE(s21);
    CHECK(s21->indefinite == 0);
    const auto v = expected_counts(SurfaceSpec::veronese());
    REQUIRE(v);
    CHECK(v->complex == 63);
    CHECK(v->real == 15);
    CHECK(v->psd == 8);
    const auto c4 = expected_counts(SurfaceSpec::cone_rnc(4));
    REQUIRE(c4);
    CHECK(c4->complex == 35);
    CHECK(c4->real == 11);
    CHECK(c4->psd == 8);
    CHECK_FALSE(expected_counts(SurfaceSpec::prism({1, 1, 1})));
  }
}
