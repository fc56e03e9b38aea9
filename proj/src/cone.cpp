#include "minsos/cone.hpp"

#include <cmath>

namespace minsos {

ConeSplit split(const BiformQ& f, const SurfaceSpec& cone) {
  if (cone.kind != SurfaceKind::ConeOverRNC) throw Error(ErrorKind::InputError, "split needs a cone over a curve");
  const int d = cone.d;
  if (f.nx() != 2 || !(f.bidegree() == Bidegree{2 * d, 2}))
    throw Error(ErrorKind::DegreeMismatch, "form must have bidegree (2d, 2)");
  ConeSplit p{d, Rational(0), BinaryFormQ(d), BinaryFormQ(2 * d)};
  for (const auto& [e, c] : f.terms()) {
    if (e[2] == 2) {
      if (e[0] != 0) throw Error(ErrorKind::DegreeMismatch, "x^2 may only multiply t^(2d) on the cone");
      p.a = c;
    } else if (e[2] == 1) {
      if (e[0] > d) throw Error(ErrorKind::DegreeMismatch, "xy term of s-degree above d");
      p.b[e[0]] = c / 2;
    } else {
      p.c[e[0]] = c;
    }
  }
  if (sgn(p.a) <= 0) throw Error(ErrorKind::ApexCoefficientNotPositive, "coefficient of the apex square is not positive");
  return p;
}

BinaryFormQ reduce(const ConeSplit& parts) {
  auto g = parts.c - (parts.b * parts.b) * (Rational(1) / parts.a);
  return g;
}

namespace {

template <class T>
Biform<T> to_cone(const Biform<T>& base, int d) {
  if (base.nx() != 0 || !(base.bidegree() == Bidegree{d, 0}))
    throw Error(ErrorKind::DegreeMismatch, "base form must be a binary form of degree d");
  Biform<T> r(2, {d, 1});
  for (const auto& [e, c] : base.terms()) r.add_term({e[0], e[1], 0, 1}, c);
  return r;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  mpz_class n = q.get_num(), m = q.get_den();
  mpz_class rn = sqrt(n), rm = sqrt(m);
  if (rn * rn != n || rm * rm != m) return std::nullopt;
  Rational r(rn, rm);
  r.canonicalize();
  return r;
}

}  // namespace

BiformQ base_to_cone(const BiformQ& base_form, int d) { return to_cone(base_form, d); }
BiformD base_to_cone(const BiformD& base_form, int d) { return to_cone(base_form, d); }

RepresentationQ lift(const RepresentationQ& base_rep, const ConeSplit& parts) {
  const int d = parts.d;
  const BiformQ apex = BiformQ::monomial({0, d, 1, 0}, parts.a);
  const BiformQ by = base_to_cone(parts.b.to_biform(0), d);
  RepresentationQ out;
  const auto root = rational_sqrt(parts.a);
  const bool weighted = !root || !base_rep.weights.empty();
  if (root) {
    // (sqrt(a) z + b y / sqrt(a))^2 with rational coefficients.
    out.forms.push_back(BiformQ::monomial({0, d, 1, 0}, *root) + by * (Rational(1) / *root));
    if (weighted) out.weights.push_back(Rational(1));
  } else {
    out.forms.push_back(apex + by);
    out.weights.push_back(Rational(1) / parts.a);
  }
  out.signs.push_back(1);
  for (int i = 0; i < base_rep.size(); ++i) {
    out.forms.push_back(base_to_cone(base_rep.forms[i], d));
    out.signs.push_back(base_rep.signs[i]);
    if (weighted) out.weights.push_back(base_rep.weight(i));
  }
  return out;
}

RepresentationD lift(const RepresentationD& base_rep, const ConeSplit& parts) {
  const int d = parts.d;
  const double ra = std::sqrt(parts.a.get_d());
  BiformD first = BiformD::monomial({0, d, 1, 0}, ra) + base_to_cone(parts.b.cast<double>().to_biform(0), d) * (1.0 / ra);
  RepresentationD out;
  out.forms.push_back(std::move(first));
  out.signs.push_back(1);
  if (!base_rep.weights.empty()) out.weights.push_back(1.0);
  for (int i = 0; i < base_rep.size(); ++i) {
    out.forms.push_back(base_to_cone(base_rep.forms[i], d));
    out.signs.push_back(base_rep.signs[i]);
    if (!base_rep.weights.empty()) out.weights.push_back(base_rep.weights[i]);
  }
  return out;
}

QMatrix lift_gram(const QMatrix& base_gram, const ConeSplit& parts) {
  const int n = base_gram.rows();
  if (n != parts.d + 1) throw Error(ErrorKind::DimensionMismatch, "base Gram matrix must be (d+1) x (d+1)");
  QMatrix g(n + 1, n + 1);
  const Rational inv = Rational(1) / parts.a;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = base_gram(i, j) + parts.b[i] * parts.b[j] * inv;
    g(i, n) = g(n, i) = parts.b[i];
  }
  g(n, n) = parts.a;
  return g;
}

Eigen::MatrixXd lift_gram(const Eigen::MatrixXd& base_gram, const ConeSplit& parts) {
  const int n = static_cast<int>(base_gram.rows());
  if (n != parts.d + 1) throw Error(ErrorKind::DimensionMismatch, "base Gram matrix must be (d+1) x (d+1)");
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) b(i) = parts.b[i].get_d();
  const double a = parts.a.get_d();
  Eigen::MatrixXd g(n + 1, n + 1);
  g.topLeftCorner(n, n) = base_gram + b * b.transpose() / a;
  g.topRightCorner(n, 1) = b;
  g.bottomLeftCorner(1, n) = b.transpose();
  g(n, n) = a;
  return g;
}

QMatrix reduce_gram(const QMatrix& cone_gram) {
  const int n = cone_gram.rows() - 1;
  const Rational a = cone_gram(n, n);
  if (sgn(a) <= 0) throw Error(ErrorKind::ApexCoefficientNotPositive, "apex entry is not positive");
  QMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = cone_gram(i, j) - cone_gram(i, n) * cone_gram(j, n) / a;
  return g;
}

Eigen::MatrixXd reduce_gram(const Eigen::MatrixXd& cone_gram) {
  const int n = static_cast<int>(cone_gram.rows()) - 1;
  const double a = cone_gram(n, n);
  if (a <= 0) throw Error(ErrorKind::ApexCoefficientNotPositive, "apex entry is not positive");
  return cone_gram.topLeftCorner(n, n) - cone_gram.topRightCorner(n, 1) * cone_gram.bottomLeftCorner(1, n) / a;
}

}  // namespace minsos
