#pragma once

#include "minsos/gram.hpp"

namespace minsos {

// A quadratic form on the cone over nu_d(P^1), written in the apex
// coordinate z = x t^d as f = a z^2 + 2 b(s,t) z y + c(s,t) y^2.
struct ConeSplit {
  int d = 0;
  Rational a;
  BinaryFormQ b;  // degree d
  BinaryFormQ c;  // degree 2d
};

// Throws ApexCoefficientNotPositive when a <= 0 and DegreeMismatch when f is
// not supported on the cone.
ConeSplit split(const BiformQ& f, const SurfaceSpec& cone);

// g = c - b^2 / a, a form of degree 2d on the base curve.
BinaryFormQ reduce(const ConeSplit& parts);

// Base forms (nx = 0, degree d) -> cone forms, and back.
BiformQ base_to_cone(const BiformQ& base_form, int d);
BiformD base_to_cone(const BiformD& base_form, int d);

// Prepends the square of (a z + b y) / sqrt(a) to a representation of
// c - b^2/a. The exact version keeps a as a weight 1/a unless a is a perfect
// square.
RepresentationQ lift(const RepresentationQ& base_rep, const ConeSplit& parts);
RepresentationD lift(const RepresentationD& base_rep, const ConeSplit& parts);

// [[G' + b b^T / a, b], [b^T, a]] with the apex last, and its inverse, the
// Schur complement of the apex entry.
QMatrix lift_gram(const QMatrix& base_gram, const ConeSplit& parts);
Eigen::MatrixXd lift_gram(const Eigen::MatrixXd& base_gram, const ConeSplit& parts);
QMatrix reduce_gram(const QMatrix& cone_gram);
Eigen::MatrixXd reduce_gram(const Eigen::MatrixXd& cone_gram);

}  // namespace minsos
