#pragma once

#include <vector>

#include <Eigen/Dense>

#include "minsos/binary_form.hpp"

namespace minsos {

struct ProjectiveRoot {
  Complex value;          // root of f(s, 1) as s/t; unused when at_infinity
  bool at_infinity = false;
  int multiplicity = 1;
};

struct RootMultiset {
  int degree = 0;
  std::vector<ProjectiveRoot> roots;  // finite roots first, infinity last

  int total_multiplicity() const;
};

// Companion-matrix roots of f(s,1), polished by Newton, clustered within
// cluster_radius (relative) into multiplicities. Real forms get exactly
// conjugate-closed output.
RootMultiset roots(const BinaryFormD& f, double cluster_radius = 1e-6);

// Real roots must have even multiplicity and f must be positive away from them.
bool is_nonnegative(const BinaryFormD& f, double cluster_radius = 1e-6);
bool is_nonnegative(const BinaryFormQ& f, double cluster_radius = 1e-6);

struct TwoSquares {
  BinaryFormD p;
  BinaryFormD q;
  double residual = 0.0;  // max |coeff(f - p^2 - q^2)|
};

struct TwoSquaresResult {
  std::vector<TwoSquares> representations;
  int conjugate_pairs = 0;
  bool simple_roots = true;  // the count is exact only in this case
  int expected_count() const { return conjugate_pairs == 0 ? 1 : 1 << (conjugate_pairs - 1); }
};

// All inequivalent f = p^2 + q^2 via choices of one root from each conjugate
// pair; throws NotNonnegative.
TwoSquaresResult enumerate_two_squares(const BinaryFormD& f, double cluster_radius = 1e-6);

// Canonical Gram matrix v_p v_p^T + v_q v_q^T in the basis s^i t^(d-i).
Eigen::MatrixXd two_squares_gram(const TwoSquares& rep);

}  // namespace minsos
