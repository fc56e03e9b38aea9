#pragma once

#include <vector>

#include <Eigen/Dense>

#include "minsos/rational.hpp"

namespace minsos {

struct Inertia {
  int plus = 0;
  int minus = 0;
  int zero = 0;
  int rank() const { return plus + minus; }
  bool operator==(const Inertia&) const = default;
};

// Dense matrix over Q, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

  static QMatrix identity(int n);
  static QMatrix from_ints(const std::vector<std::vector<long>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  QMatrix& operator+=(const QMatrix& b);
  QMatrix& operator-=(const QMatrix& b);
  QMatrix& operator*=(const Rational& c);
  friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
  friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
  friend QMatrix operator*(QMatrix a, const Rational& c) { return a *= c; }
  friend QMatrix operator*(const Rational& c, QMatrix a) { return a *= c; }
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);

  QMatrix transpose() const;
  bool operator==(const QMatrix& b) const = default;
  bool is_symmetric() const;
  bool is_zero() const;
  double max_abs() const;

  Eigen::MatrixXd to_double() const;
  Eigen::MatrixXcd to_complex() const;

  int rank() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

// G = sum_k weights[k] * v_k v_k^T with rational weights and vectors, found by
// symmetric Gaussian elimination (congruence). The number of terms is rank(G)
// and the weight signs give the inertia (Sylvester).
struct Congruence {
  std::vector<Rational> weights;
  std::vector<std::vector<Rational>> vectors;
};

Congruence diagonalize_congruence(const QMatrix& g);
Inertia exact_inertia(const QMatrix& g);

}  // namespace minsos
