#include "minsos/qmatrix.hpp"

#include <cmath>

#include "minsos/error.hpp"

namespace minsos {

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_ints(const std::vector<std::vector<long>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r ? static_cast<int>(rows[0].size()) : 0;
  QMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw Error(ErrorKind::DimensionMismatch, "ragged matrix");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

QMatrix& QMatrix::operator+=(const QMatrix& b) {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix sum");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += b.data_[i];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& b) {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix difference");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] -= b.data_[i];
  return *this;
}

QMatrix& QMatrix::operator*=(const Rational& c) {
  for (auto& v : data_) v *= c;
  return *this;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product");
  QMatrix r(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (int j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
    }
  return r;
}

QMatrix QMatrix::transpose() const {
  QMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

bool QMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool QMatrix::is_zero() const {
  for (const auto& v : data_)
    if (sgn(v) != 0) return false;
  return true;
}

double QMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v.get_d()));
  return m;
}

Eigen::MatrixXd QMatrix::to_double() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).get_d();
  return m;
}

Eigen::MatrixXcd QMatrix::to_complex() const { return to_double().cast<Complex>(); }

int QMatrix::rank() const {
  QMatrix a = *this;
  int rank = 0;
  for (int col = 0; col < cols_ && rank < rows_; ++col) {
    int pivot = -1;
    for (int i = rank; i < rows_; ++i)
      if (sgn(a(i, col)) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int j = 0; j < cols_; ++j) std::swap(a(pivot, j), a(rank, j));
    for (int i = rank + 1; i < rows_; ++i) {
      if (sgn(a(i, col)) == 0) continue;
      const Rational factor = a(i, col) / a(rank, col);
      for (int j = col; j < cols_; ++j) a(i, j) -= factor * a(rank, j);
    }
    ++rank;
  }
  return rank;
}

Congruence diagonalize_congruence(const QMatrix& g) {
  if (!g.is_symmetric()) throw Error(ErrorKind::NonSymmetric, "congruence diagonalization needs a symmetric matrix");
  const int n = g.rows();
  QMatrix a = g;
  Congruence out;
  auto column = [&](int j) {
    std::vector<Rational> v(n);
    for (int i = 0; i < n; ++i) v[i] = a(i, j);
    return v;
  };
  // Subtracts w * u u^T from a.
  auto subtract = [&](const Rational& w, const std::vector<Rational>& u) {
    for (int i = 0; i < n; ++i) {
      if (sgn(u[i]) == 0) continue;
      const Rational wi = w * u[i];
      for (int j = 0; j < n; ++j) a(i, j) -= wi * u[j];
    }
  };
  while (true) {
    int diag = -1;
    for (int i = 0; i < n; ++i)
      if (sgn(a(i, i)) != 0) {
        diag = i;
        break;
      }
    if (diag >= 0) {
      auto u = column(diag);
      Rational w = 1 / a(diag, diag);
      subtract(w, u);
      out.weights.push_back(w);
      out.vectors.push_back(std::move(u));
      continue;
    }
    int pi = -1, pj = -1;
    for (int i = 0; i < n && pi < 0; ++i)
      for (int j = i + 1; j < n; ++j)
        if (sgn(a(i, j)) != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    // Zero diagonal at i, j: a - (u v^T + v u^T)/b clears both rows, and
    // (u v^T + v u^T)/b = ((u+v)(u+v)^T - (u-v)(u-v)^T) / (2b).
    const Rational b = a(pi, pj);
    auto u = column(pi);
    auto v = column(pj);
    std::vector<Rational> plus(n), minus(n);
    for (int i = 0; i < n; ++i) {
      plus[i] = u[i] + v[i];
      minus[i] = u[i] - v[i];
    }
    const Rational w = 1 / (2 * b);
    subtract(w, plus);
    subtract(-w, minus);
    out.weights.push_back(w);
    out.vectors.push_back(std::move(plus));
    out.weights.push_back(-w);
    out.vectors.push_back(std::move(minus));
  }
  return out;
}

Inertia exact_inertia(const QMatrix& g) {
  const auto c = diagonalize_congruence(g);
  Inertia in;
  for (const auto& w : c.weights) (sgn(w) > 0 ? in.plus : in.minus)++;
  in.zero = g.rows() - in.plus - in.minus;
  return in;
}

}  // namespace minsos
