#pragma once

#include <string>
#include <vector>

#include "minsos/gram.hpp"

namespace minsos {

// Symmetric n x n matrix of binary forms, stored row-major.
class SymMatrixPoly {
 public:
  SymMatrixPoly() = default;
  // Throws NonSymmetric if entries (i,j) and (j,i) differ.
  SymMatrixPoly(int n, std::vector<BinaryFormQ> entries);

  int n() const { return n_; }
  const BinaryFormQ& operator()(int i, int j) const { return entries_.at(static_cast<size_t>(i) * n_ + j); }
  Eigen::MatrixXd eval(double s, double t) const;
  double max_abs_coeff() const;

 private:
  int n_ = 0;
  std::vector<BinaryFormQ> entries_;
};

// d_i = deg(a_ii) / 2, checking that a_ij is zero or of degree d_i + d_j.
std::vector<int> degree_pattern(const SymMatrixPoly& a);

struct PrismEmbedding {
  SurfaceSpec prism;
  BiformQ form;  // sum a_ij x_i x_j, bidegree (2 max d, 2)
};

PrismEmbedding embed(const SymMatrixPoly& a);

struct FeasibilityResult {
  Eigen::MatrixXd gram;
  long iterations = 0;
  std::vector<double> distances;  // ||P_psd(X_k) - X_{k+1}||_F per iteration
};

// Alternating projections between the psd cone and the affine fiber.
// Throws IterationBudgetExceeded with the final gap.
FeasibilityResult psd_feasible(const GramSpace& space, double tol = 1e-9, long budget = 100000);

struct RankReduction {
  Eigen::MatrixXd gram;
  int rank = 0;
  bool reached_target = false;
  std::vector<int> rank_history;
};

// Moves along fiber directions supported on range(G) to the psd boundary
// until the rank is at most target or G is an extreme point.
RankReduction rank_reduce(const GramSpace& space, const Eigen::MatrixXd& g, int target, double rank_tol = 1e-9);

struct FactorOptions {
  double psd_grid_tol = 1e-10;
  int grid = 101;
  double feasibility_tol = 1e-9;
  long feasibility_budget = 100000;
  double residual_tol = 1e-8;
};

struct Factorization {
  std::vector<int> degrees;
  // n rows, n + 1 columns; entry (i, c) has degree degrees[i].
  std::vector<std::vector<BinaryFormD>> b;
  double residual = 0.0;        // max coefficient of A - B B^T
  int extreme_rank = 0;         // rank where rank reduction stopped
  bool continuation = false;    // the rank-reduced point needed the form-space continuation
  std::vector<std::string> warnings;
};

// A = B B^T with n + 1 columns. Throws NotPSD with a grid witness.
Factorization factor(const SymMatrixPoly& a, const FactorOptions& options = {});

// Max coefficient of A - B B^T.
double factorization_residual(const SymMatrixPoly& a, const std::vector<std::vector<BinaryFormD>>& b);

}  // namespace minsos
