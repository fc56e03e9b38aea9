#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minsos/gram.hpp"
#include "minsos/homotopy.hpp"

namespace minsos {

// (r+1)-minors of G(theta) = G0 + sum theta_i K_i. The square subsystem is
// F_a = det(L_a^T G R_a) for random complex N x (r+1) matrices L_a, R_a,
// which by Cauchy-Binet is a random combination of the (r+1)-minors.
// Rows and columns are balanced by a diagonal congruence, which changes
// neither rank nor theta. With scale_variables the system's own variables
// are phi = theta / w, chosen so every w_i K_i has unit largest entry; every
// method below takes phi.
class MinorSystem : public HomogeneousSystem {
 public:
  MinorSystem(const GramSpace& space, int rank, uint64_t seed, bool scale_variables = true);

  int variables() const override { return k_; }
  std::vector<int> degrees() const override { return std::vector<int>(k_, rank_ + 1); }
  void evaluate(const Eigen::VectorXcd& z, Eigen::VectorXcd& f, Eigen::MatrixXcd& jac) const override;

  int rank() const { return rank_; }
  int size() const { return n_; }
  Eigen::MatrixXcd gram(const Eigen::VectorXcd& theta) const;
  // Every (r+1)-minor (I, J), I <= J lexicographically, at theta.
  std::vector<Complex> minors(const Eigen::VectorXcd& theta) const;
  // max |minor| / max|G(theta)|^(r+1).
  double minor_residual(const Eigen::VectorXcd& theta) const;
  // Gauss-Newton on the full minor list; returns the final minor_residual.
  double full_polish(Eigen::VectorXcd& theta, int iterations) const;
  // Number of (I, J) pairs in the full minor list.
  size_t minor_count() const { return minor_pairs_.size(); }
  Eigen::VectorXcd theta_of(const Eigen::VectorXcd& phi) const { return phi.cwiseProduct(weights_); }
  Eigen::VectorXcd phi_of(const Eigen::VectorXcd& theta) const { return theta.cwiseQuotient(weights_); }

 private:
  int n_, k_, rank_;
  Eigen::VectorXcd weights_;
  std::vector<Eigen::MatrixXcd> mats_;  // G0, K_1, ..., K_k
  // L_a^T mats_[i] R_a, row-major, flattened over (a, i).
  std::vector<Complex> flat_;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> minor_pairs_;
};

MinorSystem minor_system(const GramSpace& space, int rank, uint64_t seed);

struct EnumerationOptions {
  uint64_t seed = 1;
  double residual_tol = 1e-8;
  double cluster_radius = 1e-6;
  double real_tol = 1e-6;
  double failure_budget = 0.05;
  int retries = 2;
  int rescue_passes = 3;  // extra runs while endpoints look suspicious
  TrackerOptions tracker;
};

struct SolutionPoint {
  Eigen::VectorXcd theta;
  bool real = false;
  Inertia inertia;  // meaningful when real
  double residual = 0.0;
};

struct PathStats {
  long tracked = 0;
  long finite = 0;
  long diverged = 0;
  long singular = 0;
  long failed = 0;
  long rejected = 0;    // finite endpoints failing the full-minor residual test
  long duplicates = 0;  // merged by clustering
  long recovered = 0;   // irregular endpoints that polish onto the rank locus
  long collisions = 0;  // regular endpoints reached by more than one path
  long irregular = 0;   // points reached only by recovered endpoints
  int rescue_runs = 0;  // extra runs with fresh seeds
  long rescued = 0;     // points found only by those runs
  int attempts = 1;
};

struct SolutionSet {
  std::vector<SolutionPoint> points;  // canonical order
  PathStats stats;
  Complex gamma;
  // Endpoints on the hyperplane at infinity (z_0 ~ 0), unit-normalized.
  std::vector<Eigen::VectorXcd> at_infinity;
  std::vector<Eigen::VectorXcd> singular;
};

// Tracks, filters, clusters and tags one homotopy run; throws
// PathFailureBudgetExceeded when too many paths fail.
SolutionSet solve(const MinorSystem& system, const EnumerationOptions& options);

// All points of rank <= r in the Gram space; re-runs with new randomness
// (up to options.retries times) when the failure budget is exceeded.
SolutionSet enumerate_rank_points(const GramSpace& space, int rank, const EnumerationOptions& options);

struct CountReport {
  int complex = 0;
  int real = 0;
  int psd = 0;
  int indefinite = 0;
  std::vector<RepresentationD> real_representations;  // in point order
  std::vector<int> real_point_index;
};

CountReport classify(const GramSpace& space, const SolutionSet& sols);

struct ExpectedCounts {
  int complex = 0;
  int real = 0;
  int psd = 0;
  int indefinite = 0;
};

// Counts for generic positive forms where they are known; none for prisms.
std::optional<ExpectedCounts> expected_counts(const SurfaceSpec& spec);

}  // namespace minsos
