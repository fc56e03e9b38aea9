#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "minsos/rational.hpp"

namespace minsos {

// Square system of k homogeneous polynomials in k + 1 variables z_0..z_k,
// with z_0 the homogenizing coordinate (theta_i = z_i / z_0).
class HomogeneousSystem {
 public:
  virtual ~HomogeneousSystem() = default;
  virtual int variables() const = 0;  // k
  virtual std::vector<int> degrees() const = 0;
  // f has size k, jac is k x (k + 1).
  virtual void evaluate(const Eigen::VectorXcd& z, Eigen::VectorXcd& f, Eigen::MatrixXcd& jac) const = 0;
};

struct TrackerOptions {
  double newton_tol = 1e-10;     // relative corrector tolerance
  int newton_iterations = 5;
  double max_first_correction = 0.05;  // relative to |z|; larger steps are rejected
  double min_step = 1e-14;
  double max_step = 0.1;
  double initial_step = 0.01;
  double endgame_start = 1e-6;   // paths are tracked to t = 1 - endgame_start
  int endgame_newton = 12;
  double divergence = 1e8;
  int successes_to_double = 4;
  long max_steps = 100000;
  int threads = 1;
};

enum class PathStatus { Finite, AtInfinity, Singular, Failed };

struct PathResult {
  PathStatus status = PathStatus::Failed;
  Eigen::VectorXcd z;   // projective endpoint, unit norm
  long steps = 0;
  double t_reached = 0.0;
};

struct HomotopyRun {
  std::vector<PathResult> paths;  // in start-point order
  Complex gamma;
};

// Total-degree homotopy gamma (1 - t) S + t F with S_a = z_a^d_a - z_0^d_a,
// tracked in a random affine patch.
HomotopyRun track_total_degree(const HomogeneousSystem& system, uint64_t seed, const TrackerOptions& options = {});

// Newton iterations on F in affine coordinates theta (z_0 = 1). Returns the
// final update norm.
double newton_polish(const HomogeneousSystem& system, Eigen::VectorXcd& theta, int iterations = 5);

}  // namespace minsos
