#include "minsos/homotopy.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "minsos/error.hpp"
#include "minsos/random.hpp"

namespace minsos {

namespace {

class Tracker {
 public:
  Tracker(const HomogeneousSystem& system, const Eigen::VectorXcd& patch, Complex gamma, const TrackerOptions& opt)
      : sys_(system), patch_(patch), gamma_(gamma), opt_(opt), k_(system.variables()), deg_(system.degrees()) {
    f_.resize(k_);
    jf_.resize(k_, k_ + 1);
    h_.resize(k_ + 1);
    jh_.resize(k_ + 1, k_ + 1);
    ht_.resize(k_ + 1);
  }

  PathResult run(Eigen::VectorXcd z) {
    PathResult out;
    double t = 0.0, dt = opt_.initial_step;
    int successes = 0;
    const double t_end = 1.0 - opt_.endgame_start;
    while (t < t_end) {
      if (++out.steps > opt_.max_steps) return finish(out, z, t, PathStatus::Failed);
      const double step = std::min(dt, t_end - t);
      // Euler predictor: H_z dz/dt = -H_t.
      assemble(z, t);
      lu_.compute(jh_);
      const Eigen::VectorXcd dz = lu_.solve(-ht_);
      Eigen::VectorXcd zn = z + step * dz;
      if (correct(zn, t + step)) {
        z = zn;
        t += step;
        if (at_infinity(z)) return finish(out, z, t, PathStatus::AtInfinity);
        if (++successes >= opt_.successes_to_double) {
          dt = std::min(2.0 * dt, opt_.max_step);
          successes = 0;
        }
      } else {
        dt *= 0.5;
        successes = 0;
        if (dt < opt_.min_step) {
          return finish(out, z, t, near_infinity(z) ? PathStatus::AtInfinity : PathStatus::Failed);
        }
      }
    }
    // Endgame: Newton on the target system from t = 1 - endgame_start.
    Eigen::VectorXcd zn = z;
    bool converged = false;
    for (int it = 0; it < opt_.endgame_newton; ++it) {
      assemble(zn, 1.0);
      lu_.compute(jh_);
      const Eigen::VectorXcd delta = lu_.solve(-h_);
      if (!delta.allFinite()) break;
      zn += delta;
      if (delta.norm() <= 1e-11 * zn.norm()) {
        converged = true;
        break;
      }
    }
    if (converged && !near_infinity(zn) && !at_infinity(zn)) return finish(out, zn, 1.0, PathStatus::Finite);
    if (near_infinity(z) || at_infinity(z)) return finish(out, z, t, PathStatus::AtInfinity);
    return finish(out, zn.allFinite() ? zn : z, t, PathStatus::Singular);
  }

 private:
  PathResult& finish(PathResult& out, const Eigen::VectorXcd& z, double t, PathStatus status) {
    out.z = z / z.norm();
    out.t_reached = t;
    out.status = status;
    return out;
  }

  bool at_infinity(const Eigen::VectorXcd& z) const { return std::abs(z(0)) * opt_.divergence < z.norm(); }
  bool near_infinity(const Eigen::VectorXcd& z) const { return std::abs(z(0)) < 1e-4 * z.norm(); }

  void assemble(const Eigen::VectorXcd& z, double t) {
    sys_.evaluate(z, f_, jf_);
    const Complex a = gamma_ * (1.0 - t);
    jh_.setZero();
    for (int i = 0; i < k_; ++i) {
      const int d = deg_[i];
      const Complex zi = std::pow(z(i + 1), d - 1), z0 = std::pow(z(0), d - 1);
      const Complex s = zi * z(i + 1) - z0 * z(0);
      h_(i) = a * s + t * f_(i);
      ht_(i) = f_(i) - gamma_ * s;
      jh_.row(i) = t * jf_.row(i);
      jh_(i, i + 1) += a * static_cast<double>(d) * zi;
      jh_(i, 0) -= a * static_cast<double>(d) * z0;
    }
    h_(k_) = patch_.dot(z) - 1.0;  // dot conjugates the first argument
    ht_(k_) = 0.0;
    jh_.row(k_) = patch_.adjoint();
  }

  // Newton that must contract at every step; a slow corrector is how paths
  // jump to a neighbouring root.
  bool correct(Eigen::VectorXcd& z, double t) {
    double last = 0.0;
    for (int it = 0; it < opt_.newton_iterations; ++it) {
      assemble(z, t);
      lu_.compute(jh_);
      const Eigen::VectorXcd delta = lu_.solve(-h_);
      if (!delta.allFinite()) return false;
      const double size = delta.norm();
      if (it == 0 && size > opt_.max_first_correction * z.norm()) return false;
      if (it > 0 && size > 0.25 * last) return false;
      z += delta;
      if (size <= opt_.newton_tol * std::max(1.0, z.norm())) return true;
      last = size;
    }
    return false;
  }

  const HomogeneousSystem& sys_;
  Eigen::VectorXcd patch_;
  Complex gamma_;
  const TrackerOptions& opt_;
  int k_;
  std::vector<int> deg_;
  Eigen::VectorXcd f_, h_, ht_;
  Eigen::MatrixXcd jf_, jh_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
};

}  // namespace

HomotopyRun track_total_degree(const HomogeneousSystem& system, uint64_t seed, const TrackerOptions& options) {
  const int k = system.variables();
  const auto deg = system.degrees();
  if (static_cast<int>(deg.size()) != k) throw Error(ErrorKind::DimensionMismatch, "system is not square");
  Rng rng(seed);
  HomotopyRun run;
  run.gamma = rng.unit_complex();
  Eigen::VectorXcd patch(k + 1);
  for (int i = 0; i <= k; ++i) patch(i) = rng.complex_normal();

  long total = 1;
  for (int d : deg) {
    if (d < 1) throw Error(ErrorKind::DegreeMismatch, "every equation needs positive degree");
    total *= d;
  }
  run.paths.resize(total);

  auto start_point = [&](long index) {
    Eigen::VectorXcd z(k + 1);
    z(0) = 1.0;
    for (int i = 0; i < k; ++i) {
      const long j = index % deg[i];
      index /= deg[i];
      const double phi = 2.0 * M_PI * static_cast<double>(j) / deg[i];
      z(i + 1) = Complex(std::cos(phi), std::sin(phi));
    }
    return Eigen::VectorXcd(z / patch.dot(z));
  };

  std::atomic<long> next{0};
  auto worker = [&]() {
    Tracker tracker(system, patch, run.gamma, options);
    for (long i = next++; i < total; i = next++) run.paths[i] = tracker.run(start_point(i));
  };
  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(total)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return run;
}

double newton_polish(const HomogeneousSystem& system, Eigen::VectorXcd& theta, int iterations) {
  const int k = system.variables();
  Eigen::VectorXcd z(k + 1), f(k);
  Eigen::MatrixXcd jac(k, k + 1);
  double last = INFINITY;
  for (int it = 0; it < iterations; ++it) {
    z(0) = 1.0;
    z.tail(k) = theta;
    system.evaluate(z, f, jac);
    const Eigen::VectorXcd delta = jac.rightCols(k).fullPivLu().solve(-f);
    if (!delta.allFinite()) break;
    theta += delta;
    last = delta.norm();
    if (last <= 1e-15 * std::max(1.0, theta.norm())) break;
  }
  return last;
}

}  // namespace minsos
