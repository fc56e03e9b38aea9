#include "minsos/rank_enumerator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "minsos/random.hpp"

namespace minsos {

namespace {

using SmallMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, 0, 8, 8>;

// Determinant by Gaussian elimination with partial pivoting.
Complex det_small(SmallMat m) {
  const int n = static_cast<int>(m.rows());
  Complex det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
    if (m(piv, c) == Complex(0.0)) return 0.0;
    if (piv != c) {
      m.row(piv).swap(m.row(c));
      det = -det;
    }
    det *= m(c, c);
    for (int r = c + 1; r < n; ++r) {
      const Complex f = m(r, c) / m(c, c);
      m.row(r).tail(n - c - 1) -= f * m.row(c).tail(n - c - 1);
    }
  }
  return det;
}

void combinations(int n, int m, std::vector<std::vector<int>>& out) {
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    int i = m - 1;
    while (i >= 0 && idx[i] == n - m + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

MinorSystem::MinorSystem(const GramSpace& space, int rank, uint64_t seed, bool scale_variables)
    : n_(space.size()), k_(space.dim()), rank_(rank), weights_(Eigen::VectorXcd::Ones(space.dim())) {
  if (rank < 0 || rank >= n_)
    throw Error(ErrorKind::RankTooLarge, "target rank " + std::to_string(rank) + " must be below N = " + std::to_string(n_));
  if (rank + 1 > 8) throw Error(ErrorKind::RankTooLarge, "minors larger than 8 x 8 are not supported");
  mats_.push_back(space.g0.to_complex());
  for (const auto& kmat : space.kernel) mats_.push_back(kmat.to_complex());
  // Rank and theta are invariant under G -> D G D; balancing G0 keeps badly
  // scaled forms from producing near-singular endpoints.
  Eigen::VectorXd scale(n_);
  for (int i = 0; i < n_; ++i) {
    const double diag = std::abs(mats_[0](i, i)), row = mats_[0].row(i).cwiseAbs().maxCoeff();
    scale(i) = diag > 0 ? 1 / std::sqrt(diag) : row > 0 ? 1 / std::sqrt(row) : 1.0;
  }
  for (auto& mat : mats_) mat = scale.asDiagonal() * mat * scale.asDiagonal();
  if (scale_variables)
    for (int i = 0; i < k_; ++i) {
      const double top = mats_[i + 1].cwiseAbs().maxCoeff();
      if (top > 0) {
        weights_(i) = 1 / top;
        mats_[i + 1] *= weights_(i);
      }
    }
  Rng rng(seed);
  const int m = rank + 1;
  for (int a = 0; a < k_; ++a) {
    Eigen::MatrixXcd l(n_, m), r(n_, m);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < m; ++j) l(i, j) = rng.complex_normal();
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < m; ++j) r(i, j) = rng.complex_normal();
    std::vector<Eigen::MatrixXcd> red;
    for (const auto& mat : mats_) red.push_back(l.transpose() * mat * r);
    for (const auto& rm : red)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) flat_.push_back(rm(i, j));
  }
  std::vector<std::vector<int>> subsets;
  combinations(n_, m, subsets);
  for (size_t i = 0; i < subsets.size(); ++i)
    for (size_t j = i; j < subsets.size(); ++j) minor_pairs_.emplace_back(subsets[i], subsets[j]);
}

namespace {

// Fixed-size kernel for F_a = det(M_a), M_a = sum_i z_i A_{a,i}, and its
// gradient tr(adj(M_a) A_{a,i}).
template <int M>
Complex det_fixed(std::array<Complex, M * M> m) {
  Complex det = 1.0;
  for (int c = 0; c < M; ++c) {
    int piv = c;
    double best = std::norm(m[c * M + c]);
    for (int r = c + 1; r < M; ++r) {
      const double v = std::norm(m[r * M + c]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != c) {
      for (int j = c; j < M; ++j) std::swap(m[piv * M + j], m[c * M + j]);
      det = -det;
    }
    const Complex d = m[c * M + c];
    det *= d;
    const Complex inv = 1.0 / d;
    for (int r = c + 1; r < M; ++r) {
      const Complex f = m[r * M + c] * inv;
      for (int j = c + 1; j < M; ++j) m[r * M + j] -= f * m[c * M + j];
    }
  }
  return det;
}

// Adjugate (transposed cofactors) and determinant; cofactor based, so it
// stays accurate on singular matrices, which is where Newton needs it.
template <int M>
Complex adjugate_fixed(const std::array<Complex, M * M>& m, std::array<Complex, M * M>& adj) {
  if constexpr (M == 1) {
    adj[0] = 1.0;
    return m[0];
  } else if constexpr (M == 2) {
    adj = {m[3], -m[1], -m[2], m[0]};
    return m[0] * m[3] - m[1] * m[2];
  } else if constexpr (M == 3) {
    adj[0] = m[4] * m[8] - m[5] * m[7];
    adj[1] = m[2] * m[7] - m[1] * m[8];
    adj[2] = m[1] * m[5] - m[2] * m[4];
    adj[3] = m[5] * m[6] - m[3] * m[8];
    adj[4] = m[0] * m[8] - m[2] * m[6];
    adj[5] = m[2] * m[3] - m[0] * m[5];
    adj[6] = m[3] * m[7] - m[4] * m[6];
    adj[7] = m[1] * m[6] - m[0] * m[7];
    adj[8] = m[0] * m[4] - m[1] * m[3];
    return m[0] * adj[0] + m[1] * adj[3] + m[2] * adj[6];
  } else if constexpr (M == 4) {
    // Laplace expansion along the 2x2 minors of rows (0,1) and (2,3).
    const Complex s0 = m[0] * m[5] - m[4] * m[1], s1 = m[0] * m[6] - m[4] * m[2];
    const Complex s2 = m[0] * m[7] - m[4] * m[3], s3 = m[1] * m[6] - m[5] * m[2];
    const Complex s4 = m[1] * m[7] - m[5] * m[3], s5 = m[2] * m[7] - m[6] * m[3];
    const Complex c5 = m[10] * m[15] - m[14] * m[11], c4 = m[9] * m[15] - m[13] * m[11];
    const Complex c3 = m[9] * m[14] - m[13] * m[10], c2 = m[8] * m[15] - m[12] * m[11];
    const Complex c1 = m[8] * m[14] - m[12] * m[10], c0 = m[8] * m[13] - m[12] * m[9];
    adj[0] = m[5] * c5 - m[6] * c4 + m[7] * c3;
    adj[1] = -m[1] * c5 + m[2] * c4 - m[3] * c3;
    adj[2] = m[13] * s5 - m[14] * s4 + m[15] * s3;
    adj[3] = -m[9] * s5 + m[10] * s4 - m[11] * s3;
    adj[4] = -m[4] * c5 + m[6] * c2 - m[7] * c1;
    adj[5] = m[0] * c5 - m[2] * c2 + m[3] * c1;
    adj[6] = -m[12] * s5 + m[14] * s2 - m[15] * s1;
    adj[7] = m[8] * s5 - m[10] * s2 + m[11] * s1;
    adj[8] = m[4] * c4 - m[5] * c2 + m[7] * c0;
    adj[9] = -m[0] * c4 + m[1] * c2 - m[3] * c0;
    adj[10] = m[12] * s4 - m[13] * s2 + m[15] * s0;
    adj[11] = -m[8] * s4 + m[9] * s2 - m[11] * s0;
    adj[12] = -m[4] * c3 + m[5] * c1 - m[6] * c0;
    adj[13] = m[0] * c3 - m[1] * c1 + m[2] * c0;
    adj[14] = -m[12] * s3 + m[13] * s1 - m[14] * s0;
    adj[15] = m[8] * s3 - m[9] * s1 + m[10] * s0;
    return s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0;
  } else {
    std::array<Complex, (M - 1) * (M - 1)> minor;
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < M; ++j) {
        int idx = 0;
        for (int r = 0; r < M; ++r) {
          if (r == i) continue;
          for (int c = 0; c < M; ++c)
            if (c != j) minor[idx++] = m[r * M + c];
        }
        adj[j * M + i] = ((i + j) % 2 ? -1.0 : 1.0) * det_fixed<M - 1>(minor);
      }
    Complex det = 0.0;
    for (int j = 0; j < M; ++j) det += m[j] * adj[j * M];
    return det;
  }
}

template <int M>
void evaluate_fixed(const std::vector<Complex>& red, int k, const Eigen::VectorXcd& z, Eigen::VectorXcd& f,
                    Eigen::MatrixXcd& jac) {
  constexpr int S = M * M;
  for (int a = 0; a < k; ++a) {
    const Complex* base = red.data() + static_cast<size_t>(a) * (k + 1) * S;
    std::array<Complex, S> mat{};
    for (int i = 0; i <= k; ++i) {
      const Complex zi = z(i);
      const Complex* ai = base + i * S;
      for (int e = 0; e < S; ++e) mat[e] += zi * ai[e];
    }
    std::array<Complex, S> adj;
    f(a) = adjugate_fixed<M>(mat, adj);
    for (int i = 0; i <= k; ++i) {
      const Complex* ai = base + i * S;
      Complex tr = 0.0;
      for (int p = 0; p < M; ++p)
        for (int q = 0; q < M; ++q) tr += adj[p * M + q] * ai[q * M + p];
      jac(a, i) = tr;
    }
  }
}

}  // namespace

void MinorSystem::evaluate(const Eigen::VectorXcd& z, Eigen::VectorXcd& f, Eigen::MatrixXcd& jac) const {
  switch (rank_ + 1) {
    case 1: return evaluate_fixed<1>(flat_, k_, z, f, jac);
    case 2: return evaluate_fixed<2>(flat_, k_, z, f, jac);
    case 3: return evaluate_fixed<3>(flat_, k_, z, f, jac);
    case 4: return evaluate_fixed<4>(flat_, k_, z, f, jac);
    case 5: return evaluate_fixed<5>(flat_, k_, z, f, jac);
    case 6: return evaluate_fixed<6>(flat_, k_, z, f, jac);
    case 7: return evaluate_fixed<7>(flat_, k_, z, f, jac);
    case 8: return evaluate_fixed<8>(flat_, k_, z, f, jac);
  }
}

Eigen::MatrixXcd MinorSystem::gram(const Eigen::VectorXcd& theta) const {
  Eigen::MatrixXcd g = mats_[0];
  for (int i = 0; i < k_; ++i) g += theta(i) * mats_[i + 1];
  return g;
}

std::vector<Complex> MinorSystem::minors(const Eigen::VectorXcd& theta) const {
  const Eigen::MatrixXcd g = gram(theta);
  const int m = rank_ + 1;
  std::vector<Complex> out;
  out.reserve(minor_pairs_.size());
  SmallMat sub(m, m);
  for (const auto& [rows, cols] : minor_pairs_) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) sub(i, j) = g(rows[i], cols[j]);
    out.push_back(det_small(sub));
  }
  return out;
}

double MinorSystem::full_polish(Eigen::VectorXcd& theta, int iterations) const {
  const int m = rank_ + 1;
  const auto pairs = static_cast<Eigen::Index>(minor_pairs_.size());
  Eigen::VectorXcd r(pairs);
  Eigen::MatrixXcd jac(pairs, k_);
  SmallMat sub(m, m), adj(m, m), minor(std::max(m - 1, 1), std::max(m - 1, 1));
  double best = minor_residual(theta);
  for (int it = 0; it < iterations; ++it) {
    const Eigen::MatrixXcd g = gram(theta);
    for (Eigen::Index p = 0; p < pairs; ++p) {
      const auto& [rows, cols] = minor_pairs_[p];
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) sub(i, j) = g(rows[i], cols[j]);
      r(p) = det_small(sub);
      if (m == 1) adj(0, 0) = 1.0;
      else
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) {
            for (int a = 0, ra = 0; a < m; ++a) {
              if (a == i) continue;
              for (int b = 0, cb = 0; b < m; ++b) {
                if (b == j) continue;
                minor(ra, cb++) = sub(a, b);
              }
              ++ra;
            }
            adj(j, i) = ((i + j) % 2 ? -1.0 : 1.0) * det_small(minor);
          }
      for (int l = 0; l < k_; ++l) {
        Complex d = 0.0;
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) d += adj(j, i) * mats_[l + 1](rows[i], cols[j]);
        jac(p, l) = d;
      }
    }
    const Eigen::VectorXcd delta = jac.completeOrthogonalDecomposition().solve(-r);
    if (!delta.allFinite()) break;
    Eigen::VectorXcd next = theta + delta;
    const double res = minor_residual(next);
    if (!(res < best)) break;
    theta = next;
    best = res;
    if (delta.norm() <= 1e-15 * std::max(1.0, theta.norm())) break;
  }
  return best;
}

double MinorSystem::minor_residual(const Eigen::VectorXcd& theta) const {
  const double scale = gram(theta).cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (const auto& v : minors(theta)) worst = std::max(worst, std::abs(v));
  return worst / std::pow(scale, rank_ + 1);
}

MinorSystem minor_system(const GramSpace& space, int rank, uint64_t seed) { return MinorSystem(space, rank, seed); }

namespace {

bool canonical_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

}  // namespace

SolutionSet solve(const MinorSystem& system, const EnumerationOptions& options) {
  SolutionSet out;
  const int k = system.variables();
  if (k == 0) {
    // The fiber is a single matrix.
    const Eigen::VectorXcd empty(0);
    out.stats.tracked = 0;
    if (system.minor_residual(empty) <= options.residual_tol) {
      SolutionPoint p;
      p.theta = empty;
      p.real = true;
      p.inertia = inertia(system.gram(empty).real(), 1e-8);
      out.points.push_back(p);
    }
    return out;
  }

  const auto run = track_total_degree(system, options.seed, options.tracker);
  out.gamma = run.gamma;
  out.stats.tracked = static_cast<long>(run.paths.size());
  // Candidates carry whether the square system alone already converged.
  std::vector<std::pair<Eigen::VectorXcd, bool>> candidates;
  for (const auto& path : run.paths) {
    switch (path.status) {
      case PathStatus::Finite: {
        Eigen::VectorXcd theta = path.z.tail(k) / path.z(0);
        if (theta.norm() > options.tracker.divergence) {
          ++out.stats.diverged;
          out.at_infinity.push_back(path.z);
          break;
        }
        ++out.stats.finite;
        newton_polish(system, theta, 3);
        const double res = system.minor_residual(theta);
        if (res <= options.residual_tol) {
          system.full_polish(theta, 30);
          candidates.emplace_back(theta, true);
        } else if (res <= 1e-4 && system.full_polish(theta, 30) <= options.residual_tol) {
          ++out.stats.recovered;
          candidates.emplace_back(theta, false);
        } else {
          ++out.stats.rejected;
        }
        break;
      }
      case PathStatus::AtInfinity:
        ++out.stats.diverged;
        out.at_infinity.push_back(path.z);
        break;
      case PathStatus::Singular: {
        // Near-singular for the square system need not mean singular on the
        // rank locus; keep the endpoint if the full minor list polishes to zero.
        if (std::abs(path.z(0)) > 1e-8) {
          Eigen::VectorXcd theta = path.z.tail(k) / path.z(0);
          if (system.full_polish(theta, 30) <= options.residual_tol) {
            ++out.stats.recovered;
            candidates.emplace_back(theta, false);
            break;
          }
        }
        ++out.stats.singular;
        out.singular.push_back(path.z);
        break;
      }
      case PathStatus::Failed:
        ++out.stats.failed;
        break;
    }
  }
  if (out.stats.failed > options.failure_budget * static_cast<double>(out.stats.tracked))
    throw Error(ErrorKind::PathFailureBudgetExceeded,
                std::to_string(out.stats.failed) + " of " + std::to_string(out.stats.tracked) + " paths failed");

  std::sort(candidates.begin(), candidates.end(),
            [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
  std::vector<std::pair<Eigen::VectorXcd, bool>> kept;
  for (const auto& c : candidates) {
    bool dup = false;
    for (auto& q : kept)
      if ((c.first - q.first).norm() <= options.cluster_radius * std::max(1.0, q.first.norm())) {
        dup = true;
        if (c.second && q.second) ++out.stats.collisions;
        q.second = q.second || c.second;
        break;
      }
    if (dup) ++out.stats.duplicates;
    else kept.push_back(c);
  }

  for (auto& [theta, direct] : kept) {
    if (!direct) ++out.stats.irregular;
    SolutionPoint p;
    const double scale = std::max(1.0, theta.norm());
    p.real = theta.imag().cwiseAbs().maxCoeff() <= options.real_tol * scale;
    if (p.real) {
      theta = theta.real().cast<Complex>();
      newton_polish(system, theta, 3);
      system.full_polish(theta, 3);
      theta = theta.real().cast<Complex>();
      p.inertia = inertia(system.gram(theta).real(), 1e-8);
    }
    p.residual = system.minor_residual(theta);
    p.theta = system.theta_of(theta);
    out.points.push_back(std::move(p));
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const SolutionPoint& a, const SolutionPoint& b) { return canonical_less(a.theta, b.theta); });
  return out;
}

namespace {

SolutionSet solve_with_retries(const GramSpace& space, int rank, const EnumerationOptions& options, Rng& rng) {
  for (int attempt = 0;; ++attempt) {
    const uint64_t system_seed = rng.next(), track_seed = rng.next();
    const MinorSystem system(space, rank, system_seed);
    EnumerationOptions opt = options;
    opt.seed = track_seed;
    try {
      auto sols = solve(system, opt);
      sols.stats.attempts = attempt + 1;
      return sols;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PathFailureBudgetExceeded || attempt >= options.retries) throw;
    }
  }
}

}  // namespace

SolutionSet enumerate_rank_points(const GramSpace& space, int rank, const EnumerationOptions& options) {
  Rng rng(options.seed);
  auto sols = solve_with_retries(space, rank, options, rng);
  // Singular endpoints, points reached only through polishing, or two regular
  // endpoints at one point mean some path may have jumped.
  // Every point is checked against the full minor list, so fresh runs can
  // only add genuine solutions.
  const auto& st = sols.stats;
  for (int pass = 0; pass < options.rescue_passes && st.singular + st.irregular + st.collisions > 0; ++pass) {
    const auto more = solve_with_retries(space, rank, options, rng);
    ++sols.stats.rescue_runs;
    int added = 0;
    for (const auto& p : more.points) {
      bool known = false;
      for (const auto& q : sols.points)
        known = known || (p.theta - q.theta).norm() <= options.cluster_radius * std::max(1.0, q.theta.norm());
      if (!known) {
        sols.points.push_back(p);
        ++added;
      }
    }
    sols.stats.rescued += added;
    if (added == 0) break;
  }
  std::sort(sols.points.begin(), sols.points.end(),
            [](const SolutionPoint& a, const SolutionPoint& b) { return canonical_less(a.theta, b.theta); });
  return sols;
}

CountReport classify(const GramSpace& space, const SolutionSet& sols) {
  CountReport r;
  r.complex = static_cast<int>(sols.points.size());
  for (size_t i = 0; i < sols.points.size(); ++i) {
    const auto& p = sols.points[i];
    if (!p.real) continue;
    ++r.real;
    if (p.inertia.minus == 0) ++r.psd;
    else ++r.indefinite;
    std::vector<double> theta(p.theta.size());
    for (int j = 0; j < p.theta.size(); ++j) theta[j] = p.theta(j).real();
    r.real_representations.push_back(extract_representation(space, gram_at(space, theta), 1e-8, 1e-6));
    r.real_point_index.push_back(static_cast<int>(i));
  }
  return r;
}

namespace {

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

ExpectedCounts binary_counts(int d) {
  // Rank-two Gram matrices of a binary form of degree 2d with simple roots.
  ExpectedCounts c;
  c.complex = static_cast<int>(binomial(2 * d, d) / 2);
  c.psd = 1 << (d - 1);
  c.indefinite = d % 2 == 0 ? static_cast<int>(binomial(d, d / 2) / 2) : 0;
  c.real = c.psd + c.indefinite;
  return c;
}

}  // namespace

std::optional<ExpectedCounts> expected_counts(const SurfaceSpec& spec) {
  switch (spec.kind) {
    case SurfaceKind::Scroll: {
      const int g = spec.genus();
      ExpectedCounts c;
      c.complex = 1 << (2 * g);
      c.psd = 1 << g;
      c.indefinite = g % 2 ? 1 << g : 0;
      c.real = c.psd + c.indefinite;
      return c;
    }
    case SurfaceKind::Veronese:
      return ExpectedCounts{63, 15, 8, 7};
    case SurfaceKind::ConeOverRNC:
    case SurfaceKind::RationalNormalCurve:
      return binary_counts(spec.d);
    case SurfaceKind::Prism:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace minsos
