#include "minsos/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "minsos/binary_sos.hpp"

namespace minsos {

SymMatrixPoly::SymMatrixPoly(int n, std::vector<BinaryFormQ> entries) : n_(n), entries_(std::move(entries)) {
  if (n < 1 || static_cast<int>(entries_.size()) != n * n)
    throw Error(ErrorKind::DimensionMismatch, "matrix needs n * n entries");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto& u = (*this)(i, j);
      const auto& v = (*this)(j, i);
      if (!(u == v) && !(u.is_zero() && v.is_zero()))
        throw Error(ErrorKind::NonSymmetric, "entries (" + std::to_string(i) + "," + std::to_string(j) + ") differ");
    }
}

Eigen::MatrixXd SymMatrixPoly::eval(double s, double t) const {
  Eigen::MatrixXd m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j).cast<double>().eval_at<double>(s, t);
  return m;
}

double SymMatrixPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, e.max_abs_coeff());
  return m;
}

std::vector<int> degree_pattern(const SymMatrixPoly& a) {
  const int n = a.n();
  std::vector<int> d(n);
  for (int i = 0; i < n; ++i) {
    const auto& e = a(i, i);
    if (e.is_zero()) throw Error(ErrorKind::InputError, "diagonal entry " + std::to_string(i) + " is zero");
    if (e.degree() % 2 != 0)
      throw Error(ErrorKind::OddDiagonalDegree, "diagonal entry " + std::to_string(i) + " has odd degree");
    d[i] = e.degree() / 2;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto& e = a(i, j);
      if (!e.is_zero() && e.degree() != d[i] + d[j])
        throw Error(ErrorKind::OffDiagonalDegreeMismatch, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                              ") has degree " + std::to_string(e.degree()) +
                                                              ", expected " + std::to_string(d[i] + d[j]));
    }
  return d;
}

PrismEmbedding embed(const SymMatrixPoly& a) {
  const auto d = degree_pattern(a);
  const int n = a.n();
  const int top = *std::max_element(d.begin(), d.end());
  PrismEmbedding out{SurfaceSpec::prism(d), BiformQ(n, {2 * top, 2})};
  Exponent e(n + 2, 0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      const auto& entry = a(u, v);
      if (entry.is_zero()) continue;
      std::fill(e.begin(), e.end(), 0);
      e[2 + u] += 1;
      e[2 + v] += 1;
      for (int m = 0; m <= entry.degree(); ++m) {
        e[0] = m;
        e[1] = 2 * top - m;
        out.form.add_term(e, entry[m]);
      }
    }
  return out;
}

namespace {

Eigen::MatrixXd clip_psd(const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& es) {
  const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

// Gauss-Newton on X = Y Y^T with the rank read off p. Alternating projections
// crawl when the psd part of the fiber is a proper face of the cone; on the
// face itself the factored problem is regular and converges fast.
bool low_rank_refine(const GramSpace& space, const Eigen::MatrixXd& p, double tol, Eigen::MatrixXd& out) {
  const int n = space.size();
  const auto q = static_cast<Eigen::Index>(space.quadratic.size());
  Eigen::VectorXd target(q);
  for (Eigen::Index i = 0; i < q; ++i) target(i) = space.target[i].get_d();
  const double scale = std::max(1.0, target.cwiseAbs().maxCoeff());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p);
  const double top = std::max(es.eigenvalues().maxCoeff(), 1e-300);
  int r0 = 0;
  for (int i = 0; i < n; ++i)
    if (es.eigenvalues()(i) > 1e-6 * top) ++r0;
  for (int r = std::max(r0, 1); r <= n; ++r) {
    // Columns past the numerical rank start small but nonzero; a zero column
    // has zero gradient and would never move.
    Eigen::MatrixXd y(n, r);
    for (int a = 0; a < r; ++a)
      y.col(a) = es.eigenvectors().col(n - 1 - a) *
                 std::sqrt(std::max(es.eigenvalues()(n - 1 - a), 1e-4 * top));
    auto residual = [&](const Eigen::MatrixXd& yy, Eigen::VectorXd& c, Eigen::MatrixXd* jac) {
      c = -target;
      if (jac) jac->setZero(q, n * r);
      const Eigen::MatrixXd x = yy * yy.transpose();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const int idx = space.product_index[i][j];
          c(idx) += x(i, j);
          if (jac)
            for (int a = 0; a < r; ++a) (*jac)(idx, a * n + i) += 2 * yy(j, a);
        }
    };
    Eigen::VectorXd c, trial_c;
    Eigen::MatrixXd jac;
    residual(y, c, &jac);
    for (int it = 0; it < 100; ++it) {
      if (c.cwiseAbs().maxCoeff() <= 1e-3 * tol * scale) {
        out = y * y.transpose();
        return true;
      }
      const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-c);
      if (!step.allFinite()) break;
      // Backtrack on |c|_2.
      bool moved = false;
      for (double h = 1.0; h > 1e-4 && !moved; h *= 0.5) {
        Eigen::MatrixXd trial = y;
        for (int a = 0; a < r; ++a) trial.col(a) += h * step.segment(a * n, n);
        residual(trial, trial_c, nullptr);
        if (trial_c.norm() < c.norm()) {
          y = trial;
          moved = true;
        }
      }
      if (!moved) break;
      residual(y, c, &jac);
    }
  }
  return false;
}

FeasibilityResult run_projections(const GramSpace& space, double tol, long budget, bool& converged) {
  FeasibilityResult r;
  Eigen::MatrixXd x = space.g0.to_double();
  const double scale = std::max(1.0, space.form.max_abs_coeff());
  converged = false;
  long next_refine = 128;
  for (r.iterations = 0;; ++r.iterations) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x);
    const double smax = es.eigenvalues().cwiseAbs().maxCoeff();
    if (es.eigenvalues().minCoeff() >= -tol * smax && fiber_residual(space, x) <= tol * scale) {
      converged = true;
      r.gram = x;
      return r;
    }
    const Eigen::MatrixXd p = clip_psd(es);
    if (r.iterations >= budget) {
      r.gram = p;
      return r;
    }
    if (r.iterations == next_refine) {
      next_refine *= 2;
      Eigen::MatrixXd refined;
      if (low_rank_refine(space, p, tol, refined) && fiber_residual(space, refined) <= tol * scale) {
        converged = true;
        r.gram = refined;
        return r;
      }
    }
    x = project_to_fiber(space, p);
    r.distances.push_back((x - p).norm());
  }
}

}  // namespace

FeasibilityResult psd_feasible(const GramSpace& space, double tol, long budget) {
  bool converged = false;
  auto r = run_projections(space, tol, budget, converged);
  if (!converged) {
    std::ostringstream os;
    os << "no psd point after " << r.iterations << " iterations; final gap "
       << (r.distances.empty() ? 0.0 : r.distances.back());
    throw Error(ErrorKind::IterationBudgetExceeded, os.str());
  }
  return r;
}

RankReduction rank_reduce(const GramSpace& space, const Eigen::MatrixXd& g, int target, double rank_tol) {
  RankReduction out;
  out.gram = 0.5 * (g + g.transpose());
  const int n = space.size();
  const int nq = space.quadratic.size();
  for (int guard = 0; guard <= n; ++guard) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.gram);
    const auto& ev = es.eigenvalues();
    const double lmax = ev.maxCoeff();
    std::vector<int> range;
    for (int i = 0; i < n; ++i)
      if (ev(i) > rank_tol * lmax) range.push_back(i);
    const int r = static_cast<int>(range.size());
    out.rank = r;
    out.rank_history.push_back(r);
    if (r <= target) {
      out.reached_target = true;
      return out;
    }
    Eigen::MatrixXd u(n, r);
    Eigen::VectorXd lam(r);
    for (int c = 0; c < r; ++c) {
      u.col(c) = es.eigenvectors().col(range[c]);
      lam(c) = ev(range[c]);
    }
    // Constraints on symmetric W so that U W U^T lies in span{K_i}.
    const int p = r * (r + 1) / 2;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(nq, p);
    int col = 0;
    for (int a = 0; a < r; ++a)
      for (int b = a; b < r; ++b, ++col)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            double v = u(i, a) * u(j, b);
            if (a != b) v += u(i, b) * u(j, a);
            c(space.product_index[i][j], col) += v;
          }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    int nullity = p - static_cast<int>(sv.size());
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) <= 1e-10 * std::max(smax, 1.0)) ++nullity;
    if (nullity == 0) return out;  // extreme point above the target rank
    const Eigen::VectorXd w = svd.matrixV().col(p - 1);
    Eigen::MatrixXd wm(r, r);
    col = 0;
    for (int a = 0; a < r; ++a)
      for (int b = a; b < r; ++b, ++col) wm(a, b) = wm(b, a) = w(col);
    const Eigen::VectorXd isq = lam.cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd m = isq.asDiagonal() * wm * isq.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ms(m, Eigen::EigenvaluesOnly);
    const double mu_min = ms.eigenvalues().minCoeff(), mu_max = ms.eigenvalues().maxCoeff();
    const double alpha = mu_min < 0 ? -1.0 / mu_min : -1.0 / mu_max;
    out.gram += alpha * (u * wm * u.transpose());
    out.gram = 0.5 * (out.gram + out.gram.transpose());
  }
  return out;
}

namespace {

// F(B) = coefficients of sum_c (B_c . m)^2 over the quadratic monomials.
Eigen::VectorXd forms_image(const GramSpace& space, const Eigen::MatrixXd& b) {
  const Eigen::MatrixXd g = b * b.transpose();
  const int n = space.size();
  Eigen::VectorXd f = Eigen::VectorXd::Zero(space.quadratic.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f(space.product_index[i][j]) += g(i, j);
  return f;
}

Eigen::MatrixXd forms_jacobian(const GramSpace& space, const Eigen::MatrixXd& b) {
  const int n = space.size(), cols = static_cast<int>(b.cols());
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(space.quadratic.size(), n * cols);
  for (int c = 0; c < cols; ++c)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) jac(space.product_index[k][j], c * n + k) += 2.0 * b(j, c);
  return jac;
}

// Minimum-norm Gauss-Newton for F(B) = target.
bool gauss_newton(const GramSpace& space, Eigen::MatrixXd& b, const Eigen::VectorXd& target, double tol, int iterations) {
  const int n = static_cast<int>(b.rows()), cols = static_cast<int>(b.cols());
  double res = (target - forms_image(space, b)).cwiseAbs().maxCoeff();
  for (int it = 0; it < iterations && res > tol; ++it) {
    const Eigen::VectorXd rhs = target - forms_image(space, b);
    const Eigen::VectorXd step = forms_jacobian(space, b).completeOrthogonalDecomposition().solve(rhs);
    Eigen::MatrixXd next = b + Eigen::Map<const Eigen::MatrixXd>(step.data(), n, cols);
    const double nres = (target - forms_image(space, next)).cwiseAbs().maxCoeff();
    if (!std::isfinite(nres) || nres > 2.0 * res) return false;
    b = next;
    res = nres;
  }
  return res <= tol;
}

// Tracks B along f_tau = (1 - tau) F(B0) + tau f.
bool continue_to_target(const GramSpace& space, Eigen::MatrixXd& b, const Eigen::VectorXd& target, double tol) {
  const Eigen::VectorXd start = forms_image(space, b);
  double tau = 0.0, h = 0.05;
  while (tau < 1.0) {
    const double next = std::min(1.0, tau + h);
    Eigen::MatrixXd trial = b;
    if (gauss_newton(space, trial, (1.0 - next) * start + next * target, 1e3 * tol, 8)) {
      b = trial;
      tau = next;
      h = std::min(2.0 * h, 0.25);
    } else {
      h *= 0.5;
      if (h < 1e-7) return false;
    }
  }
  return gauss_newton(space, b, target, tol, 20);
}

std::vector<std::vector<BinaryFormD>> to_rows(const Eigen::MatrixXd& b, const MonomialBasis& basis,
                                              const std::vector<int>& degrees) {
  const int n = static_cast<int>(degrees.size());
  std::vector<std::vector<BinaryFormD>> rows(n);
  for (int u = 0; u < n; ++u)
    for (int c = 0; c < b.cols(); ++c) rows[u].emplace_back(degrees[u]);
  for (int i = 0; i < basis.size(); ++i) {
    const auto& e = basis.monomials[i];
    int u = 0;
    while (e[2 + u] == 0) ++u;
    for (int c = 0; c < b.cols(); ++c) rows[u][c][e[0]] = b(i, c);
  }
  return rows;
}

void check_psd_on_grid(const SymMatrixPoly& a, const FactorOptions& opt) {
  for (int i = 0; i < opt.grid; ++i)
    for (int j = 0; j < opt.grid; ++j) {
      const double s = -1.0 + 2.0 * i / (opt.grid - 1), t = -1.0 + 2.0 * j / (opt.grid - 1);
      const Eigen::MatrixXd m = a.eval(s, t);
      const double scale = m.cwiseAbs().maxCoeff();
      if (scale == 0.0) continue;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
      const double lmin = es.eigenvalues().minCoeff();
      if (lmin < -opt.psd_grid_tol * scale) {
        std::ostringstream os;
        os << "A(" << s << ", " << t << ") has eigenvalue " << lmin;
        throw Error(ErrorKind::NotPSD, os.str());
      }
    }
}

}  // namespace

double factorization_residual(const SymMatrixPoly& a, const std::vector<std::vector<BinaryFormD>>& b) {
  double worst = 0.0;
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) {
      const BinaryFormD aij = a(i, j).cast<double>();
      BinaryFormD prod(b[i][0].degree() + b[j][0].degree());
      for (size_t c = 0; c < b[i].size(); ++c) prod += b[i][c] * b[j][c];
      if (aij.is_zero()) {
        worst = std::max(worst, prod.max_abs_coeff());
        continue;
      }
      if (aij.degree() != prod.degree()) throw Error(ErrorKind::DegreeMismatch, "B B^T has the wrong entry degree");
      worst = std::max(worst, (aij - prod).max_abs_coeff());
    }
  return worst;
}

Factorization factor(const SymMatrixPoly& a, const FactorOptions& options) {
  Factorization out;
  out.degrees = degree_pattern(a);
  check_psd_on_grid(a, options);
  const int n = a.n();
  const double ascale = std::max(a.max_abs_coeff(), 1e-300);

  if (n == 1) {
    const auto sos = enumerate_two_squares(a(0, 0).cast<double>());
    const auto& rep = sos.representations.front();
    out.b = {{rep.p, rep.q}};
    out.extreme_rank = rep.q.is_zero() ? 1 : 2;
  } else {
    const auto emb = embed(a);
    const auto space = build_gram_space(emb.form, emb.prism);
    bool converged = false;
    const auto feas = run_projections(space, options.feasibility_tol, options.feasibility_budget, converged);
    if (!converged) out.warnings.push_back("alternating projections hit the iteration budget");
    const auto red = rank_reduce(space, feas.gram, n + 1);
    out.extreme_rank = red.rank;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(red.gram);
    const int big = space.size();
    Eigen::MatrixXd b(big, n + 1);
    for (int c = 0; c <= n; ++c) {
      const int idx = big - 1 - c;
      b.col(c) = es.eigenvectors().col(idx) * std::sqrt(std::max(es.eigenvalues()(idx), 0.0));
    }
    Eigen::VectorXd target(space.quadratic.size());
    for (int q = 0; q < target.size(); ++q) target(q) = space.target[q].get_d();
    const double tol = 1e-13 * std::max(1.0, target.cwiseAbs().maxCoeff());
    Eigen::MatrixXd polished = b;
    if (!red.reached_target || !gauss_newton(space, polished, target, tol, 20)) {
      out.continuation = true;
      polished = b;
      if (!continue_to_target(space, polished, target, tol))
        throw Error(ErrorKind::StuckAboveTarget, "no factorization with n + 1 columns reached from rank " +
                                                     std::to_string(red.rank));
    }
    out.b = to_rows(polished, space.basis, out.degrees);
  }
  out.residual = factorization_residual(a, out.b);
  if (out.residual > options.residual_tol * ascale)
    throw Error(ErrorKind::VerificationFailed, "A - B B^T has coefficient " + std::to_string(out.residual));
  return out;
}

}  // namespace minsos
