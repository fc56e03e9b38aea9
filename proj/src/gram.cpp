#include "minsos/gram.hpp"

#include <algorithm>
#include <cmath>

namespace minsos {

namespace {

struct PairRef {
  int i, j;
  bool operator<(const PairRef& o) const { return i != o.i ? i < o.i : j < o.j; }
};

int pair_weight(const PairRef& p) { return p.i == p.j ? 1 : 2; }

void set_pair(QMatrix& m, const PairRef& p, const Rational& v) {
  m(p.i, p.j) = v;
  m(p.j, p.i) = v;
}

}  // namespace

GramSpace build_gram_space(const BiformQ& f, const MonomialBasis& basis) {
  GramSpace sp;
  sp.basis = basis;
  sp.quadratic = quadratic_monomials(basis);
  if (f.nx() != basis.nx || !(f.bidegree() == sp.quadratic.degree))
    throw Error(ErrorKind::NotAQuadraticForm, "form has the wrong bidegree for this basis");
  sp.form = f;
  sp.target.assign(sp.quadratic.size(), Rational(0));
  for (const auto& [e, c] : f.terms()) {
    const int q = sp.quadratic.index_of(e);
    if (q < 0) throw Error(ErrorKind::NotAQuadraticForm, "term " + exponent_to_string(e) + " lies outside 2P");
    sp.target[q] = c;
  }

  const int n = basis.size();
  sp.product_index.assign(n, std::vector<int>(n, -1));
  std::vector<std::vector<PairRef>> pairs(sp.quadratic.size());
  Exponent e;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      e = basis.monomials[i];
      for (size_t v = 0; v < e.size(); ++v) e[v] += basis.monomials[j][v];
      const int q = sp.quadratic.index_of(e);
      sp.product_index[i][j] = sp.product_index[j][i] = q;
      pairs[q].push_back({i, j});
    }

  sp.g0 = QMatrix(n, n);
  std::vector<std::pair<PairRef, QMatrix>> kernel;
  for (size_t q = 0; q < pairs.size(); ++q) {
    auto& ps = pairs[q];
    std::sort(ps.begin(), ps.end());
    // G0 puts the coefficient on the most central pair.
    const PairRef* central = &ps.front();
    for (const auto& p : ps) {
      const int gap = p.j - p.i, best = central->j - central->i;
      if (gap < best || (gap == best && p.i < central->i)) central = &p;
    }
    if (sgn(sp.target[q]) != 0) set_pair(sp.g0, *central, sp.target[q] / Rational(pair_weight(*central)));
    const PairRef& anchor = ps.back();
    for (size_t k = 0; k + 1 < ps.size(); ++k) {
      QMatrix m(n, n);
      set_pair(m, ps[k], Rational(1));
      set_pair(m, anchor, -Rational(pair_weight(ps[k])) / pair_weight(anchor));
      kernel.emplace_back(ps[k], std::move(m));
    }
  }
  std::sort(kernel.begin(), kernel.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [p, m] : kernel) sp.kernel.push_back(std::move(m));
  return sp;
}

GramSpace build_gram_space(const BiformQ& f, const SurfaceSpec& spec) {
  return build_gram_space(f, monomial_basis(spec, 1));
}

namespace {

void check_theta(const GramSpace& space, size_t len) {
  if (static_cast<int>(len) != space.dim())
    throw Error(ErrorKind::DimensionMismatch, "theta has " + std::to_string(len) + " entries, space has dimension " +
                                                  std::to_string(space.dim()));
}

}  // namespace

Eigen::MatrixXcd gram_at(const GramSpace& space, const std::vector<Complex>& theta) {
  check_theta(space, theta.size());
  Eigen::MatrixXcd g = space.g0.to_complex();
  for (size_t i = 0; i < theta.size(); ++i) g += theta[i] * space.kernel[i].to_complex();
  return g;
}

Eigen::MatrixXd gram_at(const GramSpace& space, const std::vector<double>& theta) {
  check_theta(space, theta.size());
  Eigen::MatrixXd g = space.g0.to_double();
  for (size_t i = 0; i < theta.size(); ++i) g += theta[i] * space.kernel[i].to_double();
  return g;
}

QMatrix gram_at(const GramSpace& space, const std::vector<Rational>& theta) {
  check_theta(space, theta.size());
  QMatrix g = space.g0;
  for (size_t i = 0; i < theta.size(); ++i) g += theta[i] * space.kernel[i];
  return g;
}

BiformQ quadratic_form(const GramSpace& space, const QMatrix& g) {
  const int n = space.size();
  if (g.rows() != n || g.cols() != n) throw Error(ErrorKind::DimensionMismatch, "Gram matrix size");
  std::vector<Rational> c(space.quadratic.size(), Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c[space.product_index[i][j]] += g(i, j);
  return form_from_coefficients(c, space.quadratic);
}

BiformD quadratic_form(const GramSpace& space, const Eigen::MatrixXd& g) {
  const int n = space.size();
  if (g.rows() != n || g.cols() != n) throw Error(ErrorKind::DimensionMismatch, "Gram matrix size");
  std::vector<double> c(space.quadratic.size(), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c[space.product_index[i][j]] += g(i, j);
  return form_from_coefficients(c, space.quadratic);
}

double fiber_residual(const GramSpace& space, const Eigen::MatrixXd& g) {
  const int n = space.size();
  std::vector<double> c(space.quadratic.size(), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c[space.product_index[i][j]] += g(i, j);
  double r = 0.0;
  for (size_t q = 0; q < c.size(); ++q) r = std::max(r, std::abs(c[q] - space.target[q].get_d()));
  return r;
}

Eigen::MatrixXd project_to_fiber(const GramSpace& space, const Eigen::MatrixXd& g) {
  // Each entry feeds exactly one monomial constraint, so the projection
  // spreads the defect of every constraint evenly over its entries.
  const int n = space.size();
  std::vector<double> sum(space.quadratic.size(), 0.0);
  std::vector<int> count(space.quadratic.size(), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      sum[space.product_index[i][j]] += g(i, j);
      ++count[space.product_index[i][j]];
    }
  Eigen::MatrixXd p = 0.5 * (g + g.transpose());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int q = space.product_index[i][j];
      p(i, j) += (space.target[q].get_d() - sum[q]) / count[q];
    }
  return p;
}

std::vector<double> fiber_coordinates(const GramSpace& space, const Eigen::MatrixXd& g) {
  const int n = space.size(), k = space.dim();
  if (k == 0) return {};
  Eigen::MatrixXd a(n * n, k);
  for (int i = 0; i < k; ++i) {
    const Eigen::MatrixXd ki = space.kernel[i].to_double();
    a.col(i) = Eigen::Map<const Eigen::VectorXd>(ki.data(), n * n);
  }
  const Eigen::MatrixXd d = g - space.g0.to_double();
  const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(d.data(), n * n);
  const Eigen::VectorXd theta = a.colPivHouseholderQr().solve(rhs);
  return std::vector<double>(theta.data(), theta.data() + k);
}

Inertia inertia(const Eigen::MatrixXd& g, double tol) {
  if (g.rows() != g.cols()) throw Error(ErrorKind::NonSymmetric, "matrix is not square");
  const double scale = g.cwiseAbs().maxCoeff();
  if (g.size() > 0 && (g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1.0))
    throw Error(ErrorKind::NonSymmetric, "matrix is not symmetric");
  Inertia r;
  if (g.size() == 0) return r;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double smax = ev.cwiseAbs().maxCoeff();
  for (int i = 0; i < ev.size(); ++i) {
    if (smax > 0 && ev(i) > tol * smax) ++r.plus;
    else if (smax > 0 && ev(i) < -tol * smax) ++r.minus;
    else ++r.zero;
  }
  return r;
}

RepresentationD extract_representation(const GramSpace& space, const Eigen::MatrixXd& g, double rank_tol,
                                       double fiber_tol) {
  const double scale = std::max(1.0, space.form.max_abs_coeff());
  const double res = fiber_residual(space, g);
  if (res > fiber_tol * scale)
    throw Error(ErrorKind::NotInFiber, "m^T G m differs from the form by " + std::to_string(res));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (g + g.transpose()));
  const auto& ev = es.eigenvalues();
  const double smax = ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
  std::vector<int> order(ev.size());
  for (int i = 0; i < ev.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return std::abs(ev(a)) > std::abs(ev(b)); });
  RepresentationD rep;
  for (int idx : order) {
    const double lam = ev(idx);
    if (std::abs(lam) <= rank_tol * smax || smax == 0.0) continue;
    Eigen::VectorXd v = es.eigenvectors().col(idx) * std::sqrt(std::abs(lam));
    for (int i = 0; i < v.size(); ++i)
      if (std::abs(v(i)) > 1e-14 * v.cwiseAbs().maxCoeff()) {
        if (v(i) < 0) v = -v;
        break;
      }
    rep.forms.push_back(form_from_coefficients(std::vector<double>(v.data(), v.data() + v.size()), space.basis));
    rep.signs.push_back(lam > 0 ? 1 : -1);
  }
  return rep;
}

RepresentationQ exact_representation(const GramSpace& space, const QMatrix& g) {
  if (!g.is_symmetric()) throw Error(ErrorKind::NonSymmetric, "Gram matrix is not symmetric");
  if (!(quadratic_form(space, g) == space.form))
    throw Error(ErrorKind::NotInFiber, "m^T G m differs from the form");
  const auto cong = diagonalize_congruence(g);
  RepresentationQ rep;
  for (size_t k = 0; k < cong.weights.size(); ++k) {
    rep.forms.push_back(form_from_coefficients(cong.vectors[k], space.basis));
    rep.signs.push_back(sgn(cong.weights[k]) > 0 ? 1 : -1);
    rep.weights.push_back(abs(cong.weights[k]));
  }
  return rep;
}

QMatrix canonical_gram(const RepresentationQ& rep, const MonomialBasis& basis) {
  const int n = basis.size();
  QMatrix g(n, n);
  for (int k = 0; k < rep.size(); ++k) {
    const auto v = coefficients_in_basis(rep.forms[k], basis);
    const Rational w = rep.weight(k) * rep.signs[k];
    for (int i = 0; i < n; ++i) {
      if (sgn(v[i]) == 0) continue;
      for (int j = 0; j < n; ++j) g(i, j) += w * v[i] * v[j];
    }
  }
  return g;
}

Eigen::MatrixXd canonical_gram(const RepresentationD& rep, const MonomialBasis& basis) {
  const int n = basis.size();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < rep.size(); ++k) {
    const auto c = coefficients_in_basis(rep.forms[k], basis);
    const Eigen::Map<const Eigen::VectorXd> v(c.data(), n);
    g += rep.weight(k) * rep.signs[k] * v * v.transpose();
  }
  return g;
}

namespace {

template <class T>
Biform<T> residual_form(const Biform<T>& f, const Representation<T>& rep) {
  Biform<T> r = f;
  for (int k = 0; k < rep.size(); ++k) {
    const T w = rep.weight(k) * T(rep.signs[k]);
    r -= (rep.forms[k] * rep.forms[k]) * w;
  }
  return r;
}

}  // namespace

double verify_representation(const BiformQ& f, const RepresentationQ& rep) {
  return residual_form(f, rep).max_abs_coeff();
}

double verify_representation(const BiformD& f, const RepresentationD& rep) {
  return residual_form(f, rep).max_abs_coeff();
}

bool verifies_exactly(const BiformQ& f, const RepresentationQ& rep) { return residual_form(f, rep).is_zero(); }

bool equivalent(const RepresentationD& a, const RepresentationD& b, const MonomialBasis& basis, double tol) {
  const auto ga = canonical_gram(a, basis), gb = canonical_gram(b, basis);
  const double scale = std::max({1.0, ga.cwiseAbs().maxCoeff(), gb.cwiseAbs().maxCoeff()});
  return (ga - gb).cwiseAbs().maxCoeff() <= tol * scale;
}

bool equivalent(const RepresentationQ& a, const RepresentationQ& b, const MonomialBasis& basis) {
  return canonical_gram(a, basis) == canonical_gram(b, basis);
}

}  // namespace minsos
