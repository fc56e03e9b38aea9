#pragma once

#include <vector>

#include <Eigen/Dense>

#include "minsos/qmatrix.hpp"
#include "minsos/surface.hpp"

namespace minsos {

// Affine family G(theta) = G0 + sum theta_i K_i of symmetric matrices with
// m^T G(theta) m = form, m the linear monomial basis.
struct GramSpace {
  MonomialBasis basis;
  MonomialBasis quadratic;
  BiformQ form;
  QMatrix g0;
  std::vector<QMatrix> kernel;
  // product_index[i][j] = index in `quadratic` of basis[i] * basis[j].
  std::vector<std::vector<int>> product_index;
  std::vector<Rational> target;  // coefficients of form over `quadratic`

  int size() const { return basis.size(); }
  int dim() const { return static_cast<int>(kernel.size()); }
};

GramSpace build_gram_space(const BiformQ& f, const MonomialBasis& basis);
GramSpace build_gram_space(const BiformQ& f, const SurfaceSpec& spec);

Eigen::MatrixXcd gram_at(const GramSpace& space, const std::vector<Complex>& theta);
Eigen::MatrixXd gram_at(const GramSpace& space, const std::vector<double>& theta);
QMatrix gram_at(const GramSpace& space, const std::vector<Rational>& theta);

// m^T G m as a biform.
BiformQ quadratic_form(const GramSpace& space, const QMatrix& g);
BiformD quadratic_form(const GramSpace& space, const Eigen::MatrixXd& g);

// Max over quadratic monomials of |(m^T G m - f)_q|.
double fiber_residual(const GramSpace& space, const Eigen::MatrixXd& g);

// Frobenius-orthogonal projection onto the affine fiber.
Eigen::MatrixXd project_to_fiber(const GramSpace& space, const Eigen::MatrixXd& g);

// Least-squares theta with G0 + sum theta_i K_i closest to g.
std::vector<double> fiber_coordinates(const GramSpace& space, const Eigen::MatrixXd& g);

// Eigenvalues above tol*sigma_max, below -tol*sigma_max, and in between.
Inertia inertia(const Eigen::MatrixXd& g, double tol = 1e-8);

template <class T>
struct Representation {
  std::vector<Biform<T>> forms;
  std::vector<int> signs;
  // Optional positive weights w_i, so the identity reads sum signs_i w_i l_i^2.
  // Empty means all ones.
  std::vector<T> weights;

  int size() const { return static_cast<int>(forms.size()); }
  T weight(int i) const { return weights.empty() ? T(1) : weights[i]; }
  bool all_positive() const {
    for (int s : signs)
      if (s < 0) return false;
    return true;
  }
};

using RepresentationQ = Representation<Rational>;
using RepresentationD = Representation<double>;

template <class T>
std::vector<T> coefficients_in_basis(const Biform<T>& form, const MonomialBasis& basis) {
  std::vector<T> v(basis.size(), T(0));
  for (const auto& [e, c] : form.terms()) {
    const int i = basis.index_of(e);
    if (i < 0) throw Error(ErrorKind::NotAQuadraticForm, "form has a term outside the basis");
    v[i] = c;
  }
  return v;
}

template <class T>
Biform<T> form_from_coefficients(const std::vector<T>& v, const MonomialBasis& basis) {
  Biform<T> f(basis.nx, basis.degree);
  for (int i = 0; i < basis.size(); ++i) f.add_term(basis.monomials[i], v[i]);
  return f;
}

// Signed sum of squares of eigen-scaled forms; eigenvalues ordered by
// decreasing magnitude, first nonzero coefficient of every form positive.
RepresentationD extract_representation(const GramSpace& space, const Eigen::MatrixXd& g, double rank_tol = 1e-8,
                                       double fiber_tol = 1e-8);

// Exact rational certificate from a rational Gram matrix via congruence.
RepresentationQ exact_representation(const GramSpace& space, const QMatrix& g);

QMatrix canonical_gram(const RepresentationQ& rep, const MonomialBasis& basis);
Eigen::MatrixXd canonical_gram(const RepresentationD& rep, const MonomialBasis& basis);

// Max coefficient of f - sum signs_i w_i l_i^2, computed by biform expansion.
double verify_representation(const BiformQ& f, const RepresentationQ& rep);
double verify_representation(const BiformD& f, const RepresentationD& rep);
bool verifies_exactly(const BiformQ& f, const RepresentationQ& rep);

bool equivalent(const RepresentationD& a, const RepresentationD& b, const MonomialBasis& basis, double tol = 1e-8);
bool equivalent(const RepresentationQ& a, const RepresentationQ& b, const MonomialBasis& basis);

}  // namespace minsos
