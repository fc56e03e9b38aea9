#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "minsos/binary_form.hpp"

namespace minsos {

enum class SurfaceKind {
  Scroll,              // X_{P_{d,e}}, d >= e >= 1
  Veronese,            // nu_2(P^2) in P^5
  ConeOverRNC,         // cone over nu_d(P^1) in P^{d+1}, d >= 2
  RationalNormalCurve, // nu_d(P^1); base of a cone, one-dimensional
  Prism,               // rational normal scroll of dimension n from heights d_1..d_n
};

struct SurfaceSpec {
  SurfaceKind kind = SurfaceKind::Scroll;
  int d = 1;
  int e = 1;
  std::vector<int> heights;  // Prism only

  static SurfaceSpec scroll(int d, int e);
  static SurfaceSpec veronese();
  static SurfaceSpec cone_rnc(int d);
  static SurfaceSpec rnc(int d);
  static SurfaceSpec prism(std::vector<int> heights);

  int ambient_dim() const;  // n, with X in P^n
  int dim() const;          // m
  int codim() const { return ambient_dim() - dim(); }
  int degree() const;       // deg(X); equals codim + 1 for every kind here
  int nx() const;           // size of the x-group in the biform encoding
  bool is_scroll() const { return kind == SurfaceKind::Scroll; }

  // Genus and degree of the curve cut out by a generic quadratic form.
  int genus() const;
  int curve_degree() const;

  std::string name() const;
  bool operator==(const SurfaceSpec&) const = default;
};

struct MonomialBasis {
  int nx = 2;
  Bidegree degree;
  std::vector<Exponent> monomials;

  int size() const { return static_cast<int>(monomials.size()); }
  // -1 if absent.
  int index_of(const Exponent& e) const;
};

// Basis of R[X]_k for k in {1, 2}; throws UnsupportedDegree otherwise.
MonomialBasis monomial_basis(const SurfaceSpec& spec, int k);

// All distinct products of pairs of basis elements, in term order.
MonomialBasis quadratic_monomials(const MonomialBasis& linear);

struct HilbertData {
  int genus = 0;
  int curve_degree = 0;
  std::array<Rational, 3> ehrhart;  // coefficients of T^2, T, 1
};

HilbertData hilbert_data(const SurfaceSpec& spec);

// Coefficients a, b, c of f = a x^2 + 2 b xy + c y^2 for nx == 2.
template <class T>
struct QuadraticParts {
  BinaryForm<T> a, b, c;
};

template <class T>
QuadraticParts<T> quadratic_parts(const Biform<T>& f) {
  if (f.nx() != 2 || f.bidegree().x != 2)
    throw Error(ErrorKind::DegreeMismatch, "expected a biform of x-degree 2 in (x, y)");
  const int deg = f.bidegree().st;
  QuadraticParts<T> q{BinaryForm<T>(deg), BinaryForm<T>(deg), BinaryForm<T>(deg)};
  for (const auto& [e, c] : f.terms()) {
    if (e[2] == 2) q.a[e[0]] = c;
    else if (e[2] == 1) q.b[e[0]] = c / T(2);
    else q.c[e[0]] = c;
  }
  return q;
}

// b^2 - ac of a form on Scroll(d,e) (or a cone, e = 0), divided by the forced
// factor t^(2(d-e)); degree 2(d+e).
template <class T>
BinaryForm<T> discriminant(const Biform<T>& f, const SurfaceSpec& spec) {
  int d = 0, e = 0;
  if (spec.kind == SurfaceKind::Scroll) {
    d = spec.d;
    e = spec.e;
  } else if (spec.kind == SurfaceKind::ConeOverRNC) {
    d = spec.d;
  } else {
    throw Error(ErrorKind::NotAScroll, "discriminant is defined for scrolls and cones");
  }
  if (f.bidegree() != Bidegree{2 * d, 2})
    throw Error(ErrorKind::DegreeMismatch, "form must have bidegree (2d, 2)");
  auto q = quadratic_parts(f);
  const int gap = d - e;
  if ((!q.a.is_zero() && q.a.t_valuation() < 2 * gap) || (!q.b.is_zero() && q.b.t_valuation() < gap))
    throw Error(ErrorKind::DegreeMismatch, "x^2 coefficient must be divisible by t^(2(d-e)) and xy by t^(d-e)");
  auto delta = q.b * q.b - q.a * q.c;
  return delta.divide_by_t_power(2 * gap);
}

// Same as discriminant, without removing the t-power (the P^1 x P^1 picture).
template <class T>
BinaryForm<T> full_discriminant(const Biform<T>& f) {
  auto q = quadratic_parts(f);
  return q.b * q.b - q.a * q.c;
}

struct GenericityReport {
  bool applicable = true;
  bool discriminant_squarefree = false;  // smooth model on the surface
  bool smooth_in_p1xp1 = false;          // V(f) in P^1 x P^1
  std::optional<std::string> warning;    // filled after enumeration
  std::vector<std::string> notes;

  bool generic() const { return applicable ? discriminant_squarefree : true; }
};

GenericityReport genericity_check(const BiformQ& f, const SurfaceSpec& spec);
GenericityReport genericity_check(const BiformD& f, const SurfaceSpec& spec, double cluster_radius = 1e-6);

// Checks bidegree and support of f against the quadratic monomials of spec.
bool is_quadratic_form_on(const BiformQ& f, const SurfaceSpec& spec);

}  // namespace minsos
