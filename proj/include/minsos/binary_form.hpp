#pragma once

#include <algorithm>
#include <vector>

#include "minsos/biform.hpp"

namespace minsos {

// Homogeneous form in (s,t); coeffs[i] multiplies s^i t^(deg-i).
template <class T>
class BinaryForm {
 public:
  using Traits = CoeffTraits<T>;

  BinaryForm() = default;
  explicit BinaryForm(int deg) : coeffs_(static_cast<size_t>(deg) + 1, T(0)) {
    if (deg < 0) throw Error(ErrorKind::DegreeMismatch, "negative degree");
  }
  explicit BinaryForm(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error(ErrorKind::DegreeMismatch, "binary form needs deg + 1 coefficients");
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<T>& coeffs() const { return coeffs_; }
  T& operator[](int i) { return coeffs_.at(i); }
  const T& operator[](int i) const { return coeffs_.at(i); }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const T& c) { return Traits::is_zero(c); });
  }

  // Largest i with a nonzero coefficient (degree of f(s,1)); -1 for zero.
  int s_degree() const {
    for (int i = degree(); i >= 0; --i)
      if (!Traits::is_zero(coeffs_[i])) return i;
    return -1;
  }

  // Power of t dividing f, i.e. the multiplicity of the root (1:0).
  int t_valuation() const {
    const int sd = s_degree();
    return sd < 0 ? degree() : degree() - sd;
  }

  BinaryForm& operator+=(const BinaryForm& g) {
    check_degree(g);
    for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += g.coeffs_[i];
    return *this;
  }
  BinaryForm& operator-=(const BinaryForm& g) {
    check_degree(g);
    for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= g.coeffs_[i];
    return *this;
  }
  BinaryForm& operator*=(const T& c) {
    for (auto& v : coeffs_) v *= c;
    return *this;
  }
  friend BinaryForm operator+(BinaryForm f, const BinaryForm& g) { return f += g; }
  friend BinaryForm operator-(BinaryForm f, const BinaryForm& g) { return f -= g; }
  friend BinaryForm operator*(BinaryForm f, const T& c) { return f *= c; }
  friend BinaryForm operator*(const T& c, BinaryForm f) { return f *= c; }
  BinaryForm operator-() const {
    BinaryForm r = *this;
    for (auto& v : r.coeffs_) v = -v;
    return r;
  }

  friend BinaryForm operator*(const BinaryForm& f, const BinaryForm& g) {
    BinaryForm r(f.degree() + g.degree());
    for (int i = 0; i <= f.degree(); ++i) {
      if (Traits::is_zero(f.coeffs_[i])) continue;
      for (int j = 0; j <= g.degree(); ++j) r.coeffs_[i + j] += f.coeffs_[i] * g.coeffs_[j];
    }
    return r;
  }

  bool operator==(const BinaryForm& g) const { return coeffs_ == g.coeffs_; }

  template <class P>
  P eval_at(const P& s, const P& t) const {
    // Horner in s/t, homogenized: sum c_i s^i t^(d-i).
    P acc(0);
    P tpow(1);
    std::vector<P> tp(coeffs_.size(), P(1));
    for (size_t i = 1; i < coeffs_.size(); ++i) {
      tpow *= t;
      tp[i] = tpow;
    }
    for (int i = degree(); i >= 0; --i) {
      acc *= s;
      if constexpr (std::is_same_v<P, T>) {
        acc += coeffs_[i] * tp[degree() - i];
      } else {
        acc += convert_coeff<P, T>(coeffs_[i]) * tp[degree() - i];
      }
    }
    return acc;
  }

  // d/ds, a form of degree deg - 1.
  BinaryForm derivative_s() const {
    if (degree() == 0) return BinaryForm(0);
    BinaryForm r(degree() - 1);
    for (int i = 1; i <= degree(); ++i) r.coeffs_[i - 1] = coeffs_[i] * T(i);
    return r;
  }

  // Exact division by t^m; throws DegreeMismatch if t^m does not divide.
  BinaryForm divide_by_t_power(int m) const {
    if (m == 0) return *this;
    if (m > degree() || (!is_zero() && t_valuation() < m))
      throw Error(ErrorKind::DegreeMismatch, "form is not divisible by the requested power of t");
    std::vector<T> c(coeffs_.begin(), coeffs_.begin() + (degree() - m + 1));
    return BinaryForm(std::move(c));
  }

  BinaryForm multiply_by_t_power(int m) const {
    std::vector<T> c = coeffs_;
    c.resize(coeffs_.size() + m, T(0));
    return BinaryForm(std::move(c));
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, Traits::magnitude(c));
    return m;
  }

  template <class U>
  BinaryForm<U> cast() const {
    std::vector<U> c;
    c.reserve(coeffs_.size());
    for (const auto& v : coeffs_) c.push_back(convert_coeff<U, T>(v));
    return BinaryForm<U>(std::move(c));
  }

  // Embeds as a Biform of bidegree (deg, 0).
  Biform<T> to_biform(int nx) const {
    Biform<T> f(nx, {degree(), 0});
    Exponent e(nx + 2, 0);
    for (int i = 0; i <= degree(); ++i) {
      e[0] = i;
      e[1] = degree() - i;
      f.add_term(e, coeffs_[i]);
    }
    return f;
  }

  static BinaryForm from_biform(const Biform<T>& f) {
    if (f.bidegree().x != 0)
      throw Error(ErrorKind::DegreeMismatch, "biform has positive x-degree");
    BinaryForm r(f.bidegree().st);
    for (const auto& [e, c] : f.terms()) r.coeffs_[e[0]] = c;
    return r;
  }

 private:
  void check_degree(const BinaryForm& g) const {
    if (degree() != g.degree()) throw Error(ErrorKind::DegreeMismatch, "binary forms of different degree");
  }

  std::vector<T> coeffs_{T(0)};
};

using BinaryFormQ = BinaryForm<Rational>;
using BinaryFormD = BinaryForm<double>;
using BinaryFormC = BinaryForm<Complex>;

// Monic gcd of the dehomogenized polynomials f(s,1), g(s,1) over Q, as a
// coefficient vector in s (index = power).
std::vector<Rational> univariate_gcd(std::vector<Rational> a, std::vector<Rational> b);

// True iff f has no repeated projective root (including the root at t = 0).
bool is_squarefree(const BinaryFormQ& f);

}  // namespace minsos
