#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "minsos/error.hpp"
#include "minsos/rational.hpp"

namespace minsos {

// Exponent layout: [s, t, x_0, ..., x_{nx-1}]. With nx == 2 the x-group is
// (x, y), so an exponent reads (i, j, k, l) for s^i t^j x^k y^l.
using Exponent = std::vector<int>;

struct Bidegree {
  int st = 0;
  int x = 0;
  bool operator==(const Bidegree&) const = default;
};

std::string exponent_to_string(const Exponent& e);

// Bihomogeneous polynomial in one pair (s,t) and an x-group of nx variables.
// Terms are kept in a std::map, so iteration is lexicographic in the
// exponent, which for fixed bidegree is lexicographic on (i, k).
template <class T>
class Biform {
 public:
  using Coeff = T;
  using Terms = std::map<Exponent, T>;
  using Traits = CoeffTraits<T>;

  Biform() = default;
  Biform(int nx, Bidegree deg) : nx_(nx), deg_(deg) {}

  static Biform monomial(const Exponent& e, const T& c) {
    Biform f(static_cast<int>(e.size()) - 2, degree_of(e));
    f.add_term(e, c);
    return f;
  }

  static Biform constant(int nx, const T& c) {
    Exponent e(nx + 2, 0);
    Biform f(nx, {0, 0});
    f.add_term(e, c);
    return f;
  }

  // Variable index: 0 = s, 1 = t, 2 + i = x_i.
  static Biform variable(int nx, int index) {
    Exponent e(nx + 2, 0);
    e.at(index) = 1;
    return monomial(e, T(1));
  }
  static Biform s(int nx = 2) { return variable(nx, 0); }
  static Biform t(int nx = 2) { return variable(nx, 1); }
  static Biform x(int nx = 2) { return variable(nx, 2); }
  static Biform y(int nx = 2) { return variable(nx, 3); }

  static Bidegree degree_of(const Exponent& e) {
    Bidegree d;
    d.st = e.at(0) + e.at(1);
    for (size_t i = 2; i < e.size(); ++i) d.x += e[i];
    return d;
  }

  int nx() const { return nx_; }
  Bidegree bidegree() const { return deg_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  T coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? T(0) : it->second;
  }

  // Accumulates c into the coefficient of e, dropping it if it cancels.
  void add_term(const Exponent& e, const T& c) {
    if (static_cast<int>(e.size()) != nx_ + 2)
      throw Error(ErrorKind::DegreeMismatch, "exponent length does not match variable count");
    if (!(degree_of(e) == deg_))
      throw Error(ErrorKind::DegreeMismatch, "term " + exponent_to_string(e) + " has wrong bidegree");
    if (Traits::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (Traits::is_zero(it->second)) terms_.erase(it);
    }
  }

  Biform& operator+=(const Biform& g) {
    check_same_shape(g);
    for (const auto& [e, c] : g.terms_) add_term(e, c);
    return *this;
  }
  Biform& operator-=(const Biform& g) {
    check_same_shape(g);
    for (const auto& [e, c] : g.terms_) add_term(e, -c);
    return *this;
  }
  Biform& operator*=(const T& c) {
    if (Traits::is_zero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
  }

  friend Biform operator+(Biform f, const Biform& g) { return f += g; }
  friend Biform operator-(Biform f, const Biform& g) { return f -= g; }
  friend Biform operator*(Biform f, const T& c) { return f *= c; }
  friend Biform operator*(const T& c, Biform f) { return f *= c; }
  Biform operator-() const {
    Biform r = *this;
    for (auto& [e, v] : r.terms_) v = -v;
    return r;
  }

  friend Biform operator*(const Biform& f, const Biform& g) {
    if (f.nx_ != g.nx_) throw Error(ErrorKind::DegreeMismatch, "x-group sizes differ");
    Biform r(f.nx_, {f.deg_.st + g.deg_.st, f.deg_.x + g.deg_.x});
    Exponent e(f.nx_ + 2);
    for (const auto& [ef, cf] : f.terms_) {
      for (const auto& [eg, cg] : g.terms_) {
        for (size_t i = 0; i < e.size(); ++i) e[i] = ef[i] + eg[i];
        r.add_term(e, cf * cg);
      }
    }
    return r;
  }

  Biform pow(int k) const {
    Biform r = constant(nx_, T(1));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  bool operator==(const Biform& g) const {
    return nx_ == g.nx_ && deg_ == g.deg_ && terms_ == g.terms_;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, Traits::magnitude(c));
    return m;
  }

  template <class U>
  Biform<U> cast() const {
    Biform<U> r(nx_, deg_);
    for (const auto& [e, c] : terms_) r.add_term(e, convert_coeff<U, T>(c));
    return r;
  }

  // Evaluation at a point (s, t, x_0, ...) using per-variable power tables.
  template <class P>
  P eval_at(std::span<const P> point) const {
    if (static_cast<int>(point.size()) != nx_ + 2)
      throw Error(ErrorKind::DimensionMismatch, "evaluation point has wrong length");
    const int maxdeg = std::max(deg_.st, deg_.x);
    std::vector<std::vector<P>> powers(point.size(), std::vector<P>(maxdeg + 1, P(1)));
    for (size_t v = 0; v < point.size(); ++v)
      for (int p = 1; p <= maxdeg; ++p) powers[v][p] = powers[v][p - 1] * point[v];
    P acc(0);
    for (const auto& [e, c] : terms_) {
      P term = convert_eval<P>(c);
      for (size_t v = 0; v < e.size(); ++v)
        if (e[v] != 0) term *= powers[v][e[v]];
      acc += term;
    }
    return acc;
  }

  Complex eval(std::span<const Complex> point) const { return eval_at<Complex>(point); }

 private:
  template <class P>
  static P convert_eval(const T& c) {
    if constexpr (std::is_same_v<P, T>) {
      return c;
    } else {
      return convert_coeff<P, T>(c);
    }
  }

  void check_same_shape(const Biform& g) const {
    if (nx_ != g.nx_ || !(deg_ == g.deg_))
      throw Error(ErrorKind::DegreeMismatch, "cannot add biforms of different bidegree");
  }

  int nx_ = 2;
  Bidegree deg_{};
  Terms terms_;
};

using BiformQ = Biform<Rational>;
using BiformD = Biform<double>;
using BiformC = Biform<Complex>;

// Chart t = 1, x_{nx-1} = 1: a polynomial in (s, x_0, ..., x_{nx-2}).
// Keys have length max(nx, 1): [i, k_0, ..., k_{nx-2}].
template <class T>
using ChartPoly = std::map<std::vector<int>, T>;

template <class T>
Biform<T> bihomogenize(const ChartPoly<T>& p, int nx, Bidegree target) {
  Biform<T> f(nx, target);
  for (const auto& [key, c] : p) {
    if (static_cast<int>(key.size()) != std::max(nx, 1))
      throw Error(ErrorKind::DimensionMismatch, "chart monomial has wrong length");
    Exponent e(nx + 2, 0);
    e[0] = key[0];
    e[1] = target.st - key[0];
    int xsum = 0;
    for (int i = 0; i + 1 < nx; ++i) {
      e[2 + i] = key[1 + i];
      xsum += key[1 + i];
    }
    if (nx > 0) e[1 + nx] = target.x - xsum;
    for (int v : e)
      if (v < 0)
        throw Error(ErrorKind::ExponentOverflow,
                    "monomial " + exponent_to_string(key) + " exceeds the target bidegree");
    if (nx == 0 && xsum != target.x)
      throw Error(ErrorKind::ExponentOverflow, "x-degree mismatch for nx = 0");
    f.add_term(e, c);
  }
  return f;
}

template <class T>
ChartPoly<T> dehomogenize(const Biform<T>& f) {
  ChartPoly<T> p;
  const int nx = f.nx();
  for (const auto& [e, c] : f.terms()) {
    std::vector<int> key(std::max(nx, 1), 0);
    key[0] = e[0];
    for (int i = 0; i + 1 < nx; ++i) key[1 + i] = e[2 + i];
    p[key] += c;
  }
  return p;
}

}  // namespace minsos
