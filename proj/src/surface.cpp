#include "minsos/surface.hpp"

#include <set>

#include "minsos/binary_sos.hpp"

namespace minsos {

SurfaceSpec SurfaceSpec::scroll(int d, int e) {
  if (e < 1 || d < e) throw Error(ErrorKind::InputError, "scroll needs d >= e >= 1");
  return SurfaceSpec{SurfaceKind::Scroll, d, e, {}};
}

SurfaceSpec SurfaceSpec::veronese() { return SurfaceSpec{SurfaceKind::Veronese, 0, 0, {}}; }

SurfaceSpec SurfaceSpec::cone_rnc(int d) {
  if (d < 2) throw Error(ErrorKind::InputError, "cone over a rational normal curve needs d >= 2");
  return SurfaceSpec{SurfaceKind::ConeOverRNC, d, 0, {}};
}

SurfaceSpec SurfaceSpec::rnc(int d) {
  if (d < 1) throw Error(ErrorKind::InputError, "rational normal curve needs d >= 1");
  return SurfaceSpec{SurfaceKind::RationalNormalCurve, d, 0, {}};
}

SurfaceSpec SurfaceSpec::prism(std::vector<int> heights) {
  if (heights.empty()) throw Error(ErrorKind::InputError, "prism needs at least one height");
  for (int h : heights)
    if (h < 0) throw Error(ErrorKind::InputError, "prism heights must be nonnegative");
  return SurfaceSpec{SurfaceKind::Prism, 0, 0, std::move(heights)};
}

int SurfaceSpec::ambient_dim() const {
  switch (kind) {
    case SurfaceKind::Scroll: return d + e + 1;
    case SurfaceKind::Veronese: return 5;
    case SurfaceKind::ConeOverRNC: return d + 1;
    case SurfaceKind::RationalNormalCurve: return d;
    case SurfaceKind::Prism: {
      int n = -1;
      for (int h : heights) n += h + 1;
      return n;
    }
  }
  return 0;
}

int SurfaceSpec::dim() const {
  switch (kind) {
    case SurfaceKind::RationalNormalCurve: return 1;
    case SurfaceKind::Prism: return static_cast<int>(heights.size());
    default: return 2;
  }
}

int SurfaceSpec::degree() const {
  switch (kind) {
    case SurfaceKind::Scroll: return d + e;
    case SurfaceKind::Veronese: return 4;
    case SurfaceKind::ConeOverRNC: return d;
    case SurfaceKind::RationalNormalCurve: return d;
    case SurfaceKind::Prism: {
      int s = 0;
      for (int h : heights) s += h;
      return s;
    }
  }
  return 0;
}

int SurfaceSpec::nx() const {
  switch (kind) {
    case SurfaceKind::Veronese: return 3;
    case SurfaceKind::RationalNormalCurve: return 0;
    case SurfaceKind::Prism: return static_cast<int>(heights.size());
    default: return 2;
  }
}

int SurfaceSpec::genus() const {
  if (kind != SurfaceKind::Scroll) throw Error(ErrorKind::NotAScroll, name() + " is not a smooth scroll");
  return d + e - 1;
}

int SurfaceSpec::curve_degree() const {
  if (kind != SurfaceKind::Scroll) throw Error(ErrorKind::NotAScroll, name() + " is not a smooth scroll");
  return 2 * (d + e);
}

std::string SurfaceSpec::name() const {
  switch (kind) {
    case SurfaceKind::Scroll: return "scroll(" + std::to_string(d) + "," + std::to_string(e) + ")";
    case SurfaceKind::Veronese: return "veronese";
    case SurfaceKind::ConeOverRNC: return "cone_rnc(" + std::to_string(d) + ")";
    case SurfaceKind::RationalNormalCurve: return "rnc(" + std::to_string(d) + ")";
    case SurfaceKind::Prism: {
      std::string s = "prism(";
      for (size_t i = 0; i < heights.size(); ++i) s += (i ? "," : "") + std::to_string(heights[i]);
      return s + ")";
    }
  }
  return "?";
}

int MonomialBasis::index_of(const Exponent& e) const {
  for (size_t i = 0; i < monomials.size(); ++i)
    if (monomials[i] == e) return static_cast<int>(i);
  return -1;
}

namespace {

MonomialBasis linear_basis(const SurfaceSpec& spec) {
  MonomialBasis b;
  b.nx = spec.nx();
  switch (spec.kind) {
    case SurfaceKind::Scroll:
    case SurfaceKind::ConeOverRNC: {
      // y-block s^i t^(d-i) y, then x-block s^i t^(d-i) x for i <= e.
      b.degree = {spec.d, 1};
      for (int i = 0; i <= spec.d; ++i) b.monomials.push_back({i, spec.d - i, 0, 1});
      for (int i = 0; i <= spec.e; ++i) b.monomials.push_back({i, spec.d - i, 1, 0});
      break;
    }
    case SurfaceKind::Veronese: {
      b.degree = {0, 2};
      for (int a = 2; a >= 0; --a)
        for (int c = 2 - a; c >= 0; --c) b.monomials.push_back({0, 0, a, c, 2 - a - c});
      break;
    }
    case SurfaceKind::RationalNormalCurve: {
      b.degree = {spec.d, 0};
      for (int i = 0; i <= spec.d; ++i) b.monomials.push_back({i, spec.d - i});
      break;
    }
    case SurfaceKind::Prism: {
      int top = 0;
      for (int h : spec.heights) top = std::max(top, h);
      b.degree = {top, 1};
      const int n = static_cast<int>(spec.heights.size());
      for (int v = 0; v < n; ++v)
        for (int j = 0; j <= spec.heights[v]; ++j) {
          Exponent e(n + 2, 0);
          e[0] = j;
          e[1] = top - j;
          e[2 + v] = 1;
          b.monomials.push_back(std::move(e));
        }
      break;
    }
  }
  return b;
}

}  // namespace

MonomialBasis quadratic_monomials(const MonomialBasis& linear) {
  std::set<Exponent> products;
  for (size_t i = 0; i < linear.monomials.size(); ++i)
    for (size_t j = i; j < linear.monomials.size(); ++j) {
      Exponent e = linear.monomials[i];
      for (size_t v = 0; v < e.size(); ++v) e[v] += linear.monomials[j][v];
      products.insert(std::move(e));
    }
  MonomialBasis q;
  q.nx = linear.nx;
  q.degree = {2 * linear.degree.st, 2 * linear.degree.x};
  q.monomials.assign(products.begin(), products.end());
  return q;
}

MonomialBasis monomial_basis(const SurfaceSpec& spec, int k) {
  if (k != 1 && k != 2) throw Error(ErrorKind::UnsupportedDegree, "monomial bases exist for k = 1, 2 only");
  auto b = linear_basis(spec);
  return k == 1 ? b : quadratic_monomials(b);
}

HilbertData hilbert_data(const SurfaceSpec& spec) {
  if (spec.kind != SurfaceKind::Scroll) throw Error(ErrorKind::NotAScroll, spec.name() + " is not a smooth scroll");
  const int de = spec.d + spec.e;
  HilbertData h;
  h.genus = de - 1;
  h.curve_degree = 2 * de;
  h.ehrhart = {Rational(de, 2), Rational(de + 2, 2), Rational(1)};
  for (auto& c : h.ehrhart) c.canonicalize();
  return h;
}

namespace {

void fill_report(GenericityReport& r, const SurfaceSpec& spec, bool squarefree, bool full_squarefree) {
  r.discriminant_squarefree = squarefree;
  r.smooth_in_p1xp1 = full_squarefree;
  if (!squarefree) r.notes.push_back("discriminant has a repeated root: the curve on the surface is singular");
  if (spec.kind == SurfaceKind::Scroll && spec.d != spec.e && !full_squarefree)
    r.notes.push_back("V(f) in P^1 x P^1 is singular at t = 0, as for every form on a scroll with d != e");
}

}  // namespace

GenericityReport genericity_check(const BiformQ& f, const SurfaceSpec& spec) {
  GenericityReport r;
  if (spec.kind != SurfaceKind::Scroll && spec.kind != SurfaceKind::ConeOverRNC) {
    r.applicable = false;
    r.notes.push_back("no discriminant test for " + spec.name());
    return r;
  }
  const auto delta = discriminant(f, spec);
  const bool full = spec.kind == SurfaceKind::Scroll ? is_squarefree(full_discriminant(f)) : false;
  fill_report(r, spec, is_squarefree(delta), full);
  return r;
}

GenericityReport genericity_check(const BiformD& f, const SurfaceSpec& spec, double cluster_radius) {
  GenericityReport r;
  if (spec.kind != SurfaceKind::Scroll && spec.kind != SurfaceKind::ConeOverRNC) {
    r.applicable = false;
    r.notes.push_back("no discriminant test for " + spec.name());
    return r;
  }
  auto simple = [&](const BinaryFormD& g) {
    if (g.is_zero()) return false;
    for (const auto& root : roots(g, cluster_radius).roots)
      if (root.multiplicity > 1) return false;
    return true;
  };
  const auto delta = discriminant(f, spec);
  const bool full = spec.kind == SurfaceKind::Scroll ? simple(full_discriminant(f)) : false;
  fill_report(r, spec, simple(delta), full);
  return r;
}

bool is_quadratic_form_on(const BiformQ& f, const SurfaceSpec& spec) {
  const auto q = monomial_basis(spec, 2);
  if (f.nx() != q.nx || f.bidegree() != q.degree) return false;
  for (const auto& [e, c] : f.terms())
    if (q.index_of(e) < 0) return false;
  return true;
}

}  // namespace minsos
