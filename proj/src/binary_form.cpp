#include "minsos/binary_form.hpp"

namespace minsos {

namespace {

void trim(std::vector<Rational>& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// Remainder of a divided by b (b nonzero, trimmed).
std::vector<Rational> remainder(std::vector<Rational> a, const std::vector<Rational>& b) {
  trim(a);
  const size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const Rational factor = a.back() / b.back();
    const size_t shift = a.size() - 1 - db;
    for (size_t i = 0; i <= db; ++i) a[shift + i] -= factor * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

}  // namespace

std::vector<Rational> univariate_gcd(std::vector<Rational> a, std::vector<Rational> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

bool is_squarefree(const BinaryFormQ& f) {
  if (f.is_zero()) return false;
  if (f.t_valuation() > 1) return false;
  std::vector<Rational> p(f.coeffs().begin(), f.coeffs().begin() + f.s_degree() + 1);
  std::vector<Rational> dp;
  for (size_t i = 1; i < p.size(); ++i) dp.push_back(p[i] * Rational(static_cast<long>(i)));
  if (dp.empty()) return true;
  return univariate_gcd(p, dp).size() <= 1;
}

}  // namespace minsos
