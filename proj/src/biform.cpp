#include "minsos/biform.hpp"

#include <cmath>
#include <sstream>

namespace minsos {

std::string exponent_to_string(const Exponent& e) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  os << ')';
  return os.str();
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0)
    throw Error(ErrorKind::InputError, "cannot parse rational '" + text + "'");
  if (sgn(q.get_den()) == 0) throw Error(ErrorKind::InputError, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::optional<Rational> rationalize(double x, long max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  // Convergents h/k of the continued fraction of x.
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(r);
    if (std::abs(a) > 1e15) break;
    const long ai = static_cast<long>(a);
    const long h2 = ai * h1 + h0;
    const long k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) <= tol) {
      Rational q(h1, k1);
      q.canonicalize();
      return q;
    }
    const double frac = r - a;
    if (frac == 0.0) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

}  // namespace minsos
