#pragma once

#include "minsos/pipeline.hpp"

namespace fixtures {

using minsos::BiformQ;
using minsos::Rational;

inline BiformQ S() { return BiformQ::s(); }
inline BiformQ T() { return BiformQ::t(); }
inline BiformQ X() { return BiformQ::x(); }
inline BiformQ Y() { return BiformQ::y(); }
inline BiformQ C(long c) { return BiformQ::constant(2, Rational(c)); }

// x^2 (t^2 + s^2) + y^2 (2t^2 + 2st + 2s^2) on Scroll(1,1).
inline BiformQ genus_one() {
  auto s = S(), t = T(), x = X(), y = Y();
  return x * x * (t * t + s * s) + y * y * (C(2) * t * t + C(2) * s * t + C(2) * s * s);
}

// t^2 (t^2 + s^2) x^2 + (t^4 + t^2 s^2 + s^4) y^2 on Scroll(2,1).
inline BiformQ genus_two() {
  auto s = S(), t = T(), x = X(), y = Y();
  return t * t * (t * t + s * s) * x * x + (t.pow(4) + t * t * s * s + s.pow(4)) * y * y;
}

// (x - y)(s^2 - t^2)(x + y)(s^2 - 9t^2) + x^2 (s^2 - 4t^2)^2 on Scroll(2,2).
inline BiformQ nongeneric() {
  auto s = S(), t = T(), x = X(), y = Y();
  return (x - y) * (s * s - t * t) * (x + y) * (s * s - C(9) * t * t) + x * x * (s * s - C(4) * t * t).pow(2);
}

// The squares t^2, ts + xs, s^2 - xt homogenized on Scroll(2,1): y t^2,
// y ts + x ts, y s^2 - x t^2.
inline minsos::RepresentationQ genus_two_identity() {
  auto s = S(), t = T(), x = X(), y = Y();
  minsos::RepresentationQ r;
  r.forms = {y * t * t, y * t * s + x * t * s, y * s * s - x * t * t};
  r.signs = {1, 1, 1};
  return r;
}

// (xt - sy)^2 + (xs + yt)^2 + (yt + ys)^2.
inline minsos::RepresentationQ genus_one_identity() {
  auto s = S(), t = T(), x = X(), y = Y();
  minsos::RepresentationQ r;
  r.forms = {x * t - s * y, x * s + y * t, y * t + y * s};
  r.signs = {1, 1, 1};
  return r;
}

}  // namespace fixtures
