#pragma once

#include <cmath>
#include <utility>

namespace salhi {

/// Golden-section maximization of a unimodal function on [a, b]; returns the
/// abscissa of the maximum to within tol.
template <typename Fn>
double golden_max(Fn&& fn, double a, double b, double tol) {
  constexpr double inv_phi = 0.6180339887498948482;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = fn(x1);
  double f2 = fn(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = fn(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = fn(x1);
    }
  }
  return 0.5 * (a + b);
}

template <typename Fn>
double golden_min(Fn&& fn, double a, double b, double tol) {
  return golden_max([&](double x) { return -fn(x); }, a, b, tol);
}

}  // namespace salhi
