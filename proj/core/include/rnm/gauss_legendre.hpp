#pragma once

#include <cmath>
#include <vector>

#include "rnm/errors.hpp"

namespace rnm {

/// Nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Gauss-Legendre rule of the given order (Newton iteration on P_n). Cached.
const GaussRule& gauss_legendre(int order);

/// Composite rule: `panels` equal panels of a Gauss-Legendre rule on [a, b].
template <class F>
double integrate_panels(F&& f, double a, double b, int panels, int order) {
  const GaussRule& rule = gauss_legendre(order);
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) s += rule.w[i] * f(mid + 0.5 * h * rule.x[i]);
    sum += 0.5 * h * s;
  }
  return sum;
}

struct QuadResult {
  double value = 0.0;
  double change = 0.0;
  int panels = 0;
};

/// Doubles the panel count until the relative change drops below rel_tol.
/// Throws ConvergenceError past max_panels.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, int order, double rel_tol,
                              int start_panels = 1, int max_panels = 4096) {
  int panels = start_panels;
  double prev = integrate_panels(f, a, b, panels, order);
  while (true) {
    panels *= 2;
    const double cur = integrate_panels(f, a, b, panels, order);
    const double change = std::abs(cur - prev);
    if (change <= rel_tol * std::abs(cur) || cur == 0.0) return {cur, change, panels};
    if (panels >= max_panels) {
      throw ConvergenceError("adaptive Gauss-Legendre did not reach the requested tolerance");
    }
    prev = cur;
  }
}

}  // namespace rnm
