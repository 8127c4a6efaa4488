#pragma once

#include <cmath>
#include <functional>
#include <numbers>

#include "rnm/gauss_legendre.hpp"
#include "rnm/hermitian_poly.hpp"

namespace rnm {

/// Polar product rule on the disk D(center, outer_radius): Gauss-Legendre
/// panels in the radius times an angular trapezoid.
struct PolarRule {
  Complex center;
  double outer_radius = 1.0;
  int panels = 4;
  int order = 16;
  int angular = 64;

  PolarRule refined() const {
    PolarRule r = *this;
    r.panels *= 2;
    r.angular *= 2;
    return r;
  }
};

/// int_0^R int_0^{2pi} g(rho, phi) dphi drho, with the (1/pi) rho Jacobian
/// left to the caller. g returns double or Complex.
template <class T, class G>
T integrate_polar_raw(const PolarRule& rule, G&& g) {
  const GaussRule& gl = gauss_legendre(rule.order);
  const double h = rule.outer_radius / rule.panels;
  const double dphi = 2.0 * std::numbers::pi / rule.angular;
  T total{};
  for (int p = 0; p < rule.panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (std::size_t q = 0; q < gl.x.size(); ++q) {
      const double rho = mid + 0.5 * h * gl.x[q];
      T ring{};
      for (int a = 0; a < rule.angular; ++a) ring += g(rho, a * dphi);
      total += (0.5 * h * gl.w[q] * dphi) * ring;
    }
  }
  return total;
}

/// int_{D(center, R)} f dA with dA = Lebesgue / pi.
template <class T, class F>
T integrate_disk(const PolarRule& rule, F&& f) {
  return integrate_polar_raw<T>(rule, [&](double rho, double phi) {
    return (rho / std::numbers::pi) * f(rule.center + std::polar(rho, phi));
  });
}

/// Smallest radius (on a step grid) beyond which max over the circle of
/// decay(center + rho e^{i phi}) stays below threshold for two steps.
double decay_radius(const std::function<double(Complex)>& decay, Complex center, double threshold,
                    double step = 0.25, double max_radius = 64.0, int angles = 32);

}  // namespace rnm
