#include "rnm/planar.hpp"

#include <algorithm>

#include "rnm/errors.hpp"

namespace rnm {

double decay_radius(const std::function<double(Complex)>& decay, Complex center, double threshold,
                    double step, double max_radius, int angles) {
  int below = 0;
  for (double rho = step; rho <= max_radius; rho += step) {
    double mx = 0.0;
    for (int a = 0; a < angles; ++a) {
      mx = std::max(mx, decay(center + std::polar(rho, 2.0 * std::numbers::pi * a / angles)));
    }
    below = mx < threshold ? below + 1 : 0;
    if (below == 2) return rho;
  }
  throw ConvergenceError("decay_radius: integrand does not decay within the search radius");
}

}  // namespace rnm
