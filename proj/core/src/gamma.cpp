#include "rnm/gamma.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace rnm {
namespace {

constexpr double kG = 607.0 / 128.0;
constexpr std::array<double, 15> kCoef = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

// Lanczos series for Gamma(z + 1).
double series(double z) {
  double s = kCoef[0];
  for (std::size_t k = 1; k < kCoef.size(); ++k) s += kCoef[k] / (z + static_cast<double>(k));
  return s;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  if (x < 0.5) {
    // Gamma(x) = Gamma(x + 1) / x keeps the series argument away from 0.
    return log_gamma(x + 1.0) - std::log(x);
  }
  const double z = x - 1.0;
  const double t = z + kG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(series(z));
}

double gamma_fn(double x) {
  if (!(x > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  if (x > 171.7) return std::numeric_limits<double>::infinity();
  if (x < 0.5) return gamma_fn(x + 1.0) / x;
  const double z = x - 1.0;
  const double t = z + kG + 0.5;
  // Split the power to avoid overflow of t^(z+0.5) before multiplying e^{-t}.
  const double p = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * p * (p * std::exp(-t)) * series(z);
}

}  // namespace rnm
