#include "rnm/decomposition.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "rnm/errors.hpp"
#include "rnm/gauss_legendre.hpp"

namespace rnm {
namespace {

constexpr double kDegreeTol = 1e-12;
constexpr double kPositivityFloor = 1e-12;

}  // namespace

double CanonicalDecomposition::re_h(Complex zeta) const {
  Complex s{}, zp{1.0, 0.0};
  for (const auto& hm : h) {
    s += hm * zp;
    zp *= zeta;
  }
  return s.real();
}

double CanonicalDecomposition::q0_scaled(Complex z) const { return q0(tau0 * z); }

double CanonicalDecomposition::laplacian_q0_scaled(Complex z) const {
  return tau0 * tau0 * ptilde(tau0 * z);
}

CanonicalDecomposition canonical_decompose(const Potential& pot) {
  const HermitianPoly& taylor = pot.taylor();
  const HermitianPoly lap = taylor.laplacian();
  const int d = lap.lowest_degree(kDegreeTol);
  if (d < 0) {
    throw DegenerateSingularity("Laplacian of the Taylor data vanishes identically", 0.0);
  }
  CanonicalDecomposition dec;
  dec.potential = pot;
  if (d % 2 == 1) {
    // An odd homogeneous part changes sign under z -> -z.
    const HermitianPoly part = lap.homogeneous_part(d);
    double worst = 0.0, at = 0.0;
    for (int a = 0; a < kThetaGrid; ++a) {
      const double t = 2.0 * std::numbers::pi * a / kThetaGrid;
      const double v = part(std::polar(1.0, t));
      if (v < worst) worst = v, at = t;
    }
    throw DegenerateSingularity(
        "leading Laplacian term has odd degree " + std::to_string(d) + " and is negative at theta=" +
            std::to_string(at),
        at);
  }
  dec.k = d / 2 + 1;
  dec.sing_type = 2 * dec.k - 2;
  dec.regular = dec.k == 1;
  if (taylor.degree() < 2 * dec.k) {
    throw InputError("Taylor data of degree " + std::to_string(taylor.degree()) +
                     " is too short for a singularity of order k=" + std::to_string(dec.k));
  }
  dec.p = taylor.truncated(2 * dec.k);
  dec.h.assign(static_cast<std::size_t>(2 * dec.k + 1), Complex{});
  dec.h[0] = dec.p.coeff(0, 0);
  for (int m = 1; m <= 2 * dec.k; ++m) dec.h[static_cast<std::size_t>(m)] = 2.0 * dec.p.coeff(m, 0);
  dec.q0 = dec.p.mixed_part().homogeneous_part(2 * dec.k);
  dec.ptilde = dec.q0.laplacian();

  double worst = std::numeric_limits<double>::infinity(), at = 0.0;
  for (int a = 0; a < kThetaGrid; ++a) {
    const double t = 2.0 * std::numbers::pi * a / kThetaGrid;
    const double v = dec.ptilde(std::polar(1.0, t));
    if (v < worst) worst = v, at = t;
  }
  if (!(worst > kPositivityFloor)) {
    throw DegenerateSingularity("leading Laplacian term is not positive definite: min " +
                                    std::to_string(worst) + " at theta=" + std::to_string(at),
                                at);
  }
  dec.tau0 = modulus(dec);
  return dec;
}

double modulus(const CanonicalDecomposition& dec) {
  double sum = 0.0;
  for (int a = 0; a < kThetaGrid; ++a) {
    const double t = 2.0 * std::numbers::pi * a / kThetaGrid;
    sum += dec.ptilde(std::polar(1.0, t));
  }
  const double mean = sum / kThetaGrid;
  if (!(mean > 0.0) || !std::isfinite(mean)) throw ConvergenceError("modulus: non-positive angular mean");
  return std::pow(mean / dec.k, -1.0 / (2.0 * dec.k));
}

double disk_mass(const Potential& p, double r) {
  const int angles = p.is_radial() ? 1 : 256;
  auto ring = [&](double rho) {
    double s = 0.0;
    for (int a = 0; a < angles; ++a) {
      const double t = 2.0 * std::numbers::pi * a / angles;
      s += p.laplacian(std::polar(rho, t));
    }
    // (1/pi) * 2 pi * angular mean * rho
    return 2.0 * rho * s / angles;
  };
  return integrate_panels(ring, 0.0, r, 4, 32);
}

double mesoscopic_scale(const Potential& p, int n) {
  if (n < 1) throw InputError("mesoscopic_scale: n must be at least 1");
  auto f = [&](double r) { return n * disk_mass(p, r) - 1.0; };
  double lo = 1.0, hi = 1.0;
  double flo = f(lo), fhi = flo;
  int guard = 0;
  if (flo < 0.0) {
    while (fhi < 0.0) {
      lo = hi, flo = fhi;
      hi *= 2.0;
      fhi = f(hi);
      if (++guard > 200 || !std::isfinite(fhi)) {
        throw ConvergenceError("mesoscopic_scale: no bracket, the Laplacian vanishes on the search range");
      }
    }
  } else {
    while (flo > 0.0) {
      hi = lo, fhi = flo;
      lo *= 0.5;
      flo = f(lo);
      if (++guard > 200) throw ConvergenceError("mesoscopic_scale: no bracket below r=1");
    }
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  std::uintmax_t iters = 200;
  auto tol = [](double a, double b) { return std::abs(a - b) <= 1e-13 * std::min(std::abs(a), std::abs(b)); };
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  if (iters >= 200) throw ConvergenceError("mesoscopic_scale: root finder did not converge");
  return 0.5 * (a + b);
}

Potential normalize_modulus(const Potential& p, const CanonicalDecomposition& dec) {
  return p.scaled(std::pow(dec.tau0, 2 * dec.k));
}

}  // namespace rnm
