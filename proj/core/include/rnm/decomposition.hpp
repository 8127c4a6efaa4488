#pragma once

#include <vector>

#include "rnm/potential.hpp"

namespace rnm {

/// Q = Q0 + Re H + Q1 about the origin.
struct CanonicalDecomposition {
  int k = 1;
  int sing_type = 0;       ///< 2k - 2
  double tau0 = 1.0;       ///< modulus
  HermitianPoly p;         ///< degree-2k Taylor polynomial
  HermitianPoly q0;        ///< homogeneous of degree 2k, mixed terms only
  HermitianPoly ptilde;    ///< dd-bar Q0, homogeneous of degree 2k - 2
  std::vector<Complex> h;  ///< H(zeta) = sum_m h[m] zeta^m, m <= 2k
  bool regular = false;    ///< dd-bar Q(0) != 0: ordinary bulk point, k = 1
  Potential potential;

  double re_h(Complex zeta) const;
  double q1(Complex zeta) const { return potential(zeta) - p(zeta); }
  /// Q0(tau0 z).
  double q0_scaled(Complex z) const;
  /// dd-bar_z [Q0(tau0 z)] = tau0^2 (dd-bar Q0)(tau0 z).
  double laplacian_q0_scaled(Complex z) const;
};

/// Number of angles used for the modulus integral and the positivity check.
inline constexpr int kThetaGrid = 4096;

/// Splits Q at the origin. Throws DegenerateSingularity when the leading
/// Laplacian part is not positive on the unit circle (or has odd degree).
CanonicalDecomposition canonical_decompose(const Potential& p);

/// tau0 from the angular mean of ptilde. Also stored by canonical_decompose.
double modulus(const CanonicalDecomposition& dec);

/// r_n with n * int_{D(0, r_n)} dd-bar Q dA = 1 (dA = Lebesgue / pi).
double mesoscopic_scale(const Potential& p, int n);

/// int_{D(0, r)} dd-bar Q dA, by polar Gauss-Legendre x trapezoid.
double disk_mass(const Potential& p, double r);

/// tau0^{2k} Q, whose modulus is 1.
Potential normalize_modulus(const Potential& p, const CanonicalDecomposition& dec);

}  // namespace rnm
