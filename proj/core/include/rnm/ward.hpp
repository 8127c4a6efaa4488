#pragma once

#include <utility>

#include "rnm/decomposition.hpp"
#include "rnm/kernel.hpp"
#include "rnm/planar.hpp"

namespace rnm {

/// Quadrature and finite-difference settings for planar integrals of B.
struct QuadSpec {
  /// Radius of the integration disk about the root; 0 picks it from the decay of B.
  double outer_radius = 0.0;
  int panel_order = 16;
  int panels = 8;
  int angular_points = 64;
  /// Target change between successive doublings.
  double tolerance = 1e-6;
  /// Finite-difference step for d-bar and the Laplacian (Richardson-extrapolated).
  double fd_step = 1e-3;
  /// When false the rule is used as given, without doubling.
  bool adaptive = true;

  /// Halved fd step and doubled quadrature (order and angular points).
  QuadSpec refined() const;
};

struct CauchyResult {
  Complex value;
  PolarRule rule;  ///< rule that produced value
  double change = 0.0;
};

/// C(z) = int B(z, w) / (z - w) dA(w) in polar coordinates about z, where the
/// 1/|z - w| singularity cancels against the Jacobian.
CauchyResult cauchy_transform_detail(const KernelRep& k, Complex z, const QuadSpec& q = {});
Complex cauchy_transform(const KernelRep& k, Complex z, const QuadSpec& q = {});
/// Same integral with a fixed rule recentered at z (no adaptivity).
Complex cauchy_transform_fixed(const KernelRep& k, Complex z, const PolarRule& rule);

struct WardTerms {
  Complex dbar_c;
  double r = 0.0;
  double laplacian_q0 = 0.0;
  double laplacian_log_r = 0.0;
  double residual = 0.0;
};

/// |d-bar C - R + dd-bar_z[Q0(tau0 z)] + dd-bar log R| with all terms.
WardTerms ward_terms(const KernelRep& k, const CanonicalDecomposition& dec, Complex z,
                     const QuadSpec& q = {});
double ward_residual(const KernelRep& k, const CanonicalDecomposition& dec, Complex z,
                     const QuadSpec& q = {});

/// (A(z), B(z)) with C = A - B for a rotation-invariant kernel, z != 0.
std::pair<Complex, Complex> radial_cauchy_decomposition(const KernelRep& k, Complex z);

/// log ||z^j||^2 for j = 0 .. N-1 under the series weight.
std::vector<double> series_log_norms(const SeriesKernel& s);

/// max over 1 <= k <= kmax of |sum_{j<k} a_j ||z^j||^2 - k|.
double coefficient_condition_defect(const KernelRep& k, int kmax);

/// (L(z, z) - int |L(z, w)|^2 e^{-W_L(w)} dA(w)) / L(z, z).
double mass_one_defect(const KernelRep& k, Complex z, const QuadSpec& q = {});

/// int B(z, w) dA(w) by adaptive polar quadrature about z.
double berezin_mass(const KernelRep& k, Complex z, const QuadSpec& q = {});

}  // namespace rnm
