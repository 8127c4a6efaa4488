#pragma once

#include <Eigen/Core>
#include <complex>
#include <functional>
#include <vector>

#include "rnm/measure.hpp"

namespace rnm {

using LComplex = std::complex<long double>;
using LMatrix = Eigen::Matrix<LComplex, Eigen::Dynamic, Eigen::Dynamic>;

/// Moments M_ij = int z^i conj(z)^j dmu for 0 <= i, j <= N, stored as
/// M_ij = exp(s_i + s_j) * S_ij with s_j = log(M_jj) / 2 and unit-diagonal S.
struct MomentMatrix {
  int N = 0;
  std::vector<double> log_scale;
  LMatrix scaled;
  bool diagonal = false;
  /// Angular trapezoid points used (0 when the angular integral was exact).
  int angular_points = 0;

  int size() const { return N + 1; }
  /// Unscaled entry; overflows to inf for large degrees.
  Complex entry(int i, int j) const;
};

/// log of int_0^inf r^{s-1} e^{-W(r)} dr, Gauss-Legendre panels around the
/// Laplace point, doubled until the relative change is below rel_tol. Needs s >= 1.
double log_radial_integral(const std::function<double(double)>& W, double s,
                           double rel_tol = 1e-12);

/// log ||z^j||^2 = log(2 int_0^inf r^{2j+1} e^{-W(r)} dr). Radial weights only.
double log_monomial_norm_sq(const WeightedMeasure& m, int j);
double monomial_norm_sq(const WeightedMeasure& m, int j);

struct MomentOptions {
  /// Angular trapezoid points; 0 picks the default of the measure kind.
  int angular_points = 0;
  double pivot_floor = 1e-13;
};

/// Hermitian moment matrix up to degree N, verified PSD.
MomentMatrix moment_matrix(const WeightedMeasure& m, int N, const MomentOptions& opts = {});

/// Lower Cholesky factor of a Hermitian matrix. Throws RankDeficient with the
/// index of the first pivot below the floor.
LMatrix cholesky_lower(const LMatrix& s, long double pivot_floor);

/// Throws RankDeficient unless the scaled matrix passes the Cholesky gate.
void verify_psd(const MomentMatrix& m, double pivot_floor = 1e-13);

}  // namespace rnm
