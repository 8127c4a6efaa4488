#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rnm/hermitian_poly.hpp"

namespace rnm {

/// Radial correction c * log(1 + a |zeta|^2), useful for non-polynomial tests.
struct Log1pRemainder {
  double coeff = 0.0;
  double scale = 1.0;
};

/// External potential Q: polynomial Taylor data plus an optional evaluator for
/// the full function.
class Potential {
 public:
  using Evaluator = std::function<double(Complex)>;

  Potential() = default;

  /// Pure polynomial potential; Taylor data is exact everywhere.
  static Potential polynomial(HermitianPoly p);
  /// Radial profile sum_m b_m r^{2m}.
  static Potential radial(std::vector<double> b);
  /// Arbitrary evaluator with Taylor data valid for |zeta| < taylor_radius.
  /// Outside that disk the Laplacian falls back to finite differences.
  static Potential general(HermitianPoly taylor, Evaluator full, double taylor_radius,
                           bool radial_flag);

  /// Adds a log1p remainder. Its Taylor series is merged into the Taylor data
  /// up to the current degree (at least 4).
  Potential with_remainder(const Log1pRemainder& r) const;

  const HermitianPoly& taylor() const noexcept { return taylor_; }
  const std::vector<Log1pRemainder>& remainders() const noexcept { return remainders_; }
  bool is_radial() const noexcept { return radial_; }
  bool is_polynomial() const noexcept { return !custom_ && remainders_.empty(); }
  /// Radius of the disk on which taylor() represents Q exactly.
  double taylor_radius() const noexcept { return taylor_radius_; }

  double operator()(Complex zeta) const;
  /// Q(r) for radial potentials; the angular argument is ignored.
  double radial_value(double r) const { return (*this)(Complex(r, 0.0)); }

  /// dd-bar Q at zeta (a quarter of the Euclidean Laplacian).
  double laplacian(Complex zeta, double fd_step = 1e-4) const;
  /// Holomorphic derivative dQ/dzeta of the polynomial and log1p parts.
  Complex dz(Complex zeta) const;

  /// c * Q.
  Potential scaled(double c) const;

  /// Smallest Q(zeta) / log|zeta|^2 over a few angles at each radius.
  double growth_ratio(double radius) const;
  /// Growth condition sampled at |zeta| = 1e2, 1e3, 1e4.
  bool satisfies_growth() const;

  /// Short human-readable description.
  std::string describe() const;

 private:
  HermitianPoly poly_;
  HermitianPoly poly_laplacian_;
  HermitianPoly taylor_;
  std::vector<Log1pRemainder> remainders_;
  Evaluator custom_;
  double taylor_radius_ = 0.0;
  bool radial_ = false;
};

/// Taylor series of c * log(1 + a x) in x = |zeta|^2, terms up to x^m_max.
HermitianPoly log1p_taylor(const Log1pRemainder& r, int m_max);

}  // namespace rnm
