#pragma once

#include <functional>
#include <optional>
#include <string>

#include "rnm/decomposition.hpp"
#include "rnm/potential.hpp"

namespace rnm {

/// Planar weight e^{-W(z)} against dA = Lebesgue / pi.
class WeightedMeasure {
 public:
  enum class Kind { Radial, Homogeneous, RescaledFiniteN };
  using Profile = std::function<double(double)>;

  /// Rotation-invariant weight with profile W(r).
  static WeightedMeasure radial(Profile w, std::string label = "radial");
  /// W(r) = sum_m b_m r^{2m}.
  static WeightedMeasure radial_poly(const std::vector<double>& b);
  /// W(z) = q0(tau0 z), q0 homogeneous of even degree and positive off 0.
  static WeightedMeasure homogeneous(HermitianPoly q0, double tau0);
  /// W(z) = n Q(r_n z).
  static WeightedMeasure rescaled_finite_n(const Potential& p, int n, double r_n);

  Kind kind() const noexcept { return kind_; }
  const std::string& label() const noexcept { return label_; }

  double W(Complex z) const;
  double density(Complex z) const { return std::exp(-W(z)); }

  /// True when W depends on |z| only.
  bool is_radial() const noexcept { return radial_; }
  /// W along the positive axis; meaningful for radial weights.
  double W_radial(double r) const { return W(Complex(r, 0.0)); }

  /// When W is a homogeneous polynomial of even degree, that polynomial.
  const std::optional<HermitianPoly>& homogeneous_form() const noexcept { return hom_; }

  int n() const noexcept { return n_; }
  double r_n() const noexcept { return r_n_; }
  const Potential* potential() const noexcept { return pot_ ? &*pot_ : nullptr; }

 private:
  Kind kind_ = Kind::Radial;
  std::string label_;
  Profile profile_;
  std::optional<HermitianPoly> hom_;
  std::optional<Potential> pot_;
  int n_ = 0;
  double r_n_ = 1.0;
  bool radial_ = true;
};

}  // namespace rnm
