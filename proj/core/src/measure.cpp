#include "rnm/measure.hpp"

#include <cmath>

#include "rnm/errors.hpp"

namespace rnm {

WeightedMeasure WeightedMeasure::radial(Profile w, std::string label) {
  if (!w) throw InputError("radial measure: empty profile");
  WeightedMeasure m;
  m.kind_ = Kind::Radial;
  m.profile_ = std::move(w);
  m.label_ = std::move(label);
  m.radial_ = true;
  return m;
}

WeightedMeasure WeightedMeasure::radial_poly(const std::vector<double>& b) {
  HermitianPoly p = HermitianPoly::radial(b);
  WeightedMeasure m = radial([p](double r) { return p(Complex(r, 0.0)); }, "radial polynomial");
  const int d = p.lowest_degree(0.0);
  if (d > 0 && p.is_homogeneous(d)) m.hom_ = p;
  return m;
}

WeightedMeasure WeightedMeasure::homogeneous(HermitianPoly q0, double tau0) {
  const int d = q0.lowest_degree(0.0);
  if (d <= 0 || d % 2 == 1 || !q0.is_homogeneous(d, 1e-15)) {
    throw InputError("homogeneous measure needs a homogeneous polynomial of even positive degree");
  }
  WeightedMeasure m;
  m.kind_ = Kind::Homogeneous;
  m.hom_ = q0.scaled(tau0);
  m.label_ = "homogeneous";
  m.radial_ = q0.is_radial(1e-15);
  return m;
}

WeightedMeasure WeightedMeasure::rescaled_finite_n(const Potential& p, int n, double r_n) {
  if (n < 1 || !(r_n > 0.0)) throw InputError("finite-n measure needs n >= 1 and r_n > 0");
  WeightedMeasure m;
  m.kind_ = Kind::RescaledFiniteN;
  m.pot_ = p;
  m.n_ = n;
  m.r_n_ = r_n;
  m.label_ = "finite-n";
  m.radial_ = p.is_radial();
  if (p.is_polynomial()) {
    const HermitianPoly& t = p.taylor();
    const int d = t.lowest_degree(0.0);
    if (d > 0 && d % 2 == 0 && t.is_homogeneous(d)) m.hom_ = static_cast<double>(n) * t.scaled(r_n);
  }
  return m;
}

double WeightedMeasure::W(Complex z) const {
  switch (kind_) {
    case Kind::Radial:
      return profile_(std::abs(z));
    case Kind::Homogeneous:
      return (*hom_)(z);
    case Kind::RescaledFiniteN:
      if (hom_) return (*hom_)(z);
      return n_ * (*pot_)(r_n_ * z);
  }
  return 0.0;
}

}  // namespace rnm
