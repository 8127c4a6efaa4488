#include "rnm/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rnm/errors.hpp"

namespace rnm {

HermitianPoly log1p_taylor(const Log1pRemainder& r, int m_max) {
  std::vector<double> b(static_cast<std::size_t>(m_max + 1), 0.0);
  double am = 1.0;
  for (int m = 1; m <= m_max; ++m) {
    am *= r.scale;
    b[static_cast<std::size_t>(m)] = r.coeff * ((m % 2 == 1) ? 1.0 : -1.0) * am / m;
  }
  return HermitianPoly::radial(b);
}

Potential Potential::polynomial(HermitianPoly p) {
  Potential q;
  q.poly_ = std::move(p);
  q.poly_laplacian_ = q.poly_.laplacian();
  q.taylor_ = q.poly_;
  q.taylor_radius_ = std::numeric_limits<double>::infinity();
  q.radial_ = q.poly_.is_radial(1e-15);
  return q;
}

Potential Potential::radial(std::vector<double> b) {
  return polynomial(HermitianPoly::radial(b));
}

Potential Potential::general(HermitianPoly taylor, Evaluator full, double taylor_radius,
                             bool radial_flag) {
  if (!full) throw InputError("Potential::general: empty evaluator");
  Potential q;
  q.poly_ = taylor;
  q.poly_laplacian_ = taylor.laplacian();
  q.taylor_ = std::move(taylor);
  q.custom_ = std::move(full);
  q.taylor_radius_ = taylor_radius;
  q.radial_ = radial_flag;
  return q;
}

Potential Potential::with_remainder(const Log1pRemainder& r) const {
  if (custom_) throw InputError("remainder terms require a polynomial base potential");
  if (!(r.scale > 0.0) || !std::isfinite(r.coeff)) {
    throw InputError("log1p remainder needs scale > 0 and a finite coefficient");
  }
  Potential q = *this;
  q.remainders_.push_back(r);
  const int deg = std::max(4, taylor_.degree());
  q.taylor_ = taylor_ + log1p_taylor(r, deg / 2);
  q.taylor_radius_ = std::numeric_limits<double>::infinity();
  return q;
}

double Potential::operator()(Complex zeta) const {
  if (custom_) return custom_(zeta);
  double v = poly_(zeta);
  const double s = std::norm(zeta);
  for (const auto& r : remainders_) v += r.coeff * std::log1p(r.scale * s);
  return v;
}

double Potential::laplacian(Complex zeta, double fd_step) const {
  if (!custom_) {
    double v = poly_laplacian_(zeta);
    const double s = std::norm(zeta);
    for (const auto& r : remainders_) {
      const double d = 1.0 + r.scale * s;
      v += r.coeff * r.scale / (d * d);
    }
    return v;
  }
  if (std::abs(zeta) < taylor_radius_) return poly_laplacian_(zeta);
  const double h = fd_step * std::max(1.0, std::abs(zeta));
  if (!(h > 0.0) || zeta + h == zeta) throw ConvergenceError("laplacian: finite-difference step underflow");
  const double c = custom_(zeta);
  const double sum = custom_(zeta + h) + custom_(zeta - h) + custom_(zeta + Complex(0, h)) +
                     custom_(zeta - Complex(0, h)) - 4.0 * c;
  return sum / (4.0 * h * h);
}

Complex Potential::dz(Complex zeta) const {
  Complex v = poly_.dz(zeta);
  for (const auto& r : remainders_) {
    v += r.coeff * r.scale * std::conj(zeta) / (1.0 + r.scale * std::norm(zeta));
  }
  if (custom_ && std::abs(zeta) >= taylor_radius_) {
    const double h = 1e-5 * std::max(1.0, std::abs(zeta));
    const double dx = (custom_(zeta + h) - custom_(zeta - h)) / (2 * h);
    const double dy = (custom_(zeta + Complex(0, h)) - custom_(zeta - Complex(0, h))) / (2 * h);
    v = 0.5 * Complex(dx, -dy);
  }
  return v;
}

Potential Potential::scaled(double c) const {
  if (!(c > 0.0)) throw InputError("Potential::scaled: factor must be positive");
  Potential q = *this;
  q.poly_ *= c;
  q.poly_laplacian_ *= c;
  q.taylor_ *= c;
  for (auto& r : q.remainders_) r.coeff *= c;
  if (custom_) {
    auto f = custom_;
    q.custom_ = [f, c](Complex z) { return c * f(z); };
  }
  return q;
}

double Potential::growth_ratio(double radius) const {
  double worst = std::numeric_limits<double>::infinity();
  constexpr int kAngles = 16;
  for (int a = 0; a < kAngles; ++a) {
    const double t = 2.0 * std::numbers::pi * a / kAngles;
    const Complex z = std::polar(radius, t);
    worst = std::min(worst, (*this)(z) / std::log(radius * radius));
  }
  return worst;
}

bool Potential::satisfies_growth() const {
  for (double r : {1e2, 1e3, 1e4})
    if (!(growth_ratio(r) > 1.0)) return false;
  return true;
}

std::string Potential::describe() const {
  std::ostringstream os;
  os.precision(6);
  bool first = true;
  for (const auto& t : poly_.terms(0.0)) {
    if (t.i < t.j) continue;
    if (!first) os << " + ";
    first = false;
    if (t.i == t.j) {
      os << t.c.real() << "|z|^" << 2 * t.i;
    } else {
      os << "2Re[(" << t.c.real() << (t.c.imag() < 0 ? "-" : "+") << std::abs(t.c.imag())
         << "i) z^" << t.i << " zbar^" << t.j << "]";
    }
  }
  for (const auto& r : remainders_) {
    if (!first) os << " + ";
    first = false;
    os << r.coeff << "*log(1+" << r.scale << "|z|^2)";
  }
  if (custom_) os << (first ? "" : " + ") << "<custom>";
  if (first && !custom_) os << "0";
  return os.str();
}

}  // namespace rnm
