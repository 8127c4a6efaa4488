#include "rnm/ward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rnm/errors.hpp"
#include "rnm/gauss_legendre.hpp"
#include "rnm/moments.hpp"

namespace rnm {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kMaxDoublings = 6;

PolarRule initial_rule(const BerezinRow& row, const QuadSpec& q) {
  PolarRule rule;
  rule.center = row.root();
  rule.order = q.panel_order;
  rule.panels = q.panels;
  rule.angular = q.angular_points;
  if (q.outer_radius > 0.0) {
    rule.outer_radius = q.outer_radius;
  } else {
    const double threshold = 1e-3 * q.tolerance * std::min(1.0, std::exp(row.log_R()));
    rule.outer_radius = decay_radius([&](Complex w) { return row(w); }, row.root(), threshold);
  }
  return rule;
}

Complex cauchy_with(const BerezinRow& row, const PolarRule& rule) {
  const Complex z = row.root();
  const Complex raw = integrate_polar_raw<Complex>(rule, [&](double rho, double phi) {
    return row(z + std::polar(rho, phi)) * std::polar(1.0, -phi);
  });
  return -raw / std::numbers::pi;
}

double mass_with(const BerezinRow& row, const PolarRule& rule) {
  return integrate_disk<double>(rule, [&](Complex w) { return row(w); });
}

// Central-difference d-bar with one Richardson step.
template <class F>
Complex dbar(F&& f, Complex z, double h) {
  auto d = [&](double s) {
    const Complex dx = (f(z + s) - f(z - s)) / (2.0 * s);
    const Complex dy = (f(z + Complex(0, s)) - f(z - Complex(0, s))) / (2.0 * s);
    return 0.5 * (dx + Complex(0, 1) * dy);
  };
  return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

// Five-point dd-bar (a quarter of the Euclidean Laplacian).
template <class F>
double laplacian(F&& f, Complex z, double h) {
  return (f(z + h) + f(z - h) + f(z + Complex(0, h)) + f(z - Complex(0, h)) - 4.0 * f(z)) / (4.0 * h * h);
}

const SeriesKernel& require_series(const KernelRep& k, const char* what) {
  const SeriesKernel* s = k.series();
  if (!s) throw InputError(std::string(what) + " requires a rotation-invariant series kernel");
  return *s;
}

}  // namespace

QuadSpec QuadSpec::refined() const {
  QuadSpec r = *this;
  r.fd_step *= 0.5;
  r.panel_order *= 2;
  r.angular_points *= 2;
  r.tolerance *= 0.01;
  return r;
}

CauchyResult cauchy_transform_detail(const KernelRep& k, Complex z, const QuadSpec& q) {
  const BerezinRow row(k, z);
  PolarRule rule = initial_rule(row, q);
  Complex value = cauchy_with(row, rule);
  if (!q.adaptive) return {value, rule, 0.0};
  for (int it = 0; it < kMaxDoublings; ++it) {
    const PolarRule finer = rule.refined();
    const Complex next = cauchy_with(row, finer);
    const double change = std::abs(next - value);
    if (change < q.tolerance) return {value, rule, change};
    rule = finer;
    value = next;
  }
  throw ConvergenceError("cauchy_transform: tolerance not met after panel doubling");
}

Complex cauchy_transform(const KernelRep& k, Complex z, const QuadSpec& q) {
  return cauchy_transform_detail(k, z, q).value;
}

Complex cauchy_transform_fixed(const KernelRep& k, Complex z, const PolarRule& rule) {
  const BerezinRow row(k, z);
  PolarRule r = rule;
  r.center = z;
  return cauchy_with(row, r);
}

WardTerms ward_terms(const KernelRep& k, const CanonicalDecomposition& dec, Complex z, const QuadSpec& q) {
  const CauchyResult base = cauchy_transform_detail(k, z, q);
  // A fixed rule keeps the quadrature error a smooth function of z under differencing.
  PolarRule rule = base.rule;
  rule.outer_radius += 2.0 * q.fd_step;
  auto c = [&](Complex w) { return cauchy_transform_fixed(k, w, rule); };
  auto log_r = [&](Complex w) {
    const double v = k.log_R(w);
    if (!std::isfinite(v)) throw RootAtZero("R vanishes in the finite-difference neighbourhood");
    return v;
  };
  WardTerms t;
  t.r = std::exp(log_r(z));
  t.dbar_c = dbar(c, z, q.fd_step);
  t.laplacian_q0 = dec.laplacian_q0_scaled(z);
  t.laplacian_log_r = laplacian(log_r, z, q.fd_step);
  t.residual = std::abs(t.dbar_c - t.r + t.laplacian_q0 + t.laplacian_log_r);
  return t;
}

double ward_residual(const KernelRep& k, const CanonicalDecomposition& dec, Complex z, const QuadSpec& q) {
  return ward_terms(k, dec, z, q).residual;
}

std::vector<double> series_log_norms(const SeriesKernel& s) {
  std::vector<double> out(static_cast<std::size_t>(s.terms()));
  for (int j = 0; j < s.terms(); ++j) out[static_cast<std::size_t>(j)] = log_monomial_norm_sq(s.weight, j);
  return out;
}

std::pair<Complex, Complex> radial_cauchy_decomposition(const KernelRep& k, Complex z) {
  const SeriesKernel& s = require_series(k, "radial_cauchy_decomposition");
  if (z == Complex{}) throw InputError("radial_cauchy_decomposition: z must be nonzero");
  const double x = std::norm(z);
  auto integrand = [&](double t) {
    if (t <= 0.0) return std::exp(s.log_a[0] - s.weight.W_radial(0.0));
    const ScaledValue e = series_sum(s.log_a, t);
    return std::exp(e.log_scale - s.weight.W_radial(std::sqrt(t))) * e.value.real();
  };
  const QuadResult qa = integrate_adaptive(integrand, 0.0, x, 32, 1e-14, 1, 4096);
  const Complex A = qa.value / z;

  const auto log_norms = series_log_norms(s);
  std::vector<double> log_b(static_cast<std::size_t>(s.terms()), kNegInf);
  double partial = 0.0;
  for (int kk = 1; kk < s.terms(); ++kk) {
    const double aj = s.log_a[static_cast<std::size_t>(kk - 1)];
    if (aj != kNegInf) partial += std::exp(aj + log_norms[static_cast<std::size_t>(kk - 1)]);
    const double ak = s.log_a[static_cast<std::size_t>(kk)];
    if (ak != kNegInf && partial > 0.0) log_b[static_cast<std::size_t>(kk - 1)] = ak + std::log(partial);
  }
  // sum_k a_k c_k x^{k-1}, c_k = sum_{j<k} a_j ||z^j||^2, as a series in x.
  const ScaledValue num = series_sum(log_b, x);
  const ScaledValue den = series_sum(s.log_a, x);
  const Complex B = std::conj(z) * std::exp(num.log_scale - den.log_scale) * num.value.real() / den.value.real();
  return {A, B};
}

double coefficient_condition_defect(const KernelRep& k, int kmax) {
  const SeriesKernel& s = require_series(k, "coefficient_condition_defect");
  if (kmax < 1 || kmax > s.terms()) {
    throw InputError("coefficient_condition_defect: kmax must lie in [1, " + std::to_string(s.terms()) + "]");
  }
  double partial = 0.0, worst = 0.0;
  for (int kk = 1; kk <= kmax; ++kk) {
    const double aj = s.log_a[static_cast<std::size_t>(kk - 1)];
    if (aj != kNegInf) partial += std::exp(aj + log_monomial_norm_sq(s.weight, kk - 1));
    worst = std::max(worst, std::abs(partial - kk));
  }
  return worst;
}

double berezin_mass(const KernelRep& k, Complex z, const QuadSpec& q) {
  const BerezinRow row(k, z);
  PolarRule rule = initial_rule(row, q);
  double value = mass_with(row, rule);
  if (!q.adaptive) return value;
  for (int it = 0; it < kMaxDoublings; ++it) {
    const PolarRule finer = rule.refined();
    const double next = mass_with(row, finer);
    if (std::abs(next - value) < q.tolerance) return next;
    rule = finer;
    value = next;
  }
  throw ConvergenceError("berezin_mass: tolerance not met after panel doubling");
}

double mass_one_defect(const KernelRep& k, Complex z, const QuadSpec& q) {
  if (const SeriesKernel* s = k.series()) {
    const double x = std::norm(z);
    const double lx = std::log(x);
    std::vector<double> lt(static_cast<std::size_t>(s->terms()), kNegInf);
    double mx = kNegInf;
    for (int j = 0; j < s->terms(); ++j) {
      const double la = s->log_a[static_cast<std::size_t>(j)];
      if (la == kNegInf) continue;
      const double v = j == 0 ? la : (x == 0.0 ? kNegInf : la + j * lx);
      lt[static_cast<std::size_t>(j)] = v;
      mx = std::max(mx, v);
    }
    if (mx == kNegInf) throw RootAtZero("mass_one_defect: L(z, z) vanishes");
    double num = 0.0, den = 0.0;
    for (int j = 0; j < s->terms(); ++j) {
      const double v = lt[static_cast<std::size_t>(j)];
      if (v == kNegInf) continue;
      const double t = std::exp(v - mx);
      const double an = std::exp(s->log_a[static_cast<std::size_t>(j)] + log_monomial_norm_sq(s->weight, j));
      den += t;
      num += t * (1.0 - an);
    }
    (void)series_sum(s->log_a, x);
    return num / den;
  }
  return 1.0 - berezin_mass(k, z, q);
}

}  // namespace rnm
