#include "rnm/kernel.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "rnm/errors.hpp"
#include "rnm/gamma.hpp"

namespace rnm {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kTruncation = 1e-14;
const double kLogRootFloor = std::log(1e-300);

LComplex finite_rank_sum(const std::vector<LComplex>& a, const std::vector<LComplex>& b) {
  LComplex s{};
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * std::conj(b[j]);
  return s;
}

Complex gauge_value(const std::vector<Complex>& h, Complex z) {
  Complex s{}, zp{1.0, 0.0};
  for (const auto& c : h) {
    s += c * zp;
    zp *= z;
  }
  return s;
}

double log_abs(LComplex v) {
  const long double a = std::abs(v);
  return a > 0.0L ? static_cast<double>(std::log(a)) : kNegInf;
}

}  // namespace

double SeriesKernel::a(int j) const { return std::exp(log_a[static_cast<std::size_t>(j)]); }

ScaledValue series_sum(const std::vector<double>& log_a, Complex u) {
  const int n = static_cast<int>(log_a.size());
  if (n == 0) return {0.0, Complex{}};
  const bool zero = u == Complex{};
  const double lu = zero ? 0.0 : std::log(std::abs(u));
  auto log_term = [&](int j) {
    const double la = log_a[static_cast<std::size_t>(j)];
    if (la == kNegInf) return kNegInf;
    if (j == 0) return la;
    return zero ? kNegInf : la + j * lu;
  };
  double mx = kNegInf;
  int last = -1;
  for (int j = 0; j < n; ++j) {
    mx = std::max(mx, log_term(j));
    if (log_a[static_cast<std::size_t>(j)] != kNegInf) last = j;
  }
  if (mx == kNegInf) return {0.0, Complex{}};
  const Complex unit = zero ? Complex(1.0, 0.0) : u / std::abs(u);
  Complex rot(1.0, 0.0);
  double majorant = 0.0;
  Complex sum{};
  for (int j = 0; j < n; ++j, rot *= unit) {
    const double v = log_term(j);
    if (v == kNegInf) continue;
    const double e = std::exp(v - mx);
    majorant += e;
    sum += e * rot;
  }
  if (last > 0 && !zero) {
    const double tail = std::exp(log_term(last) - mx);
    if (!(tail < kTruncation * majorant)) {
      std::ostringstream os;
      os << "series truncated at N=" << n - 1 << " is insufficient at |u|=" << std::abs(u)
         << " (last term ratio " << tail / majorant << ")";
      throw TruncationInsufficient(os.str());
    }
  }
  return {mx, sum};
}

int mittag_leffler_required_terms(int k, double tau0, double radius) {
  if (k < 1 || !(tau0 > 0.0) || !(radius > 0.0)) throw InputError("mittag_leffler_required_terms: bad arguments");
  const double lu = 2.0 * std::log(radius);
  double prev = kNegInf, log_sum = kNegInf;
  for (int j = 0; j < 100000; ++j) {
    const double lt = std::log(static_cast<double>(k)) + (2.0 * j + 2.0) * std::log(tau0) -
                      log_gamma((j + 1.0) / k) + j * lu;
    log_sum = std::max(log_sum, lt) + std::log1p(std::exp(-std::abs(log_sum - lt)));
    if (j > 0 && lt < prev && lt - log_sum < std::log(kTruncation) - 3.0) return j;
    prev = lt;
  }
  throw ConvergenceError("mittag_leffler_required_terms: no truncation found");
}

const SeriesKernel* KernelRep::series() const noexcept {
  if (const auto* s = std::get_if<SeriesKernel>(&form_)) return s;
  if (const auto* m = std::get_if<MittagLefflerKernel>(&form_)) return &m->series;
  return nullptr;
}

const WeightedMeasure& KernelRep::weight() const noexcept {
  if (const auto* s = series()) return s->weight;
  return std::get<FiniteRankKernel>(form_).weight;
}

Complex KernelRep::L(Complex z, Complex w) const {
  if (const auto* s = series()) {
    const ScaledValue v = series_sum(s->log_a, z * std::conj(w));
    return std::exp(v.log_scale) * v.value;
  }
  const auto& f = std::get<FiniteRankKernel>(form_);
  const LComplex k = finite_rank_sum(f.basis.evaluate(z), f.basis.evaluate(w));
  const Complex g = -0.5 * gauge_value(f.gauge, z) - 0.5 * std::conj(gauge_value(f.gauge, w));
  const LComplex e = std::exp(LComplex(g.real(), g.imag()));
  const LComplex v = k * e;
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

double KernelRep::log_L_diag(Complex z) const {
  if (const auto* s = series()) {
    const ScaledValue v = series_sum(s->log_a, std::norm(z));
    return v.value.real() > 0.0 ? v.log_scale + std::log(v.value.real()) : kNegInf;
  }
  const auto& f = std::get<FiniteRankKernel>(form_);
  const auto phi = f.basis.evaluate(z);
  return log_abs(finite_rank_sum(phi, phi)) - gauge_value(f.gauge, z).real();
}

double KernelRep::log_weight(Complex z) const {
  if (series()) return weight().W(z);
  const auto& f = std::get<FiniteRankKernel>(form_);
  return f.weight.W(z) - gauge_value(f.gauge, z).real();
}

Complex KernelRep::K(Complex z, Complex w) const {
  const WeightedMeasure& m = weight();
  const double half = -0.5 * m.W(z) - 0.5 * m.W(w);
  if (const auto* s = series()) {
    const ScaledValue v = series_sum(s->log_a, z * std::conj(w));
    return std::exp(v.log_scale + half) * v.value;
  }
  const auto& f = std::get<FiniteRankKernel>(form_);
  const LComplex k = finite_rank_sum(f.basis.evaluate(z), f.basis.evaluate(w));
  const LComplex v = k * std::exp(static_cast<long double>(half));
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

double KernelRep::log_R(Complex z) const {
  if (series()) return log_L_diag(z) - weight().W(z);
  const auto& f = std::get<FiniteRankKernel>(form_);
  const auto phi = f.basis.evaluate(z);
  return log_abs(finite_rank_sum(phi, phi)) - f.weight.W(z);
}

double KernelRep::log_berezin_numerator(Complex z, Complex w) const {
  if (const auto* s = series()) {
    const ScaledValue v = series_sum(s->log_a, z * std::conj(w));
    const double a = std::abs(v.value);
    return a > 0.0 ? 2.0 * (v.log_scale + std::log(a)) - s->weight.W(w) : kNegInf;
  }
  const auto& f = std::get<FiniteRankKernel>(form_);
  return 2.0 * log_abs(finite_rank_sum(f.basis.evaluate(z), f.basis.evaluate(w))) - f.weight.W(w);
}

std::string KernelRep::describe() const {
  std::ostringstream os;
  if (const auto* m = std::get_if<MittagLefflerKernel>(&form_)) {
    os << "mittag-leffler k=" << m->k << " tau0=" << m->tau0 << " N=" << m->N;
  } else if (const auto* s = std::get_if<SeriesKernel>(&form_)) {
    os << "series N=" << s->terms() - 1 << " weight=" << s->weight.label();
  } else {
    const auto& f = std::get<FiniteRankKernel>(form_);
    os << "finite-rank N=" << f.basis.N << " weight=" << f.weight.label();
    if (f.n > 0) os << " n=" << f.n << " r_n=" << f.r_n;
  }
  return os.str();
}

BerezinRow::BerezinRow(const KernelRep& k, Complex z) : k_(&k), z_(z) {
  if (const auto* f = k.finite_rank()) {
    phi_z_ = f->basis.evaluate(z);
    log_kzz_ = log_abs(finite_rank_sum(phi_z_, phi_z_));
    log_R_ = log_kzz_ - f->weight.W(z);
  } else {
    log_kzz_ = k.log_L_diag(z);
    log_R_ = log_kzz_ - k.weight().W(z);
  }
  if (!(log_R_ > kLogRootFloor)) {
    std::ostringstream os;
    os << "R vanishes at the root z=" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    throw RootAtZero(os.str());
  }
}

double BerezinRow::operator()(Complex w) const {
  if (const auto* f = k_->finite_rank()) {
    const double ln = 2.0 * log_abs(finite_rank_sum(phi_z_, f->basis.evaluate(w))) - f->weight.W(w);
    return std::exp(ln - log_kzz_);
  }
  return std::exp(k_->log_berezin_numerator(z_, w) - log_kzz_);
}

KernelRep series_kernel_from_measure(const WeightedMeasure& m, int N) {
  if (!m.is_radial()) throw InputError("series kernel requires a radial weight");
  if (N < 0) throw InputError("series kernel: negative truncation");
  SeriesKernel s;
  s.weight = m;
  s.log_a.resize(static_cast<std::size_t>(N + 1));
  for (int j = 0; j <= N; ++j) s.log_a[static_cast<std::size_t>(j)] = -log_monomial_norm_sq(m, j);
  return KernelRep(std::move(s));
}

KernelRep mittag_leffler_kernel(int k, double tau0, int N) {
  if (k < 1 || !(tau0 > 0.0) || N < 0) throw InputError("mittag_leffler_kernel: need k >= 1, tau0 > 0, N >= 0");
  MittagLefflerKernel ml;
  ml.k = k;
  ml.tau0 = tau0;
  ml.N = N;
  std::vector<double> b(static_cast<std::size_t>(k + 1), 0.0);
  b[static_cast<std::size_t>(k)] = std::pow(tau0, 2 * k);
  ml.series.weight = WeightedMeasure::radial_poly(b);
  ml.series.tau0 = tau0;
  ml.series.k = k;
  ml.series.log_a.resize(static_cast<std::size_t>(N + 1));
  for (int j = 0; j <= N; ++j) {
    ml.series.log_a[static_cast<std::size_t>(j)] =
        std::log(static_cast<double>(k)) + (2.0 * j + 2.0) * std::log(tau0) - log_gamma((j + 1.0) / k);
  }
  return KernelRep(std::move(ml));
}

KernelRep gram_bergman_kernel(const WeightedMeasure& m, int N) {
  FiniteRankKernel f;
  f.basis = orthonormalize(moment_matrix(m, N));
  f.weight = m;
  return KernelRep(std::move(f));
}

KernelRep finite_n_kernel(const Potential& p, int n, const CanonicalDecomposition& dec,
                          const FiniteNOptions& opts) {
  if (n < 1) throw InputError("finite_n_kernel: n must be at least 1");
  if (!p.is_radial() && n > opts.n_cap) {
    throw InputError("finite_n_kernel: n=" + std::to_string(n) + " exceeds the cap " +
                     std::to_string(opts.n_cap) + " for non-radial potentials");
  }
  FiniteRankKernel f;
  f.n = n;
  f.r_n = mesoscopic_scale(p, n);
  f.weight = WeightedMeasure::rescaled_finite_n(p, n, f.r_n);
  f.basis = orthonormalize(moment_matrix(f.weight, n - 1));
  f.gauge.resize(dec.h.size());
  double rp = 1.0;
  for (std::size_t m = 0; m < dec.h.size(); ++m) {
    f.gauge[m] = static_cast<double>(n) * dec.h[m] * rp;
    rp *= f.r_n;
  }
  return KernelRep(std::move(f));
}

double eval_R(const KernelRep& k, Complex z) { return k.R(z); }

double berezin(const KernelRep& k, Complex z, Complex w) { return BerezinRow(k, z)(w); }

}  // namespace rnm
