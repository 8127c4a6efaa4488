#include "rnm/moments.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rnm/errors.hpp"
#include "rnm/gamma.hpp"
#include "rnm/gauss_legendre.hpp"
#include "rnm/parallel.hpp"

namespace rnm {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kTailDrop = 40.0;

double safe(double v) { return std::isnan(v) ? kNegInf : v; }

// Maximizer of g over r > 0 by a log-spaced scan refined with Brent.
std::pair<double, double> laplace_point(const std::function<double(double)>& g) {
  double best = kNegInf, best_u = -30.0;
  for (double u = -30.0; u <= 12.0; u += 0.25) {
    const double v = safe(g(std::exp(u)));
    if (v > best) best = v, best_u = u;
  }
  if (!std::isfinite(best)) throw ConvergenceError("radial integral: integrand is not finite anywhere");
  auto neg = [&](double u) { return -safe(g(std::exp(u))); };
  const auto [u, v] = boost::math::tools::brent_find_minima(neg, best_u - 0.25, best_u + 0.25, 52);
  if (-v >= best) return {std::exp(u), -v};
  return {std::exp(best_u), best};
}

// Integration window [a, b] outside of which g is below its peak by kTailDrop.
std::pair<double, double> window(const std::function<double(double)>& g, double rs, double gs) {
  const double h = 1e-3 * rs;
  const double g2 = (safe(g(rs + h)) - 2.0 * gs + safe(g(rs - h))) / (h * h);
  const double sigma = (g2 < 0.0 && std::isfinite(g2)) ? 1.0 / std::sqrt(-g2) : 0.5 * rs;
  double a = std::max(0.0, rs - 12.0 * sigma);
  double b = rs + 12.0 * sigma;
  int guard = 0;
  while (safe(g(b)) - gs > -kTailDrop) {
    b = rs + 2.0 * (b - rs);
    if (++guard > 200) throw ConvergenceError("radial integral: non-convergent tail");
  }
  while (a > 0.0 && safe(g(a)) - gs > -kTailDrop) a = std::max(0.0, rs - 2.0 * (rs - a));
  return {a, b};
}

void finish_diagonal(MomentMatrix& mm) {
  for (int j = 0; j <= mm.N; ++j) mm.scaled(j, j) = LComplex(1.0L, 0.0L);
}

MomentMatrix radial_moments(const WeightedMeasure& m, int N) {
  MomentMatrix mm;
  mm.N = N;
  mm.diagonal = true;
  mm.log_scale.assign(static_cast<std::size_t>(N + 1), 0.0);
  parallel_for(0, N + 1, [&](int j) { mm.log_scale[static_cast<std::size_t>(j)] = 0.5 * log_monomial_norm_sq(m, j); });
  mm.scaled = LMatrix::Zero(N + 1, N + 1);
  finish_diagonal(mm);
  return mm;
}

MomentMatrix homogeneous_moments(const HermitianPoly& hom, int N, int T) {
  const int d = hom.lowest_degree(0.0);
  const double k = d / 2.0;
  std::vector<double> logq(static_cast<std::size_t>(T));
  std::vector<LComplex> phase(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t) {
    const long double th = 2.0L * std::numbers::pi_v<long double> * t / T;
    phase[static_cast<std::size_t>(t)] = LComplex(std::cos(th), std::sin(th));
    const double q = hom(std::polar(1.0, static_cast<double>(th)));
    if (!(q > 0.0)) {
      throw DegenerateSingularity("homogeneous weight is not positive on the unit circle",
                                  static_cast<double>(th));
    }
    logq[static_cast<std::size_t>(t)] = std::log(q);
  }
  const int S = 2 * N + 1;
  // E[s][t] = exp(lw - max lw) with lw = -(s / 2k) log q, s = idx + 2.
  std::vector<std::vector<long double>> E(static_cast<std::size_t>(S));
  std::vector<double> log_pref(static_cast<std::size_t>(S));
  parallel_for(0, S, [&](int idx) {
    const double s = idx + 2.0;
    double mx = kNegInf;
    for (double lq : logq) mx = std::max(mx, -(s / d) * lq);
    auto& e = E[static_cast<std::size_t>(idx)];
    e.resize(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) e[static_cast<std::size_t>(t)] = std::exp(static_cast<long double>(-(s / d) * logq[static_cast<std::size_t>(t)] - mx));
    log_pref[static_cast<std::size_t>(idx)] = log_gamma(s / d) - std::log(k * T) + mx;
  });

  MomentMatrix mm;
  mm.N = N;
  mm.angular_points = T;
  mm.log_scale.assign(static_cast<std::size_t>(N + 1), 0.0);
  for (int j = 0; j <= N; ++j) {
    const auto& e = E[static_cast<std::size_t>(2 * j)];
    long double sum = 0.0L;
    for (long double v : e) sum += v;
    mm.log_scale[static_cast<std::size_t>(j)] =
        0.5 * (log_pref[static_cast<std::size_t>(2 * j)] + static_cast<double>(std::log(sum)));
  }
  mm.scaled = LMatrix::Zero(N + 1, N + 1);
  parallel_for(0, N + 1, [&](int i) {
    for (int j = 0; j < i; ++j) {
      const int idx = i + j;
      const auto& e = E[static_cast<std::size_t>(idx)];
      const int m = i - j;
      LComplex sum{};
      for (int t = 0; t < T; ++t) sum += phase[static_cast<std::size_t>((static_cast<long long>(m) * t) % T)] * e[static_cast<std::size_t>(t)];
      const long double f = std::exp(static_cast<long double>(log_pref[static_cast<std::size_t>(idx)]) -
                                     mm.log_scale[static_cast<std::size_t>(i)] - mm.log_scale[static_cast<std::size_t>(j)]);
      mm.scaled(i, j) = f * sum;
      mm.scaled(j, i) = std::conj(mm.scaled(i, j));
    }
  });
  finish_diagonal(mm);
  return mm;
}

// Per-ray log radial integrals I_s(theta) for s = 2 .. 2N+2 on a shared grid.
std::vector<double> ray_integrals(const WeightedMeasure& m, double theta, int N) {
  const Complex dir = std::polar(1.0, theta);
  const double s_max = 2.0 * N + 2.0;
  auto g = [&](double r) { return (s_max - 1.0) * std::log(r) - m.W(r * dir); };
  const auto [rs, gs] = laplace_point(g);
  auto [a, b] = window(g, rs, gs);
  // The lowest moment peaks further in; extend the window to the origin.
  a = 0.0;
  const int S = 2 * N + 1;
  const GaussRule& rule = gauss_legendre(32);
  auto eval = [&](int panels) {
    std::vector<double> logr, base;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = a + (p + 0.5) * h;
      for (std::size_t q = 0; q < rule.x.size(); ++q) {
        const double r = mid + 0.5 * h * rule.x[q];
        logr.push_back(std::log(r));
        base.push_back(std::log(0.5 * h * rule.w[q]) - m.W(r * dir));
      }
    }
    std::vector<double> out(static_cast<std::size_t>(S));
    std::vector<double> lv(logr.size());
    for (int idx = 0; idx < S; ++idx) {
      const double s = idx + 2.0;
      double mx = kNegInf;
      for (std::size_t q = 0; q < logr.size(); ++q) {
        lv[q] = safe(base[q] + (s - 1.0) * logr[q]);
        mx = std::max(mx, lv[q]);
      }
      double sum = 0.0;
      for (double v : lv) sum += std::exp(v - mx);
      out[static_cast<std::size_t>(idx)] = mx + std::log(sum);
    }
    return out;
  };
  int panels = 8;
  std::vector<double> prev = eval(panels);
  while (true) {
    panels *= 2;
    std::vector<double> cur = eval(panels);
    double change = 0.0;
    for (int idx = 0; idx < S; ++idx) change = std::max(change, std::abs(cur[static_cast<std::size_t>(idx)] - prev[static_cast<std::size_t>(idx)]));
    if (change < 1e-13) return cur;
    if (panels >= 1024) throw ConvergenceError("moment_matrix: ray integral did not converge");
    prev = std::move(cur);
  }
}

MomentMatrix assemble_general(const std::vector<std::vector<double>>& rays, int N) {
  const int T = static_cast<int>(rays.size());
  MomentMatrix mm;
  mm.N = N;
  mm.angular_points = T;
  mm.log_scale.assign(static_cast<std::size_t>(N + 1), 0.0);
  const double lw = std::log(2.0 / T);
  auto column = [&](int idx) {
    double mx = kNegInf;
    for (const auto& r : rays) mx = std::max(mx, r[static_cast<std::size_t>(idx)]);
    return mx;
  };
  std::vector<double> mx(rays.front().size());
  for (std::size_t idx = 0; idx < mx.size(); ++idx) mx[idx] = column(static_cast<int>(idx));
  for (int j = 0; j <= N; ++j) {
    const std::size_t idx = static_cast<std::size_t>(2 * j);
    long double sum = 0.0L;
    for (const auto& r : rays) sum += std::exp(static_cast<long double>(r[idx] - mx[idx]));
    mm.log_scale[static_cast<std::size_t>(j)] = 0.5 * (lw + mx[idx] + static_cast<double>(std::log(sum)));
  }
  mm.scaled = LMatrix::Zero(N + 1, N + 1);
  for (int i = 0; i <= N; ++i) {
    for (int j = 0; j < i; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i + j);
      LComplex sum{};
      for (int t = 0; t < T; ++t) {
        const long double th = 2.0L * std::numbers::pi_v<long double> * (static_cast<long long>(i - j) * t % T) / T;
        sum += LComplex(std::cos(th), std::sin(th)) *
               std::exp(static_cast<long double>(rays[static_cast<std::size_t>(t)][idx] - mx[idx]));
      }
      const long double f = std::exp(static_cast<long double>(lw + mx[idx]) - mm.log_scale[static_cast<std::size_t>(i)] -
                                     mm.log_scale[static_cast<std::size_t>(j)]);
      mm.scaled(i, j) = f * sum;
      mm.scaled(j, i) = std::conj(mm.scaled(i, j));
    }
  }
  finish_diagonal(mm);
  return mm;
}

MomentMatrix general_moments(const WeightedMeasure& m, int N, int T0, int T_max) {
  int T = T0;
  std::vector<std::vector<double>> rays(static_cast<std::size_t>(T));
  parallel_for(0, T, [&](int t) { rays[static_cast<std::size_t>(t)] = ray_integrals(m, 2.0 * std::numbers::pi * t / T, N); });
  MomentMatrix cur = assemble_general(rays, N);
  if (T >= T_max) return cur;
  while (T < T_max) {
    const int T2 = 2 * T;
    std::vector<std::vector<double>> finer(static_cast<std::size_t>(T2));
    for (int t = 0; t < T; ++t) finer[static_cast<std::size_t>(2 * t)] = std::move(rays[static_cast<std::size_t>(t)]);
    parallel_for(0, T, [&](int t) {
      finer[static_cast<std::size_t>(2 * t + 1)] = ray_integrals(m, 2.0 * std::numbers::pi * (2 * t + 1) / T2, N);
    });
    rays = std::move(finer);
    T = T2;
    MomentMatrix next = assemble_general(rays, N);
    long double diff = 0.0L;
    for (int i = 0; i <= N; ++i) {
      diff = std::max(diff, static_cast<long double>(std::abs(0.5 * (next.log_scale[static_cast<std::size_t>(i)] - cur.log_scale[static_cast<std::size_t>(i)]))));
      for (int j = 0; j <= N; ++j) diff = std::max(diff, std::abs(next.scaled(i, j) - cur.scaled(i, j)));
    }
    cur = std::move(next);
    if (diff < 1e-12L) return cur;
  }
  throw ConvergenceError("moment_matrix: angular resolution " + std::to_string(T_max) +
                         " did not converge");
}

}  // namespace

Complex MomentMatrix::entry(int i, int j) const {
  const long double f = std::exp(static_cast<long double>(log_scale[static_cast<std::size_t>(i)]) +
                                 log_scale[static_cast<std::size_t>(j)]);
  const LComplex v = f * scaled(i, j);
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

double log_radial_integral(const std::function<double(double)>& W, double s, double rel_tol) {
  if (!(s >= 1.0)) throw InputError("log_radial_integral: exponent must be at least 1");
  auto g = [&](double r) { return (s - 1.0) * std::log(r) - W(r); };
  const auto [rs, gs] = laplace_point(g);
  const auto [a, b] = window(g, rs, gs);
  auto f = [&](double r) {
    const double v = safe(g(r)) - gs;
    return std::exp(v);
  };
  const QuadResult res = integrate_adaptive(f, a, b, 32, rel_tol, 1, 8192);
  return gs + std::log(res.value);
}

double log_monomial_norm_sq(const WeightedMeasure& m, int j) {
  if (!m.is_radial()) throw InputError("monomial_norm_sq requires a radial weight");
  if (j < 0) throw InputError("monomial_norm_sq: negative degree");
  return std::log(2.0) + log_radial_integral([&](double r) { return m.W_radial(r); }, 2.0 * j + 2.0);
}

double monomial_norm_sq(const WeightedMeasure& m, int j) { return std::exp(log_monomial_norm_sq(m, j)); }

LMatrix cholesky_lower(const LMatrix& s, long double pivot_floor) {
  const int n = static_cast<int>(s.rows());
  LMatrix L = LMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    long double d = s(j, j).real();
    for (int l = 0; l < j; ++l) d -= std::norm(L(j, l));
    if (!(d > pivot_floor)) {
      throw RankDeficient("Cholesky pivot " + std::to_string(static_cast<double>(d)) + " below floor at index " +
                              std::to_string(j),
                          j);
    }
    const long double ljj = std::sqrt(d);
    L(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      LComplex v = s(i, j);
      for (int l = 0; l < j; ++l) v -= L(i, l) * std::conj(L(j, l));
      L(i, j) = v / ljj;
    }
  }
  return L;
}

void verify_psd(const MomentMatrix& m, double pivot_floor) {
  if (m.diagonal) {
    for (int j = 0; j <= m.N; ++j)
      if (!std::isfinite(m.log_scale[static_cast<std::size_t>(j)])) throw RankDeficient("non-finite diagonal moment", j);
    return;
  }
  (void)cholesky_lower(m.scaled, pivot_floor);
}

MomentMatrix moment_matrix(const WeightedMeasure& m, int N, const MomentOptions& opts) {
  if (N < 0) throw InputError("moment_matrix: negative degree");
  if (m.is_radial()) {
    MomentMatrix mm = radial_moments(m, N);
    verify_psd(mm, opts.pivot_floor);
    return mm;
  }
  if (const auto& hom = m.homogeneous_form()) {
    int T = opts.angular_points > 0 ? opts.angular_points : 4096;
    for (int attempt = 0;; ++attempt) {
      MomentMatrix mm = homogeneous_moments(*hom, N, T);
      try {
        verify_psd(mm, opts.pivot_floor);
        return mm;
      } catch (const RankDeficient&) {
        if (attempt == 1) throw;
        T *= 2;
      }
    }
  }
  if (opts.angular_points > 0) {
    MomentMatrix mm = general_moments(m, N, opts.angular_points, opts.angular_points);
    verify_psd(mm, opts.pivot_floor);
    return mm;
  }
  MomentMatrix mm = general_moments(m, N, 256, 4096);
  verify_psd(mm, opts.pivot_floor);
  return mm;
}

}  // namespace rnm
