#include "rnm/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "rnm/decomposition.hpp"
#include "rnm/errors.hpp"
#include "rnm/parallel.hpp"

namespace rnm {
namespace {

constexpr double kCoincidence = 1e-12;
constexpr double kAuditTol = 1e-8;
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

void put_u32(std::ostream& os, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) os.put(static_cast<char>((v >> (8 * b)) & 0xFF));
}

void put_u64(std::ostream& os, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) os.put(static_cast<char>((v >> (8 * b)) & 0xFF));
}

std::uint64_t get_le(std::istream& is, int bytes) {
  std::uint64_t v = 0;
  for (int b = 0; b < bytes; ++b) {
    const int c = is.get();
    if (c == std::char_traits<char>::eof()) throw InputError("sample dump is truncated");
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * b);
  }
  return v;
}

struct ChainOutput {
  std::vector<std::vector<Complex>> configs;
  ChainStats stats;
};

ChainOutput run_chain(const GibbsEnsemble& ens, const McmcOptions& opts, int c, double droplet, double step0) {
  const int n = ens.n;
  const Potential& q = ens.potential;
  ChainRng rng(ens.seed, c);
  std::vector<Complex> z(static_cast<std::size_t>(n));
  // Sunflower start inside the droplet, jittered so chains differ.
  for (int j = 0; j < n; ++j) {
    const double r = droplet * std::sqrt((j + 0.5) / n);
    const double t = 2.399963229728653 * j + 0.1 * rng.normal();
    z[static_cast<std::size_t>(j)] = std::polar(r, t);
  }
  double energy = gibbs_energy(z, q, n);
  if (!std::isfinite(energy)) throw ConvergenceError("mcmc_run: initial energy is not finite");

  ChainOutput out;
  double step = step0;
  long long window_acc = 0, window_total = 0, acc = 0, total = 0;
  for (int sweep = 0; sweep < opts.sweeps; ++sweep) {
    for (int i = 0; i < n; ++i) {
      const Complex old = z[static_cast<std::size_t>(i)];
      const Complex prop = old + step * Complex(rng.normal(), rng.normal());
      const double u = rng.uniform();
      double dh = static_cast<double>(n) * (q(prop) - q(old));
      bool clash = false;
      for (int k = 0; k < n; ++k) {
        if (k == i) continue;
        const Complex zk = z[static_cast<std::size_t>(k)];
        const double dnew = std::abs(prop - zk);
        if (dnew < kCoincidence) {
          clash = true;
          break;
        }
        dh -= 2.0 * (std::log(dnew) - std::log(std::abs(old - zk)));
      }
      const bool ok = !clash && std::isfinite(dh) && metropolis_accept(dh, u);
      if (ok) {
        z[static_cast<std::size_t>(i)] = prop;
        energy += dh;
      }
      if (sweep < opts.burn_in) {
        window_acc += ok;
        ++window_total;
      } else {
        acc += ok;
        ++total;
      }
    }
    if (sweep < opts.burn_in && (sweep + 1) % 10 == 0) {
      const double rate = static_cast<double>(window_acc) / static_cast<double>(window_total);
      if (rate < 0.3) step *= 0.8;
      if (rate > 0.5) step *= 1.25;
      window_acc = window_total = 0;
    }
    if ((sweep + 1) % opts.audit_interval == 0) {
      const double full = gibbs_energy(z, q, n);
      const double err = std::abs(full - energy) / std::max(1.0, std::abs(full));
      out.stats.max_audit_error = std::max(out.stats.max_audit_error, err);
      if (err > kAuditTol) throw ConvergenceError("mcmc_run: cached energy drifted from recomputation");
      energy = full;
    }
    if (sweep >= opts.burn_in && (sweep - opts.burn_in) % opts.thin == 0) out.configs.push_back(z);
  }
  out.stats.acceptance = total > 0 ? static_cast<double>(acc) / static_cast<double>(total) : 0.0;
  out.stats.step = step;
  return out;
}

double bump_value(TestFunction::Bump kind, double u) {
  if (kind == TestFunction::Bump::Gaussian) return std::exp(-u);
  return u < 1.0 ? std::exp(-1.0 / (1.0 - u)) : 0.0;
}

// d bump / du.
double bump_slope(TestFunction::Bump kind, double u) {
  if (kind == TestFunction::Bump::Gaussian) return -std::exp(-u);
  if (u >= 1.0) return 0.0;
  const double v = 1.0 - u;
  return -std::exp(-1.0 / v) / (v * v);
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

ChainRng::ChainRng(std::uint64_t seed, int chain)
    : engine_(splitmix64(seed + kGolden * static_cast<std::uint64_t>(chain + 1))) {}

double ChainRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double ChainRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

bool metropolis_accept(double delta_h, double u) { return delta_h <= 0.0 || u < std::exp(-delta_h); }

double gibbs_energy(const std::vector<Complex>& z, const Potential& q, int n) {
  double e = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    e += n * q(z[j]);
    for (std::size_t k = j + 1; k < z.size(); ++k) {
      const double d = std::abs(z[j] - z[k]);
      if (d < kCoincidence) return std::numeric_limits<double>::infinity();
      e -= 2.0 * std::log(d);
    }
  }
  return e;
}

Samples mcmc_run(const GibbsEnsemble& ens, const McmcOptions& opts) {
  if (ens.beta != 1.0) throw InputError("mcmc_run: only beta = 1 is supported");
  if (ens.n < 1) throw InputError("mcmc_run: n must be at least 1");
  if (opts.sweeps <= opts.burn_in || opts.burn_in < 0) throw InputError("mcmc_run: need sweeps > burn_in >= 0");
  if (opts.chains < 1 || opts.thin < 1 || opts.audit_interval < 1) {
    throw InputError("mcmc_run: chains, thin and audit_interval must be positive");
  }
  const double droplet = mesoscopic_scale(ens.potential, 1);
  const double step0 = opts.initial_step > 0.0 ? opts.initial_step : 0.5 * mesoscopic_scale(ens.potential, ens.n);
  std::vector<ChainOutput> outs(static_cast<std::size_t>(opts.chains));
  parallel_for(0, opts.chains, [&](int c) { outs[static_cast<std::size_t>(c)] = run_chain(ens, opts, c, droplet, step0); });
  Samples s;
  s.n = ens.n;
  for (int c = 0; c < opts.chains; ++c) {
    auto& o = outs[static_cast<std::size_t>(c)];
    for (auto& cfg : o.configs) {
      s.configs.push_back(std::move(cfg));
      s.chain.push_back(c);
    }
    s.stats.push_back(o.stats);
  }
  return s;
}

int EmpiricalDensity::bin_of(Complex z) const {
  const double fx = (z.real() - grid.x0) / (grid.x1 - grid.x0);
  const double fy = (z.imag() - grid.y0) / (grid.y1 - grid.y0);
  if (!(fx >= 0.0 && fx < 1.0 && fy >= 0.0 && fy < 1.0)) return -1;
  const int ix = std::min(grid.nx - 1, static_cast<int>(fx * grid.nx));
  const int iy = std::min(grid.ny - 1, static_cast<int>(fy * grid.ny));
  return iy * grid.nx + ix;
}

Complex EmpiricalDensity::bin_center(int bin) const {
  const int ix = bin % grid.nx, iy = bin / grid.nx;
  return {grid.x0 + (ix + 0.5) * (grid.x1 - grid.x0) / grid.nx, grid.y0 + (iy + 0.5) * (grid.y1 - grid.y0) / grid.ny};
}

double EmpiricalDensity::bin_area() const {
  return (grid.x1 - grid.x0) / grid.nx * (grid.y1 - grid.y0) / grid.ny;
}

double integrated_autocorrelation(const std::vector<double>& x) {
  const std::size_t T = x.size();
  if (T < 2) return 1.0;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(T);
  double c0 = 0.0;
  for (double v : x) c0 += (v - mean) * (v - mean);
  c0 /= static_cast<double>(T);
  if (c0 <= 0.0) return 1.0;
  double tau = 1.0;
  for (std::size_t m = 1; m < T; ++m) {
    double cm = 0.0;
    for (std::size_t t = 0; t + m < T; ++t) cm += (x[t] - mean) * (x[t + m] - mean);
    cm /= static_cast<double>(T);
    tau += 2.0 * cm / c0;
    if (static_cast<double>(m) >= 5.0 * tau) break;
  }
  return std::max(tau, 1.0);
}

double chain_standard_error(const std::vector<double>& x, const std::vector<int>& chain) {
  if (x.size() != chain.size()) throw InputError("chain_standard_error: size mismatch");
  if (x.empty()) throw InputError("chain_standard_error: no samples");
  const int chains = *std::max_element(chain.begin(), chain.end()) + 1;
  std::vector<std::vector<double>> per(static_cast<std::size_t>(chains));
  for (std::size_t t = 0; t < x.size(); ++t) per[static_cast<std::size_t>(chain[t])].push_back(x[t]);
  const double total = static_cast<double>(x.size());
  double var = 0.0;
  for (const auto& xs : per) {
    if (xs.empty()) continue;
    const double T = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double v : xs) mean += v;
    mean /= T;
    double c0 = 0.0;
    for (double v : xs) c0 += (v - mean) * (v - mean);
    c0 /= T;
    const double w = T / total;
    var += w * w * c0 * integrated_autocorrelation(xs) / T;
  }
  return std::sqrt(var);
}

EmpiricalDensity empirical_density(const Samples& s, double r_n, const DensityGrid& grid) {
  if (s.configs.empty()) throw InputError("empirical_density: no samples");
  if (grid.nx < 1 || grid.ny < 1 || !(grid.x1 > grid.x0) || !(grid.y1 > grid.y0)) {
    throw InputError("empirical_density: malformed grid");
  }
  EmpiricalDensity d;
  d.grid = grid;
  d.n = s.n;
  d.r_n = r_n;
  d.samples = static_cast<long long>(s.size());
  const int bins = grid.nx * grid.ny;
  d.counts.assign(static_cast<std::size_t>(bins), 0);
  std::vector<std::vector<double>> series(static_cast<std::size_t>(bins), std::vector<double>(s.size(), 0.0));
  for (std::size_t t = 0; t < s.size(); ++t) {
    for (const Complex& zeta : s.configs[t]) {
      const int b = d.bin_of(zeta / r_n);
      if (b < 0) {
        ++d.outside;
        continue;
      }
      ++d.counts[static_cast<std::size_t>(b)];
      series[static_cast<std::size_t>(b)][t] += 1.0;
    }
  }
  const double scale = std::numbers::pi / d.bin_area();
  d.value.resize(static_cast<std::size_t>(bins));
  d.stderr_value.resize(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    d.value[static_cast<std::size_t>(b)] = static_cast<double>(d.counts[static_cast<std::size_t>(b)]) / static_cast<double>(d.samples) * scale;
    d.stderr_value[static_cast<std::size_t>(b)] = chain_standard_error(series[static_cast<std::size_t>(b)], s.chain) * scale;
  }
  return d;
}

Complex TestFunction::value(Complex zeta) const {
  const Complex d = zeta - center;
  const double u = std::norm(d) / (radius * radius);
  const double b = bump_value(bump, u);
  if (b == 0.0) return {};
  Complex p{};
  for (const auto& t : poly) p += t.c * std::pow(d, t.i) * std::pow(std::conj(d), t.j);
  return p * b;
}

Complex TestFunction::dz(Complex zeta) const {
  const Complex d = zeta - center;
  const double u = std::norm(d) / (radius * radius);
  const double b = bump_value(bump, u);
  const double db = bump_slope(bump, u);
  if (b == 0.0 && db == 0.0) return {};
  Complex p{}, dp{};
  for (const auto& t : poly) {
    const Complex dbar_j = std::pow(std::conj(d), t.j);
    p += t.c * std::pow(d, t.i) * dbar_j;
    if (t.i > 0) dp += t.c * static_cast<double>(t.i) * std::pow(d, t.i - 1) * dbar_j;
  }
  return dp * b + p * db * std::conj(d) / (radius * radius);
}

Complex ward_statistic(const std::vector<Complex>& z, const Potential& q, int n, const TestFunction& psi) {
  const std::size_t m = z.size();
  std::vector<Complex> v(m);
  for (std::size_t j = 0; j < m; ++j) v[j] = psi.value(z[j]);
  Complex one{}, two{}, three{};
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = j + 1; k < m; ++k) {
      if (v[j] == v[k]) continue;
      one += (v[j] - v[k]) / (z[j] - z[k]);
    }
    if (v[j] != Complex{}) two += static_cast<double>(n) * q.dz(z[j]) * v[j];
    three += psi.dz(z[j]);
  }
  return one - two + three;
}

WardEstimate ward_identity_mc(const GibbsEnsemble& ens, const TestFunction& psi, const Samples& s) {
  if (s.configs.empty()) throw InputError("ward_identity_mc: no samples");
  WardEstimate e;
  e.per_sample.resize(s.size());
  parallel_for(0, static_cast<int>(s.size()), [&](int t) {
    e.per_sample[static_cast<std::size_t>(t)] = ward_statistic(s.configs[static_cast<std::size_t>(t)], ens.potential, ens.n, psi);
  });
  std::vector<double> re(s.size()), im(s.size());
  for (std::size_t t = 0; t < s.size(); ++t) {
    e.mean += e.per_sample[t];
    re[t] = e.per_sample[t].real();
    im[t] = e.per_sample[t].imag();
  }
  e.mean /= static_cast<double>(s.size());
  e.stderr_re = chain_standard_error(re, s.chain);
  e.stderr_im = chain_standard_error(im, s.chain);
  return e;
}

void write_samples_csv(std::ostream& os, const Samples& s) {
  os << "sample,particle,re,im\n";
  os.precision(17);
  for (std::size_t t = 0; t < s.size(); ++t)
    for (std::size_t j = 0; j < s.configs[t].size(); ++j)
      os << t << ',' << j << ',' << s.configs[t][j].real() << ',' << s.configs[t][j].imag() << '\n';
}

void write_samples_binary(std::ostream& os, const Samples& s) {
  os.write("RNMS", 4);
  put_u32(os, 1);
  put_u32(os, static_cast<std::uint32_t>(s.n));
  put_u64(os, static_cast<std::uint64_t>(s.size()));
  for (const auto& cfg : s.configs) {
    for (const Complex& z : cfg) {
      put_u64(os, std::bit_cast<std::uint64_t>(z.real()));
      put_u64(os, std::bit_cast<std::uint64_t>(z.imag()));
    }
  }
}

Samples read_samples_binary(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "RNMS", 4) != 0) throw InputError("not a sample dump (bad magic)");
  const auto version = get_le(is, 4);
  if (version != 1) throw InputError("unsupported sample dump version " + std::to_string(version));
  Samples s;
  s.n = static_cast<int>(get_le(is, 4));
  const auto count = get_le(is, 8);
  for (std::uint64_t t = 0; t < count; ++t) {
    std::vector<Complex> cfg(static_cast<std::size_t>(s.n));
    for (auto& z : cfg) {
      const double re = std::bit_cast<double>(get_le(is, 8));
      const double im = std::bit_cast<double>(get_le(is, 8));
      z = {re, im};
    }
    s.configs.push_back(std::move(cfg));
    s.chain.push_back(0);
  }
  return s;
}

}  // namespace rnm
