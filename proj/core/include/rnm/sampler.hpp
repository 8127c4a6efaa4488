#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "rnm/potential.hpp"

namespace rnm {

/// Boltzmann-Gibbs law at beta = 1 for n particles in the potential Q.
struct GibbsEnsemble {
  int n = 1;
  Potential potential;
  std::uint64_t seed = 0;
  double beta = 1.0;
};

struct McmcOptions {
  int sweeps = 100000;
  int burn_in = 10000;
  int chains = 1;
  /// Record every thin-th sweep after burn-in.
  int thin = 10;
  /// Full-energy recomputation interval in sweeps.
  int audit_interval = 10;
  /// Initial proposal standard deviation; 0 picks half the mesoscopic scale.
  double initial_step = 0.0;
};

struct ChainStats {
  double acceptance = 0.0;  ///< after burn-in
  double step = 0.0;        ///< frozen proposal scale
  double max_audit_error = 0.0;
};

/// Thinned configurations in the original (unscaled) coordinates.
struct Samples {
  int n = 0;
  std::vector<std::vector<Complex>> configs;
  std::vector<int> chain;  ///< chain index per configuration
  std::vector<ChainStats> stats;

  std::size_t size() const { return configs.size(); }
};

/// splitmix64 finalizer; seeds chain c with splitmix64(seed + golden * (c + 1)).
std::uint64_t splitmix64(std::uint64_t x);

/// RNG stream used by chain `chain` of a run seeded with `seed`.
class ChainRng {
 public:
  ChainRng(std::uint64_t seed, int chain);
  /// (x >> 11) * 2^-53, in [0, 1).
  double uniform();
  /// Box-Muller standard normal.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Metropolis rule: accept when dH <= 0 or u < exp(-dH).
bool metropolis_accept(double delta_h, double u);

/// H = sum_{j != k} log 1/|z_j - z_k| + n sum_j Q(z_j), +inf on coincidences.
double gibbs_energy(const std::vector<Complex>& z, const Potential& q, int n);

/// Single-particle Gaussian-proposal Metropolis chains, run as parallel tasks.
Samples mcmc_run(const GibbsEnsemble& ens, const McmcOptions& opts);

struct DensityGrid {
  double x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;
  int nx = 10, ny = 10;
};

/// Histogram estimate of R_n in rescaled coordinates z = zeta / r_n.
struct EmpiricalDensity {
  DensityGrid grid;
  std::vector<long long> counts;
  std::vector<double> value;
  std::vector<double> stderr_value;
  long long outside = 0;
  long long samples = 0;
  int n = 0;
  double r_n = 1.0;

  /// Bin containing z, or -1.
  int bin_of(Complex z) const;
  Complex bin_center(int bin) const;
  double bin_area() const;
};

EmpiricalDensity empirical_density(const Samples& s, double r_n, const DensityGrid& grid);

/// Integrated autocorrelation time with Sokal's automatic window (c = 5).
double integrated_autocorrelation(const std::vector<double>& x);

/// Standard error of the mean of per-sample values grouped by chain.
double chain_standard_error(const std::vector<double>& x, const std::vector<int>& chain);

/// psi(zeta) = p(zeta - c) * bump(|zeta - c|^2 / radius^2), p a polynomial in
/// (zeta - c) and its conjugate.
struct TestFunction {
  enum class Bump { Compact, Gaussian };
  Bump bump = Bump::Gaussian;
  Complex center;
  double radius = 1.0;
  std::vector<PolyTerm> poly = {{0, 0, Complex(1.0, 0.0)}};

  Complex value(Complex zeta) const;
  /// Exact d/dzeta.
  Complex dz(Complex zeta) const;
};

struct WardEstimate {
  Complex mean;
  double stderr_re = 0.0;
  double stderr_im = 0.0;
  std::vector<Complex> per_sample;
};

/// W = I - II + III evaluated on one configuration.
Complex ward_statistic(const std::vector<Complex>& z, const Potential& q, int n, const TestFunction& psi);

/// Monte Carlo mean and standard error of W over the samples.
WardEstimate ward_identity_mc(const GibbsEnsemble& ens, const TestFunction& psi, const Samples& s);

/// CSV columns sample,particle,re,im.
void write_samples_csv(std::ostream& os, const Samples& s);
/// "RNMS", u32 version, u32 n, u64 samples, then little-endian (re, im) doubles.
void write_samples_binary(std::ostream& os, const Samples& s);
Samples read_samples_binary(std::istream& is);

}  // namespace rnm
