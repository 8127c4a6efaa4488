#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <rnm/potential.hpp>
#include <rnm/ward.hpp>

namespace rnmcli {

using rnm::Complex;

struct RemainderSpec {
  std::string kind = "log1p";
  double coeff = 0.0;
  double scale = 1.0;

  bool operator==(const RemainderSpec&) const = default;
};

/// Either a radial profile sum_m b_m r^{2m} or a Hermitian table of
/// [i, j, re, im] rows, plus remainder terms.
struct PotentialSpec {
  std::vector<double> radial;
  std::vector<std::array<double, 4>> coeffs;
  std::vector<RemainderSpec> remainders;

  bool empty() const { return radial.empty() && coeffs.empty(); }
  bool operator==(const PotentialSpec&) const = default;
};

struct GridConfig {
  double x0 = -2.0, x1 = 2.0, y0 = -2.0, y1 = 2.0;
  int nx = 41, ny = 41;

  bool operator==(const GridConfig&) const = default;
};

struct QuadConfig {
  double outer_radius = 0.0;
  int panel_order = 16;
  int panels = 8;
  int angular_points = 64;
  double tolerance = 1e-6;
  double fd_step = 1e-3;
  bool adaptive = true;

  rnm::QuadSpec spec() const;
  bool operator==(const QuadConfig&) const = default;
};

struct SamplerConfig {
  int particles = 32;
  int sweeps = 100000;
  int burn_in = 10000;
  int chains = 1;
  int thin = 10;
  int audit_interval = 10;
  std::uint64_t seed = 0;

  bool operator==(const SamplerConfig&) const = default;
};

struct RunConfig {
  std::string command;
  std::string target;  ///< grid quantity or sweep name
  int threads = 0;
  PotentialSpec potential;

  std::vector<int> n;
  int gram_degree = 48;
  std::vector<double> radii;
  Complex root;
  std::vector<Complex> points;
  double tolerance = 5e-3;
  double disk_radius = 1.2;
  int disk_points = 25;

  GridConfig grid;
  QuadConfig quad;
  SamplerConfig sampler;

  std::string out;
  std::string format;

  bool operator==(const RunConfig&) const = default;
};

/// Potential file: top-level `radial`, `coeffs` and `[[remainder]]` keys.
PotentialSpec parse_potential_spec(std::string_view toml_text);
PotentialSpec load_potential_spec(const std::string& path);
std::string serialize_potential_spec(const PotentialSpec& p);

/// Builds the potential. Throws rnm::InputError naming the offending entry.
rnm::Potential build_potential(const PotentialSpec& p);

/// Throws rnm::InputError on syntax errors, wrong types or unknown keys.
RunConfig parse_run_config(std::string_view toml_text);
RunConfig load_run_config(const std::string& path);
std::string serialize_run_config(const RunConfig& c);

/// "1", "-0.5i", "0.5+0.5i", "1e-3-2i".
Complex parse_complex(std::string_view s);
/// Comma-separated complex list.
std::vector<Complex> parse_complex_list(std::string_view s);
std::vector<int> parse_int_list(std::string_view s);
std::vector<double> parse_double_list(std::string_view s);

}  // namespace rnmcli
