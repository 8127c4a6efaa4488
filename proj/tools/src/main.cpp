#include <CLI11.hpp>
#include <iostream>

#include <rnm/errors.hpp>

#include "rnmcli/commands.hpp"
#include "rnmcli/config.hpp"

namespace {

struct Flags {
  std::string config, potential, n, points, root, radii, range, size, out, format;
  std::string target;
  std::uint64_t seed = 0;
  int threads = 0, gram_degree = 0, sweeps = 0, burn_in = 0, chains = 0, particles = 0;
  double tolerance = 0.0, fd_step = 0.0;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "TOML run configuration");
  sub->add_option("--potential", f.potential, "TOML potential file");
  sub->add_option("--threads", f.threads, "worker threads (default: RNM_THREADS or hardware)");
  sub->add_option("--out", f.out, "output path (default: stdout)");
  sub->add_option("--format", f.format, "csv, json or binary, depending on the command");
}

rnmcli::RunConfig resolve(const std::string& command, const CLI::App& sub, const Flags& f) {
  rnmcli::RunConfig c;
  if (!f.config.empty()) {
    c = rnmcli::load_run_config(f.config);
    if (!c.command.empty() && c.command != command) {
      throw rnm::InputError("config command '" + c.command + "' does not match '" + command + "'");
    }
  }
  c.command = command;
  auto given = [&](const char* name) { return sub.count(name) > 0; };
  if (!f.target.empty()) c.target = f.target;
  if (given("--potential")) c.potential = rnmcli::load_potential_spec(f.potential);
  if (given("--threads")) c.threads = f.threads;
  if (given("--out")) c.out = f.out;
  if (given("--format")) c.format = f.format;
  if (sub.get_option_no_throw("--n") && given("--n")) c.n = rnmcli::parse_int_list(f.n);
  if (sub.get_option_no_throw("--points") && given("--points")) c.points = rnmcli::parse_complex_list(f.points);
  if (sub.get_option_no_throw("--root") && given("--root")) c.root = rnmcli::parse_complex(f.root);
  if (sub.get_option_no_throw("--radii") && given("--radii")) c.radii = rnmcli::parse_double_list(f.radii);
  if (sub.get_option_no_throw("--seed") && given("--seed")) c.sampler.seed = f.seed;
  if (sub.get_option_no_throw("--gram-degree") && given("--gram-degree")) c.gram_degree = f.gram_degree;
  if (sub.get_option_no_throw("--tolerance") && given("--tolerance")) c.tolerance = f.tolerance;
  if (sub.get_option_no_throw("--fd-step") && given("--fd-step")) c.quad.fd_step = f.fd_step;
  if (sub.get_option_no_throw("--sweeps") && given("--sweeps")) c.sampler.sweeps = f.sweeps;
  if (sub.get_option_no_throw("--burn-in") && given("--burn-in")) c.sampler.burn_in = f.burn_in;
  if (sub.get_option_no_throw("--chains") && given("--chains")) c.sampler.chains = f.chains;
  if (sub.get_option_no_throw("--particles") && given("--particles")) c.sampler.particles = f.particles;
  if (sub.get_option_no_throw("--range") && given("--range")) {
    const auto r = rnmcli::parse_double_list(f.range);
    if (r.size() != 4) throw rnm::InputError("--range expects x0,x1,y0,y1");
    c.grid.x0 = r[0];
    c.grid.x1 = r[1];
    c.grid.y0 = r[2];
    c.grid.y1 = r[3];
  }
  if (sub.get_option_no_throw("--size") && given("--size")) {
    const auto s = rnmcli::parse_int_list(f.size);
    if (s.empty() || s.size() > 2) throw rnm::InputError("--size expects nx[,ny]");
    c.grid.nx = s[0];
    c.grid.ny = s.size() == 2 ? s[1] : s[0];
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rnmkit: kernels, Ward residuals and sweeps for bulk singularities of random normal matrices"};
  app.require_subcommand(1);
  Flags f;

  auto* decompose = app.add_subcommand("decompose", "canonical decomposition, modulus and mesoscopic scales");
  add_common(decompose, f);
  decompose->add_option("--n", f.n, "comma-separated n values for the r_n table");

  auto* grid = app.add_subcommand("grid", "evaluate a quantity on a rectangular grid");
  add_common(grid, f);
  grid->add_option("quantity", f.target, "figure1, figure2, R0, Rn, berezin or ward");
  grid->add_option("--root", f.root, "Berezin root, e.g. 1 or 0.5+0.5i");
  grid->add_option("--n", f.n, "n for the finite-n kernel");
  grid->add_option("--range", f.range, "x0,x1,y0,y1");
  grid->add_option("--size", f.size, "nx[,ny]");
  grid->add_option("--gram-degree", f.gram_degree, "Gram truncation degree for non-radial limits");
  grid->add_option("--fd-step", f.fd_step, "finite-difference step of the Ward residual");

  auto* ward = app.add_subcommand("ward", "Ward-equation residuals at points");
  add_common(ward, f);
  ward->add_option("--points", f.points, "comma-separated complex points");
  ward->add_option("--tolerance", f.tolerance, "pass threshold for each residual");
  ward->add_option("--fd-step", f.fd_step, "finite-difference step");
  ward->add_option("--gram-degree", f.gram_degree, "Gram truncation degree for non-radial limits");

  auto* sweep = app.add_subcommand("sweep", "universality, asymptotic or scale sweep report");
  add_common(sweep, f);
  sweep->add_option("name", f.target, "universality, asymptotic or scale");
  sweep->add_option("--n", f.n, "comma-separated n values");
  sweep->add_option("--radii", f.radii, "comma-separated radii for the asymptotic table");
  sweep->add_option("--gram-degree", f.gram_degree, "Gram truncation degree for non-radial limits");

  auto* sample = app.add_subcommand("sample", "Metropolis sampling of the Gibbs ensemble");
  add_common(sample, f);
  sample->add_option("--n", f.n, "particle count");
  sample->add_option("--particles", f.particles, "particle count");
  sample->add_option("--seed", f.seed, "64-bit seed");
  sample->add_option("--sweeps", f.sweeps, "total sweeps per chain");
  sample->add_option("--burn-in", f.burn_in, "burn-in sweeps");
  sample->add_option("--chains", f.chains, "independent chains");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : rnmcli::kUsageError;
  }

  for (auto* sub : app.get_subcommands()) {
    try {
      const rnmcli::RunConfig c = resolve(sub->get_name(), *sub, f);
      return rnmcli::run_command(c, std::cout, std::cerr);
    } catch (const rnm::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return rnmcli::kUsageError;
    }
  }
  return rnmcli::kUsageError;
}
