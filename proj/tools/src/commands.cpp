#include "rnmcli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include <rnm/errors.hpp>
#include <rnm/experiments.hpp>
#include <rnm/parallel.hpp>
#include <rnm/sampler.hpp>

namespace rnmcli {
namespace {

using rnm::InputError;

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string fmt(Complex z) {
  std::ostringstream os;
  os << std::setprecision(17) << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

std::string describe_poly(const rnm::HermitianPoly& p) {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms(1e-15)) {
    if (t.i < t.j) continue;
    os << (first ? "" : " ") << "c" << t.i << t.j << "=" << fmt(t.c);
    first = false;
  }
  return first ? "0" : os.str();
}

// Artifact stream: the --out file when given, else stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback, bool binary = false) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path, binary ? std::ios::binary : std::ios::out);
      if (!file_) throw InputError("cannot open '" + path + "' for writing");
      os_ = &file_;
    }
  }
  std::ostream& get() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

rnm::GridSpec grid_spec(const RunConfig& c) {
  if (c.grid.nx < 1 || c.grid.ny < 1) throw InputError("grid: nx and ny must be positive");
  return {c.grid.x0, c.grid.x1, c.grid.y0, c.grid.y1, c.grid.nx, c.grid.ny};
}

double grid_reach(const rnm::GridSpec& g) {
  double r = 0.0;
  for (double x : {g.x0, g.x1})
    for (double y : {g.y0, g.y1}) r = std::max(r, std::abs(Complex(x, y)));
  return r;
}

// Truncation radius for kernels evaluated at z, w with |z| <= a and |w| <= b.
double pair_radius(double a, double b) { return std::sqrt(std::max(a * b, std::max(a * a, 1.0))) + 0.5; }

// Reach of the Cauchy quadrature disk beyond the root.
constexpr double kCauchyReach = 8.0;

int cmd_decompose(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const rnm::Potential p = build_potential(c.potential);
  rnm::CanonicalDecomposition dec;
  try {
    dec = rnm::canonical_decompose(p);
  } catch (const rnm::DegenerateSingularity& e) {
    err << "error: degenerate singularity: " << e.what() << " (theta=" << fmt(e.theta()) << ")\n";
    return kUsageError;
  }
  const std::vector<int> ns = c.n.empty() ? std::vector<int>{10, 100, 1000} : c.n;
  Sink sink(c.out, out);
  std::ostream& os = sink.get();
  const bool growth = p.satisfies_growth();
  if (c.format == "json") {
    nlohmann::json j;
    j["potential"] = p.describe();
    j["k"] = dec.k;
    j["type"] = dec.sing_type;
    j["tau0"] = dec.tau0;
    j["regular"] = dec.regular;
    j["q0"] = describe_poly(dec.q0);
    j["ptilde"] = describe_poly(dec.ptilde);
    j["growth"] = growth;
    j["scales"] = nlohmann::json::array();
    for (int n : ns) {
      const double r = rnm::mesoscopic_scale(p, n);
      j["scales"].push_back({{"n", n}, {"r_n", r}, {"ratio", r * std::pow(n, 1.0 / (2.0 * dec.k)) / dec.tau0}});
    }
    j["config"] = serialize_run_config(c);
    os << j.dump(2) << '\n';
    return kPass;
  }
  os << "potential: " << p.describe() << '\n';
  if (dec.regular) os << "regular point (k=1): dd-bar Q(0) = " << fmt(p.laplacian(0.0)) << '\n';
  os << "k: " << dec.k << '\n';
  os << "type: " << dec.sing_type << '\n';
  os << "tau0: " << fmt(dec.tau0) << '\n';
  os << "Q0: " << describe_poly(dec.q0) << '\n';
  os << "Ptilde: " << describe_poly(dec.ptilde) << '\n';
  os << "H:";
  for (std::size_t m = 0; m < dec.h.size(); ++m)
    if (std::abs(dec.h[m]) > 1e-15) os << " h" << m << "=" << fmt(dec.h[m]);
  os << '\n';
  os << "growth: " << (growth ? "ok" : "violated") << '\n';
  os << "n r_n r_n*n^(1/2k)/tau0\n";
  for (int n : ns) {
    const double r = rnm::mesoscopic_scale(p, n);
    os << n << ' ' << fmt(r) << ' ' << fmt(r * std::pow(n, 1.0 / (2.0 * dec.k)) / dec.tau0) << '\n';
  }
  return kPass;
}

void write_grid(const RunConfig& c, rnm::FieldGrid g, std::ostream& out) {
  g.metadata["config"] = serialize_run_config(c);
  if (c.format == "json") {
    Sink sink(c.out, out);
    rnm::write_grid_json(sink.get(), g);
    return;
  }
  if (!c.format.empty() && c.format != "csv") throw InputError("grid: unknown format '" + c.format + "'");
  {
    Sink sink(c.out, out);
    rnm::write_grid_csv(sink.get(), g);
  }
  if (!c.out.empty()) {
    std::ofstream meta(c.out + ".json");
    if (!meta) throw InputError("cannot write '" + c.out + ".json'");
    nlohmann::json j;
    j["quantity"] = g.quantity;
    j["grid"] = {{"x0", g.grid.x0}, {"x1", g.grid.x1}, {"y0", g.grid.y0},
                 {"y1", g.grid.y1}, {"nx", g.grid.nx}, {"ny", g.grid.ny}};
    j["metadata"] = g.metadata;
    meta << j.dump(2) << '\n';
  }
}

int cmd_grid(const RunConfig& c, std::ostream& out) {
  const rnm::GridSpec spec = grid_spec(c);
  const double reach = grid_reach(spec);
  if (c.target == "figure1") {
    write_grid(c, rnm::figure1_grid(spec, c.gram_degree), out);
    return kPass;
  }
  if (c.target == "figure2") {
    write_grid(c, rnm::figure2_grid(spec, c.root), out);
    return kPass;
  }
  const rnm::Potential p = build_potential(c.potential);
  const rnm::CanonicalDecomposition dec = rnm::canonical_decompose(p);
  rnm::FieldOptions opts;
  opts.potential_label = p.describe();
  opts.root = c.root;
  opts.quad = c.quad.spec();
  if (c.target == "R0") {
    const rnm::KernelRep k = rnm::limiting_kernel(dec, pair_radius(reach, reach), c.gram_degree);
    write_grid(c, rnm::field_grid(k, rnm::Quantity::R0, spec, &dec, opts), out);
  } else if (c.target == "Rn") {
    const int n = c.n.empty() ? 32 : c.n.front();
    const rnm::KernelRep k = rnm::finite_n_kernel(p, n, dec);
    write_grid(c, rnm::field_grid(k, rnm::Quantity::Rn, spec, &dec, opts), out);
  } else if (c.target == "berezin") {
    const double a = std::max(reach, std::abs(c.root));
    const rnm::KernelRep k = rnm::limiting_kernel(dec, pair_radius(a, a), c.gram_degree);
    write_grid(c, rnm::field_grid(k, rnm::Quantity::Berezin, spec, &dec, opts), out);
  } else if (c.target == "ward") {
    const rnm::KernelRep k = rnm::limiting_kernel(dec, pair_radius(reach, reach + kCauchyReach), c.gram_degree);
    write_grid(c, rnm::field_grid(k, rnm::Quantity::WardResidual, spec, &dec, opts), out);
  } else {
    throw InputError("grid: unknown quantity '" + c.target + "' (figure1, figure2, R0, Rn, berezin, ward)");
  }
  return kPass;
}

int report(const RunConfig& c, const rnm::SweepReport& r, std::ostream& out) {
  Sink sink(c.out, out);
  rnm::write_report_json(sink.get(), r, serialize_run_config(c));
  return r.pass() ? kPass : kToleranceFailure;
}

int cmd_ward(const RunConfig& c, std::ostream& out) {
  const rnm::Potential p = build_potential(c.potential);
  const rnm::CanonicalDecomposition dec = rnm::canonical_decompose(p);
  const std::vector<Complex> pts = c.points.empty() ? std::vector<Complex>{{0.5, 0.0}, {1.0, 0.5}} : c.points;
  double reach = 0.0;
  for (const auto& z : pts) reach = std::max(reach, std::abs(z));
  const rnm::KernelRep k = rnm::limiting_kernel(dec, pair_radius(reach, reach + kCauchyReach), c.gram_degree);
  rnm::SweepReport r;
  r.name = "ward_residual";
  r.rows.resize(pts.size());
  const rnm::QuadSpec q = c.quad.spec();
  rnm::parallel_for(0, static_cast<int>(pts.size()), [&](int i) {
    const Complex z = pts[static_cast<std::size_t>(i)];
    const rnm::WardTerms t = rnm::ward_terms(k, dec, z, q);
    rnm::SweepRow& row = r.rows[static_cast<std::size_t>(i)];
    row.parameter = "z=" + fmt(z);
    row.measured = t.residual;
    row.tolerance = c.tolerance;
    row.pass = t.residual < c.tolerance;
    row.oracle = rnm::Oracle::CrossQuadrature;
    row.note = "dbarC=" + fmt(t.dbar_c) + " R=" + fmt(t.r) + " ddbarQ0=" + fmt(t.laplacian_q0) +
               " ddbarlogR=" + fmt(t.laplacian_log_r);
  });
  return report(c, r, out);
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
  const rnm::Potential p = build_potential(c.potential);
  if (c.target == "universality") {
    const rnm::DiskGrid g{c.disk_radius, c.disk_points};
    return report(c, rnm::universality_sweep(p, c.n.empty() ? std::vector<int>{16, 32, 64} : c.n, g), out);
  }
  if (c.target == "asymptotic") {
    const rnm::CanonicalDecomposition dec = rnm::canonical_decompose(p);
    const std::vector<double> radii = c.radii.empty() ? std::vector<double>{2.0, 3.0, 4.0} : c.radii;
    const double top = *std::max_element(radii.begin(), radii.end());
    const rnm::KernelRep k = rnm::limiting_kernel(dec, top + 0.5, c.gram_degree);
    return report(c, rnm::asymptotic_ratio_table(k, dec, radii), out);
  }
  if (c.target == "scale") {
    return report(c, rnm::scale_convergence(p, c.n.empty() ? std::vector<int>{10, 100, 1000, 10000} : c.n), out);
  }
  throw InputError("sweep: unknown sweep '" + c.target + "' (universality, asymptotic, scale)");
}

int cmd_sample(const RunConfig& c, std::ostream& out, std::ostream& err) {
  rnm::GibbsEnsemble ens;
  ens.n = c.n.empty() ? c.sampler.particles : c.n.front();
  ens.potential = build_potential(c.potential);
  ens.seed = c.sampler.seed;
  rnm::McmcOptions o;
  o.sweeps = c.sampler.sweeps;
  o.burn_in = c.sampler.burn_in;
  o.chains = c.sampler.chains;
  o.thin = c.sampler.thin;
  o.audit_interval = c.sampler.audit_interval;
  const rnm::Samples s = rnm::mcmc_run(ens, o);
  const bool binary = c.format == "binary";
  if (binary && c.out.empty()) throw InputError("sample: binary output needs --out");
  if (!binary && !c.format.empty() && c.format != "csv") throw InputError("sample: unknown format '" + c.format + "'");
  {
    Sink sink(c.out, out, binary);
    if (binary) {
      rnm::write_samples_binary(sink.get(), s);
    } else {
      rnm::write_samples_csv(sink.get(), s);
    }
  }
  const double r_n = rnm::mesoscopic_scale(ens.potential, ens.n);
  const rnm::EmpiricalDensity d = rnm::empirical_density(s, r_n, {-0.25, 0.25, -0.25, 0.25, 1, 1});
  nlohmann::json j;
  j["samples"] = s.size();
  j["n"] = ens.n;
  j["seed"] = ens.seed;
  j["r_n"] = r_n;
  j["density_at_0"] = {{"value", d.value[0]}, {"stderr", d.stderr_value[0]}};
  j["chains"] = nlohmann::json::array();
  for (const auto& st : s.stats) {
    j["chains"].push_back({{"acceptance", st.acceptance}, {"step", st.step}, {"max_audit_error", st.max_audit_error}});
  }
  (c.out.empty() ? err : out) << j.dump(2) << '\n';
  return kPass;
}

}  // namespace

int run_command(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.threads > 0) rnm::set_thread_count(c.threads);
    if (c.command == "decompose") return cmd_decompose(c, out, err);
    if (c.command == "grid") return cmd_grid(c, out);
    if (c.command == "ward") return cmd_ward(c, out);
    if (c.command == "sweep") return cmd_sweep(c, out);
    if (c.command == "sample") return cmd_sample(c, out, err);
    err << "error: unknown command '" << c.command << "'\n";
    return kUsageError;
  } catch (const rnm::DegenerateSingularity& e) {
    err << "error: degenerate singularity: " << e.what() << " (theta=" << fmt(e.theta()) << ")\n";
  } catch (const rnm::Error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsageError;
}

}  // namespace rnmcli
