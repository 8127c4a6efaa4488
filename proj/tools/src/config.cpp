#include "rnmcli/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#define TOML_ENABLE_FORMATTERS 1
#include <toml.hpp>

#include <rnm/errors.hpp>

namespace rnmcli {
namespace {

using rnm::InputError;

void check_keys(const toml::table& t, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [k, v] : t) {
    (void)v;
    if (!allowed.count(std::string(k.str()))) {
      throw InputError("unknown key '" + std::string(k.str()) + "' in " + where);
    }
  }
}

std::string path_of(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

double get_double(const toml::node& n, const std::string& what) {
  if (auto v = n.value<double>()) return *v;
  throw InputError(what + ": expected a number");
}

std::int64_t get_int(const toml::node& n, const std::string& what) {
  if (n.is_integer()) return n.as_integer()->get();
  throw InputError(what + ": expected an integer");
}

std::string get_string(const toml::node& n, const std::string& what) {
  if (auto v = n.value<std::string>()) return *v;
  throw InputError(what + ": expected a string");
}

bool get_bool(const toml::node& n, const std::string& what) {
  if (auto v = n.value<bool>()) return *v;
  throw InputError(what + ": expected a boolean");
}

const toml::array& get_array(const toml::node& n, const std::string& what) {
  if (const auto* a = n.as_array()) return *a;
  throw InputError(what + ": expected an array");
}

const toml::table& get_table(const toml::node& n, const std::string& what) {
  if (const auto* t = n.as_table()) return *t;
  throw InputError(what + ": expected a table");
}

Complex get_complex(const toml::node& n, const std::string& what) {
  if (n.is_string()) return parse_complex(*n.value<std::string>());
  const auto& a = get_array(n, what);
  if (a.size() != 2) throw InputError(what + ": expected [re, im]");
  return {get_double(*a.get(0), what), get_double(*a.get(1), what)};
}

template <class F>
void with(const toml::table& t, const char* key, F&& f) {
  if (const toml::node* n = t.get(key)) f(*n);
}

PotentialSpec potential_from(const toml::table& t, const std::string& where) {
  check_keys(t, {"radial", "coeffs", "remainder"}, where.empty() ? "potential" : where);
  PotentialSpec p;
  with(t, "radial", [&](const toml::node& n) {
    const std::string w = path_of(where, "radial");
    for (const auto& e : get_array(n, w)) p.radial.push_back(get_double(e, w));
  });
  with(t, "coeffs", [&](const toml::node& n) {
    const std::string w = path_of(where, "coeffs");
    std::size_t row = 0;
    for (const auto& e : get_array(n, w)) {
      const std::string wr = w + "[" + std::to_string(row++) + "]";
      const auto& a = get_array(e, wr);
      if (a.size() != 4) throw InputError(wr + ": expected [i, j, re, im]");
      std::array<double, 4> r{};
      for (std::size_t i = 0; i < 2; ++i) r[i] = static_cast<double>(get_int(*a.get(i), wr));
      for (std::size_t i = 2; i < 4; ++i) r[i] = get_double(*a.get(i), wr);
      p.coeffs.push_back(r);
    }
  });
  with(t, "remainder", [&](const toml::node& n) {
    const std::string w = path_of(where, "remainder");
    for (const auto& e : get_array(n, w)) {
      const auto& rt = get_table(e, w);
      check_keys(rt, {"kind", "coeff", "scale"}, w);
      RemainderSpec r;
      with(rt, "kind", [&](const toml::node& x) { r.kind = get_string(x, w + ".kind"); });
      with(rt, "coeff", [&](const toml::node& x) { r.coeff = get_double(x, w + ".coeff"); });
      with(rt, "scale", [&](const toml::node& x) { r.scale = get_double(x, w + ".scale"); });
      if (r.kind != "log1p") throw InputError(w + ": unsupported remainder kind '" + r.kind + "'");
      p.remainders.push_back(r);
    }
  });
  if (!p.radial.empty() && !p.coeffs.empty()) {
    throw InputError((where.empty() ? std::string("potential") : where) + ": give either radial or coeffs, not both");
  }
  return p;
}

toml::table potential_to(const PotentialSpec& p) {
  toml::table t;
  if (!p.radial.empty()) {
    toml::array a;
    for (double b : p.radial) a.push_back(b);
    t.insert("radial", a);
  }
  if (!p.coeffs.empty()) {
    toml::array a;
    for (const auto& r : p.coeffs) {
      a.push_back(toml::array{static_cast<std::int64_t>(r[0]), static_cast<std::int64_t>(r[1]), r[2], r[3]});
    }
    t.insert("coeffs", a);
  }
  if (!p.remainders.empty()) {
    toml::array a;
    for (const auto& r : p.remainders) a.push_back(toml::table{{"kind", r.kind}, {"coeff", r.coeff}, {"scale", r.scale}});
    t.insert("remainder", a);
  }
  return t;
}

toml::table parse_toml(std::string_view text) {
  try {
    return toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "TOML syntax error: " << e.description() << " (line " << e.source().begin.line << ")";
    throw InputError(os.str());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

double to_double(std::string_view s, std::string_view whole) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError("malformed number '" + std::string(whole) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(',', start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

rnm::QuadSpec QuadConfig::spec() const {
  rnm::QuadSpec q;
  q.outer_radius = outer_radius;
  q.panel_order = panel_order;
  q.panels = panels;
  q.angular_points = angular_points;
  q.tolerance = tolerance;
  q.fd_step = fd_step;
  q.adaptive = adaptive;
  return q;
}

PotentialSpec parse_potential_spec(std::string_view toml_text) { return potential_from(parse_toml(toml_text), ""); }

PotentialSpec load_potential_spec(const std::string& path) { return parse_potential_spec(read_file(path)); }

std::string serialize_potential_spec(const PotentialSpec& p) {
  std::ostringstream os;
  os << potential_to(p) << '\n';
  return os.str();
}

rnm::Potential build_potential(const PotentialSpec& p) {
  if (p.empty()) throw InputError("potential: neither radial nor coeffs given");
  rnm::Potential q;
  if (!p.radial.empty()) {
    q = rnm::Potential::radial(p.radial);
  } else {
    std::vector<rnm::PolyTerm> terms;
    for (std::size_t r = 0; r < p.coeffs.size(); ++r) {
      const auto& c = p.coeffs[r];
      if (c[0] < 0 || c[1] < 0) {
        throw InputError("potential.coeffs[" + std::to_string(r) + "]: negative exponent in entry (" +
                         std::to_string(static_cast<int>(c[0])) + ", " + std::to_string(static_cast<int>(c[1])) + ")");
      }
      terms.push_back({static_cast<int>(c[0]), static_cast<int>(c[1]), Complex(c[2], c[3])});
    }
    q = rnm::Potential::polynomial(rnm::HermitianPoly::from_terms(terms));
  }
  for (const auto& r : p.remainders) q = q.with_remainder({r.coeff, r.scale});
  return q;
}

RunConfig parse_run_config(std::string_view toml_text) {
  const toml::table t = parse_toml(toml_text);
  check_keys(t, {"command", "target", "threads", "potential", "params", "grid", "quad", "sampler", "output"}, "config");
  RunConfig c;
  with(t, "command", [&](const toml::node& n) { c.command = get_string(n, "command"); });
  with(t, "target", [&](const toml::node& n) { c.target = get_string(n, "target"); });
  with(t, "threads", [&](const toml::node& n) { c.threads = static_cast<int>(get_int(n, "threads")); });
  with(t, "potential", [&](const toml::node& n) { c.potential = potential_from(get_table(n, "potential"), "potential"); });
  with(t, "params", [&](const toml::node& n) {
    const auto& p = get_table(n, "params");
    check_keys(p, {"n", "gram_degree", "radii", "root", "points", "tolerance", "disk_radius", "disk_points"}, "params");
    with(p, "n", [&](const toml::node& x) {
      for (const auto& e : get_array(x, "params.n")) c.n.push_back(static_cast<int>(get_int(e, "params.n")));
    });
    with(p, "gram_degree", [&](const toml::node& x) { c.gram_degree = static_cast<int>(get_int(x, "params.gram_degree")); });
    with(p, "radii", [&](const toml::node& x) {
      for (const auto& e : get_array(x, "params.radii")) c.radii.push_back(get_double(e, "params.radii"));
    });
    with(p, "root", [&](const toml::node& x) { c.root = get_complex(x, "params.root"); });
    with(p, "points", [&](const toml::node& x) {
      for (const auto& e : get_array(x, "params.points")) c.points.push_back(get_complex(e, "params.points"));
    });
    with(p, "tolerance", [&](const toml::node& x) { c.tolerance = get_double(x, "params.tolerance"); });
    with(p, "disk_radius", [&](const toml::node& x) { c.disk_radius = get_double(x, "params.disk_radius"); });
    with(p, "disk_points", [&](const toml::node& x) { c.disk_points = static_cast<int>(get_int(x, "params.disk_points")); });
  });
  with(t, "grid", [&](const toml::node& n) {
    const auto& g = get_table(n, "grid");
    check_keys(g, {"x0", "x1", "y0", "y1", "nx", "ny"}, "grid");
    with(g, "x0", [&](const toml::node& x) { c.grid.x0 = get_double(x, "grid.x0"); });
    with(g, "x1", [&](const toml::node& x) { c.grid.x1 = get_double(x, "grid.x1"); });
    with(g, "y0", [&](const toml::node& x) { c.grid.y0 = get_double(x, "grid.y0"); });
    with(g, "y1", [&](const toml::node& x) { c.grid.y1 = get_double(x, "grid.y1"); });
    with(g, "nx", [&](const toml::node& x) { c.grid.nx = static_cast<int>(get_int(x, "grid.nx")); });
    with(g, "ny", [&](const toml::node& x) { c.grid.ny = static_cast<int>(get_int(x, "grid.ny")); });
  });
  with(t, "quad", [&](const toml::node& n) {
    const auto& q = get_table(n, "quad");
    check_keys(q, {"outer_radius", "panel_order", "panels", "angular_points", "tolerance", "fd_step", "adaptive"}, "quad");
    with(q, "outer_radius", [&](const toml::node& x) { c.quad.outer_radius = get_double(x, "quad.outer_radius"); });
    with(q, "panel_order", [&](const toml::node& x) { c.quad.panel_order = static_cast<int>(get_int(x, "quad.panel_order")); });
    with(q, "panels", [&](const toml::node& x) { c.quad.panels = static_cast<int>(get_int(x, "quad.panels")); });
    with(q, "angular_points", [&](const toml::node& x) { c.quad.angular_points = static_cast<int>(get_int(x, "quad.angular_points")); });
    with(q, "tolerance", [&](const toml::node& x) { c.quad.tolerance = get_double(x, "quad.tolerance"); });
    with(q, "fd_step", [&](const toml::node& x) { c.quad.fd_step = get_double(x, "quad.fd_step"); });
    with(q, "adaptive", [&](const toml::node& x) { c.quad.adaptive = get_bool(x, "quad.adaptive"); });
  });
  with(t, "sampler", [&](const toml::node& n) {
    const auto& s = get_table(n, "sampler");
    check_keys(s, {"particles", "sweeps", "burn_in", "chains", "thin", "audit_interval", "seed"}, "sampler");
    with(s, "particles", [&](const toml::node& x) { c.sampler.particles = static_cast<int>(get_int(x, "sampler.particles")); });
    with(s, "sweeps", [&](const toml::node& x) { c.sampler.sweeps = static_cast<int>(get_int(x, "sampler.sweeps")); });
    with(s, "burn_in", [&](const toml::node& x) { c.sampler.burn_in = static_cast<int>(get_int(x, "sampler.burn_in")); });
    with(s, "chains", [&](const toml::node& x) { c.sampler.chains = static_cast<int>(get_int(x, "sampler.chains")); });
    with(s, "thin", [&](const toml::node& x) { c.sampler.thin = static_cast<int>(get_int(x, "sampler.thin")); });
    with(s, "audit_interval", [&](const toml::node& x) { c.sampler.audit_interval = static_cast<int>(get_int(x, "sampler.audit_interval")); });
    with(s, "seed", [&](const toml::node& x) {
      const std::int64_t v = get_int(x, "sampler.seed");
      if (v < 0) throw InputError("sampler.seed: must be non-negative");
      c.sampler.seed = static_cast<std::uint64_t>(v);
    });
  });
  with(t, "output", [&](const toml::node& n) {
    const auto& o = get_table(n, "output");
    check_keys(o, {"path", "format"}, "output");
    with(o, "path", [&](const toml::node& x) { c.out = get_string(x, "output.path"); });
    with(o, "format", [&](const toml::node& x) { c.format = get_string(x, "output.format"); });
  });
  return c;
}

RunConfig load_run_config(const std::string& path) { return parse_run_config(read_file(path)); }

std::string serialize_run_config(const RunConfig& c) {
  toml::table t;
  t.insert("command", c.command);
  t.insert("target", c.target);
  t.insert("threads", c.threads);
  t.insert("potential", potential_to(c.potential));

  toml::table p;
  toml::array n;
  for (int v : c.n) n.push_back(v);
  p.insert("n", n);
  p.insert("gram_degree", c.gram_degree);
  toml::array radii;
  for (double v : c.radii) radii.push_back(v);
  p.insert("radii", radii);
  p.insert("root", toml::array{c.root.real(), c.root.imag()});
  toml::array pts;
  for (const auto& z : c.points) pts.push_back(toml::array{z.real(), z.imag()});
  p.insert("points", pts);
  p.insert("tolerance", c.tolerance);
  p.insert("disk_radius", c.disk_radius);
  p.insert("disk_points", c.disk_points);
  t.insert("params", p);

  t.insert("grid", toml::table{{"x0", c.grid.x0}, {"x1", c.grid.x1}, {"y0", c.grid.y0},
                               {"y1", c.grid.y1}, {"nx", c.grid.nx}, {"ny", c.grid.ny}});
  t.insert("quad", toml::table{{"outer_radius", c.quad.outer_radius},
                               {"panel_order", c.quad.panel_order},
                               {"panels", c.quad.panels},
                               {"angular_points", c.quad.angular_points},
                               {"tolerance", c.quad.tolerance},
                               {"fd_step", c.quad.fd_step},
                               {"adaptive", c.quad.adaptive}});
  t.insert("sampler", toml::table{{"particles", c.sampler.particles},
                                  {"sweeps", c.sampler.sweeps},
                                  {"burn_in", c.sampler.burn_in},
                                  {"chains", c.sampler.chains},
                                  {"thin", c.sampler.thin},
                                  {"audit_interval", c.sampler.audit_interval},
                                  {"seed", static_cast<std::int64_t>(c.sampler.seed)}});
  t.insert("output", toml::table{{"path", c.out}, {"format", c.format}});
  std::ostringstream os;
  os << t << '\n';
  return os.str();
}

Complex parse_complex(std::string_view s) {
  const std::string_view whole = s;
  s = trim(s);
  if (s.empty()) throw InputError("empty complex number");
  if (s.back() != 'i') return {to_double(s, whole), 0.0};
  s.remove_suffix(1);
  std::size_t split_at = 0;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split_at = i;
      break;
    }
  }
  const std::string_view re = s.substr(0, split_at);
  std::string_view im = s.substr(split_at);
  double imv = 0.0;
  if (im.empty() || im == "+") {
    imv = 1.0;
  } else if (im == "-") {
    imv = -1.0;
  } else {
    if (im.front() == '+') im.remove_prefix(1);
    imv = to_double(im, whole);
  }
  return {re.empty() ? 0.0 : to_double(re, whole), imv};
}

std::vector<Complex> parse_complex_list(std::string_view s) {
  std::vector<Complex> out;
  for (auto part : split(s)) out.push_back(parse_complex(part));
  return out;
}

std::vector<int> parse_int_list(std::string_view s) {
  std::vector<int> out;
  for (auto part : split(s)) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      throw InputError("malformed integer '" + std::string(part) + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<double> parse_double_list(std::string_view s) {
  std::vector<double> out;
  for (auto part : split(s)) out.push_back(to_double(part, part));
  return out;
}

}  // namespace rnmcli
