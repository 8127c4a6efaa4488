#include <gtest/gtest.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <numbers>
#include <sstream>

#include <rnm/errors.hpp>
#include <rnm/experiments.hpp>

using namespace rnm;

namespace {

const SweepRow& row(const SweepReport& r, const std::string& prefix) {
  for (const auto& x : r.rows)
    if (x.parameter.rfind(prefix, 0) == 0) return x;
  throw std::runtime_error("no row " + prefix);
}

GridSpec small_grid(double half, int n) {
  GridSpec g;
  g.x0 = g.y0 = -half;
  g.x1 = g.y1 = half;
  g.nx = g.ny = n;
  return g;
}

Potential hom4() {
  HermitianPoly p(4);
  p.set(2, 2, 1.0);
  p.set(4, 0, 0.1);
  return Potential::polynomial(p);
}

}  // namespace

TEST(DiskNodes, CountAndRadius) {
  const auto nodes = disk_nodes({1.0, 5});
  EXPECT_EQ(nodes.size(), 13u);
  for (Complex z : nodes) EXPECT_LE(std::abs(z), 1.0 + 1e-12);
}

TEST(Universality, GinibreIsExponentiallyClose) {
  const SweepReport r = universality_sweep(Potential::radial({0.0, 1.0}), {10, 40});
  EXPECT_LT(row(r, "sup|Rn-R0| n=40").measured, 1e-8);
  EXPECT_TRUE(row(r, "final").pass);
}

TEST(Universality, HomogeneousDecreases) {
  const SweepReport r = universality_sweep(hom4(), {8, 16, 24}, {1.0, 9});
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.rows.size(), 7u);
}

TEST(Universality, EmptyListRejected) {
  EXPECT_THROW((void)universality_sweep(hom4(), {}), InputError);
}

TEST(AsymptoticTable, GinibreErrorVanishes) {
  const CanonicalDecomposition dec = canonical_decompose(Potential::radial({0.0, 1.0}));
  const SweepReport r = asymptotic_ratio_table(limiting_kernel(dec, 5.0), dec, {1.0, 2.0, 3.0});
  for (const auto& x : r.rows)
    if (x.parameter.rfind("e(x=", 0) == 0) EXPECT_LT(x.measured, 1e-12) << x.parameter;
}

TEST(AsymptoticTable, QuarticBoundHolds) {
  const CanonicalDecomposition dec = canonical_decompose(Potential::radial({0.0, 0.0, 1.0}));
  const SweepReport r = asymptotic_ratio_table(limiting_kernel(dec, 3.5), dec, {1.0, 2.0, 3.0});
  const SweepRow& b = row(r, "max R0(x)");
  EXPECT_TRUE(b.pass);
  EXPECT_EQ(b.oracle, Oracle::ReferenceValue);
  EXPECT_LT(row(r, "e(x=1").measured, 0.1);
  EXPECT_LT(row(r, "e(x=2").measured, 1e-5);
}

TEST(ScaleConvergence, ExactForPureHomogeneous) {
  for (const Potential& p : {Potential::radial({0.0, 1.0}), Potential::radial({0.0, 0.0, 1.0})}) {
    const SweepReport r = scale_convergence(p, {10, 100, 1000});
    for (const auto& x : r.rows)
      if (x.parameter.rfind("r_n", 0) == 0) EXPECT_NEAR(x.measured, 1.0, 1e-10);
    EXPECT_TRUE(row(r, "log-log").pass);
  }
}

TEST(ScaleConvergence, PerturbedSlopeWindow) {
  const SweepReport r = scale_convergence(Potential::radial({0.0, 0.0, 1.0, 0.1}), {10, 100, 1000, 10000});
  const SweepRow& s = row(r, "log-log");
  EXPECT_LT(s.measured, 0.0);
  EXPECT_NEAR(s.measured, -0.25, 0.3);
  EXPECT_TRUE(s.pass);
}

TEST(ScaleConvergence, NeedsTwoSizes) {
  EXPECT_THROW((void)scale_convergence(Potential::radial({0.0, 1.0}), {10}), InputError);
}

TEST(FieldGrid, Figure2RootAtOrigin) {
  const FieldGrid g = figure2_grid(small_grid(2.0, 21), 0.0);
  EXPECT_EQ(g.argmax(), Complex(0.0, 0.0));
  EXPECT_NEAR(g.max_value(), 0.79788456080286535588, 1e-12);
}

TEST(FieldGrid, Figure2RootOneDiagonal) {
  const FieldGrid g = figure2_grid(small_grid(2.0, 21), 1.0);
  EXPECT_EQ(g.grid.node(15, 10), Complex(1.0, 0.0));
  EXPECT_NEAR(g.at(15, 10), 2.1666309411753725968, 1e-12);
  EXPECT_EQ(g.metadata.at("root"), "1+0i");
}

TEST(FieldGrid, MittagLefflerDipThenPlateau) {
  const CanonicalDecomposition dec = canonical_decompose(Potential::radial({0.0, 0.0, 1.0}));
  const FieldGrid g = field_grid(limiting_kernel(dec, 3.0), Quantity::R0, small_grid(1.0, 21), &dec);
  EXPECT_NEAR(g.at(10, 10), 0.79788456080286535588, 1e-12);
  // R0 grows like 2|z|^2 away from the origin, so the origin is the minimum.
  double lo = 1e300;
  for (double v : g.values) lo = std::min(lo, v);
  EXPECT_EQ(lo, g.at(10, 10));
}

TEST(FieldGrid, Figure1Symmetries) {
  const FieldGrid g = figure1_grid(small_grid(1.5, 11), 40);
  for (int iy = 0; iy < 11; ++iy)
    for (int ix = 0; ix < 11; ++ix) {
      const double v = g.at(ix, iy);
      EXPECT_NEAR(v, g.at(10 - ix, 10 - iy), 1e-9 * std::max(1.0, v));
      EXPECT_NEAR(v, g.at(ix, 10 - iy), 1e-9 * std::max(1.0, v));
    }
  EXPECT_GT(g.at(10, 10), g.at(10, 5));
  EXPECT_EQ(g.metadata.at("quantity"), "R0");
}

TEST(FieldGrid, Figure2OriginRootQuarterTurn) {
  const FieldGrid g = figure2_grid(small_grid(1.5, 11), 0.0);
  for (int iy = 0; iy < 11; ++iy)
    for (int ix = 0; ix < 11; ++ix) EXPECT_NEAR(g.at(ix, iy), g.at(10 - iy, ix), 1e-12);
}

TEST(FieldGrid, WardResidualGridIsSmall) {
  const CanonicalDecomposition dec = canonical_decompose(Potential::radial({0.0, 0.0, 1.0}));
  const FieldGrid g = field_grid(limiting_kernel(dec, 3.0), Quantity::WardResidual, small_grid(0.8, 3), &dec);
  for (double v : g.values) EXPECT_LT(v, 5e-3);
  EXPECT_THROW((void)field_grid(limiting_kernel(dec, 3.0), Quantity::WardResidual, small_grid(0.8, 3), nullptr), InputError);
}

TEST(FieldGrid, JsonRoundTrip) {
  const FieldGrid g = figure2_grid(small_grid(1.0, 5), Complex(0.5, 0.25));
  std::stringstream buf;
  write_grid_json(buf, g);
  const FieldGrid r = read_grid_json(buf);
  EXPECT_EQ(r.values, g.values);
  EXPECT_EQ(r.metadata, g.metadata);
  EXPECT_EQ(r.quantity, g.quantity);
  EXPECT_EQ(r.grid.nx, 5);
  EXPECT_EQ(r.grid.x1, 1.0);
}

TEST(FieldGrid, CsvHasOneRowPerNode) {
  const FieldGrid g = figure2_grid(small_grid(1.0, 4), 0.0);
  std::ostringstream os;
  write_grid_csv(os, g);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "x,y,value");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 16);
}

TEST(Report, OracleNames) {
  EXPECT_EQ(to_string(Oracle::ClosedForm), "closed_form");
  EXPECT_EQ(to_string(Oracle::CrossQuadrature), "cross_quadrature");
  EXPECT_EQ(to_string(Oracle::ReferenceValue), "reference_value");
}

TEST(Report, JsonKeys) {
  SweepReport r;
  r.name = "demo";
  r.rows.push_back({"a", 1.0, 2.0, true, Oracle::ClosedForm, ""});
  r.rows.push_back({"b", 3.0, std::numeric_limits<double>::infinity(), true, Oracle::CrossQuadrature, "info"});
  std::ostringstream os;
  write_report_json(os, r, "command = \"sweep\"\n");
  const auto j = nlohmann::json::parse(os.str());
  EXPECT_EQ(j["name"], "demo");
  EXPECT_TRUE(j["pass"].get<bool>());
  ASSERT_EQ(j["rows"].size(), 2u);
  EXPECT_EQ(j["rows"][0]["measured"], 1.0);
  EXPECT_TRUE(j["rows"][1]["tolerance"].is_null());
  EXPECT_EQ(j["rows"][1]["note"], "info");
  EXPECT_EQ(j["config"], "command = \"sweep\"\n");
  r.rows[0].pass = false;
  EXPECT_FALSE(r.pass());
}
