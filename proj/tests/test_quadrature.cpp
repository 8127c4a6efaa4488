#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <rnm/decomposition.hpp>
#include <rnm/errors.hpp>
#include <rnm/gamma.hpp>
#include <rnm/gauss_legendre.hpp>
#include <rnm/moments.hpp>

using namespace rnm;

namespace {

HermitianPoly figure1_q0() {
  HermitianPoly p(4);
  p.set(2, 2, 1.0);
  p.set(3, 1, -0.25);
  return p;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Gamma, ClassicalValues) {
  EXPECT_NEAR(gamma_fn(1.0), 1.0, 1e-15);
  EXPECT_NEAR(gamma_fn(0.5), std::sqrt(std::numbers::pi), 1e-15);
  EXPECT_NEAR(gamma_fn(0.5), 1.7724538509055160273, 1e-14);
}

// Reference values from 40-digit mpmath.
TEST(Gamma, FrozenReferenceValues) {
  EXPECT_LT(rel(gamma_fn(0.1), 9.5135076986687318363), 1e-13);
  EXPECT_LT(rel(gamma_fn(2.5), 1.3293403881791370205), 1e-13);
  EXPECT_LT(rel(gamma_fn(10.3), 716430.68906237524455), 1e-13);
  EXPECT_LT(rel(gamma_fn(33.7), 3.032162654739841602e+36), 1e-13);
  EXPECT_LT(rel(log_gamma(150.2), 601.01106392589222043), 1e-14);
}

TEST(Gamma, FunctionalEquation) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(1e-3, 50.0);
  for (int t = 0; t < 500; ++t) {
    const double x = u(rng);
    EXPECT_LT(rel(gamma_fn(x + 1.0), x * gamma_fn(x)), 1e-13) << "x=" << x;
  }
}

TEST(Gamma, LogGammaMatchesLogOfGamma) {
  for (double x : {0.05, 0.7, 3.3, 20.0, 120.5}) EXPECT_NEAR(log_gamma(x), std::log(gamma_fn(x)), 1e-13 * std::max(1.0, std::abs(log_gamma(x))));
  EXPECT_TRUE(std::isfinite(log_gamma(1e5)));
}

TEST(GaussLegendre, ExactForPolynomials) {
  for (int order : {4, 16, 32}) {
    const GaussRule& r = gauss_legendre(order);
    double wsum = 0.0;
    for (double w : r.w) wsum += w;
    EXPECT_NEAR(wsum, 2.0, 1e-14);
    const int deg = 2 * order - 2;
    double s = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::pow(r.x[i], deg);
    EXPECT_NEAR(s, 2.0 / (deg + 1), 1e-14);
  }
}

TEST(GaussLegendre, AdaptiveConverges) {
  const QuadResult q = integrate_adaptive([](double x) { return std::exp(-x * x); }, 0.0, 6.0, 16, 1e-14);
  EXPECT_NEAR(q.value, 0.5 * std::sqrt(std::numbers::pi) * std::erf(6.0), 1e-15);
}

TEST(MonomialNorm, GaussianWeight) {
  const WeightedMeasure m = WeightedMeasure::radial_poly({0.0, 1.0});
  EXPECT_NEAR(monomial_norm_sq(m, 0), 1.0, 1e-13);
  double fact = 1.0;
  for (int j = 1; j <= 30; ++j) {
    fact *= j;
    EXPECT_LT(rel(monomial_norm_sq(m, j), fact), 1e-12) << "j=" << j;
  }
}

TEST(MonomialNorm, QuarticWeight) {
  const WeightedMeasure m = WeightedMeasure::radial_poly({0.0, 0.0, 0.5});
  EXPECT_NEAR(monomial_norm_sq(m, 1), 1.0, 1e-13);
  for (int j = 0; j <= 40; ++j) {
    const double expect = std::pow(2.0, (j - 1) / 2.0) * std::tgamma((j + 1) / 2.0);
    EXPECT_LT(rel(monomial_norm_sq(m, j), expect), 1e-12) << "j=" << j;
  }
}

TEST(MonomialNorm, LogSpaceHandlesLargeDegrees) {
  const WeightedMeasure m = WeightedMeasure::radial_poly({0.0, 1.0});
  EXPECT_NEAR(log_monomial_norm_sq(m, 300), std::lgamma(301.0), 1e-10 * std::lgamma(301.0));
}

TEST(LogRadialIntegral, ClosedForm) {
  // int_0^inf r^{s-1} e^{-r^2} dr = Gamma(s/2) / 2.
  for (double s : {1.0, 2.0, 7.3, 150.0}) {
    EXPECT_NEAR(log_radial_integral([](double r) { return r * r; }, s), std::lgamma(s / 2.0) - std::log(2.0),
                1e-12 * std::max(1.0, std::lgamma(s / 2.0)));
  }
}

TEST(MomentMatrix, RadialIsDiagonal) {
  const WeightedMeasure m = WeightedMeasure::radial_poly({0.0, 0.0, 1.0, 0.1});
  const MomentMatrix mm = moment_matrix(m, 12);
  EXPECT_TRUE(mm.diagonal);
  for (int i = 0; i <= 12; ++i) {
    EXPECT_LT(rel(mm.entry(i, i).real(), monomial_norm_sq(m, i)), 1e-12);
    for (int j = 0; j <= 12; ++j)
      if (i != j) EXPECT_EQ(mm.entry(i, j), Complex{});
  }
}

TEST(MomentMatrix, HomogeneousParity) {
  const WeightedMeasure m = WeightedMeasure::homogeneous(figure1_q0(), std::pow(2.0, -0.25));
  const MomentMatrix mm = moment_matrix(m, 16);
  for (int i = 0; i <= 16; ++i) {
    for (int j = 0; j <= 16; ++j) {
      const Complex e(static_cast<double>(mm.scaled(i, j).real()), static_cast<double>(mm.scaled(i, j).imag()));
      if ((i - j) % 2 != 0) EXPECT_LT(std::abs(e), 1e-14) << i << "," << j;
      EXPECT_LT(std::abs(mm.scaled(i, j) - std::conj(mm.scaled(j, i))), 1e-15L);
    }
  }
  EXPECT_GT(std::abs(mm.scaled(2, 0)), 1e-3L);
  EXPECT_NO_THROW(verify_psd(mm));
}

TEST(MomentMatrix, HomogeneousGammaReduction) {
  HermitianPoly q(2);
  q.set(1, 1, 1.0);
  const MomentMatrix mm = moment_matrix(WeightedMeasure::homogeneous(q, 1.0), 3);
  EXPECT_NEAR(mm.entry(0, 0).real(), 1.0, 1e-13);
}

TEST(MomentMatrix, AngularDoublingChangesLittle) {
  const WeightedMeasure m = WeightedMeasure::homogeneous(figure1_q0(), std::pow(2.0, -0.25));
  MomentOptions a, b;
  a.angular_points = 4096;
  b.angular_points = 8192;
  const MomentMatrix ma = moment_matrix(m, 20, a), mb = moment_matrix(m, 20, b);
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) EXPECT_LT(std::abs(ma.scaled(i, j) - mb.scaled(i, j)), 1e-10L);
}

TEST(MomentMatrix, RescaledFiniteNIsPsd) {
  HermitianPoly p(4);
  p.set(2, 2, 1.0);
  p.set(4, 0, 0.1);
  const Potential q = Potential::polynomial(p);
  const double r = mesoscopic_scale(q, 20);
  const MomentMatrix mm = moment_matrix(WeightedMeasure::rescaled_finite_n(q, 20, r), 19);
  EXPECT_NO_THROW(verify_psd(mm));
  for (int i = 0; i <= 19; ++i) EXPECT_NEAR(static_cast<double>(mm.scaled(i, i).real()), 1.0, 1e-15);
}

TEST(MomentMatrix, GeneralPathResolutionDoubling) {
  const Potential q = Potential::radial({0.0, 0.0, 1.0, 0.1}).with_remainder({0.2, 1.0});
  HermitianPoly aniso(4);
  aniso.set(3, 1, 0.1);
  const Potential p = Potential::general(q.taylor() + aniso, [q, aniso](Complex z) { return q(z) + aniso(z); },
                                         std::numeric_limits<double>::infinity(), false);
  const double r = 0.5;
  const WeightedMeasure m = WeightedMeasure::rescaled_finite_n(p, 10, r);
  MomentOptions a, b;
  a.angular_points = 256;
  b.angular_points = 512;
  const MomentMatrix ma = moment_matrix(m, 8, a), mb = moment_matrix(m, 8, b);
  for (int i = 0; i <= 8; ++i)
    for (int j = 0; j <= 8; ++j) EXPECT_LT(std::abs(ma.scaled(i, j) - mb.scaled(i, j)), 1e-10L);
}

TEST(Cholesky, RejectsIndefinite) {
  LMatrix s(2, 2);
  s << 1.0L, 2.0L, 2.0L, 1.0L;
  try {
    (void)cholesky_lower(s, 1e-13L);
    FAIL();
  } catch (const RankDeficient& e) {
    EXPECT_EQ(e.index(), 1);
  }
}
