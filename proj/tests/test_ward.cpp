#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include <rnm/errors.hpp>
#include <rnm/experiments.hpp>
#include <rnm/kernel.hpp>
#include <rnm/ward.hpp>

using namespace rnm;

namespace {

const double kTau = std::pow(2.0, -0.25);

KernelRep ginibre() { return series_kernel_from_measure(WeightedMeasure::radial_poly({0.0, 1.0}), 120); }

KernelRep ml2(double radius) { return mittag_leffler_kernel(2, kTau, mittag_leffler_required_terms(2, kTau, radius)); }

CanonicalDecomposition quartic_decomposition() { return canonical_decompose(Potential::radial({0.0, 0.0, 1.0})); }

}  // namespace

TEST(Cauchy, GinibreVanishes) {
  const KernelRep k = ginibre();
  for (Complex z : {Complex(0, 0), Complex(0.5, 0.0), Complex(1.0, -1.0)}) EXPECT_LT(std::abs(cauchy_transform(k, z)), 1e-7);
}

// Reference values: 40-digit mpmath radial integrals of the Mittag-Leffler kernel.
TEST(Cauchy, QuarticFrozenValue) {
  const KernelRep k = ml2(3.5);
  EXPECT_NEAR(cauchy_transform(k, 1.0).real(), -0.35197850854551001278, 1e-6);
  EXPECT_NEAR(cauchy_transform(k, 1.0).imag(), 0.0, 1e-6);
  const auto [a, b] = radial_cauchy_decomposition(k, 1.0);
  EXPECT_NEAR(a.real(), 1.424660216656229247, 1e-12);
  EXPECT_NEAR((a - b).real(), -0.35197850854551001278, 1e-12);
}

TEST(Cauchy, RadialSplitMatchesQuadrature) {
  const KernelRep k = ml2(3.5);
  for (Complex z : {Complex(0.4, 0.3), Complex(-0.8, 0.9), Complex(0.0, 1.5)}) {
    const auto [a, b] = radial_cauchy_decomposition(k, z);
    EXPECT_LT(std::abs(cauchy_transform(k, z) - (a - b)), 1e-6) << z;
  }
}

TEST(Cauchy, RotationCovariance) {
  const KernelRep k = ml2(3.5);
  const Complex z(0.9, 0.2), e = std::polar(1.0, 0.7);
  EXPECT_LT(std::abs(cauchy_transform(k, z * e) - std::conj(e) * cauchy_transform(k, z)), 1e-6);
}

TEST(Cauchy, GinibreRadialSplit) {
  const Complex z(0.7, -0.4);
  const auto [a, b] = radial_cauchy_decomposition(ginibre(), z);
  EXPECT_LT(std::abs(a - std::conj(z)), 1e-12);
  EXPECT_LT(std::abs(b - std::conj(z)), 1e-12);
}

TEST(Cauchy, DbarOfInnerPartIsR) {
  const KernelRep k = ml2(3.5);
  const double h = 1e-4;
  for (Complex z : {Complex(1.0, 0.0), Complex(0.6, 0.8)}) {
    auto A = [&](Complex w) { return radial_cauchy_decomposition(k, w).first; };
    const Complex dbar = 0.5 * ((A(z + h) - A(z - h)) / (2.0 * h) + Complex(0, 1) * (A(z + Complex(0, h)) - A(z - Complex(0, h))) / (2.0 * h));
    EXPECT_NEAR(dbar.real(), k.R(z), 1e-6);
    EXPECT_NEAR(dbar.imag(), 0.0, 1e-6);
  }
}

TEST(Cauchy, InnerPartVanishesAtOrigin) {
  const KernelRep k = ml2(3.5);
  double prev = 1.0;
  for (double r : {1e-1, 1e-2, 1e-3}) {
    const double a = std::abs(radial_cauchy_decomposition(k, r).first);
    EXPECT_LT(a, prev);
    prev = a;
  }
  EXPECT_LT(prev, 1e-2);
  EXPECT_THROW((void)radial_cauchy_decomposition(k, 0.0), InputError);
}

TEST(Cauchy, BoundedOnGrid) {
  const KernelRep k = ml2(3.0);
  for (int iy = -2; iy <= 2; ++iy)
    for (int ix = -2; ix <= 2; ++ix) EXPECT_LT(std::abs(cauchy_transform(k, Complex(0.4 * ix, 0.4 * iy))), 5.0);
}

TEST(CoefficientCondition, BergmanSeriesSatisfiesIt) {
  EXPECT_LT(coefficient_condition_defect(ginibre(), 30), 1e-10);
  EXPECT_LT(coefficient_condition_defect(ml2(3.0), 30), 1e-10);
  const KernelRep s = series_kernel_from_measure(WeightedMeasure::radial_poly({0.0, 0.0, 1.0, 0.1}), 40);
  EXPECT_LT(coefficient_condition_defect(s, 40), 1e-10);
}

TEST(CoefficientCondition, PerturbedLeadingCoefficient) {
  const KernelRep ml = ml2(3.0);
  SeriesKernel s = *ml.series();
  s.log_a[0] += std::log(1.1);
  EXPECT_GE(coefficient_condition_defect(KernelRep(s), 30), 0.1 - 1e-12);
}

TEST(CoefficientCondition, KmaxRange) {
  EXPECT_THROW((void)coefficient_condition_defect(ml2(3.0), 0), InputError);
  EXPECT_THROW((void)coefficient_condition_defect(mittag_leffler_kernel(2, kTau, 10), 12), InputError);
}

TEST(MassOne, BergmanIsTight) {
  const KernelRep k = ml2(3.5);
  for (Complex z : {Complex(0, 0), Complex(0.5, 0.5)}) EXPECT_NEAR(mass_one_defect(k, z), 0.0, 1e-6);
}

TEST(MassOne, FiniteNIsTight) {
  const Potential p = Potential::radial({0.0, 0.0, 1.0});
  const KernelRep k = finite_n_kernel(p, 24, canonical_decompose(p));
  EXPECT_NEAR(mass_one_defect(k, Complex(0.3, 0.1)), 0.0, 1e-6);
}

TEST(MassOne, HalvedCoefficientIsPositive) {
  SeriesKernel s = *ml2(3.5).series();
  s.log_a[3] -= std::log(2.0);
  EXPECT_GT(mass_one_defect(KernelRep(s), 0.8), 1e-6);
}

TEST(MassOne, DroppedCoefficientIsNotNegative) {
  SeriesKernel s = *ml2(3.5).series();
  s.log_a[3] = -std::numeric_limits<double>::infinity();
  EXPECT_GE(mass_one_defect(KernelRep(s), 0.5), -1e-8);
}

TEST(WardResidual, GinibreIsSmall) {
  const CanonicalDecomposition dec = canonical_decompose(Potential::radial({0.0, 1.0}));
  for (Complex z : {Complex(0.3, 0.0), Complex(1.0, 0.5)}) EXPECT_LT(ward_residual(ginibre(), dec, z), 1e-5);
}

TEST(WardResidual, QuarticDecreasesUnderRefinement) {
  const KernelRep k = ml2(3.5);
  const CanonicalDecomposition dec = quartic_decomposition();
  const QuadSpec q;
  for (Complex z : {Complex(0.5, 0.0), Complex(1.0, 0.5)}) {
    const double coarse = ward_residual(k, dec, z, q);
    const double fine = ward_residual(k, dec, z, q.refined());
    EXPECT_LT(coarse, 5e-3);
    EXPECT_LT(fine, coarse);
  }
}

TEST(WardResidual, TermsAddUp) {
  const WardTerms t = ward_terms(ml2(3.5), quartic_decomposition(), Complex(0.7, 0.2));
  EXPECT_NEAR(std::abs(t.dbar_c - t.r + t.laplacian_q0 + t.laplacian_log_r), t.residual, 1e-15);
  EXPECT_NEAR(t.laplacian_q0, 4.0 * std::norm(Complex(0.7, 0.2)) * 0.5, 1e-12);
}

TEST(WardResidual, RootAtZero) {
  SeriesKernel s;
  s.weight = WeightedMeasure::radial_poly({0.0, 1.0});
  s.log_a = {-std::numeric_limits<double>::infinity(), 0.0};
  EXPECT_THROW((void)ward_residual(KernelRep(s), canonical_decompose(Potential::radial({0.0, 1.0})), 0.0), RootAtZero);
}

TEST(QuadSpec, Refined) {
  const QuadSpec q;
  const QuadSpec r = q.refined();
  EXPECT_DOUBLE_EQ(r.fd_step, q.fd_step / 2);
  EXPECT_EQ(r.panel_order, 2 * q.panel_order);
  EXPECT_EQ(r.angular_points, 2 * q.angular_points);
}
