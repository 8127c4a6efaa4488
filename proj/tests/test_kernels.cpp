#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <rnm/basis.hpp>
#include <rnm/errors.hpp>
#include <rnm/experiments.hpp>
#include <rnm/kernel.hpp>
#include <rnm/ward.hpp>

using namespace rnm;

namespace {

Potential hom4() {
  HermitianPoly p(4);
  p.set(2, 2, 1.0);
  p.set(4, 0, 0.1);
  return Potential::polynomial(p);
}

KernelRep figure1_gram(int N = 48) {
  const CanonicalDecomposition dec = canonical_decompose(figure1_potential());
  return gram_bergman_kernel(WeightedMeasure::homogeneous(dec.q0, dec.tau0), N);
}

KernelRep ml2(double radius = 3.0) {
  const double t = std::pow(2.0, -0.25);
  return mittag_leffler_kernel(2, t, mittag_leffler_required_terms(2, t, radius));
}

Complex random_point(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  return {u(rng), u(rng)};
}

double ginibre_rn(int n, Complex z) {
  const double x = std::norm(z);
  double term = 1.0, sum = 0.0;
  for (int j = 0; j < n; ++j) {
    sum += term;
    term *= x / (j + 1);
  }
  return std::exp(-x) * sum;
}

MomentMatrix dense_moments(const LMatrix& s) {
  MomentMatrix m;
  m.N = static_cast<int>(s.rows()) - 1;
  m.log_scale.assign(static_cast<std::size_t>(s.rows()), 0.0);
  m.scaled = s;
  return m;
}

}  // namespace

TEST(Orthonormalize, DiagonalMoments) {
  const MomentMatrix m = moment_matrix(WeightedMeasure::radial_poly({0.0, 1.0}), 6);
  const OrthonormalBasis b = orthonormalize(m);
  double fact = 1.0;
  for (int j = 0; j <= 6; ++j) {
    if (j > 0) fact *= j;
    EXPECT_NEAR(b.coeff(j, j).real(), 1.0 / std::sqrt(fact), 1e-12);
    for (int l = 0; l < j; ++l) EXPECT_EQ(b.coeff(j, l), Complex{});
  }
}

TEST(Orthonormalize, TwoByTwoGramSchmidt) {
  LMatrix s(2, 2);
  s << 1.0L, 0.5L, 0.5L, 1.0L;
  const MomentMatrix m = dense_moments(s);
  const OrthonormalBasis b = orthonormalize(m);
  const double c = 1.0 / std::sqrt(0.75);
  EXPECT_NEAR(b.coeff(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(b.coeff(1, 0).real(), -0.5 * c, 1e-15);
  EXPECT_NEAR(b.coeff(1, 1).real(), c, 1e-15);
  EXPECT_LT(orthonormality_defect(b, m), 1e-15);
}

TEST(Orthonormalize, NegativeEigenvalueIsRankDeficient) {
  LMatrix s(3, 3);
  s << 1.0L, 0.9L, 0.0L, 0.9L, 1.0L, 0.9L, 0.0L, 0.9L, 1.0L;
  try {
    (void)orthonormalize(dense_moments(s));
    FAIL() << "expected RankDeficient";
  } catch (const RankDeficient& e) {
    EXPECT_EQ(e.index(), 2);
  }
}

TEST(Orthonormalize, AnisotropicGramIsOrthonormal) {
  const CanonicalDecomposition dec = canonical_decompose(figure1_potential());
  const MomentMatrix m = moment_matrix(WeightedMeasure::homogeneous(dec.q0, dec.tau0), 40);
  EXPECT_LT(orthonormality_defect(orthonormalize(m), m), 1e-10);
}

TEST(FiniteN, GinibreAtOrigin) {
  const Potential g = Potential::radial({0.0, 1.0});
  const CanonicalDecomposition dec = canonical_decompose(g);
  for (int n : {1, 5, 20, 60}) EXPECT_NEAR(finite_n_kernel(g, n, dec).R(0.0), 1.0, 1e-12) << n;
}

TEST(FiniteN, GinibreSingleParticle) {
  const Potential g = Potential::radial({0.0, 1.0});
  const KernelRep k = finite_n_kernel(g, 1, canonical_decompose(g));
  for (Complex z : {Complex(0.5, 0.0), Complex(-1.0, 1.0), Complex(0.0, 2.0)}) EXPECT_NEAR(k.R(z), std::exp(-std::norm(z)), 1e-14);
}

TEST(FiniteN, GinibrePartialExponentialSum) {
  const Potential g = Potential::radial({0.0, 1.0});
  const KernelRep k = finite_n_kernel(g, 12, canonical_decompose(g));
  std::mt19937_64 rng(21);
  for (int t = 0; t < 30; ++t) {
    const Complex z = random_point(rng, 4.0);
    EXPECT_NEAR(k.R(z), ginibre_rn(12, z), 1e-12);
  }
}

TEST(FiniteN, HermitianAndNonNegative) {
  const Potential p = hom4();
  const KernelRep k = finite_n_kernel(p, 24, canonical_decompose(p));
  std::mt19937_64 rng(22);
  for (int t = 0; t < 40; ++t) {
    const Complex z = random_point(rng, 2.0), w = random_point(rng, 2.0);
    const Complex a = k.K(z, w);
    EXPECT_LT(std::abs(a - std::conj(k.K(w, z))), 1e-12 * std::max(1.0, std::abs(a)));
    EXPECT_GE(k.R(z), 0.0);
  }
}

TEST(FiniteN, MonotoneInN) {
  const Potential p = hom4();
  const CanonicalDecomposition dec = canonical_decompose(p);
  for (Complex z : {Complex(0.3, 0.2), Complex(1.0, -0.5), Complex(1.5, 1.0)}) {
    double prev = -std::numeric_limits<double>::infinity();
    for (int n : {4, 8, 16, 32}) {
      const double v = finite_n_kernel(p, n, dec).log_L_diag(z);
      EXPECT_GE(v, prev - 1e-12);
      prev = v;
    }
  }
}

TEST(FiniteN, PsdDomination) {
  const Potential p = hom4();
  const CanonicalDecomposition dec = canonical_decompose(p);
  const KernelRep l0 = gram_bergman_kernel(WeightedMeasure::homogeneous(dec.q0, dec.tau0), 60);
  const KernelRep ln = finite_n_kernel(p, 32, dec);
  std::mt19937_64 rng(23);
  std::vector<Complex> pts;
  while (pts.size() < 20) {
    const Complex z = random_point(rng, 1.5);
    if (std::abs(z) <= 1.5) pts.push_back(z);
  }
  Eigen::MatrixXcd m(20, 20);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) m(i, j) = l0.L(pts[i], pts[j]) - ln.L(pts[i], pts[j]);
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h).eigenvalues().minCoeff(), -1e-8);
}

TEST(FiniteN, NCapForNonRadial) {
  const Potential p = hom4();
  FiniteNOptions o;
  o.n_cap = 16;
  EXPECT_THROW((void)finite_n_kernel(p, 32, canonical_decompose(p), o), InputError);
}

TEST(MittagLeffler, ExponentialCase) {
  const KernelRep k = mittag_leffler_kernel(1, 1.0, 60);
  double fact = 1.0;
  for (int j = 0; j <= 20; ++j) {
    if (j > 0) fact *= j;
    EXPECT_NEAR(k.series()->a(j) * fact, 1.0, 1e-13);
  }
  for (Complex z : {Complex(0, 0), Complex(1.0, 2.0), Complex(-2.5, 1.0)}) EXPECT_NEAR(k.R(z), 1.0, 1e-12);
}

TEST(MittagLeffler, QuarticOrigin) {
  const KernelRep k = ml2();
  EXPECT_NEAR(k.series()->a(0), std::sqrt(2.0 / std::numbers::pi), 1e-15);
  EXPECT_NEAR(eval_R(k, 0.0), 0.79788456080286535588, 1e-14);
}

// Reference values from a 40-digit mpmath series.
TEST(MittagLeffler, FrozenOneMomentValues) {
  const KernelRep k = ml2(3.5);
  EXPECT_NEAR(k.R(0.5), 1.072689396447160276, 1e-13);
  EXPECT_NEAR(k.R(1.0), 2.1666309411753725968, 1e-13);
  EXPECT_NEAR(k.R(2.0), 8.0000142905168648113, 1e-12);
}

TEST(MittagLeffler, CoefficientsAreInverseNorms) {
  for (int k : {2, 3}) {
    const double t = std::pow(static_cast<double>(k), -1.0 / (2.0 * k));
    const KernelRep ml = mittag_leffler_kernel(k, t, 40);
    std::vector<double> b(static_cast<std::size_t>(k + 1), 0.0);
    b[static_cast<std::size_t>(k)] = 1.0 / k;
    const WeightedMeasure mu = WeightedMeasure::radial_poly(b);
    for (int j = 0; j <= 40; ++j) EXPECT_NEAR(ml.series()->a(j) * monomial_norm_sq(mu, j), 1.0, 1e-11);
  }
}

TEST(MittagLeffler, TruncationIsEnforced) {
  const KernelRep k = mittag_leffler_kernel(2, std::pow(2.0, -0.25), 20);
  EXPECT_NO_THROW((void)k.R(0.5));
  EXPECT_THROW((void)k.R(3.0), TruncationInsufficient);
}

TEST(SeriesKernel, GinibreCoefficients) {
  const KernelRep k = series_kernel_from_measure(WeightedMeasure::radial_poly({0.0, 1.0}), 30);
  double fact = 1.0;
  for (int j = 0; j <= 30; ++j) {
    if (j > 0) fact *= j;
    EXPECT_NEAR(k.series()->a(j) * fact, 1.0, 1e-12);
  }
}

TEST(SeriesKernel, AgreesWithMittagLeffler) {
  for (int k : {2, 3}) {
    const double t = std::pow(static_cast<double>(k), -1.0 / (2.0 * k));
    std::vector<double> b(static_cast<std::size_t>(k + 1), 0.0);
    b[static_cast<std::size_t>(k)] = 1.0 / k;
    const KernelRep s = series_kernel_from_measure(WeightedMeasure::radial_poly(b), 40);
    const KernelRep ml = mittag_leffler_kernel(k, t, 40);
    for (int j = 0; j <= 40; ++j) {
      const double a = ml.series()->a(j);
      EXPECT_NEAR(s.series()->a(j), a, 1e-12 * a) << "k=" << k << " j=" << j;
    }
  }
}

TEST(SeriesKernel, TruncationsIncreaseInN) {
  const WeightedMeasure m = WeightedMeasure::radial_poly({0.0, 0.0, 1.0, 0.1});
  const KernelRep full = series_kernel_from_measure(m, 200);
  for (double x : {0.2, 0.8, 1.5}) {
    double prev = 0.0;
    for (int N = 0; N <= 12; ++N) {
      SeriesKernel s = *full.series();
      s.log_a.resize(static_cast<std::size_t>(N + 1));
      double v = 0.0;
      for (int j = 0; j <= N; ++j) v += s.a(j) * std::pow(x, j);
      EXPECT_GT(v, prev);
      prev = v;
    }
  }
}

TEST(GramBergman, RadialMatchesSeries) {
  const WeightedMeasure m = WeightedMeasure::radial_poly({0.0, 0.0, 1.0, 0.1});
  const KernelRep g = gram_bergman_kernel(m, 25);
  const KernelRep s = series_kernel_from_measure(m, 25);
  std::mt19937_64 rng(24);
  for (int t = 0; t < 20; ++t) {
    const Complex z = random_point(rng, 0.35), w = random_point(rng, 0.35);
    const Complex a = s.L(z, w);
    EXPECT_LT(std::abs(g.L(z, w) - a), 1e-12 * std::max(1.0, std::abs(a)));
  }
}

// Reference values: 40-digit mpmath Gram inversion of the same degree-48 truncation.
TEST(GramBergman, AnisotropicFrozenValues) {
  const KernelRep k = figure1_gram();
  EXPECT_NEAR(k.R(1.0), 1.6157544821848864969, 1e-9);
  EXPECT_NEAR(k.R(std::polar(1.0, std::numbers::pi / 4)), 2.1446616376825036174, 1e-9);
  EXPECT_NEAR(k.R(0.0), 0.7920830349295269391, 1e-9);
  EXPECT_NEAR(k.R(Complex(0.5, 0.3)), 1.107636204859274532, 1e-9);
}

TEST(GramBergman, AnisotropicNotRotationInvariant) {
  const KernelRep k = figure1_gram();
  EXPECT_GT(std::abs(k.R(1.0) - k.R(std::polar(1.0, std::numbers::pi / 4))), 0.1);
}

TEST(GramBergman, AnisotropicParity) {
  const KernelRep k = figure1_gram();
  std::mt19937_64 rng(25);
  for (int t = 0; t < 30; ++t) {
    const Complex z = random_point(rng, 1.0);
    EXPECT_NEAR(k.R(z), k.R(-z), 1e-10 * std::max(1.0, k.R(z)));
  }
}

TEST(EvalR, GinibreLimitIsFlat) {
  const KernelRep k = series_kernel_from_measure(WeightedMeasure::radial_poly({0.0, 1.0}), 80);
  for (double r : {0.0, 1.0, 2.0, 3.0})
    for (int a = 0; a < 8; ++a) EXPECT_NEAR(eval_R(k, std::polar(r, a * std::numbers::pi / 4)), 1.0, 1e-12);
}

TEST(EvalR, ConjugationSymmetry) {
  std::mt19937_64 rng(26);
  const KernelRep g = figure1_gram();
  const KernelRep m = ml2();
  for (int t = 0; t < 20; ++t) {
    const Complex z = random_point(rng, 1.5);
    EXPECT_NEAR(g.R(z), g.R(std::conj(z)), 1e-10);
    EXPECT_NEAR(m.R(z), m.R(std::conj(z)), 1e-12);
  }
}

TEST(Berezin, GinibreGaussian) {
  const KernelRep k = series_kernel_from_measure(WeightedMeasure::radial_poly({0.0, 1.0}), 80);
  std::mt19937_64 rng(27);
  for (int t = 0; t < 30; ++t) {
    const Complex z = random_point(rng, 1.5), w = random_point(rng, 1.5);
    EXPECT_NEAR(berezin(k, z, w), std::exp(-std::norm(z - w)), 1e-12);
  }
}

TEST(Berezin, DiagonalIsR) {
  for (const KernelRep& k : {ml2(), figure1_gram()}) {
    for (Complex z : {Complex(0, 0), Complex(1, 0), Complex(0.5, -1.0)}) EXPECT_NEAR(berezin(k, z, z), k.R(z), 1e-12 * k.R(z));
  }
}

TEST(Berezin, FiniteNReproducingMass) {
  const Potential p = hom4();
  const KernelRep k = finite_n_kernel(p, 20, canonical_decompose(p));
  for (Complex z : {Complex(0, 0), Complex(0.7, 0.3)}) EXPECT_NEAR(berezin_mass(k, z), 1.0, 1e-6);
}

TEST(Berezin, RotationCovarianceOfSeries) {
  const KernelRep k = ml2();
  std::mt19937_64 rng(28);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  for (int t = 0; t < 30; ++t) {
    const Complex z = random_point(rng, 1.2), w = random_point(rng, 1.2), e = std::polar(1.0, u(rng));
    const double b = berezin(k, z, w);
    EXPECT_NEAR(berezin(k, z * e, w * e), b, 1e-10 * std::max(1.0, b));
  }
}

TEST(Berezin, RootAtZero) {
  SeriesKernel s;
  s.weight = WeightedMeasure::radial_poly({0.0, 1.0});
  s.log_a = {-std::numeric_limits<double>::infinity(), 0.0};
  const KernelRep k(s);
  EXPECT_EQ(k.R(0.0), 0.0);
  EXPECT_THROW((void)berezin(k, 0.0, 1.0), RootAtZero);
}

TEST(Structure, MassOneInequality) {
  const KernelRep g = figure1_gram(40);
  for (const KernelRep& k : {ml2(), g}) {
    for (Complex z : {Complex(0, 0), Complex(0.8, 0.4)}) EXPECT_GE(mass_one_defect(k, z), -1e-8);
  }
}

TEST(Structure, LogSubharmonic) {
  const double h = 1e-2;
  for (const KernelRep& k : {ml2(), figure1_gram()}) {
    for (int iy = -10; iy <= 10; ++iy) {
      for (int ix = -10; ix <= 10; ++ix) {
        const Complex z(0.2 * ix, 0.2 * iy);
        if (std::abs(z) > 2.0) continue;
        auto f = [&](Complex w) { return k.log_L_diag(w); };
        const double lap = (f(z + h) + f(z - h) + f(z + Complex(0, h)) + f(z - Complex(0, h)) - 4.0 * f(z)) / (4.0 * h * h);
        EXPECT_GE(lap, -1e-6);
      }
    }
  }
}

TEST(Structure, ZeroOneLaw) {
  for (const KernelRep& k : {ml2(), figure1_gram()}) {
    double lo = 1e300;
    for (int iy = -10; iy <= 10; ++iy)
      for (int ix = -10; ix <= 10; ++ix) lo = std::min(lo, k.R(Complex(0.2 * ix, 0.2 * iy)));
    EXPECT_GT(lo, 0.0);
  }
}
