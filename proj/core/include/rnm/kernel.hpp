#pragma once

#include <string>
#include <variant>
#include <vector>

#include "rnm/basis.hpp"
#include "rnm/decomposition.hpp"
#include "rnm/measure.hpp"

namespace rnm {

/// Rotation-invariant kernel L(z, w) = sum_j a_j (z conj(w))^j with weight e^{-W}.
struct SeriesKernel {
  std::vector<double> log_a;  ///< log a_j; -inf for a vanishing coefficient
  WeightedMeasure weight;     ///< radial
  double tau0 = 1.0;
  int k = 0;                  ///< 0 when not tied to a singularity order

  int terms() const { return static_cast<int>(log_a.size()); }
  double a(int j) const;
};

/// Kernel spanned by an orthonormal polynomial basis of a planar weight.
struct FiniteRankKernel {
  OrthonormalBasis basis;
  WeightedMeasure weight;
  double r_n = 1.0;
  int n = 0;
  /// Holomorphic gauge H_n(z) = sum_m gauge[m] z^m; empty for none.
  std::vector<Complex> gauge;
};

/// Bergman kernel of e^{-tau0^{2k} |z|^{2k}} as a truncated series.
struct MittagLefflerKernel {
  int k = 1;
  double tau0 = 1.0;
  int N = 0;
  SeriesKernel series;
};

/// exp(log_scale) * value.
struct ScaledValue {
  double log_scale = 0.0;
  Complex value;
};

/// sum_j exp(log_a[j]) u^j with max-term factoring. Throws
/// TruncationInsufficient when the last nonzero term is not below 1e-14 of
/// the sum of absolute terms.
ScaledValue series_sum(const std::vector<double>& log_a, Complex u);

/// Smallest N whose Mittag-Leffler series passes the truncation rule on |z| <= radius.
int mittag_leffler_required_terms(int k, double tau0, double radius);

class KernelRep {
 public:
  using Form = std::variant<SeriesKernel, FiniteRankKernel, MittagLefflerKernel>;

  explicit KernelRep(Form form) : form_(std::move(form)) {}

  const Form& form() const noexcept { return form_; }
  /// The series for Series and MittagLeffler forms, else nullptr.
  const SeriesKernel* series() const noexcept;
  const FiniteRankKernel* finite_rank() const noexcept { return std::get_if<FiniteRankKernel>(&form_); }
  const WeightedMeasure& weight() const noexcept;

  /// Holomorphic kernel after the gauge: L(z, w).
  Complex L(Complex z, Complex w) const;
  /// log L(z, z).
  double log_L_diag(Complex z) const;
  /// Weight exponent of L: R(z) = L(z, z) e^{-W_L(z)}.
  double log_weight(Complex z) const;
  /// Correlation kernel K(z, w) = k(z, w) e^{-W(z)/2 - W(w)/2}.
  Complex K(Complex z, Complex w) const;
  /// log R(z); -inf where R vanishes.
  double log_R(Complex z) const;
  double R(Complex z) const { return std::exp(log_R(z)); }
  /// log of |k(z, w)|^2 e^{-W(w)}, the Berezin numerator.
  double log_berezin_numerator(Complex z, Complex w) const;

  std::string describe() const;

 private:
  Form form_;
};

/// w -> B(z, w) for a fixed root z, with the root-side data evaluated once.
class BerezinRow {
 public:
  /// Throws RootAtZero when R(z) <= 1e-300.
  BerezinRow(const KernelRep& k, Complex z);
  double operator()(Complex w) const;
  double log_R() const noexcept { return log_R_; }
  Complex root() const noexcept { return z_; }

 private:
  const KernelRep* k_;
  Complex z_;
  double log_R_ = 0.0;
  double log_kzz_ = 0.0;
  std::vector<LComplex> phi_z_;
};

/// Bergman-series coefficients a_j = 1 / ||z^j||^2 of a radial weight.
KernelRep series_kernel_from_measure(const WeightedMeasure& m, int N);

/// a_j = k tau0^{2j+2} / Gamma((j+1)/k), j = 0 .. N.
KernelRep mittag_leffler_kernel(int k, double tau0, int N);

/// Truncated Bergman kernel sum_{j <= N} phi_j(z) conj(phi_j(w)).
KernelRep gram_bergman_kernel(const WeightedMeasure& m, int N);

struct FiniteNOptions {
  /// Largest n accepted for non-radial potentials.
  int n_cap = 128;
};

/// Rescaled finite-n kernel for e^{-n Q(r_n z)}, gauge H_n(z) = n H(r_n z).
KernelRep finite_n_kernel(const Potential& p, int n, const CanonicalDecomposition& dec,
                          const FiniteNOptions& opts = {});

/// R(z) = K(z, z).
double eval_R(const KernelRep& k, Complex z);

/// B(z, w) = |K(z, w)|^2 / K(z, z). Throws RootAtZero when R(z) <= 1e-300.
double berezin(const KernelRep& k, Complex z, Complex w);

}  // namespace rnm
