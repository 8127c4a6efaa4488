#pragma once

#include <complex>
#include <span>
#include <vector>

namespace rnm {

using Complex = std::complex<double>;

/// One coefficient of a polynomial in z and conj(z): c * z^i * conj(z)^j.
struct PolyTerm {
  int i = 0;
  int j = 0;
  Complex c;
};

/// Real-valued polynomial sum_{i+j<=d} c_ij z^i conj(z)^j with c_ij = conj(c_ji).
///
/// Holds Taylor data of external potentials: the degree-2k Taylor polynomial,
/// the homogeneous dominant part, the Laplacian and its leading homogeneous
/// part. Coefficients are stored densely; degrees in practice stay below ~30.
class HermitianPoly {
 public:
  HermitianPoly() = default;
  explicit HermitianPoly(int degree);

  /// Builds from a coefficient table. Every off-diagonal entry must come with
  /// its conjugate partner; repeated entries are summed. Throws InputError.
  static HermitianPoly from_terms(std::span<const PolyTerm> terms, double tol = 1e-14);

  /// sum_m b_m |z|^{2m}.
  static HermitianPoly radial(std::span<const double> b);

  int degree() const noexcept { return degree_; }
  Complex coeff(int i, int j) const;

  /// Sets c_ij and its mirror c_ji = conj(c). Grows the degree if needed.
  void set(int i, int j, Complex c);

  /// Real part of the evaluation (the imaginary part is round-off).
  double operator()(Complex z) const { return evaluate_complex(z).real(); }
  Complex evaluate_complex(Complex z) const;

  /// Holomorphic derivative d/dz evaluated at z (complex-valued).
  Complex dz(Complex z) const;

  /// Exact Laplacian dd-bar (a quarter of the Euclidean one).
  HermitianPoly laplacian() const;

  /// Terms with i + j == d.
  HermitianPoly homogeneous_part(int d) const;
  /// Terms with i + j <= d.
  HermitianPoly truncated(int d) const;
  /// Terms with i >= 1 and j >= 1.
  HermitianPoly mixed_part() const;
  /// P(t z) for real t.
  HermitianPoly scaled(double t) const;

  /// Frobenius norm of the coefficients of total degree d.
  double homogeneous_norm(int d) const;
  /// Lowest total degree with coefficient norm above tol, or -1.
  int lowest_degree(double tol = 0.0) const;
  /// True when every term has total degree d (up to tol).
  bool is_homogeneous(int d, double tol = 0.0) const;
  /// True when only |z|^{2m} terms are present.
  bool is_radial(double tol = 0.0) const;
  /// Largest |c_ij - conj(c_ji)|.
  double hermitian_defect() const;

  /// Nonzero coefficients, ordered by (i, j).
  std::vector<PolyTerm> terms(double tol = 0.0) const;

  HermitianPoly& operator+=(const HermitianPoly& other);
  HermitianPoly& operator-=(const HermitianPoly& other);
  HermitianPoly& operator*=(double s);
  friend HermitianPoly operator+(HermitianPoly a, const HermitianPoly& b) { return a += b; }
  friend HermitianPoly operator-(HermitianPoly a, const HermitianPoly& b) { return a -= b; }
  friend HermitianPoly operator*(double s, HermitianPoly a) { return a *= s; }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(degree_ + 1) +
           static_cast<std::size_t>(j);
  }
  void grow(int degree);

  int degree_ = 0;
  std::vector<Complex> c_ = std::vector<Complex>(1);
};

}  // namespace rnm
