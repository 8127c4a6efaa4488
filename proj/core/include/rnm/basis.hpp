#pragma once

#include <vector>

#include "rnm/moments.hpp"

namespace rnm {

/// phi_j(z) = sum_{l <= j} C_jl z^l, orthonormal for the measure of a moment
/// matrix. Stored as C_jl = Ctilde_jl * exp(-s_l) with s the moment log scale.
struct OrthonormalBasis {
  int N = 0;
  LMatrix coeff_scaled;  ///< lower triangular Ctilde
  std::vector<double> log_scale;

  int size() const { return N + 1; }
  /// Unscaled coefficient C_jl (may underflow for large l).
  Complex coeff(int j, int l) const;
  /// phi_0(z) .. phi_N(z) in extended precision.
  std::vector<LComplex> evaluate(Complex z) const;
  /// Scaled monomials z^l e^{-s_l}, l = 0 .. N.
  std::vector<LComplex> scaled_monomials(Complex z) const;
};

/// Gram-Schmidt through the Cholesky factor of the scaled moments:
/// Ctilde = L^{-1} with S = L L^*. Throws RankDeficient on pivot breakdown or
/// when C M C^* deviates from the identity by more than 1e-10.
OrthonormalBasis orthonormalize(const MomentMatrix& m, double pivot_floor = 1e-13);

/// max |C M C^* - I| evaluated with the scaled moments.
double orthonormality_defect(const OrthonormalBasis& b, const MomentMatrix& m);

}  // namespace rnm
