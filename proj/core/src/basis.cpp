#include "rnm/basis.hpp"

#include <cmath>
#include <string>

#include "rnm/errors.hpp"

namespace rnm {

Complex OrthonormalBasis::coeff(int j, int l) const {
  const LComplex v = coeff_scaled(j, l) * std::exp(-static_cast<long double>(log_scale[static_cast<std::size_t>(l)]));
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

std::vector<LComplex> OrthonormalBasis::scaled_monomials(Complex z) const {
  std::vector<LComplex> out(static_cast<std::size_t>(N + 1));
  const long double lr = std::log(static_cast<long double>(std::abs(z)));
  const long double th = std::arg(z);
  for (int l = 0; l <= N; ++l) {
    const long double s = log_scale[static_cast<std::size_t>(l)];
    if (l == 0) {
      out[0] = std::exp(-s);
    } else if (z == Complex{}) {
      out[static_cast<std::size_t>(l)] = 0.0L;
    } else {
      out[static_cast<std::size_t>(l)] = std::polar(std::exp(l * lr - s), l * th);
    }
  }
  return out;
}

std::vector<LComplex> OrthonormalBasis::evaluate(Complex z) const {
  const auto mono = scaled_monomials(z);
  std::vector<LComplex> phi(static_cast<std::size_t>(N + 1));
  for (int j = 0; j <= N; ++j) {
    LComplex s{};
    for (int l = 0; l <= j; ++l) s += coeff_scaled(j, l) * mono[static_cast<std::size_t>(l)];
    phi[static_cast<std::size_t>(j)] = s;
  }
  return phi;
}

double orthonormality_defect(const OrthonormalBasis& b, const MomentMatrix& m) {
  const LMatrix g = b.coeff_scaled * m.scaled * b.coeff_scaled.adjoint();
  long double worst = 0.0L;
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j)
      worst = std::max(worst, std::abs(g(i, j) - (i == j ? LComplex(1.0L) : LComplex(0.0L))));
  return static_cast<double>(worst);
}

OrthonormalBasis orthonormalize(const MomentMatrix& m, double pivot_floor) {
  OrthonormalBasis b;
  b.N = m.N;
  b.log_scale = m.log_scale;
  const int n = m.size();
  if (m.diagonal) {
    b.coeff_scaled = LMatrix::Identity(n, n);
    return b;
  }
  const LMatrix L = cholesky_lower(m.scaled, pivot_floor);
  // Forward substitution for L^{-1}, column by column.
  LMatrix inv = LMatrix::Zero(n, n);
  for (int c = 0; c < n; ++c) {
    inv(c, c) = LComplex(1.0L) / L(c, c);
    for (int i = c + 1; i < n; ++i) {
      LComplex s{};
      for (int l = c; l < i; ++l) s += L(i, l) * inv(l, c);
      inv(i, c) = -s / L(i, i);
    }
  }
  b.coeff_scaled = inv;
  const LMatrix g = inv * m.scaled * inv.adjoint();
  int worst_index = -1;
  long double worst = 0.0L;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const long double e = std::abs(g(i, j) - (i == j ? LComplex(1.0L) : LComplex(0.0L)));
      if (e > worst) worst = e, worst_index = std::max(i, j);
    }
  }
  if (worst > 1e-10L) {
    throw RankDeficient("orthonormality defect " + std::to_string(static_cast<double>(worst)) +
                            " exceeds 1e-10 at index " + std::to_string(worst_index),
                        worst_index);
  }
  return b;
}

}  // namespace rnm
