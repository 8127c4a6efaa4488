#include "rnm/hermitian_poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "rnm/errors.hpp"

namespace rnm {

HermitianPoly::HermitianPoly(int degree) {
  if (degree < 0) throw InputError("HermitianPoly: negative degree");
  degree_ = degree;
  c_.assign(static_cast<std::size_t>(degree + 1) * static_cast<std::size_t>(degree + 1), Complex{});
}

HermitianPoly HermitianPoly::from_terms(std::span<const PolyTerm> terms, double tol) {
  std::map<std::pair<int, int>, Complex> table;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const auto& term = terms[t];
    if (term.i < 0 || term.j < 0) {
      throw InputError("coefficient entry " + std::to_string(t) + " has a negative exponent");
    }
    table[{term.i, term.j}] += term.c;
  }
  int degree = 0;
  for (const auto& [key, c] : table) degree = std::max(degree, key.first + key.second);
  HermitianPoly p(degree);
  std::size_t t = 0;
  for (const auto& [key, c] : table) {
    const auto [i, j] = key;
    auto mirror = table.find({j, i});
    const Complex partner = mirror == table.end() ? Complex{} : mirror->second;
    if (std::abs(c - std::conj(partner)) > tol * std::max(1.0, std::abs(c))) {
      throw InputError("coefficient (" + std::to_string(i) + ", " + std::to_string(j) +
                       ") has no matching conjugate entry (" + std::to_string(j) + ", " +
                       std::to_string(i) + ")");
    }
    p.c_[p.index(i, j)] = c;
    ++t;
  }
  return p;
}

HermitianPoly HermitianPoly::radial(std::span<const double> b) {
  const int m_max = b.empty() ? 0 : static_cast<int>(b.size()) - 1;
  HermitianPoly p(2 * m_max);
  for (int m = 0; m <= m_max; ++m) p.c_[p.index(m, m)] = b[static_cast<std::size_t>(m)];
  return p;
}

Complex HermitianPoly::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i > degree_ || j > degree_) return {};
  return c_[index(i, j)];
}

void HermitianPoly::grow(int degree) {
  if (degree <= degree_) return;
  HermitianPoly bigger(degree);
  for (int i = 0; i <= degree_; ++i)
    for (int j = 0; j <= degree_; ++j) bigger.c_[bigger.index(i, j)] = c_[index(i, j)];
  *this = std::move(bigger);
}

void HermitianPoly::set(int i, int j, Complex c) {
  if (i < 0 || j < 0) throw InputError("HermitianPoly::set: negative exponent");
  grow(i + j);
  c_[index(i, j)] = c;
  c_[index(j, i)] = i == j ? Complex(c.real(), 0.0) : std::conj(c);
}

Complex HermitianPoly::evaluate_complex(Complex z) const {
  const std::size_t n = static_cast<std::size_t>(degree_ + 1);
  std::vector<Complex> zp(n), zbp(n);
  zp[0] = zbp[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    zp[k] = zp[k - 1] * z;
    zbp[k] = std::conj(zp[k]);
  }
  Complex sum{};
  for (int i = 0; i <= degree_; ++i) {
    for (int j = 0; i + j <= degree_; ++j) {
      const Complex c = c_[index(i, j)];
      if (c != Complex{}) sum += c * zp[static_cast<std::size_t>(i)] * zbp[static_cast<std::size_t>(j)];
    }
  }
  return sum;
}

Complex HermitianPoly::dz(Complex z) const {
  const std::size_t n = static_cast<std::size_t>(degree_ + 1);
  std::vector<Complex> zp(n), zbp(n);
  zp[0] = zbp[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    zp[k] = zp[k - 1] * z;
    zbp[k] = std::conj(zp[k]);
  }
  Complex sum{};
  for (int i = 1; i <= degree_; ++i) {
    for (int j = 0; i + j <= degree_; ++j) {
      const Complex c = c_[index(i, j)];
      if (c != Complex{})
        sum += c * static_cast<double>(i) * zp[static_cast<std::size_t>(i - 1)] *
               zbp[static_cast<std::size_t>(j)];
    }
  }
  return sum;
}

HermitianPoly HermitianPoly::laplacian() const {
  HermitianPoly out(std::max(0, degree_ - 2));
  for (int i = 1; i <= degree_; ++i)
    for (int j = 1; i + j <= degree_; ++j)
      out.c_[out.index(i - 1, j - 1)] = static_cast<double>(i * j) * c_[index(i, j)];
  return out;
}

HermitianPoly HermitianPoly::homogeneous_part(int d) const {
  HermitianPoly out(std::max(0, d));
  if (d < 0 || d > degree_) return out;
  for (int i = 0; i <= d; ++i) out.c_[out.index(i, d - i)] = c_[index(i, d - i)];
  return out;
}

HermitianPoly HermitianPoly::truncated(int d) const {
  HermitianPoly out(std::max(0, std::min(d, degree_)));
  for (int i = 0; i <= out.degree_; ++i)
    for (int j = 0; i + j <= out.degree_; ++j) out.c_[out.index(i, j)] = c_[index(i, j)];
  return out;
}

HermitianPoly HermitianPoly::mixed_part() const {
  HermitianPoly out(degree_);
  for (int i = 1; i <= degree_; ++i)
    for (int j = 1; i + j <= degree_; ++j) out.c_[out.index(i, j)] = c_[index(i, j)];
  return out;
}

HermitianPoly HermitianPoly::scaled(double t) const {
  HermitianPoly out(*this);
  for (int i = 0; i <= degree_; ++i)
    for (int j = 0; i + j <= degree_; ++j) out.c_[index(i, j)] *= std::pow(t, i + j);
  return out;
}

double HermitianPoly::homogeneous_norm(int d) const {
  if (d < 0 || d > degree_) return 0.0;
  double s = 0.0;
  for (int i = 0; i <= d; ++i) s += std::norm(c_[index(i, d - i)]);
  return std::sqrt(s);
}

int HermitianPoly::lowest_degree(double tol) const {
  for (int d = 0; d <= degree_; ++d)
    if (homogeneous_norm(d) > tol) return d;
  return -1;
}

bool HermitianPoly::is_homogeneous(int d, double tol) const {
  for (int e = 0; e <= degree_; ++e)
    if (e != d && homogeneous_norm(e) > tol) return false;
  return true;
}

bool HermitianPoly::is_radial(double tol) const {
  for (int i = 0; i <= degree_; ++i)
    for (int j = 0; i + j <= degree_; ++j)
      if (i != j && std::abs(c_[index(i, j)]) > tol) return false;
  return true;
}

double HermitianPoly::hermitian_defect() const {
  double worst = 0.0;
  for (int i = 0; i <= degree_; ++i)
    for (int j = 0; i + j <= degree_; ++j)
      worst = std::max(worst, std::abs(c_[index(i, j)] - std::conj(c_[index(j, i)])));
  return worst;
}

std::vector<PolyTerm> HermitianPoly::terms(double tol) const {
  std::vector<PolyTerm> out;
  for (int i = 0; i <= degree_; ++i)
    for (int j = 0; i + j <= degree_; ++j)
      if (std::abs(c_[index(i, j)]) > tol) out.push_back({i, j, c_[index(i, j)]});
  return out;
}

HermitianPoly& HermitianPoly::operator+=(const HermitianPoly& other) {
  grow(other.degree_);
  for (int i = 0; i <= other.degree_; ++i)
    for (int j = 0; i + j <= other.degree_; ++j) c_[index(i, j)] += other.c_[other.index(i, j)];
  return *this;
}

HermitianPoly& HermitianPoly::operator-=(const HermitianPoly& other) {
  grow(other.degree_);
  for (int i = 0; i <= other.degree_; ++i)
    for (int j = 0; i + j <= other.degree_; ++j) c_[index(i, j)] -= other.c_[other.index(i, j)];
  return *this;
}

HermitianPoly& HermitianPoly::operator*=(double s) {
  for (auto& c : c_) c *= s;
  return *this;
}

}  // namespace rnm
