#include "cauchydos/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cauchydos/bessel.hpp"
#include "cauchydos/errors.hpp"

namespace cauchydos {
namespace {

constexpr double kTail = 1e-15;

// i^n
std::complex<double> ipow(std::size_t n) {
  switch (n % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Bessel coefficients J_0..J_{N-1}(a t), N per chebyshev_terms.
std::vector<double> coefficients(const SpectralBound& bound, double t) {
  const double x = bound.half_width * std::abs(t);
  const auto start = static_cast<int>(std::ceil(x + 40.0));
  auto j = bessel_j_sequence(start + 64 + static_cast<int>(std::ceil(std::cbrt(x + 1.0) * 10.0)), x);
  std::size_t n = static_cast<std::size_t>(start) + 1;
  while (n < j.size() && std::abs(j[n]) >= kTail) ++n;
  j.resize(std::min(n + 1, j.size()));
  if (t < 0.0) {
    for (std::size_t k = 1; k < j.size(); k += 2) j[k] = -j[k];
  }
  return j;
}

template <typename T>
void scaled_apply(const SymmetricOperator& op, const SpectralBound& bound, std::span<const T> x,
                  std::span<T> y) {
  // y = (H - b) x / a
  op.multiply(x, y);
  const double inv = 1.0 / bound.half_width;
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = (y[i] - bound.center * x[i]) * inv;
}

}  // namespace

SpectralBound gershgorin_bound(const SymmetricOperator& op) {
  const std::size_t n = op.dimension();
  if (n == 0) return {};
  const auto diag = op.diagonal();
  const auto& ptr = op.row_offsets();
  const auto& val = op.row_values();
  double lo = diag[0];
  double hi = diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    for (std::size_t k = ptr[i]; k < ptr[i + 1]; ++k) r += std::abs(val[k]);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  SpectralBound b;
  b.center = 0.5 * (lo + hi);
  b.half_width = 0.5 * (hi - lo);
  b.half_width = b.half_width * (1.0 + 1e-9) + 1e-12 * std::max(1.0, std::abs(b.center));
  return b;
}

std::size_t chebyshev_terms(const SpectralBound& bound, double t) {
  return coefficients(bound, t).size();
}

std::vector<std::complex<double>> chebyshev_evolve(const SymmetricOperator& op,
                                                   std::span<const std::complex<double>> v,
                                                   double t, const SpectralBound& bound) {
  using cplx = std::complex<double>;
  const std::size_t n = op.dimension();
  if (v.size() != n) throw InvalidArgument("chebyshev_evolve: vector length mismatch");
  if (!(bound.half_width > 0.0) || !std::isfinite(bound.center)) {
    throw InvalidArgument("chebyshev_evolve: invalid spectral bound");
  }
  std::vector<cplx> out(v.begin(), v.end());
  if (t == 0.0 || n == 0) return out;

  const auto c = coefficients(bound, t);
  std::vector<cplx> prev(v.begin(), v.end());
  std::vector<cplx> cur(n);
  std::vector<cplx> next(n);
  scaled_apply<cplx>(op, bound, prev, cur);
  for (std::size_t i = 0; i < n; ++i) out[i] = c[0] * prev[i] + 2.0 * ipow(1) * c[1] * cur[i];
  for (std::size_t k = 2; k < c.size(); ++k) {
    scaled_apply<cplx>(op, bound, cur, next);
    const cplx w = 2.0 * ipow(k) * c[k];
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = 2.0 * next[i] - prev[i];
      out[i] += w * next[i];
    }
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  const cplx phase = std::polar(1.0, t * bound.center);
  double norm_in = 0.0;
  double norm_out = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] *= phase;
    norm_in += std::norm(v[i]);
    norm_out += std::norm(out[i]);
  }
  norm_in = std::sqrt(norm_in);
  norm_out = std::sqrt(norm_out);
  if (std::abs(norm_out - norm_in) > 1e-6 * std::max(1.0, norm_in)) {
    throw EnclosureError("chebyshev_evolve: norm drift " + std::to_string(norm_out - norm_in) +
                         "; the spectral bound does not enclose the spectrum");
  }
  return out;
}

std::vector<std::complex<double>> chebyshev_evolve(const SymmetricOperator& op,
                                                   std::span<const std::complex<double>> v,
                                                   double t) {
  return chebyshev_evolve(op, v, t, gershgorin_bound(op));
}

std::vector<double> chebyshev_moments(const SymmetricOperator& op, std::size_t site_phi,
                                      std::size_t site_psi, const SpectralBound& bound,
                                      std::size_t count) {
  const std::size_t n = op.dimension();
  if (site_phi >= n || site_psi >= n) {
    throw InvalidArgument("chebyshev_moments: site index out of range");
  }
  std::vector<double> m(count, 0.0);
  if (count == 0) return m;
  std::vector<double> prev(n, 0.0);
  std::vector<double> cur(n, 0.0);
  std::vector<double> next(n, 0.0);
  prev[site_psi] = 1.0;
  m[0] = prev[site_phi];
  if (count == 1) return m;
  scaled_apply<double>(op, bound, prev, cur);
  m[1] = cur[site_phi];
  for (std::size_t k = 2; k < count; ++k) {
    scaled_apply<double>(op, bound, cur, next);
    for (std::size_t i = 0; i < n; ++i) next[i] = 2.0 * next[i] - prev[i];
    m[k] = next[site_phi];
    if (std::abs(m[k]) > 1.0 + 1e-6) {
      throw EnclosureError("chebyshev_moments: moment " + std::to_string(k) +
                           " exceeds 1; the spectral bound does not enclose the spectrum");
    }
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return m;
}

std::complex<double> amplitude_from_moments(std::span<const double> moments,
                                            const SpectralBound& bound, double t) {
  const auto c = coefficients(bound, t);
  if (moments.size() < c.size()) {
    throw InvalidArgument("amplitude_from_moments: " + std::to_string(c.size()) +
                          " moments required, " + std::to_string(moments.size()) + " given");
  }
  std::complex<double> sum = c[0] * moments[0];
  for (std::size_t k = 1; k < c.size(); ++k) sum += 2.0 * ipow(k) * (c[k] * moments[k]);
  return std::polar(1.0, t * bound.center) * sum;
}

}  // namespace cauchydos
