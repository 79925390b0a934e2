#include "cauchydos/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "cauchydos/errors.hpp"

namespace cauchydos {

void EnergyGrid::validate() const {
  if (!(std::isfinite(e_min) && std::isfinite(e_max) && std::isfinite(step))) {
    throw InvalidArgument("energy grid bounds and step must be finite");
  }
  if (!(step > 0.0)) throw InvalidArgument("energy grid step must be positive");
  if (e_max < e_min) throw InvalidArgument("energy grid requires e_max >= e_min");
}

std::size_t EnergyGrid::size() const {
  validate();
  // The small slack keeps e.g. (6 - (-6)) / 0.02 from losing its last point.
  return static_cast<std::size_t>(std::floor((e_max - e_min) / step + 1e-9)) + 1;
}

std::vector<double> EnergyGrid::energies() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = energy(i);
  return out;
}

WeightedSpectrum::WeightedSpectrum(std::vector<double> points,
                                   std::vector<std::complex<double>> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.size() != weights_.size()) {
    throw InvalidArgument("WeightedSpectrum: points and weights differ in length");
  }
}

WeightedSpectrum WeightedSpectrum::real(std::vector<double> points,
                                        std::span<const double> weights) {
  std::vector<std::complex<double>> w(weights.begin(), weights.end());
  return WeightedSpectrum(std::move(points), std::move(w));
}

WeightedSpectrum WeightedSpectrum::point_mass(double energy, double weight) {
  return WeightedSpectrum({energy}, {std::complex<double>(weight, 0.0)});
}

std::complex<double> WeightedSpectrum::total_weight() const noexcept {
  std::complex<double> s{};
  for (const auto& w : weights_) s += w;
  return s;
}

bool WeightedSpectrum::has_imaginary_weights() const noexcept {
  return std::any_of(weights_.begin(), weights_.end(),
                     [](const std::complex<double>& w) { return w.imag() != 0.0; });
}

bool WeightedSpectrum::is_probability(double tol) const noexcept {
  double sum = 0.0;
  for (const auto& w : weights_) {
    if (w.imag() != 0.0 || w.real() < 0.0) return false;
    sum += w.real();
  }
  return std::abs(sum - 1.0) <= tol;
}

StepIDS::StepIDS(std::vector<double> jumps, std::vector<double> cumulative)
    : jumps_(std::move(jumps)), cumulative_(std::move(cumulative)) {
  if (jumps_.size() != cumulative_.size()) {
    throw InvalidArgument("StepIDS: jumps and cumulative differ in length");
  }
  if (!std::is_sorted(jumps_.begin(), jumps_.end())) {
    throw InvalidArgument("StepIDS: jump locations must be sorted");
  }
  for (std::size_t i = 0; i < cumulative_.size(); ++i) {
    if (cumulative_[i] < 0.0 || (i > 0 && cumulative_[i] < cumulative_[i - 1])) {
      throw InvalidArgument("StepIDS: cumulative values must be nondecreasing and >= 0");
    }
  }
  if (!cumulative_.empty() && cumulative_.back() > 1.0 + 1e-10) {
    throw InvalidArgument("StepIDS: cumulative exceeds 1");
  }
}

double StepIDS::operator()(double energy) const noexcept {
  const auto it = std::upper_bound(jumps_.begin(), jumps_.end(), energy);
  if (it == jumps_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - jumps_.begin()) - 1];
}

double StepIDS::left_limit(double energy) const noexcept {
  const auto it = std::lower_bound(jumps_.begin(), jumps_.end(), energy);
  if (it == jumps_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - jumps_.begin()) - 1];
}

GridDensity smear_spectrum(const WeightedSpectrum& spectrum, const CauchyKernel& kernel,
                           const EnergyGrid& grid, bool with_imag) {
  GridDensity out{grid, std::vector<double>(grid.size(), 0.0), {}};
  const bool complex = with_imag || spectrum.has_imaginary_weights();
  if (complex) out.imag.assign(out.values.size(), 0.0);

  const double l = kernel.lambda();
  const double l2 = l * l;
  const auto& pts = spectrum.points();
  const auto& ws = spectrum.weights();
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    const double e = grid.energy(k);
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double d = e - pts[i];
      const double p = l / (l2 + d * d);
      re += ws[i].real() * p;
      im += ws[i].imag() * p;
    }
    out.values[k] = re / std::numbers::pi;
    if (complex) out.imag[k] = im / std::numbers::pi;
  }
  return out;
}

std::complex<double> stieltjes_eval(const WeightedSpectrum& spectrum, std::complex<double> z) {
  if (!(z.imag() > 0.0)) {
    throw InvalidArgument("stieltjes_eval requires Im z > 0");
  }
  std::complex<double> m{};
  const auto& pts = spectrum.points();
  const auto& ws = spectrum.weights();
  for (std::size_t i = 0; i < pts.size(); ++i) m += ws[i] / (pts[i] - z);
  return m;
}

double trapezoid_mass(const GridDensity& density) {
  const auto& v = density.values;
  if (v.size() < 2) return 0.0;
  double s = 0.5 * (v.front() + v.back());
  for (std::size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
  return s * density.grid.step;
}

StepIDS ids_of(const GridDensity& density) {
  const auto& v = density.values;
  for (double x : v) {
    if (x < 0.0) throw InvalidArgument("ids_of: density has negative values");
  }
  std::vector<double> cumulative(v.size(), 0.0);
  const double h = density.grid.step;
  for (std::size_t i = 1; i < v.size(); ++i) {
    cumulative[i] = cumulative[i - 1] + 0.5 * h * (v[i - 1] + v[i]);
  }
  return StepIDS(density.grid.energies(), std::move(cumulative));
}

double smear_window_mass(const WeightedSpectrum& spectrum, const CauchyKernel& kernel,
                         const EnergyGrid& grid) {
  double mass = 0.0;
  const auto& pts = spectrum.points();
  const auto& ws = spectrum.weights();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    mass += ws[i].real() * cauchy_mass(kernel, grid.e_min - pts[i], grid.e_max - pts[i]);
  }
  return mass;
}

namespace {

// Integral of (1 - y/h) psi(c - y) over y in [0, h]: the right half of a tent
// of width h anchored at offset c from the evaluation point.
double half_tent_weight(const CauchyKernel& kernel, double c, double h) {
  const double l = kernel.lambda();
  if (std::abs(c) <= 20.0 * h + 4.0 * l) {
    const double a = c - h;
    const double dF = cauchy_mass(kernel, a, c);
    const double dG = l / (2.0 * std::numbers::pi) * std::log1p(h * (2.0 * c - h) / (l * l + a * a));
    return (dG - a * dF) / h;
  }
  // Far from the Cauchy peak the integrand is smooth across the cell.
  static constexpr std::array<double, 4> x{0.1834346424956498, 0.5255324099163290,
                                           0.7966664774136267, 0.9602898564975363};
  static constexpr std::array<double, 4> w{0.3626837833783620, 0.3137066458778873,
                                           0.2223810344533745, 0.1012285362903763};
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (double sign : {-1.0, 1.0}) {
      const double y = 0.5 * h * (1.0 + sign * x[i]);
      s += w[i] * (1.0 - y / h) * cauchy_density(kernel, c - y);
    }
  }
  return 0.5 * h * s;
}

std::vector<double> convolve_values(const std::vector<double>& g, const std::vector<double>& r,
                                    std::size_t n) {
  // r[m + n - 1] holds the half-tent weight at offset m * h.
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(k) - static_cast<std::ptrdiff_t>(j);
      double w = 0.0;
      if (j + 1 < n) w += r[static_cast<std::size_t>(m + static_cast<std::ptrdiff_t>(n) - 1)];
      if (j > 0) w += r[static_cast<std::size_t>(-m + static_cast<std::ptrdiff_t>(n) - 1)];
      s += g[j] * w;
    }
    out[k] = s;
  }
  return out;
}

}  // namespace

GridDensity convolve_cauchy(const GridDensity& density, const CauchyKernel& kernel) {
  const std::size_t n = density.values.size();
  GridDensity out{density.grid, {}, {}};
  if (n == 0) return out;
  if (n == 1) {
    out.values.assign(1, 0.0);
    if (density.is_complex()) out.imag.assign(1, 0.0);
    return out;
  }
  const double h = density.grid.step;
  std::vector<double> r(2 * n - 1);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double m = static_cast<double>(i) - static_cast<double>(n - 1);
    r[i] = half_tent_weight(kernel, m * h, h);
  }
  out.values = convolve_values(density.values, r, n);
  if (density.is_complex()) out.imag = convolve_values(density.imag, r, n);
  return out;
}

}  // namespace cauchydos
