#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "cauchydos/cauchy.hpp"

namespace cauchydos {

/// Uniform energy grid closed at both ends: e_min, e_min + step, ..., <= e_max.
struct EnergyGrid {
  double e_min = 0.0;
  double e_max = 0.0;
  double step = 1.0;

  /// Throws InvalidArgument for non-finite bounds, e_max < e_min or step <= 0.
  void validate() const;
  std::size_t size() const;
  double energy(std::size_t i) const noexcept { return e_min + static_cast<double>(i) * step; }
  std::vector<double> energies() const;

  friend bool operator==(const EnergyGrid&, const EnergyGrid&) = default;
};

/// Finite point measure sum_i w_i delta_{E_i}. Weights are complex so that
/// off-diagonal spectral measures <phi, E(.) psi> fit the same type.
class WeightedSpectrum {
 public:
  WeightedSpectrum() = default;
  WeightedSpectrum(std::vector<double> points, std::vector<std::complex<double>> weights);
  static WeightedSpectrum real(std::vector<double> points, std::span<const double> weights);
  static WeightedSpectrum point_mass(double energy, double weight = 1.0);

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const std::vector<double>& points() const noexcept { return points_; }
  const std::vector<std::complex<double>>& weights() const noexcept { return weights_; }

  std::complex<double> total_weight() const noexcept;
  bool has_imaginary_weights() const noexcept;

  /// True when weights are real, nonnegative and sum to 1 within tol: the
  /// shape of <phi, E(.) phi> for a unit vector phi.
  bool is_probability(double tol = 1e-10) const noexcept;

 private:
  std::vector<double> points_;
  std::vector<std::complex<double>> weights_;
};

/// Real density sampled on an EnergyGrid; `imag` is empty unless the density
/// comes from a complex measure.
struct GridDensity {
  EnergyGrid grid;
  std::vector<double> values;
  std::vector<double> imag;

  bool is_complex() const noexcept { return !imag.empty(); }
};

/// Right-continuous nondecreasing step function with values in [0, 1].
class StepIDS {
 public:
  StepIDS() = default;
  /// Throws InvalidArgument if jumps are unsorted, lengths differ, cumulative
  /// decreases or exceeds 1 + 1e-10.
  StepIDS(std::vector<double> jumps, std::vector<double> cumulative);

  const std::vector<double>& jumps() const noexcept { return jumps_; }
  const std::vector<double>& cumulative() const noexcept { return cumulative_; }
  std::size_t size() const noexcept { return jumps_.size(); }

  /// Value at E: cumulative of the last jump <= E, or 0 before the first.
  double operator()(double energy) const noexcept;
  /// Left limit at E.
  double left_limit(double energy) const noexcept;

 private:
  std::vector<double> jumps_;
  std::vector<double> cumulative_;
};

/// Exact convolution of a point measure with psi_lambda, evaluated on a grid.
/// The imaginary part is filled when any weight is complex or `with_imag`.
GridDensity smear_spectrum(const WeightedSpectrum& spectrum, const CauchyKernel& kernel,
                           const EnergyGrid& grid, bool with_imag = false);

/// m(z) = sum_i w_i / (E_i - z). Requires Im z > 0.
std::complex<double> stieltjes_eval(const WeightedSpectrum& spectrum, std::complex<double> z);

/// Cumulative trapezoid integral. Throws InvalidArgument on negative density.
StepIDS ids_of(const GridDensity& density);

double trapezoid_mass(const GridDensity& density);

/// Mass of psi_lambda * spectrum that falls inside [grid.e_min, grid.e_max]
/// (real part of the weights). The remainder is the out-of-window tail.
double smear_window_mass(const WeightedSpectrum& spectrum, const CauchyKernel& kernel,
                         const EnergyGrid& grid);

/// Convolution of the piecewise-linear interpolant of `density` with
/// psi_lambda, evaluated back on the same grid. Cell integrals are exact;
/// the density is taken to vanish outside the grid window.
GridDensity convolve_cauchy(const GridDensity& density, const CauchyKernel& kernel);

}  // namespace cauchydos
