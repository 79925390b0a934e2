#include "cauchydos/free_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "cauchydos/bessel.hpp"
#include "cauchydos/errors.hpp"
#include "quadrature.hpp"

namespace cauchydos {
namespace {

constexpr double kPi = std::numbers::pi;
// e^{-x} < 1e-14 beyond this many decay lengths.
const double kTruncationDecay = std::log(1e14);

double lattice_integrand_envelope(int dim, double lambda, double t) {
  return std::exp(-lambda * t) * std::pow(bessel_j(0, 2.0 * t), dim);
}

}  // namespace

LatticeFreeModel::LatticeFreeModel(int dim) : dim_(dim) {
  if (dim < 1) throw InvalidArgument("lattice dimension must be >= 1");
}

BetheFreeModel::BetheFreeModel(int branching) : k_(branching) {
  if (branching < 2) throw InvalidArgument("Bethe branching number must be >= 2");
}

double BetheFreeModel::band_edge() const noexcept { return 2.0 * std::sqrt(static_cast<double>(k_)); }

double lattice_free_charfn(const LatticeFreeModel& model, double t) {
  return std::pow(bessel_j(0, 2.0 * t), model.dim());
}

std::complex<double> lattice_offdiag_charfn(const LatticeFreeModel& model,
                                            std::span<const int> x, double t) {
  if (static_cast<int>(x.size()) != model.dim()) {
    throw InvalidArgument("lattice_offdiag_charfn: displacement has " +
                          std::to_string(x.size()) + " components, expected " +
                          std::to_string(model.dim()));
  }
  std::complex<double> amp{1.0, 0.0};
  static constexpr std::complex<double> kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int xj : x) {
    const int n = std::abs(xj);
    amp *= kIPow[n % 4] * bessel_j(n, 2.0 * t);
  }
  return amp;
}

std::complex<double> lattice_dos_smoothed(const LatticeFreeModel& model,
                                          const CauchyKernel& kernel,
                                          std::complex<double> energy) {
  const double lambda = kernel.lambda();
  const double y = std::abs(energy.imag());
  if (!(y < lambda)) {
    throw OutsideStripError("lattice_dos_smoothed: |Im E| = " + std::to_string(y) +
                            " is outside the strip |Im E| < lambda = " + std::to_string(lambda));
  }
  const double t_max = kTruncationDecay / (lambda - y);
  const double freq = std::abs(energy.real()) + y + 2.0 * model.dim();
  const double panel = std::min(1.0, 2.0 * kPi / freq);
  const int dim = model.dim();
  auto f = [&](double t) {
    return lattice_integrand_envelope(dim, lambda, t) * std::cos(energy * t);
  };
  return detail::integrate_panels(f, 0.0, t_max, panel) / kPi;
}

double lattice_dos_smoothed(const LatticeFreeModel& model, const CauchyKernel& kernel,
                            double energy) {
  return lattice_dos_smoothed(model, kernel, std::complex<double>(energy, 0.0)).real();
}

GridDensity lattice_dos_curve(const LatticeFreeModel& model, const CauchyKernel& kernel,
                              const EnergyGrid& grid) {
  const double lambda = kernel.lambda();
  const double e_abs = std::max(std::abs(grid.e_min), std::abs(grid.e_max));
  const double freq = e_abs + 2.0 * model.dim();
  const double t_max = kTruncationDecay / lambda;
  const auto rule = detail::composite_gauss_legendre(0.0, t_max, std::min(1.0, 3.0 * kPi / freq));
  std::vector<double> f(rule.nodes.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = rule.weights[i] * lattice_integrand_envelope(model.dim(), lambda, rule.nodes[i]);
  }
  GridDensity out{grid, std::vector<double>(grid.size()), {}};
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    const double e = grid.energy(k);
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * std::cos(e * rule.nodes[i]);
    out.values[k] = s / kPi;
  }
  return out;
}

double kesten_mckay_density(const BetheFreeModel& model, double energy) {
  const double k = model.branching();
  const double e2 = energy * energy;
  if (e2 >= 4.0 * k) return 0.0;
  return (k + 1.0) * std::sqrt(4.0 * k - e2) / (2.0 * kPi * ((k + 1.0) * (k + 1.0) - e2));
}

double bethe_dos_smoothed(const BetheFreeModel& model, const CauchyKernel& kernel,
                          double energy) {
  const double k = model.branching();
  const double edge = model.band_edge();
  const double lambda = kernel.lambda();
  // x = edge * sin(theta) removes the square-root edges of rho_KM.
  auto f = [&](double theta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double rho_dx =
        (k + 1.0) * 4.0 * k * c * c / (2.0 * kPi * ((k + 1.0) * (k + 1.0) - 4.0 * k * s * s));
    return rho_dx * cauchy_density(kernel, energy - edge * s);
  };
  std::vector<double> pts{-kPi / 2, kPi / 2};
  for (double off : {0.0, -50.0, -5.0, -1.0, 1.0, 5.0, 50.0}) {
    const double x = energy + off * lambda;
    if (std::abs(x) < edge) pts.push_back(std::asin(x / edge));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return detail::integrate_breakpoints(f, pts);
}

GridDensity bethe_dos_curve(const BetheFreeModel& model, const CauchyKernel& kernel,
                            const EnergyGrid& grid) {
  GridDensity out{grid, std::vector<double>(grid.size()), {}};
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = bethe_dos_smoothed(model, kernel, grid.energy(i));
  }
  return out;
}

std::complex<double> truncated_tree_green(const BetheFreeModel& model, int depth, int level,
                                          std::complex<double> z) {
  if (depth < 0 || level < 0 || level > depth) {
    throw InvalidArgument("truncated_tree_green: need 0 <= level <= depth");
  }
  if (!(z.imag() > 0.0)) throw InvalidArgument("truncated_tree_green requires Im z > 0");
  const double k = model.branching();
  // down[j]: Green function at a level-j vertex of the subtree hanging below it.
  std::vector<std::complex<double>> down(static_cast<std::size_t>(depth) + 1);
  down[static_cast<std::size_t>(depth)] = 1.0 / (-z);
  for (int j = depth - 1; j >= 1; --j) {
    down[static_cast<std::size_t>(j)] = 1.0 / (-z - k * down[static_cast<std::size_t>(j) + 1]);
  }
  if (depth == 0) return 1.0 / (-z);
  if (level == 0) return 1.0 / (-z - (k + 1.0) * down[1]);

  // up: parent's Green function with the branch through the current vertex removed.
  std::complex<double> up = 1.0 / (-z - k * down[1]);
  for (int j = 2; j <= level; ++j) {
    up = 1.0 / (-z - (k - 1.0) * down[static_cast<std::size_t>(j)] - up);
  }
  const double children = level < depth ? k : 0.0;
  const std::complex<double> below =
      level < depth ? down[static_cast<std::size_t>(level) + 1] : std::complex<double>{};
  return 1.0 / (-z - children * below - up);
}

double continuum_free_ids(const ContinuumFreeModel&, double energy) {
  return std::sqrt(std::max(energy, 0.0)) / kPi;
}

double continuum_ids_smoothed(const ContinuumFreeModel&, const CauchyKernel& kernel,
                              double energy) {
  const double lambda = kernel.lambda();
  const double theta_max = std::atan(energy / lambda);
  const double a = -kPi / 2;
  const double b = theta_max;
  // Second argument is the signed distance to the nearest endpoint; used to
  // evaluate tan() and the vanishing square root without cancellation.
  auto f = [&](double theta, double xc) {
    double arg;
    if (xc < 0.0) {  // near theta = -pi/2: tan(-pi/2 + d) = -1/tan(d)
      const double d = -xc;
      arg = energy + lambda / std::tan(d);
    } else if (xc > 0.0) {  // near theta_max
      const double d = xc;
      arg = lambda * std::sin(d) / (std::cos(theta_max) * std::cos(theta_max - d));
    } else {
      arg = energy - lambda * std::tan(theta);
    }
    return std::sqrt(std::max(arg, 0.0));
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double value = integrator.integrate(f, a, b, 1e-13);
  return value / (kPi * kPi);
}

}  // namespace cauchydos
