#pragma once

#include <complex>
#include <span>
#include <vector>

#include "cauchydos/cauchy.hpp"
#include "cauchydos/measures.hpp"

namespace cauchydos {

/// Adjacency operator of Z^d; spectrum [-2d, 2d].
class LatticeFreeModel {
 public:
  explicit LatticeFreeModel(int dim);
  int dim() const noexcept { return dim_; }

 private:
  int dim_;
};

/// Adjacency operator of the (K+1)-regular Bethe lattice; spectrum [-2 sqrt K, 2 sqrt K].
class BetheFreeModel {
 public:
  explicit BetheFreeModel(int branching);
  int branching() const noexcept { return k_; }
  double band_edge() const noexcept;

 private:
  int k_;
};

/// The one-dimensional negative Laplacian.
struct ContinuumFreeModel {};

// -- Z^d ----------------------------------------------------------------------

/// <delta_0, exp(itH_0) delta_0> = J_0(2t)^d.
double lattice_free_charfn(const LatticeFreeModel& model, double t);

/// <delta_0, exp(itH_0) delta_x> = prod_j i^|x_j| J_|x_j|(2t).
std::complex<double> lattice_offdiag_charfn(const LatticeFreeModel& model,
                                            std::span<const int> x, double t);

/// (psi_lambda * mu_{delta_0,delta_0})(E) for real or complex E with
/// |Im E| < lambda, via (1/pi) int_0^inf e^{-lambda t} cos(E t) J_0(2t)^d dt.
/// Throws OutsideStripError when |Im E| >= lambda.
std::complex<double> lattice_dos_smoothed(const LatticeFreeModel& model,
                                          const CauchyKernel& kernel, std::complex<double> energy);
double lattice_dos_smoothed(const LatticeFreeModel& model, const CauchyKernel& kernel,
                            double energy);

/// Same curve on a whole grid. The t-integrand is tabulated once on fixed
/// Gauss-Legendre panels sized for the largest |E| of the grid.
GridDensity lattice_dos_curve(const LatticeFreeModel& model, const CauchyKernel& kernel,
                              const EnergyGrid& grid);

// -- Bethe lattice ------------------------------------------------------------

/// Kesten-McKay law, the root spectral density of the infinite tree.
double kesten_mckay_density(const BetheFreeModel& model, double energy);

/// (psi_lambda * rho_KM)(E) by adaptive quadrature over the band.
double bethe_dos_smoothed(const BetheFreeModel& model, const CauchyKernel& kernel, double energy);

GridDensity bethe_dos_curve(const BetheFreeModel& model, const CauchyKernel& kernel,
                            const EnergyGrid& grid);

/// Diagonal Green function <delta_v, (H_0 - z)^{-1} delta_v> of the free tree
/// truncated at `depth`, for a vertex v at `level` (root = 0). Computed by the
/// level continued fraction; Im z > 0.
std::complex<double> truncated_tree_green(const BetheFreeModel& model, int depth, int level,
                                          std::complex<double> z);

// -- continuum ----------------------------------------------------------------

/// Free integrated density of states per unit length, sqrt(max(E,0)) / pi.
double continuum_free_ids(const ContinuumFreeModel& model, double energy);

/// (psi_lambda * N_0)(E), integrated in the angle variable E' = E - lambda tan(theta).
double continuum_ids_smoothed(const ContinuumFreeModel& model, const CauchyKernel& kernel,
                              double energy);

}  // namespace cauchydos
