#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "cauchydos/cauchy.hpp"
#include "cauchydos/ensemble.hpp"
#include "cauchydos/measures.hpp"
#include "cauchydos/symmetric_operator.hpp"

namespace cauchydos {

using ModelSpec = std::variant<LatticeBoxSpec, TreeSpec, ContinuumBoxSpec>;

/// A finite-volume random operator family: geometry, disorder scale, and
/// whether the couplings are drawn at all (disorder off gives H_0).
struct EnsembleSpec {
  ModelSpec model = LatticeBoxSpec{};
  CauchyKernel kernel{1.0};
  bool disorder = true;

  void validate() const;
  /// Number of i.i.d. couplings per sample (sites, vertices or bumps).
  std::size_t coupling_count() const;
  std::size_t dimension() const;
  /// Normalising volume for eigenvalue counts: sites, vertices or box length.
  double volume() const;
  /// Couplings of one sample; empty when disorder is off.
  std::vector<double> couplings(std::uint64_t master_seed, std::uint64_t sample_index) const;
  SymmetricOperator build(std::span<const double> omegas) const;
};

/// Pointwise sample mean and standard error of an observable series.
/// std_error is empty when fewer than two samples were taken.
struct McEstimate {
  std::vector<double> x;
  std::vector<double> mean;
  std::vector<double> mean_im;
  std::vector<double> std_error;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;

  bool has_std_error() const noexcept { return !std_error.empty(); }
};

/// Sample-major results (n_samples x points) reduced in a fixed pairwise
/// order. For complex series the standard error is
/// sqrt((var_re + var_im) / n).
McEstimate reduce_samples(std::span<const double> x, const std::vector<std::vector<double>>& re,
                          const std::vector<std::vector<double>>& im, std::uint64_t seed);

enum class CharfnRoute {
  automatic,  ///< Chebyshev unless the term count exceeds the budget, then eigen
  chebyshev,
  eigen,
};

struct CharfnOptions {
  std::size_t site_phi = 0;
  std::size_t site_psi = 0;
  CharfnRoute route = CharfnRoute::automatic;
  /// Largest Chebyshev expansion accepted by the automatic route. Cauchy
  /// couplings make the Gershgorin width heavy-tailed; rare samples with a
  /// huge |omega| are diagonalised instead.
  std::size_t term_budget = 200000;
  std::size_t threads = 0;
};

/// E <delta_phi, exp(itH) delta_psi> over disorder samples.
McEstimate charfn_mc(const EnsembleSpec& ensemble, std::span<const double> t_grid,
                     std::size_t n_samples, std::uint64_t master_seed,
                     const CharfnOptions& options = {});

enum class DosObservable {
  site,          ///< <delta_s, E(.) delta_s> for one site s
  site_average,  ///< mean over all sites (eigenvalues only)
  ball,          ///< mean over tree vertices of level <= ball_radius
};

enum class DosRoute {
  automatic,  ///< exact tree resolvent for trees, eigensolver otherwise
  eigen,
  resolvent,
};

struct DosOptions {
  DosObservable observable = DosObservable::site;
  std::size_t site = 0;
  int ball_radius = 0;
  DosRoute route = DosRoute::automatic;
  std::size_t threads = 0;
};

/// Mean of the eta-smoothed local spectral density over disorder samples.
/// Requires eta > 0.
McEstimate dos_mc(const EnsembleSpec& ensemble, const EnergyGrid& grid, std::size_t n_samples,
                  std::uint64_t master_seed, double eta, const DosOptions& options = {});

/// Mean empirical IDS (eigenvalue count / volume, clamped at 1) on the grid.
McEstimate ids_mc(const EnsembleSpec& ensemble, const EnergyGrid& grid, std::size_t n_samples,
                  std::uint64_t master_seed, std::size_t threads = 0);

}  // namespace cauchydos
