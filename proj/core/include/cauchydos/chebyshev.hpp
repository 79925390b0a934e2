#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "cauchydos/symmetric_operator.hpp"

namespace cauchydos {

/// Interval [center - half_width, center + half_width] containing the spectrum.
struct SpectralBound {
  double center = 0.0;
  double half_width = 1.0;
};

/// Gershgorin enclosure, widened by a relative margin so that T_n stays
/// bounded under rounding.
SpectralBound gershgorin_bound(const SymmetricOperator& op);

/// Number of expansion terms used for exp(itH) at a*|t|: the first
/// n > a|t| + 40 with |J_n(a t)| < 1e-15.
std::size_t chebyshev_terms(const SpectralBound& bound, double t);

/// exp(itH) v by the Chebyshev-Bessel expansion
///   exp(itH) = exp(itb) sum_n (2 - delta_n0) i^n J_n(a t) T_n((H - b)/a).
/// Throws EnclosureError if the norm drifts by more than 1e-6 (the bound did
/// not enclose the spectrum).
std::vector<std::complex<double>> chebyshev_evolve(const SymmetricOperator& op,
                                                   std::span<const std::complex<double>> v,
                                                   double t, const SpectralBound& bound);
std::vector<std::complex<double>> chebyshev_evolve(const SymmetricOperator& op,
                                                   std::span<const std::complex<double>> v,
                                                   double t);

/// m_n = <delta_phi, T_n((H - b)/a) delta_psi> for n < count.
std::vector<double> chebyshev_moments(const SymmetricOperator& op, std::size_t site_phi,
                                      std::size_t site_psi, const SpectralBound& bound,
                                      std::size_t count);

/// <delta_phi, exp(itH) delta_psi> from precomputed moments. Throws
/// InvalidArgument if fewer than chebyshev_terms(bound, t) moments are given.
std::complex<double> amplitude_from_moments(std::span<const double> moments,
                                            const SpectralBound& bound, double t);

}  // namespace cauchydos
