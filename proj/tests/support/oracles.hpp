#pragma once

// Reference values computed independently at 30 significant digits with
// mpmath (closed forms where they exist, adaptive quadrature otherwise),
// plus small helpers shared by the test binaries.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "cauchydos/symmetric_operator.hpp"

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

// 1/(pi sqrt(lambda^2 + 4)): Laplace transform of J_0(2t) at lambda.
inline constexpr double kLatticeD1L1E0 = 0.142352508683435;
inline constexpr double kLatticeD1L05E0 = 0.154402974401659;
// (1/pi) int_0^inf e^{-t} cos(t/2) J_0(2t)^2 dt
inline constexpr double kLatticeD2L1E05 = 0.133459304785944;

// psi_lambda * Kesten-McKay, K = 2
inline constexpr double kBetheK2L1E0 = 0.127323954473516;  // 2/(5 pi)
inline constexpr double kBetheK2L1E1 = 0.127432654258794;
inline constexpr double kBetheK2L11E0 = 0.124773649169772;
inline constexpr double kKestenMcKayK2E0 = 0.150052719359518;  // sqrt(2)/(3 pi)

// psi_0.2 * sqrt(max(E,0))/pi
inline constexpr double kContinuumL02E1 = 0.319881948653607;
inline constexpr double kContinuumL02Em5 = 0.014232405809228;
inline constexpr double kContinuumL02Em1 = 0.031674554962792;
inline constexpr double kContinuumL02E4 = 0.636818560825367;

inline constexpr double kJ0At1 = 0.765197686557967;
inline constexpr double kJ1At1 = 0.440050585744934;
inline constexpr double kJ0At4 = -0.397149809863847;
inline constexpr double kJ0FirstZero = 2.40482555769577;
inline constexpr double kCauchyMassWithin50 = 0.987269301798054;  // (2/pi) atan(50)

/// Exact smoothed DOS of the free chain: (1/pi) Im G(E + i lambda) with
/// G(z) = -1/sqrt(z^2 - 4), written with principal roots valid for Im z > 0.
inline double chain_dos(double energy, double lambda) {
  const std::complex<double> z{energy, lambda};
  const auto g = 1.0 / (std::sqrt(z - 2.0) * std::sqrt(z + 2.0));
  return -g.imag() / kPi;
}

/// Kesten-McKay Stieltjes transform route: (1/pi) Im G(E + i lambda) with
/// G = 1/(-z - (K+1) g), g the branch of K g^2 + z g + 1 = 0 with Im g > 0.
inline double bethe_dos(int k, double energy, double lambda) {
  const std::complex<double> z{energy, lambda};
  const double kk = k;
  const auto root = std::sqrt(z - 2.0 * std::sqrt(kk)) * std::sqrt(z + 2.0 * std::sqrt(kk));
  auto g = (-z + root) / (2.0 * kk);
  if (g.imag() < 0.0) g = (-z - root) / (2.0 * kk);
  const auto G = 1.0 / (-z - (kk + 1.0) * g);
  return G.imag() / kPi;
}

/// Random symmetric sparse operator: diagonal in [-d, d], `extra` random
/// couplings in [-1, 1] plus a nearest-neighbour chain.
inline cauchydos::SymmetricOperator random_operator(std::size_t n, std::size_t extra,
                                                    std::uint64_t seed, double d = 2.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<cauchydos::SymmetricOperator::Entry> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back({i, i, d * u(rng)});
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, u(rng)});
  for (std::size_t k = 0; k < extra; ++k) e.push_back({pick(rng), pick(rng), u(rng)});
  return cauchydos::SymmetricOperator(n, std::move(e));
}

/// Random banded operator with half-bandwidth b (every in-band entry set).
inline cauchydos::SymmetricOperator random_banded(std::size_t n, std::size_t b,
                                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cauchydos::SymmetricOperator::Entry> e;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < std::min(n, i + b + 1); ++j) e.push_back({i, j, u(rng)});
  }
  return cauchydos::SymmetricOperator(n, std::move(e));
}

}  // namespace oracle
