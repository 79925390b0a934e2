#pragma once

#include <array>
#include <cstdint>

namespace cauchydos {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Stateless:
/// the output is a pure function of (counter, key), so any stream position can
/// be computed independently of scheduling.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key) noexcept;
};

/// Uniform variate strictly inside (0, 1), addressed by
/// (master_seed, sample_index, site_index). Uses 53 random bits.
double uniform_open01(std::uint64_t master_seed, std::uint64_t sample_index,
                      std::uint64_t site_index) noexcept;

}  // namespace cauchydos
