#include "cauchydos/rng.hpp"

namespace cauchydos {
namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter c, Key k) noexcept {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k[0] += kW0;
      k[1] += kW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, c[0], hi0, lo0);
    mulhilo(kM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
  return c;
}

double uniform_open01(std::uint64_t master_seed, std::uint64_t sample_index,
                      std::uint64_t site_index) noexcept {
  const Philox4x32::Counter ctr{static_cast<std::uint32_t>(site_index),
                                static_cast<std::uint32_t>(site_index >> 32),
                                static_cast<std::uint32_t>(sample_index),
                                static_cast<std::uint32_t>(sample_index >> 32)};
  const Philox4x32::Key key{static_cast<std::uint32_t>(master_seed),
                            static_cast<std::uint32_t>(master_seed >> 32)};
  const auto out = Philox4x32::generate(ctr, key);
  const std::uint64_t bits = (static_cast<std::uint64_t>(out[0]) << 32 | out[1]) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace cauchydos
