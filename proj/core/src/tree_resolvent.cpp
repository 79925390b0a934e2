#include "cauchydos/tree_resolvent.hpp"

#include <algorithm>

#include "cauchydos/errors.hpp"

namespace cauchydos {
namespace {

inline std::complex<double> reciprocal(std::complex<double> w) {
  const double d = w.real() * w.real() + w.imag() * w.imag();
  return {w.real() / d, -w.imag() / d};
}

}  // namespace

TreeResolvent::TreeResolvent(const TreeSpec& spec, std::span<const double> omegas)
    : spec_(spec) {
  spec.validate();
  const std::size_t n = spec.vertex_count();
  if (!omegas.empty() && omegas.size() != n) {
    throw InvalidArgument("TreeResolvent: need one omega per vertex");
  }
  omega_.assign(n, 0.0);
  std::copy(omegas.begin(), omegas.end(), omega_.begin());
  parent_ = spec.parents();
  g_.resize(n);
  s_.resize(n);
  h_.resize(n);
}

std::size_t TreeResolvent::ball_size(int max_level) const {
  const int level = std::clamp(max_level, 0, spec_.depth);
  return spec_.level_start(level + 1);
}

void TreeResolvent::diagonal(std::complex<double> z, int max_level,
                             std::vector<std::complex<double>>& out) {
  if (!(z.imag() > 0.0)) throw InvalidArgument("TreeResolvent: Im z must be positive");
  const std::size_t n = parent_.size();
  std::fill(s_.begin(), s_.end(), std::complex<double>{});
  // children follow their parents in breadth-first numbering
  for (std::size_t v = n; v-- > 1;) {
    g_[v] = reciprocal(omega_[v] - z - s_[v]);
    s_[parent_[v]] += g_[v];
  }
  const std::size_t m = ball_size(max_level);
  out.resize(m);
  out[0] = reciprocal(omega_[0] - z - s_[0]);
  h_[0] = 0.0;
  for (std::size_t v = 1; v < m; ++v) {
    const std::size_t p = parent_[v];
    // parent with the branch through v removed
    h_[v] = reciprocal(omega_[p] - z - (s_[p] - g_[v]) - h_[p]);
    out[v] = reciprocal(omega_[v] - z - s_[v] - h_[v]);
  }
}

std::vector<std::complex<double>> tree_diagonal_green(const TreeSpec& spec,
                                                      std::span<const double> omegas,
                                                      std::complex<double> z, int max_level) {
  TreeResolvent r(spec, omegas);
  std::vector<std::complex<double>> out;
  r.diagonal(z, max_level, out);
  return out;
}

}  // namespace cauchydos
