#pragma once

#include <complex>
#include <span>
#include <vector>

#include "cauchydos/ensemble.hpp"

namespace cauchydos {

/// Diagonal resolvent entries <delta_v, (H - z)^{-1} delta_v> of the tree
/// operator build_tree(spec, omegas) for every vertex of level <= max_level,
/// in vertex order. Exact for any finite tree: a downward sweep builds the
/// subtree (cavity) Green functions, an upward sweep adds the parent side.
/// Cost O(vertex_count) per z, no matrix is formed. Requires Im z > 0.
std::vector<std::complex<double>> tree_diagonal_green(const TreeSpec& spec,
                                                      std::span<const double> omegas,
                                                      std::complex<double> z, int max_level);

/// Reusable workspace variant for sweeping many energies on one sample.
class TreeResolvent {
 public:
  TreeResolvent(const TreeSpec& spec, std::span<const double> omegas);

  std::size_t vertex_count() const noexcept { return parent_.size(); }
  /// Number of vertices with level <= max_level.
  std::size_t ball_size(int max_level) const;
  /// Writes G_vv(z) for the first ball_size(max_level) vertices into `out`.
  void diagonal(std::complex<double> z, int max_level, std::vector<std::complex<double>>& out);

 private:
  TreeSpec spec_;
  std::vector<double> omega_;
  std::vector<std::size_t> parent_;
  std::vector<std::complex<double>> g_;
  std::vector<std::complex<double>> s_;
  std::vector<std::complex<double>> h_;
};

}  // namespace cauchydos
