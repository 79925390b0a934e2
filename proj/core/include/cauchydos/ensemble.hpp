#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cauchydos/cauchy.hpp"
#include "cauchydos/symmetric_operator.hpp"

namespace cauchydos {

/// One realisation of i.i.d. Cauchy couplings, reproducible from
/// (master_seed, sample_index, count).
struct DisorderSample {
  std::vector<double> omegas;
  std::uint64_t master_seed = 0;
  std::uint64_t sample_index = 0;
};

/// omega_i = cauchy_sample(kernel, U(master_seed, sample_index, i)).
DisorderSample draw_sample(const CauchyKernel& kernel, std::size_t count,
                           std::uint64_t master_seed, std::uint64_t sample_index);

enum class Boundary { periodic, dirichlet };

struct LatticeBoxSpec {
  int dim = 1;
  int side = 1;
  Boundary boundary = Boundary::periodic;

  void validate() const;
  std::size_t site_count() const;
  /// Linear index of a lattice point (coordinates taken modulo side).
  std::size_t index(std::span<const int> coords) const;
};

/// Rooted tree where the root has K+1 children and every other interior
/// vertex K children; vertices numbered breadth-first, root = 0.
struct TreeSpec {
  int branching = 2;
  int depth = 0;

  void validate() const;
  std::size_t vertex_count() const;
  /// Number of vertices at the given level (root level 0).
  std::size_t level_size(int level) const;
  /// Index of the first vertex at a level; level_start(depth + 1) == vertex_count().
  std::size_t level_start(int level) const;
  /// Parent of every vertex (root maps to itself).
  std::vector<std::size_t> parents() const;
};

/// Piecewise-linear hats u_n(x) = max(0, 1 - |x - n|) on a periodic box of
/// `length` unit cells, sampled at mesh points x_j = j / mesh_per_unit.
/// At every mesh point the two overlapping hats sum to one.
struct BumpFamily {
  int length = 1;
  int mesh_per_unit = 4;

  std::size_t mesh_size() const noexcept {
    return static_cast<std::size_t>(length) * static_cast<std::size_t>(mesh_per_unit);
  }
  /// The (at most two) bumps that are nonzero at mesh point j, with weights.
  struct Overlap {
    int left_bump;
    double left_weight;
    int right_bump;
    double right_weight;
  };
  Overlap overlap(std::size_t mesh_index) const noexcept;
  double value(int bump, std::size_t mesh_index) const noexcept;
};

struct ContinuumBoxSpec {
  int length = 1;
  double mesh_step = 0.25;

  /// Throws InvalidArgument unless length >= 1 and 1/mesh_step is an integer >= 4.
  void validate() const;
  int mesh_per_unit() const;
  BumpFamily bumps() const;
  std::size_t mesh_size() const;
};

/// Nearest-neighbour adjacency of the box plus diag(omega). An empty omega
/// span builds the free operator. Periodic wrap adds both bond directions, so
/// a side of 2 carries hopping 2 and a side of 1 a self-loop of 2.
SymmetricOperator build_lattice(const LatticeBoxSpec& spec, std::span<const double> omegas = {});

SymmetricOperator build_tree(const TreeSpec& spec, std::span<const double> omegas = {});

/// Periodic second difference -Delta_h plus diag(sum_n omega_n u_n(x_j));
/// one omega per unit cell.
SymmetricOperator build_continuum(const ContinuumBoxSpec& spec,
                                  std::span<const double> omegas = {});

}  // namespace cauchydos
