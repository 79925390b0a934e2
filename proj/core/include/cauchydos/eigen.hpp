#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cauchydos/measures.hpp"
#include "cauchydos/symmetric_operator.hpp"

namespace cauchydos {

enum class EigenvectorMode {
  none,           ///< eigenvalues only
  selected_rows,  ///< components of every eigenvector at chosen sites
  full,           ///< the whole orthonormal eigenbasis
};

struct EigOptions {
  EigenvectorMode vectors = EigenvectorMode::full;
  /// Sites whose components are kept in `selected_rows` mode.
  std::vector<std::size_t> rows;
  /// Larger operators are rejected with ResourceCapExceeded.
  std::size_t dimension_cap = 4096;
  /// Implicit QL sweeps allowed per eigenvalue before SolverFailure.
  int max_iterations = 60;
  /// Permit the banded reduction when vectors != full and the reverse
  /// Cuthill-McKee bandwidth is small.
  bool allow_banded = true;
};

/// Ascending eigenvalues with (optionally) eigenvectors.
class EigenDecomposition {
 public:
  EigenDecomposition() = default;

  std::size_t dimension() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  bool has_full_vectors() const noexcept { return !vectors_.empty() || values_.empty(); }

  /// Eigenvector i as a contiguous span (full mode only).
  std::span<const double> vector(std::size_t i) const;
  /// Component of eigenvector i at `site`; available in full mode or when
  /// `site` was among the selected rows. Throws InvalidArgument otherwise.
  double component(std::size_t i, std::size_t site) const;
  bool has_site(std::size_t site) const noexcept;

 private:
  friend EigenDecomposition eig_sym(const SymmetricOperator&, const EigOptions&);
  friend EigenDecomposition make_decomposition(std::vector<double>, std::vector<double>);

  std::vector<double> values_;
  std::vector<double> vectors_;  // eigenvector-major, n x n
  std::vector<std::size_t> rows_;
  std::vector<double> row_components_;  // rows_.size() x n
};

/// Symmetric eigensolver: Householder tridiagonalisation (or Givens band
/// reduction after reverse Cuthill-McKee reordering for narrow-band operators)
/// followed by the implicitly shifted QL iteration.
EigenDecomposition eig_sym(const SymmetricOperator& op, const EigOptions& options = {});

/// Builds a decomposition from given ascending values and eigenvector-major
/// vectors (used by tests and tools that already hold a basis).
EigenDecomposition make_decomposition(std::vector<double> values, std::vector<double> vectors);

/// mu_{phi,psi} = sum_i v_i(phi) v_i(psi) delta_{E_i}.
WeightedSpectrum local_spectral_measure(const EigenDecomposition& eig, std::size_t site_phi,
                                        std::size_t site_psi);

/// Normalised eigenvalue count: every eigenvalue contributes a jump of
/// 1/volume, cumulative values clamped at 1.
StepIDS empirical_ids(const EigenDecomposition& eig, double volume);

/// Half-bandwidth of the operator after reverse Cuthill-McKee reordering.
std::size_t reordered_bandwidth(const SymmetricOperator& op);

}  // namespace cauchydos
