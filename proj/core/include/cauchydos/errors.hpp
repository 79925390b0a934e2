#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cauchydos {

/// Precondition violated by a caller-supplied value.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Complex energy evaluated at or beyond the analyticity strip |Im z| < lambda.
class OutsideStripError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Eigensolver did not converge within its iteration cap.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what, std::uint64_t matrix_hash)
      : std::runtime_error(what), matrix_hash_(matrix_hash) {}
  std::uint64_t matrix_hash() const noexcept { return matrix_hash_; }

 private:
  std::uint64_t matrix_hash_;
};

/// Chebyshev propagation drifted in norm: the spectral enclosure was too small.
class EnclosureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problem size exceeds a configured resource cap (dense eigensolve).
class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Wraps an error raised while processing one disorder sample.
class SampleError : public std::runtime_error {
 public:
  SampleError(const std::string& what, std::uint64_t sample_index)
      : std::runtime_error(what), sample_index_(sample_index) {}
  std::uint64_t sample_index() const noexcept { return sample_index_; }

 private:
  std::uint64_t sample_index_;
};

}  // namespace cauchydos
