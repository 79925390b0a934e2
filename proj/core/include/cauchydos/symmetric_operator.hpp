#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace cauchydos {

/// Finite real symmetric matrix in sparse form. Entries are stored once with
/// row <= col and are implicitly symmetrised; duplicates are summed on
/// construction.
class SymmetricOperator {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    double value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  SymmetricOperator() = default;
  /// Throws InvalidArgument on out-of-range indices or non-finite values.
  SymmetricOperator(std::size_t n, std::vector<Entry> entries);

  std::size_t dimension() const noexcept { return n_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  /// Row-major dense copy.
  std::vector<double> to_dense() const;
  std::vector<double> diagonal() const;
  double max_abs_entry() const noexcept;

  /// Neighbour lists of the full symmetric pattern (off-diagonal only).
  const std::vector<std::size_t>& row_offsets() const noexcept { return row_ptr_; }
  const std::vector<std::size_t>& column_indices() const noexcept { return col_idx_; }
  const std::vector<double>& row_values() const noexcept { return val_; }

  void multiply(std::span<const double> x, std::span<double> y) const;
  void multiply(std::span<const std::complex<double>> x, std::span<std::complex<double>> y) const;

  /// Copy with c added to every diagonal entry.
  SymmetricOperator shifted(double c) const;

  /// FNV-1a over dimension and entries; identifies a matrix in error reports.
  std::uint64_t hash() const noexcept;

  /// `row col value` lines (0-based, upper triangle), `%.12g` formatting.
  void write_triplets(std::ostream& os) const;

  friend bool operator==(const SymmetricOperator& a, const SymmetricOperator& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

 private:
  void build_rows();

  std::size_t n_ = 0;
  std::vector<Entry> entries_;
  std::vector<double> diag_;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> col_idx_;
  std::vector<double> val_;
};

}  // namespace cauchydos
