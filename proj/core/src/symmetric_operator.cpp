#include "cauchydos/symmetric_operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <ostream>

#include "cauchydos/errors.hpp"
#include "io_detail.hpp"

namespace cauchydos {

SymmetricOperator::SymmetricOperator(std::size_t n, std::vector<Entry> entries) : n_(n) {
  for (auto& e : entries) {
    if (e.row >= n || e.col >= n) {
      throw InvalidArgument("SymmetricOperator: entry index out of range");
    }
    if (!std::isfinite(e.value)) {
      throw InvalidArgument("SymmetricOperator: entries must be finite");
    }
    if (e.row > e.col) std::swap(e.row, e.col);
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (const auto& e : entries) {
    if (!entries_.empty() && entries_.back().row == e.row && entries_.back().col == e.col) {
      entries_.back().value += e.value;
    } else {
      entries_.push_back(e);
    }
  }
  build_rows();
}

void SymmetricOperator::build_rows() {
  diag_.assign(n_, 0.0);
  std::vector<std::size_t> count(n_, 0);
  for (const auto& e : entries_) {
    if (e.row == e.col) {
      diag_[e.row] = e.value;
    } else {
      ++count[e.row];
      ++count[e.col];
    }
  }
  row_ptr_.assign(n_ + 1, 0);
  for (std::size_t i = 0; i < n_; ++i) row_ptr_[i + 1] = row_ptr_[i] + count[i];
  col_idx_.assign(row_ptr_[n_], 0);
  val_.assign(row_ptr_[n_], 0.0);
  std::vector<std::size_t> fill(row_ptr_.begin(), row_ptr_.end() - 1);
  for (const auto& e : entries_) {
    if (e.row == e.col) continue;
    col_idx_[fill[e.row]] = e.col;
    val_[fill[e.row]++] = e.value;
    col_idx_[fill[e.col]] = e.row;
    val_[fill[e.col]++] = e.value;
  }
}

std::vector<double> SymmetricOperator::to_dense() const {
  std::vector<double> a(n_ * n_, 0.0);
  for (const auto& e : entries_) {
    a[e.row * n_ + e.col] = e.value;
    a[e.col * n_ + e.row] = e.value;
  }
  return a;
}

std::vector<double> SymmetricOperator::diagonal() const { return diag_; }

double SymmetricOperator::max_abs_entry() const noexcept {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e.value));
  return m;
}

namespace {

template <typename T>
void multiply_impl(std::size_t n, const std::vector<double>& diag,
                   const std::vector<std::size_t>& row_ptr, const std::vector<std::size_t>& col,
                   const std::vector<double>& val, std::span<const T> x, std::span<T> y) {
  if (x.size() != n || y.size() != n) {
    throw InvalidArgument("SymmetricOperator::multiply: vector length mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    T s = diag[i] * x[i];
    for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) s += val[p] * x[col[p]];
    y[i] = s;
  }
}

}  // namespace

void SymmetricOperator::multiply(std::span<const double> x, std::span<double> y) const {
  multiply_impl(n_, diag_, row_ptr_, col_idx_, val_, x, y);
}

void SymmetricOperator::multiply(std::span<const std::complex<double>> x,
                                 std::span<std::complex<double>> y) const {
  multiply_impl(n_, diag_, row_ptr_, col_idx_, val_, x, y);
}

SymmetricOperator SymmetricOperator::shifted(double c) const {
  std::vector<Entry> e = entries_;
  for (std::size_t i = 0; i < n_; ++i) e.push_back({i, i, c});
  return SymmetricOperator(n_, std::move(e));
}

std::uint64_t SymmetricOperator::hash() const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* p, std::size_t len) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= b[i];
      h *= 1099511628211ull;
    }
  };
  mix(&n_, sizeof n_);
  for (const auto& e : entries_) {
    mix(&e.row, sizeof e.row);
    mix(&e.col, sizeof e.col);
    mix(&e.value, sizeof e.value);
  }
  return h;
}

void SymmetricOperator::write_triplets(std::ostream& os) const {
  for (const auto& e : entries_) {
    os << e.row << ' ' << e.col << ' ' << detail::format_number(e.value) << '\n';
  }
}

}  // namespace cauchydos
