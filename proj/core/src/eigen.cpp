#include "cauchydos/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/cuthill_mckee_ordering.hpp>

#include "cauchydos/errors.hpp"

namespace cauchydos {
namespace {

// std::hypot is exact but slow; the plain formula is safe far beyond any
// matrix entry met here.
inline double norm2(double x, double y) {
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  if (ax < 1e150 && ay < 1e150 && (ax > 1e-150 || ay > 1e-150)) return std::sqrt(x * x + y * y);
  return std::hypot(x, y);
}

// Implicitly shifted QL on the tridiagonal (d, e), e[i] coupling i and i+1.
// Every plane rotation is forwarded to `rotate(i, s, c)` so the caller can
// accumulate whichever eigenvector components it keeps.
template <typename Rotate>
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, int max_iterations,
                    std::uint64_t hash, Rotate&& rotate) {
  const auto n = static_cast<std::ptrdiff_t>(d.size());
  if (n == 0) return;
  e[static_cast<std::size_t>(n - 1)] = 0.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  auto D = [&d](std::ptrdiff_t i) -> double& { return d[static_cast<std::size_t>(i)]; };
  auto E = [&e](std::ptrdiff_t i) -> double& { return e[static_cast<std::size_t>(i)]; };

  // Deflation is measured against a running norm as well as the local
  // diagonal, otherwise a tiny coupling between two zero diagonals never
  // deflates (highly degenerate free lattices hit this).
  double tst = 0.0;
  for (std::ptrdiff_t l = 0; l < n; ++l) {
    int iter = 0;
    std::ptrdiff_t m;
    tst = std::max(tst, std::abs(D(l)) + std::abs(E(l)));
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::max(std::abs(D(m)) + std::abs(D(m + 1)), tst);
        if (std::abs(E(m)) <= eps * dd) break;
      }
      if (m != l) {
        if (++iter > max_iterations) {
          throw SolverFailure("QL iteration did not converge (matrix hash " +
                                  std::to_string(hash) + ")",
                              hash);
        }
        double g = (D(l + 1) - D(l)) / (2.0 * E(l));
        double r = norm2(g, 1.0);
        g = D(m) - D(l) + E(l) / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        std::ptrdiff_t i;
        for (i = m - 1; i >= l; --i) {
          double f = s * E(i);
          const double b = c * E(i);
          E(i + 1) = (r = norm2(f, g));
          if (r == 0.0) {
            D(i + 1) -= p;
            E(m) = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = D(i + 1) - p;
          r = (D(i) - g) * s + 2.0 * c * b;
          D(i + 1) = g + (p = s * r);
          g = c * r - b;
          rotate(static_cast<std::size_t>(i), s, c);
        }
        if (r == 0.0 && i >= l) continue;
        D(l) -= p;
        E(l) = g;
        E(m) = 0.0;
      }
    } while (m != l);
  }
}

// Householder reduction of a dense row-major symmetric matrix to tridiagonal
// form (Martin-Reinsch-Wilkinson tred2). On return d holds the diagonal,
// e[i] the coupling of i and i+1, and, if requested, `a` holds the
// orthogonal Q with A = Q T Q^T (row k, column j = component k of q_j).
void householder_tridiagonal(std::vector<double>& a, std::size_t n, std::vector<double>& d,
                             std::vector<double>& e, bool want_q) {
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  auto A = [&a, n](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  for (std::size_t i = n - 1; i >= 1; --i) {
    const std::size_t l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (std::size_t k = 0; k <= l; ++k) scale += std::abs(A(i, k));
      if (scale == 0.0) {
        e[i] = A(i, l);
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          A(i, k) /= scale;
          h += A(i, k) * A(i, k);
        }
        double f = A(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        A(i, l) = f - g;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          if (want_q) A(j, i) = A(i, j) / h;
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += A(j, k) * A(i, k);
          for (std::size_t k = j + 1; k <= l; ++k) g += A(k, j) * A(i, k);
          e[j] = g / h;
          f += e[j] * A(i, j);
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = A(i, j);
          e[j] = g = e[j] - hh * f;
          for (std::size_t k = 0; k <= j; ++k) A(j, k) -= (f * e[k] + g * A(i, k));
        }
      }
    } else {
      e[i] = A(i, l);
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (want_q) {
      if (d[i] != 0.0) {
        for (std::size_t j = 0; j < i; ++j) {
          double g = 0.0;
          for (std::size_t k = 0; k < i; ++k) g += A(i, k) * A(k, j);
          for (std::size_t k = 0; k < i; ++k) A(k, j) -= g * A(k, i);
        }
      }
      d[i] = A(i, i);
      A(i, i) = 1.0;
      for (std::size_t j = 0; j < i; ++j) A(j, i) = A(i, j) = 0.0;
    } else {
      d[i] = A(i, i);
    }
  }
  // shift to the e[i] ~ (i, i+1) convention
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  if (n > 0) e[n - 1] = 0.0;
}

// Lower band storage with one extra diagonal of room for the bulge created
// by each Givens rotation. Column j holds A(j..j+w, j).
class BandMatrix {
 public:
  BandMatrix(std::size_t n, std::size_t bandwidth)
      : n_(n), b_(bandwidth), stride_(bandwidth + 2), data_(n * stride_, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t bandwidth() const noexcept { return b_; }

  // requires |i - j| <= b + 1
  double& at(std::size_t i, std::size_t j) noexcept {
    return i >= j ? data_[j * stride_ + (i - j)] : data_[i * stride_ + (j - i)];
  }
  double* column(std::size_t j) noexcept { return data_.data() + j * stride_; }

 private:
  std::size_t n_;
  std::size_t b_;
  std::size_t stride_;
  std::vector<double> data_;
};

// Applies R = [[c, s], [-s, c]] on rows and columns (p, p+1) so that entry
// (p+1, col) vanishes. Every entry touched lies within b+1 of the diagonal.
// Returns false when that entry is already zero.
bool annihilate(BandMatrix& a, std::size_t p, std::size_t col,
                std::vector<std::vector<double>>& tracked) {
  const std::size_t q = p + 1;
  double& x = a.at(p, col);
  double& y = a.at(q, col);
  if (y == 0.0) return false;
  const double r = norm2(x, y);
  const double c = x / r;
  const double s = y / r;
  x = r;
  y = 0.0;
  const std::size_t n = a.size();
  for (std::size_t k = col + 1; k < p; ++k) {
    double* ck = a.column(k);
    const double u = ck[p - k];
    const double v = ck[q - k];
    ck[p - k] = c * u + s * v;
    ck[q - k] = -s * u + c * v;
  }
  const std::size_t hi = std::min(n - 1, q + a.bandwidth());
  double* cp = a.column(p);
  double* cq = a.column(q);
  for (std::size_t k = q + 1; k <= hi; ++k) {
    const double u = cp[k - p];
    const double v = cq[k - q];
    cp[k - p] = c * u + s * v;
    cq[k - q] = -s * u + c * v;
  }
  const double app = cp[0];
  const double aqq = cq[0];
  const double apq = cp[1];
  cp[0] = c * c * app + 2.0 * c * s * apq + s * s * aqq;
  cq[0] = s * s * app - 2.0 * c * s * apq + c * c * aqq;
  cp[1] = c * s * (aqq - app) + (c * c - s * s) * apq;
  for (auto& u : tracked) {
    const double up = u[p];
    const double uq = u[q];
    u[p] = c * up + s * uq;
    u[q] = -s * up + c * uq;
  }
  return true;
}

// Schwarz-style reduction of a symmetric band matrix to tridiagonal form:
// annihilate each column below the subdiagonal, outermost entry first, and
// chase the resulting bulge off the end of the matrix.
void band_tridiagonal(BandMatrix& a, std::vector<double>& d, std::vector<double>& e,
                      std::vector<std::vector<double>>& tracked) {
  const std::size_t n = a.size();
  const std::size_t b = a.bandwidth();
  if (b >= 2) {
    for (std::size_t j = 0; j + 2 < n; ++j) {
      for (std::size_t r = std::min(b, n - 1 - j); r >= 2; --r) {
        std::size_t p = j + r - 1;
        if (!annihilate(a, p, j, tracked)) continue;
        // bulge at (p + 1 + b, p)
        while (p + 1 + b < n) {
          const std::size_t row = p + 1 + b;
          const std::size_t col = p;
          if (!annihilate(a, row - 1, col, tracked)) break;
          p = row - 1;
        }
      }
    }
  }
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = a.at(i, i);
    if (i + 1 < n) e[i] = a.at(i + 1, i);
  }
}

// inverse permutation: new position -> original index
std::vector<std::size_t> rcm_order(const SymmetricOperator& op) {
  using Graph = boost::adjacency_list<
      boost::vecS, boost::vecS, boost::undirectedS,
      boost::property<boost::vertex_color_t, boost::default_color_type,
                      boost::property<boost::vertex_degree_t, int>>>;
  const std::size_t n = op.dimension();
  Graph g(n);
  for (const auto& e : op.entries()) {
    if (e.row != e.col) boost::add_edge(e.row, e.col, g);
  }
  std::vector<Graph::vertex_descriptor> inv(n);
  boost::cuthill_mckee_ordering(g, inv.rbegin(), boost::get(boost::vertex_color, g),
                                boost::make_degree_map(g));
  return {inv.begin(), inv.end()};
}

std::size_t bandwidth_under(const SymmetricOperator& op, const std::vector<std::size_t>& perm) {
  std::size_t b = 0;
  for (const auto& e : op.entries()) {
    const std::size_t i = perm[e.row];
    const std::size_t j = perm[e.col];
    b = std::max(b, i > j ? i - j : j - i);
  }
  return b;
}

std::vector<std::size_t> ascending_order(const std::vector<double>& d) {
  std::vector<std::size_t> idx(d.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&d](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  return idx;
}

}  // namespace

std::span<const double> EigenDecomposition::vector(std::size_t i) const {
  if (vectors_.empty()) throw InvalidArgument("EigenDecomposition: eigenvectors not computed");
  const std::size_t n = values_.size();
  if (i >= n) throw InvalidArgument("EigenDecomposition: eigenvector index out of range");
  return {vectors_.data() + i * n, n};
}

bool EigenDecomposition::has_site(std::size_t site) const noexcept {
  if (site >= values_.size()) return false;
  if (!vectors_.empty()) return true;
  return std::find(rows_.begin(), rows_.end(), site) != rows_.end();
}

double EigenDecomposition::component(std::size_t i, std::size_t site) const {
  const std::size_t n = values_.size();
  if (i >= n || site >= n) throw InvalidArgument("EigenDecomposition: index out of range");
  if (!vectors_.empty()) return vectors_[i * n + site];
  const auto it = std::find(rows_.begin(), rows_.end(), site);
  if (it == rows_.end()) {
    throw InvalidArgument("EigenDecomposition: components at site " + std::to_string(site) +
                          " were not computed");
  }
  return row_components_[static_cast<std::size_t>(it - rows_.begin()) * n + i];
}

EigenDecomposition make_decomposition(std::vector<double> values, std::vector<double> vectors) {
  if (!std::is_sorted(values.begin(), values.end())) {
    throw InvalidArgument("make_decomposition: eigenvalues must be ascending");
  }
  if (!vectors.empty() && vectors.size() != values.size() * values.size()) {
    throw InvalidArgument("make_decomposition: vectors must be n x n");
  }
  EigenDecomposition out;
  out.values_ = std::move(values);
  out.vectors_ = std::move(vectors);
  return out;
}

EigenDecomposition eig_sym(const SymmetricOperator& op, const EigOptions& options) {
  const std::size_t n = op.dimension();
  if (n > options.dimension_cap) {
    throw ResourceCapExceeded("eig_sym: dimension " + std::to_string(n) + " exceeds the cap of " +
                              std::to_string(options.dimension_cap) +
                              "; use the Chebyshev characteristic-function route instead");
  }
  for (std::size_t s : options.rows) {
    if (s >= n) throw InvalidArgument("eig_sym: selected row out of range");
  }
  EigenDecomposition out;
  if (n == 0) return out;
  const std::uint64_t hash = op.hash();
  std::vector<double> d;
  std::vector<double> e;

  bool banded = false;
  std::vector<std::size_t> inv;
  std::vector<std::size_t> perm;
  std::size_t bandwidth = 0;
  if (options.vectors != EigenvectorMode::full && options.allow_banded && n >= 32) {
    inv = rcm_order(op);
    perm.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) perm[inv[i]] = i;
    bandwidth = bandwidth_under(op, perm);
    banded = bandwidth <= n / 8;
  }

  if (banded) {
    BandMatrix band(n, std::max<std::size_t>(bandwidth, 1));
    for (const auto& en : op.entries()) band.at(perm[en.row], perm[en.col]) = en.value;
    std::vector<std::vector<double>> tracked;
    if (options.vectors == EigenvectorMode::selected_rows) {
      for (std::size_t s : options.rows) {
        tracked.emplace_back(n, 0.0);
        tracked.back()[perm[s]] = 1.0;
      }
    }
    band_tridiagonal(band, d, e, tracked);
    tridiagonal_ql(d, e, options.max_iterations, hash, [&tracked](std::size_t i, double s, double c) {
      for (auto& z : tracked) {
        const double f = z[i + 1];
        z[i + 1] = s * z[i] + c * f;
        z[i] = c * z[i] - s * f;
      }
    });
    const auto order = ascending_order(d);
    out.values_.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values_[i] = d[order[i]];
    if (!tracked.empty()) {
      out.rows_ = options.rows;
      out.row_components_.resize(tracked.size() * n);
      for (std::size_t r = 0; r < tracked.size(); ++r) {
        for (std::size_t i = 0; i < n; ++i) out.row_components_[r * n + i] = tracked[r][order[i]];
      }
    }
    return out;
  }

  const bool want_vectors = options.vectors != EigenvectorMode::none;
  std::vector<double> a = op.to_dense();
  householder_tridiagonal(a, n, d, e, want_vectors);
  std::vector<double> z;  // eigenvector-major
  if (want_vectors) {
    z.resize(n * n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) z[j * n + k] = a[k * n + j];
    }
    a.clear();
    a.shrink_to_fit();
  }
  tridiagonal_ql(d, e, options.max_iterations, hash, [&z, n](std::size_t i, double s, double c) {
    if (z.empty()) return;
    double* zi = z.data() + i * n;
    double* zj = zi + n;
    for (std::size_t k = 0; k < n; ++k) {
      const double f = zj[k];
      zj[k] = s * zi[k] + c * f;
      zi[k] = c * zi[k] - s * f;
    }
  });
  const auto order = ascending_order(d);
  out.values_.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values_[i] = d[order[i]];
  if (options.vectors == EigenvectorMode::full) {
    out.vectors_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      std::copy_n(z.begin() + static_cast<std::ptrdiff_t>(order[i] * n), n,
                  out.vectors_.begin() + static_cast<std::ptrdiff_t>(i * n));
    }
  } else if (options.vectors == EigenvectorMode::selected_rows) {
    out.rows_ = options.rows;
    out.row_components_.resize(options.rows.size() * n);
    for (std::size_t r = 0; r < options.rows.size(); ++r) {
      for (std::size_t i = 0; i < n; ++i) {
        out.row_components_[r * n + i] = z[order[i] * n + options.rows[r]];
      }
    }
  }
  return out;
}

WeightedSpectrum local_spectral_measure(const EigenDecomposition& eig, std::size_t site_phi,
                                        std::size_t site_psi) {
  const std::size_t n = eig.dimension();
  if (site_phi >= n || site_psi >= n) {
    throw InvalidArgument("local_spectral_measure: site index out of range");
  }
  std::vector<std::complex<double>> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = eig.component(i, site_phi) * eig.component(i, site_psi);
  }
  return WeightedSpectrum(eig.values(), std::move(w));
}

StepIDS empirical_ids(const EigenDecomposition& eig, double volume) {
  if (!(volume > 0.0)) throw InvalidArgument("empirical_ids: volume must be positive");
  const auto& v = eig.values();
  std::vector<double> cumulative(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    cumulative[i] = std::min(1.0, static_cast<double>(i + 1) / volume);
  }
  return StepIDS(v, std::move(cumulative));
}

std::size_t reordered_bandwidth(const SymmetricOperator& op) {
  const std::size_t n = op.dimension();
  if (n == 0) return 0;
  const auto inv = rcm_order(op);
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[inv[i]] = i;
  return bandwidth_under(op, perm);
}

}  // namespace cauchydos
