#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "cauchydos/chebyshev.hpp"
#include "cauchydos/eigen.hpp"
#include "cauchydos/ensemble.hpp"
#include "cauchydos/errors.hpp"
#include "cauchydos/tree_resolvent.hpp"
#include "oracles.hpp"

using namespace cauchydos;
using doctest::Approx;
using cplx = std::complex<double>;

namespace {

double residual(const SymmetricOperator& op, const EigenDecomposition& eig) {
  const std::size_t n = op.dimension();
  std::vector<double> y(n);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = eig.vector(i);
    op.multiply(v, y);
    double r = 0.0;
    for (std::size_t k = 0; k < n; ++k) r += std::pow(y[k] - eig.values()[i] * v[k], 2);
    worst = std::max(worst, std::sqrt(r));
  }
  return worst;
}

double orthonormality(const EigenDecomposition& eig) {
  const std::size_t n = eig.dimension();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double dot = 0.0;
      const auto a = eig.vector(i);
      const auto b = eig.vector(j);
      for (std::size_t k = 0; k < n; ++k) dot += a[k] * b[k];
      worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

// exp(itH) v through a full eigenbasis
std::vector<cplx> evolve_by_eig(const EigenDecomposition& eig, const std::vector<cplx>& v, double t) {
  const std::size_t n = eig.dimension();
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto u = eig.vector(i);
    cplx c{};
    for (std::size_t k = 0; k < n; ++k) c += u[k] * v[k];
    c *= std::exp(cplx(0.0, t * eig.values()[i]));
    for (std::size_t k = 0; k < n; ++k) out[k] += c * u[k];
  }
  return out;
}

}  // namespace

TEST_CASE("eigenvalues of small matrices") {
  const SymmetricOperator swap(2, {{0, 1, 1.0}});
  const auto e = eig_sym(swap);
  CHECK(e.values()[0] == Approx(-1.0).epsilon(1e-15));
  CHECK(e.values()[1] == Approx(1.0).epsilon(1e-15));
  const SymmetricOperator diag(3, {{0, 0, 3.0}, {1, 1, -2.0}, {2, 2, 0.5}});
  CHECK(eig_sym(diag).values() == std::vector<double>{-2.0, 0.5, 3.0});
  const SymmetricOperator one(1, {{0, 0, 4.0}});
  CHECK(eig_sym(one).values() == std::vector<double>{4.0});
  CHECK(eig_sym(one).component(0, 0) == Approx(1.0));
}

TEST_CASE("free periodic boxes against the dispersion relation") {
  for (int dim : {1, 2}) {
    for (int side : {1, 2, 3, 5, 8, 13, 32}) {
      if (dim == 2 && side > 32) continue;
      std::vector<double> expect;
      const int n = dim == 1 ? side : side * side;
      for (int s = 0; s < n; ++s) {
        double v = 0.0;
        int rem = s;
        for (int j = 0; j < dim; ++j) {
          v += 2.0 * std::cos(2.0 * std::numbers::pi * (rem % side) / side);
          rem /= side;
        }
        expect.push_back(v);
      }
      std::sort(expect.begin(), expect.end());
      const auto eig = eig_sym(build_lattice({dim, side}), {EigenvectorMode::none});
      double worst = 0.0;
      for (int s = 0; s < n; ++s) worst = std::max(worst, std::abs(eig.values()[s] - expect[s]));
      CHECK(worst <= 1e-9);
    }
  }
}

TEST_CASE("property: residual and orthonormality on random operators") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const std::size_t n = 10 + 17 * seed;
    const auto op = oracle::random_operator(n, 3 * n, seed);
    const auto eig = eig_sym(op);
    const double scale = std::max(1.0, std::abs(eig.values().front()) + std::abs(eig.values().back()));
    CHECK(residual(op, eig) <= 1e-10 * scale);
    CHECK(orthonormality(eig) <= 1e-10);
    CHECK(std::is_sorted(eig.values().begin(), eig.values().end()));
    // trace is preserved
    double tr = 0.0;
    for (double d : op.diagonal()) tr += d;
    double sum = 0.0;
    for (double v : eig.values()) sum += v;
    CHECK(sum == Approx(tr).epsilon(1e-10).scale(scale));
  }
}

TEST_CASE("banded reduction agrees with the dense path") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const std::size_t n = 150 + 50 * seed;
    const auto op = oracle::random_banded(n, 1 + seed, seed);
    CHECK(reordered_bandwidth(op) <= 1 + seed);
    const std::vector<std::size_t> rows{0, n / 2, n - 1};
    EigOptions banded{EigenvectorMode::selected_rows, rows};
    EigOptions dense = banded;
    dense.allow_banded = false;
    const auto a = eig_sym(op, banded);
    const auto b = eig_sym(op, dense);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(a.values()[i] - b.values()[i]) <= 1e-12 * (1.0 + std::abs(b.values()[i])));
      for (std::size_t r : rows) {
        const double pa = a.component(i, r) * a.component(i, r);
        const double pb = b.component(i, r) * b.component(i, r);
        CHECK(std::abs(pa - pb) <= 1e-9);
      }
    }
    // sign-invariant products between selected rows
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(a.component(i, 0) * a.component(i, n - 1) - b.component(i, 0) * b.component(i, n - 1)) <= 1e-9);
    }
  }
  // a ring becomes banded only after reordering
  const auto ring = build_lattice({1, 400});
  CHECK(reordered_bandwidth(ring) == 2);
  const auto ev = eig_sym(ring, {EigenvectorMode::none});
  const auto ed = eig_sym(ring, {EigenvectorMode::none, {}, 4096, 60, false});
  for (std::size_t i = 0; i < 400; ++i) CHECK(std::abs(ev.values()[i] - ed.values()[i]) <= 1e-12);
}

TEST_CASE("eigensolver failure modes") {
  const auto op = oracle::random_operator(40, 100, 3);
  EigOptions opts;
  opts.max_iterations = 0;
  try {
    eig_sym(op, opts);
    FAIL("expected SolverFailure");
  } catch (const SolverFailure& e) {
    CHECK(e.matrix_hash() == op.hash());
    CHECK(std::string(e.what()).find(std::to_string(op.hash())) != std::string::npos);
  }
  EigOptions small;
  small.dimension_cap = 39;
  CHECK_THROWS_AS(eig_sym(op, small), ResourceCapExceeded);
  const auto rows_only = eig_sym(op, {EigenvectorMode::selected_rows, {5}});
  CHECK(rows_only.has_site(5));
  CHECK_FALSE(rows_only.has_site(6));
  CHECK_THROWS_AS(rows_only.component(0, 6), InvalidArgument);
  CHECK_THROWS_AS(rows_only.vector(0), InvalidArgument);
  CHECK_THROWS_AS(eig_sym(op, {EigenvectorMode::selected_rows, {40}}), InvalidArgument);
}

TEST_CASE("local spectral measures") {
  const SymmetricOperator swap(2, {{0, 1, 1.0}});
  const auto e = eig_sym(swap);
  const auto mu00 = local_spectral_measure(e, 0, 0);
  REQUIRE(mu00.size() == 2);
  CHECK(mu00.points()[0] == Approx(-1.0));
  CHECK(mu00.points()[1] == Approx(1.0));
  CHECK(mu00.weights()[0].real() == Approx(0.5));
  CHECK(mu00.weights()[1].real() == Approx(0.5));
  const auto mu01 = local_spectral_measure(e, 0, 1);
  CHECK(mu01.weights()[0].real() == Approx(-0.5));
  CHECK(mu01.weights()[1].real() == Approx(0.5));

  const auto op = oracle::random_operator(60, 200, 11);
  const auto eig = eig_sym(op);
  for (std::size_t s : {0, 17, 59}) {
    CHECK(local_spectral_measure(eig, s, s).is_probability(1e-12));
    CHECK(std::abs(local_spectral_measure(eig, s, (s + 1) % 60).total_weight()) <= 1e-12);
  }
}

TEST_CASE("empirical integrated density of states") {
  const auto e = eig_sym(SymmetricOperator(2, {{0, 0, -1.0}, {1, 1, 1.0}}));
  const auto ids = empirical_ids(e, 2.0);
  CHECK(ids(-2.0) == 0.0);
  CHECK(ids(-1.0) == Approx(0.5));
  CHECK(ids(0.0) == Approx(0.5));
  CHECK(ids(1.0) == Approx(1.0));
  CHECK(empirical_ids(e, 1.0)(1.0) == 1.0);
  CHECK(empirical_ids(e, 4.0)(5.0) == Approx(0.5));
  CHECK_THROWS_AS(empirical_ids(e, 0.0), InvalidArgument);
}

TEST_CASE("chebyshev propagation basics") {
  const SymmetricOperator swap(2, {{0, 1, 1.0}});
  const std::vector<cplx> d0{1.0, 0.0};
  const auto at0 = chebyshev_evolve(swap, d0, 0.0);
  CHECK(std::abs(at0[0] - 1.0) <= 1e-14);
  CHECK(std::abs(at0[1]) <= 1e-14);
  const auto at1 = chebyshev_evolve(swap, d0, 1.0);
  CHECK(std::abs(at1[0] - std::cos(1.0)) <= 1e-13);
  CHECK(std::abs(at1[1] - cplx(0.0, std::sin(1.0))) <= 1e-13);

  const auto b = gershgorin_bound(swap);
  CHECK(b.center - b.half_width <= -1.0);
  CHECK(b.center + b.half_width >= 1.0);
  CHECK(chebyshev_terms(b, 0.0) >= 40);
  CHECK(chebyshev_terms(b, 100.0) > 100);
}

TEST_CASE("property: chebyshev agrees with the eigenbasis") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto op = oracle::random_operator(200, 400, seed);
    const auto eig = eig_sym(op);
    std::vector<cplx> v(200);
    for (std::size_t k = 0; k < 200; ++k) v[k] = cplx(std::sin(0.3 * k + seed), std::cos(0.7 * k));
    double nv = 0.0;
    for (auto x : v) nv += std::norm(x);
    for (double t : {-3.0, 0.5, 4.0, 10.0}) {
      const auto a = chebyshev_evolve(op, v, t);
      const auto ref = evolve_by_eig(eig, v, t);
      double worst = 0.0;
      double na = 0.0;
      for (std::size_t k = 0; k < 200; ++k) {
        worst = std::max(worst, std::abs(a[k] - ref[k]));
        na += std::norm(a[k]);
      }
      CHECK(worst <= 1e-8);
      CHECK(std::abs(std::sqrt(na) - std::sqrt(nv)) <= 1e-10 * std::sqrt(nv));
    }
  }
}

TEST_CASE("chebyshev enclosure and moments") {
  const auto op = oracle::random_operator(80, 100, 5);
  std::vector<cplx> v(80);
  v[3] = 1.0;
  CHECK_THROWS_AS(chebyshev_evolve(op, v, 10.0, SpectralBound{0.0, 0.2}), EnclosureError);
  CHECK_THROWS_AS(chebyshev_moments(op, 0, 3, SpectralBound{0.0, 0.2}, 200), EnclosureError);

  const auto b = gershgorin_bound(op);
  const auto m = chebyshev_moments(op, 0, 3, b, 400);
  for (double t : {0.0, 1.0, -2.5, 6.0}) {
    const auto amp = amplitude_from_moments(m, b, t);
    const auto ev = chebyshev_evolve(op, v, t, b);
    CHECK(std::abs(amp - ev[0]) <= 1e-11);
  }
  const std::vector<double> few(m.begin(), m.begin() + 10);
  CHECK_THROWS_AS(amplitude_from_moments(few, b, 6.0), InvalidArgument);
}

TEST_CASE("tree resolvent against dense diagonalisation") {
  for (int depth : {0, 1, 3, 5}) {
    const TreeSpec spec{2, depth};
    const auto s = draw_sample(CauchyKernel(0.7), spec.vertex_count(), 13, depth);
    const auto eig = eig_sym(build_tree(spec, s.omegas));
    for (cplx z : {cplx(0.2, 0.1), cplx(-1.5, 0.01), cplx(3.0, 1.0)}) {
      const auto g = tree_diagonal_green(spec, s.omegas, z, depth);
      REQUIRE(g.size() == spec.vertex_count());
      for (std::size_t v = 0; v < g.size(); ++v) {
        cplx ref{};
        for (std::size_t i = 0; i < eig.dimension(); ++i) {
          const double c = eig.component(i, v);
          ref += c * c / (eig.values()[i] - z);
        }
        CHECK(std::abs(g[v] - ref) <= 1e-9 * (1.0 + std::abs(ref)));
      }
    }
  }
  const TreeSpec spec{3, 4};
  TreeResolvent tr(spec, {});
  CHECK(tr.vertex_count() == spec.vertex_count());
  CHECK(tr.ball_size(2) == 1 + 4 + 12);
  std::vector<cplx> out;
  tr.diagonal({0.0, 0.5}, 1, out);
  CHECK(out.size() == 5);
  CHECK_THROWS_AS(tr.diagonal({0.0, 0.0}, 1, out), InvalidArgument);
}
