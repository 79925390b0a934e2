#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "cauchydos/cauchy.hpp"
#include "cauchydos/errors.hpp"
#include "cauchydos/measures.hpp"
#include "oracles.hpp"

using namespace cauchydos;
using doctest::Approx;

namespace {

WeightedSpectrum random_unit_spectrum(std::size_t n, std::uint64_t seed, double spread) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-spread, spread);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  std::vector<double> pts(n);
  std::vector<double> wts(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = u(rng);
    wts[i] = w(rng);
    total += wts[i];
  }
  for (auto& x : wts) x /= total;
  return WeightedSpectrum::real(pts, wts);
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

}  // namespace

TEST_CASE("cauchy kernel rejects nonpositive scale") {
  CHECK_THROWS_AS(CauchyKernel(0.0), InvalidArgument);
  CHECK_THROWS_AS(CauchyKernel(-1.0), InvalidArgument);
  CHECK_THROWS_AS(CauchyKernel(std::numeric_limits<double>::infinity()), InvalidArgument);
  CHECK_THROWS_AS(CauchyKernel(std::nan("")), InvalidArgument);
}

TEST_CASE("cauchy density values") {
  const CauchyKernel k1(1.0);
  CHECK(cauchy_density(k1, 0.0) == Approx(1.0 / oracle::kPi).epsilon(1e-15));
  CHECK(cauchy_density(CauchyKernel(0.5), 0.5) == Approx(1.0 / oracle::kPi).epsilon(1e-15));
  double prev = cauchy_density(k1, 0.0);
  for (double x = 0.5; x < 1e6; x *= 2.0) {
    const double v = cauchy_density(k1, x);
    CHECK(v > 0.0);
    CHECK(v < prev);
    CHECK(v == cauchy_density(k1, -x));
    prev = v;
  }
  CHECK(cauchy_density(k1, 1e200) < 1e-300);
}

TEST_CASE("cauchy characteristic function") {
  CHECK(cauchy_charfn(CauchyKernel(1.0), 0.0) == 1.0);
  CHECK(cauchy_charfn(CauchyKernel(1.0), 2.0) == Approx(0.1353352832366127).epsilon(1e-14));
  CHECK(cauchy_charfn(CauchyKernel(0.5), -3.0) == Approx(0.2231301601484298).epsilon(1e-14));
}

TEST_CASE("cauchy inverse-cdf sampler") {
  CHECK(cauchy_sample(CauchyKernel(1.0), 0.5) == Approx(0.0).epsilon(1e-15));
  CHECK(cauchy_sample(CauchyKernel(1.0), 0.75) == Approx(1.0).epsilon(1e-14));
  CHECK(cauchy_sample(CauchyKernel(2.0), 0.25) == Approx(-2.0).epsilon(1e-14));
  for (double bad : {0.0, 1.0, -0.1, 1.5, std::nan("")}) {
    CHECK_THROWS_AS(cauchy_sample(CauchyKernel(1.0), bad), InvalidArgument);
  }
  // sampler inverts the cdf
  for (double u : {1e-9, 0.01, 0.3, 0.5, 0.8, 0.999999}) {
    CHECK(cauchy_cdf(CauchyKernel(1.3), cauchy_sample(CauchyKernel(1.3), u)) ==
          Approx(u).epsilon(1e-12));
  }
}

TEST_CASE("cauchy mass is accurate in the far tails") {
  const CauchyKernel k(1.0);
  CHECK(cauchy_mass(k, -50.0, 50.0) == Approx(oracle::kCauchyMassWithin50).epsilon(1e-14));
  // mass in [1e8, 2e8] = (1/pi)(atan 2e8 - atan 1e8) ~ 1/(2 pi 1e8)
  const double tail = cauchy_mass(k, 1e8, 2e8);
  CHECK(tail == Approx(1.0 / (oracle::kPi * 2e8)).epsilon(1e-8));
  CHECK(cauchy_mass(k, 3.0, -3.0) == 0.0);
}

TEST_CASE("point mass smears into the kernel") {
  const EnergyGrid grid{-5.0, 5.0, 0.25};
  const CauchyKernel k(1.0);
  const auto d = smear_spectrum(WeightedSpectrum::point_mass(0.0), k, grid);
  REQUIRE(d.values.size() == 41);
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    CHECK(d.values[i] == Approx(cauchy_density(k, grid.energy(i))).epsilon(1e-15));
  }
  CHECK_FALSE(d.is_complex());
}

TEST_CASE("two symmetric masses") {
  const std::vector<double> w{0.5, 0.5};
  const auto spec = WeightedSpectrum::real({-1.0, 1.0}, w);
  const auto d = smear_spectrum(spec, CauchyKernel(1.0), EnergyGrid{0.0, 0.0, 1.0});
  CHECK(d.values[0] == Approx(1.0 / (2.0 * oracle::kPi)).epsilon(1e-15));
}

TEST_CASE("empty spectrum smears to zero") {
  const auto d = smear_spectrum(WeightedSpectrum{}, CauchyKernel(1.0), EnergyGrid{-1, 1, 0.5});
  for (double v : d.values) CHECK(v == 0.0);
  CHECK(stieltjes_eval(WeightedSpectrum{}, {0.0, 1.0}) == std::complex<double>{});
}

TEST_CASE("grid and spectrum validation") {
  CHECK_THROWS_AS(EnergyGrid({0.0, 1.0, 0.0}).validate(), InvalidArgument);
  CHECK_THROWS_AS(EnergyGrid({1.0, 0.0, 0.1}).validate(), InvalidArgument);
  CHECK(EnergyGrid({-6.0, 6.0, 0.02}).size() == 601);
  CHECK(EnergyGrid({-6.0, 6.0, 0.01}).size() == 1201);
  CHECK(EnergyGrid({0.0, 1.0, 0.3}).size() == 4);
  CHECK_THROWS_AS(WeightedSpectrum({1.0, 2.0}, {std::complex<double>(1.0)}), InvalidArgument);
}

TEST_CASE("complex weights carry an imaginary part") {
  const WeightedSpectrum spec({-1.0, 1.0}, {{0.5, 0.25}, {0.5, -0.25}});
  CHECK(spec.has_imaginary_weights());
  const auto d = smear_spectrum(spec, CauchyKernel(0.7), EnergyGrid{-2.0, 2.0, 0.5});
  REQUIRE(d.is_complex());
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    const double e = d.grid.energy(i);
    const double expect_im =
        0.25 * cauchy_density(CauchyKernel(0.7), e + 1.0) - 0.25 * cauchy_density(CauchyKernel(0.7), e - 1.0);
    CHECK(d.imag[i] == Approx(expect_im).epsilon(1e-14));
  }
}

TEST_CASE("stieltjes transform") {
  const auto m = stieltjes_eval(WeightedSpectrum::point_mass(0.0), {0.0, 1.0});
  CHECK(m.real() == Approx(0.0));
  CHECK(m.imag() == Approx(1.0));
  CHECK(m.imag() / oracle::kPi == Approx(cauchy_density(CauchyKernel(1.0), 0.0)));
  CHECK_THROWS_AS(stieltjes_eval(WeightedSpectrum::point_mass(0.0), {0.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(stieltjes_eval(WeightedSpectrum::point_mass(0.0), {0.0, -1.0}), InvalidArgument);
}

TEST_CASE("property: Poisson consistency of smear and Stieltjes") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto spec = random_unit_spectrum(40, seed, 5.0);
    const double lambda = 0.1 + 0.3 * static_cast<double>(seed);
    const EnergyGrid grid{-8.0, 8.0, 0.1};
    const auto d = smear_spectrum(spec, CauchyKernel(lambda), grid);
    for (std::size_t i = 0; i < d.values.size(); ++i) {
      const auto m = stieltjes_eval(spec, {grid.energy(i), lambda});
      CHECK(std::abs(m.imag() / oracle::kPi - d.values[i]) <= 1e-10);
    }
  }
}

TEST_CASE("property: smeared unit spectrum carries its window mass") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto spec = random_unit_spectrum(20, seed, 3.0);
    CHECK(spec.is_probability());
    const double lambda = 0.5;
    const double w = 50.0 * lambda + 3.0;
    const EnergyGrid grid{-w, w, 0.01};
    const auto d = smear_spectrum(spec, CauchyKernel(lambda), grid);
    CHECK(std::abs(trapezoid_mass(d) - smear_window_mass(spec, CauchyKernel(lambda), grid)) <= 1e-6);
    CHECK(smear_window_mass(spec, CauchyKernel(lambda), grid) < 1.0);
  }
}

TEST_CASE("property: evenness of even spectra") {
  const std::vector<double> w{0.1, 0.2, 0.4, 0.2, 0.1};
  const auto spec = WeightedSpectrum::real({-2.0, -0.5, 0.0, 0.5, 2.0}, w);
  const EnergyGrid grid{-6.0, 6.0, 0.01};
  const auto d = smear_spectrum(spec, CauchyKernel(0.3), grid);
  const std::size_t n = d.values.size();
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(d.values[i] - d.values[n - 1 - i]) <= 1e-12);
}

TEST_CASE("property: semigroup through grid convolution") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto spec = random_unit_spectrum(10, seed, 2.0);
    const double l1 = 1.0;
    const double l2 = 0.5;
    const EnergyGrid grid{-60.0, 60.0, 0.01};
    const auto first = smear_spectrum(spec, CauchyKernel(l1), grid);
    const auto conv = convolve_cauchy(first, CauchyKernel(l2));
    const auto direct = smear_spectrum(spec, CauchyKernel(l1 + l2), grid);
    double sup = 0.0;
    for (std::size_t i = 0; i < conv.values.size(); ++i) {
      if (std::abs(grid.energy(i)) <= 5.0) sup = std::max(sup, std::abs(conv.values[i] - direct.values[i]));
    }
    CHECK(sup <= 1e-6);
  }
}

TEST_CASE("ids of a density") {
  const EnergyGrid grid{-50.0, 50.0, 0.01};
  GridDensity d{grid, std::vector<double>(grid.size()), {}};
  for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] = cauchy_density(CauchyKernel(1.0), grid.energy(i));
  const auto ids = ids_of(d);
  CHECK(ids.cumulative().back() == Approx(oracle::kCauchyMassWithin50).epsilon(1e-3));
  CHECK(std::abs(ids.cumulative().back() - oracle::kCauchyMassWithin50) <= 1e-3);
  CHECK(ids.cumulative().back() == Approx(trapezoid_mass(d)).epsilon(1e-14));
  for (std::size_t i = 1; i < ids.size(); ++i) CHECK(ids.cumulative()[i] >= ids.cumulative()[i - 1]);

  GridDensity zero{EnergyGrid{-1, 1, 0.1}, std::vector<double>(21, 0.0), {}};
  const auto zero_ids = ids_of(zero);
  for (double c : zero_ids.cumulative()) CHECK(c == 0.0);

  GridDensity flat{EnergyGrid{-1, 1, 0.01}, std::vector<double>(201, 0.5), {}};
  CHECK(ids_of(flat)(0.5) == Approx(0.75).epsilon(1e-12));

  GridDensity neg{EnergyGrid{-1, 1, 1}, {0.1, -0.1, 0.1}, {}};
  CHECK_THROWS_AS(ids_of(neg), InvalidArgument);
}

TEST_CASE("step ids is right-continuous and validated") {
  const StepIDS ids({-1.0, 0.0, 0.0, 2.0}, {0.25, 0.5, 0.75, 1.0});
  CHECK(ids(-2.0) == 0.0);
  CHECK(ids(-1.0) == 0.25);
  CHECK(ids.left_limit(0.0) == 0.25);
  CHECK(ids(0.0) == 0.75);
  CHECK(ids(5.0) == 1.0);
  CHECK_THROWS_AS(StepIDS({1.0, 0.0}, {0.5, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(StepIDS({0.0, 1.0}, {0.6, 0.5}), InvalidArgument);
  CHECK_THROWS_AS(StepIDS({0.0}, {1.1}), InvalidArgument);
}
