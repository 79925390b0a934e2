#include "cauchydos/bessel.hpp"

#include <cmath>
#include <numbers>

#include "cauchydos/errors.hpp"

namespace cauchydos {
namespace {

constexpr double kRescale = 1e250;

double series(int n, double x) {
  // sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!)
  const double half = 0.5 * x;
  const double lead = std::exp(n * std::log(half) - std::lgamma(n + 1.0));
  const double q = -half * half;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + n));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return lead * sum;
}

// Hankel expansion, valid for x >> n^2.
double asymptotic(int n, double x) {
  const double mu = 4.0 * n * n;
  const double z8 = 8.0 * x;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double prev = 1e300;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * z8);
    if (std::abs(term) > prev) break;
    prev = std::abs(term);
    // terms alternate between Q (odd k) and P (even k) with sign (-1)^(k/2)
    if (k % 2 == 1) {
      q += ((k / 2) % 2 == 0 ? term : -term);
    } else {
      p += ((k / 2) % 2 == 1 ? -term : term);
    }
    if (std::abs(term) < 1e-17) break;
  }
  const double chi = x - (0.5 * n + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

int miller_start(int nmax, double x) {
  const double top = std::max(static_cast<double>(nmax), x);
  int m = static_cast<int>(std::ceil(top + 30.0 + 20.0 * std::cbrt(std::max(top, 1.0))));
  if (m % 2 != 0) ++m;
  return m;
}

// Fills out[0..nmax] with J_k(x), x > 0.
void miller(int nmax, double x, std::vector<double>& out) {
  out.assign(static_cast<std::size_t>(nmax) + 1, 0.0);
  const int start = miller_start(nmax, x);
  const double two_over_x = 2.0 / x;
  double jp1 = 0.0;  // J_{k+1}
  double j = 1e-300;  // J_k
  double norm = 0.0;
  double comp = 0.0;  // Kahan compensation for the normalisation sum
  auto add = [&](double v) {
    const double y = v - comp;
    const double t = norm + y;
    comp = (t - norm) - y;
    norm = t;
  };
  for (int k = start; k > 0; --k) {
    const double jm1 = k * two_over_x * j - jp1;
    jp1 = j;
    j = jm1;
    // j is now J_{k-1}
    const int idx = k - 1;
    if (idx <= nmax) out[static_cast<std::size_t>(idx)] = j;
    if (idx > 0 && idx % 2 == 0) add(2.0 * j);
    if (std::abs(j) > kRescale) {
      j /= kRescale;
      jp1 /= kRescale;
      norm /= kRescale;
      comp /= kRescale;
      for (int i = idx; i <= nmax; ++i) out[static_cast<std::size_t>(i)] /= kRescale;
    }
  }
  add(j);  // J_0
  const double inv = 1.0 / norm;
  for (double& v : out) v *= inv;
}

}  // namespace

double bessel_j(int n, double x) {
  if (n < 0) throw InvalidArgument("bessel_j: order must be nonnegative");
  if (!std::isfinite(x)) throw InvalidArgument("bessel_j: argument must be finite");
  const double sign = (x < 0.0 && n % 2 == 1) ? -1.0 : 1.0;
  const double ax = std::abs(x);
  if (ax == 0.0) return n == 0 ? 1.0 : 0.0;
  if (ax < 1.0 || (n > 0 && ax * ax < 0.1 * (n + 1))) return sign * series(n, ax);
  if (ax > 20.0 + static_cast<double>(n) * n) return sign * asymptotic(n, ax);
  std::vector<double> seq;
  miller(n, ax, seq);
  return sign * seq[static_cast<std::size_t>(n)];
}

std::vector<double> bessel_j_sequence(int nmax, double x) {
  if (nmax < 0) throw InvalidArgument("bessel_j_sequence: nmax must be nonnegative");
  if (!std::isfinite(x)) throw InvalidArgument("bessel_j_sequence: argument must be finite");
  std::vector<double> out;
  if (x == 0.0) {
    out.assign(static_cast<std::size_t>(nmax) + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  miller(nmax, std::abs(x), out);
  if (x < 0.0) {
    for (std::size_t k = 1; k < out.size(); k += 2) out[k] = -out[k];
  }
  return out;
}

}  // namespace cauchydos
