#include "cauchydos/cauchy.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cauchydos/errors.hpp"

namespace cauchydos {

CauchyKernel::CauchyKernel(double lambda) : lambda_(lambda) {
  if (!(std::isfinite(lambda) && lambda > 0.0)) {
    throw InvalidArgument("Cauchy scale must be finite and positive, got " +
                          std::to_string(lambda));
  }
}

double cauchy_density(const CauchyKernel& kernel, double x) noexcept {
  const double l = kernel.lambda();
  return l / (std::numbers::pi * (l * l + x * x));
}

double cauchy_charfn(const CauchyKernel& kernel, double s) noexcept {
  return std::exp(-kernel.lambda() * std::abs(s));
}

double cauchy_sample(const CauchyKernel& kernel, double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw InvalidArgument("cauchy_sample: uniform variate must lie in (0, 1)");
  }
  return kernel.lambda() * std::tan(std::numbers::pi * (u - 0.5));
}

double cauchy_cdf(const CauchyKernel& kernel, double x) noexcept {
  return 0.5 + std::atan(x / kernel.lambda()) / std::numbers::pi;
}

double cauchy_mass(const CauchyKernel& kernel, double a, double b) noexcept {
  if (b <= a) return 0.0;
  const double l = kernel.lambda();
  const double ua = a / l;
  const double ub = b / l;
  // atan(ub) - atan(ua) rewritten to avoid cancellation when both are large
  // and of the same sign.
  double diff;
  if (1.0 + ua * ub > 0.0) {
    diff = std::atan((ub - ua) / (1.0 + ua * ub));
  } else {
    diff = std::atan(ub) - std::atan(ua);
  }
  return diff / std::numbers::pi;
}

}  // namespace cauchydos
