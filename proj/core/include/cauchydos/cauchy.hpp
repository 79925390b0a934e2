#pragma once

namespace cauchydos {

/// Scale parameter of the Cauchy (Lorentzian) single-site distribution
///   psi(x) = (1/pi) * lambda / (lambda^2 + x^2).
class CauchyKernel {
 public:
  /// Throws InvalidArgument unless lambda is finite and positive.
  explicit CauchyKernel(double lambda);

  double lambda() const noexcept { return lambda_; }

  friend bool operator==(const CauchyKernel&, const CauchyKernel&) = default;

 private:
  double lambda_;
};

double cauchy_density(const CauchyKernel& kernel, double x) noexcept;

/// Characteristic function E[exp(i s X)] = exp(-lambda |s|).
double cauchy_charfn(const CauchyKernel& kernel, double s) noexcept;

/// Inverse-CDF draw lambda * tan(pi (u - 1/2)). Requires 0 < u < 1.
double cauchy_sample(const CauchyKernel& kernel, double u);

double cauchy_cdf(const CauchyKernel& kernel, double x) noexcept;

/// Probability mass of psi_lambda inside [a, b], computed without cancellation
/// in the far tails. Zero when b <= a.
double cauchy_mass(const CauchyKernel& kernel, double a, double b) noexcept;

}  // namespace cauchydos
