#pragma once

#include <vector>

namespace cauchydos {

/// Bessel function of the first kind J_n(x) for integer order n >= 0.
///
/// Small arguments use the power series, moderate ones Miller's backward
/// recurrence normalised by J_0 + 2 sum_k J_2k = 1, and arguments well beyond
/// the transition region (x > 20 + n^2) the Hankel asymptotic expansion.
/// Absolute error is below 1e-12 for |x| <= 100, n <= 200.
double bessel_j(int n, double x);

/// J_0(x), ..., J_nmax(x) from a single normalised backward recurrence.
/// Cost is O(max(nmax, |x|)); used for Chebyshev propagators with large a*t.
std::vector<double> bessel_j_sequence(int nmax, double x);

}  // namespace cauchydos
