#pragma once

#include <complex>

// Infinite-chain propagator: <d| exp(-i H t) |0> = i^d J_d(2 lambda t) for a
// uniform chain with hopping -lambda at theta = 0, up to the global phase of
// the diagonal term.
namespace spinring::oracle {

/// J_n(x) for integer n (any sign) and x >= 0, by Miller's backward
/// recurrence normalized with J_0 + 2 sum_k J_2k = 1.
double bessel_j(int n, double x);

std::complex<double> bessel_amplitude(int d, double lambda_t);

}  // namespace spinring::oracle
