#include "spinring/oracle/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "spinring/errors.hpp"

namespace spinring::oracle {

double bessel_j(int n, double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("bessel_j: x must be finite and >= 0");
  const int order = std::abs(n);
  const double sign = (n < 0 && order % 2 == 1) ? -1.0 : 1.0;
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;

  const int top_order = std::max(order, static_cast<int>(std::ceil(x)));
  int start = top_order + 30 + static_cast<int>(std::sqrt(60.0 * top_order));
  start += start % 2;  // even, so the normalization sum pairs up

  double next = 0.0;   // J_{k+1}
  double cur = 1e-300;  // J_k, arbitrary seed
  double norm = 0.0;
  double wanted = 0.0;
  for (int k = start; k > 0; --k) {
    const double prev = 2.0 * k / x * cur - next;  // J_{k-1}
    next = cur;
    cur = prev;
    if (k - 1 == order) wanted = cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * cur;
    if (std::abs(cur) > 1e250) {
      next *= 1e-250;
      cur *= 1e-250;
      norm *= 1e-250;
      wanted *= 1e-250;
    }
  }
  if (order == 0) wanted = cur;
  norm += cur;
  return sign * wanted / norm;
}

std::complex<double> bessel_amplitude(int d, double lambda_t) {
  static const std::complex<double> kI(0.0, 1.0);
  const int r = ((d % 4) + 4) % 4;
  std::complex<double> phase = 1.0;
  for (int k = 0; k < r; ++k) phase *= kI;
  return phase * bessel_j(d, 2.0 * lambda_t);
}

}  // namespace spinring::oracle
