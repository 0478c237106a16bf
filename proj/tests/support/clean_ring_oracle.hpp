#pragma once

// Closed-form one-magnon evolution on a disorder-free ring, independent of
// the library's operators and propagators. Plane waves |k> = sum_j e^{ikj}|j>
// are exact eigenvectors of H(theta) for every theta, with energy
// -2 s lambda cos(k + theta) (the diagonal is a global phase), so
//   <d|U(t)|0> = (1/N) sum_k e^{ikd} exp(2 i s lambda [cos k C(t) - sin k S(t)]),
//   C(t) = int_0^t cos theta,  S(t) = int_0^t sin theta,
// with C and S from 8-point Gauss-Legendre panels.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "spinring/phase_schedule.hpp"

namespace oracle_support {

struct PhaseIntegrals {
  std::vector<double> c;
  std::vector<double> s;
};

inline PhaseIntegrals phase_integrals(const spinring::PhaseSchedule& schedule, const std::vector<double>& times) {
  static const double x[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363};
  static const double w[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
  double hmax = 0.05;
  if (const auto* f = std::get_if<spinring::FourierTruncatedPhase>(&schedule)) {
    hmax = std::min(hmax, f->period / (16.0 * spinring::highest_harmonic(*f)));
  }
  std::vector<double> breaks = spinring::jump_times(schedule, times.empty() ? 0.0 : times.back());
  PhaseIntegrals out;
  double c = 0.0, s = 0.0, t = 0.0;
  std::size_t jb = 0;
  auto integrate = [&](double a, double b) {
    if (b <= a) return;
    const int panels = static_cast<int>(std::ceil((b - a) / hmax));
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = a + (p + 0.5) * h;
      for (int i = 0; i < 4; ++i) {
        for (double sign : {-1.0, 1.0}) {
          const double th = spinring::phase_at(schedule, mid + sign * x[i] * 0.5 * h);
          c += w[i] * 0.5 * h * std::cos(th);
          s += w[i] * 0.5 * h * std::sin(th);
        }
      }
    }
  };
  for (double ts : times) {
    while (jb < breaks.size() && breaks[jb] < ts) {
      integrate(t, breaks[jb]);
      t = breaks[jb++];
    }
    integrate(t, ts);
    t = std::max(t, ts);
    out.c.push_back(c);
    out.s.push_back(s);
  }
  return out;
}

/// <d|U(t)|0> up to the global diagonal phase, for each time.
inline std::vector<std::complex<double>> clean_ring_amplitude(int n_sites, double coupling, double hop_scale,
                                                              const spinring::PhaseSchedule& schedule,
                                                              const std::vector<double>& times, int d) {
  const auto ints = phase_integrals(schedule, times);
  std::vector<std::complex<double>> out;
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::complex<double> acc = 0.0;
    for (int q = 0; q < n_sites; ++q) {
      const double k = 2.0 * std::numbers::pi * q / n_sites;
      const double phi = 2.0 * hop_scale * coupling * (std::cos(k) * ints.c[i] - std::sin(k) * ints.s[i]);
      acc += std::polar(1.0, k * d + phi);
    }
    out.push_back(acc / static_cast<double>(n_sites));
  }
  return out;
}

inline std::vector<double> clean_ring_return_fidelity(int n_sites, double coupling, double hop_scale,
                                                      const spinring::PhaseSchedule& schedule,
                                                      const std::vector<double>& times) {
  std::vector<double> f;
  for (const auto& a : clean_ring_amplitude(n_sites, coupling, hop_scale, schedule, times, 0)) f.push_back(std::norm(a));
  return f;
}

}  // namespace oracle_support
