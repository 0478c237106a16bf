#pragma once

#include <string>
#include <variant>
#include <vector>

namespace spinring {

struct ConstantPhase {
  double theta0 = 0.0;
  bool operator==(const ConstantPhase&) const = default;
};

/// theta0 on [0, T/2), theta0 + pi on [T/2, T), repeated with period T.
struct StepPeriodicPhase {
  double theta0 = 0.0;
  double period = 1.0;
  bool operator==(const StepPeriodicPhase&) const = default;
};

/// How the harmonic count of a truncated square wave is read.
enum class HarmonicCounting {
  OddTerms,    // the first m nonzero terms: n = 1, 3, ..., 2m-1
  IndexBound,  // every odd n <= m
};

/// Square-wave Fourier series of StepPeriodicPhase truncated to a finite
/// number of harmonics:
///   theta(t) = theta0 + pi/2 - 2 sum_n sin(2 pi n t / T) / n,  n odd.
struct FourierTruncatedPhase {
  double theta0 = 0.0;
  double period = 1.0;
  int harmonics = 1;
  HarmonicCounting counting = HarmonicCounting::OddTerms;
  bool operator==(const FourierTruncatedPhase&) const = default;
};

using PhaseSchedule = std::variant<ConstantPhase, StepPeriodicPhase, FourierTruncatedPhase>;

/// Throws DomainError for non-positive periods or harmonic counts.
void validate(const PhaseSchedule& schedule);

/// Phase at time t >= 0. Values are not reduced mod 2 pi.
double phase_at(const PhaseSchedule& schedule, double t);

/// Times in (0, horizon] where the phase is discontinuous: k T/2 for the step
/// law, none for the constant and truncated laws.
std::vector<double> jump_times(const PhaseSchedule& schedule, double horizon);

/// Largest odd harmonic present in a truncated schedule (0 if none).
int highest_harmonic(const FourierTruncatedPhase& schedule);

/// Period for the periodic variants, 0 for a constant phase.
double schedule_period(const PhaseSchedule& schedule);
double schedule_theta0(const PhaseSchedule& schedule);

/// Human-readable commutativity class of the Hamiltonian family H(theta(t)).
std::string commutativity_class(const PhaseSchedule& schedule);

}  // namespace spinring
