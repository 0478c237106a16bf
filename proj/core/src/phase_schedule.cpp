#include "spinring/phase_schedule.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "spinring/errors.hpp"

namespace spinring {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void check_period(double period) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    std::ostringstream os;
    os << "schedule.period must be finite and > 0 (got " << period << ")";
    throw DomainError(os.str());
  }
}

// sum over odd n <= n_max of sin(n x) / n, using the angle-addition recurrence
// for sin(n x), cos(n x).
double odd_sine_sum(double x, int n_max) {
  const double s1 = std::sin(x), c1 = std::cos(x);
  const double s2 = 2.0 * s1 * c1, c2 = c1 * c1 - s1 * s1;
  double s = s1, c = c1, acc = 0.0;
  for (int n = 1; n <= n_max; n += 2) {
    acc += s / n;
    const double sn = s * c2 + c * s2;
    c = c * c2 - s * s2;
    s = sn;
  }
  return acc;
}

}  // namespace

void validate(const PhaseSchedule& schedule) {
  std::visit(overloaded{
                 [](const ConstantPhase& p) {
                   if (!std::isfinite(p.theta0)) throw DomainError("schedule.theta0 must be finite");
                 },
                 [](const StepPeriodicPhase& p) {
                   if (!std::isfinite(p.theta0)) throw DomainError("schedule.theta0 must be finite");
                   check_period(p.period);
                 },
                 [](const FourierTruncatedPhase& p) {
                   if (!std::isfinite(p.theta0)) throw DomainError("schedule.theta0 must be finite");
                   check_period(p.period);
                   if (p.harmonics < 1) {
                     throw DomainError("schedule.harmonics must be >= 1 (got " +
                                       std::to_string(p.harmonics) + ")");
                   }
                 },
             },
             schedule);
}

int highest_harmonic(const FourierTruncatedPhase& p) {
  if (p.counting == HarmonicCounting::OddTerms) return 2 * p.harmonics - 1;
  return p.harmonics % 2 == 1 ? p.harmonics : p.harmonics - 1;
}

double phase_at(const PhaseSchedule& schedule, double t) {
  if (!(t >= 0.0)) {
    std::ostringstream os;
    os << "phase_at: time must be >= 0 (got " << t << ")";
    throw DomainError(os.str());
  }
  return std::visit(overloaded{
                        [](const ConstantPhase& p) { return p.theta0; },
                        [t](const StepPeriodicPhase& p) {
                          const double r = std::fmod(t, p.period);
                          return r >= 0.5 * p.period ? p.theta0 + std::numbers::pi : p.theta0;
                        },
                        [t](const FourierTruncatedPhase& p) {
                          const double x = 2.0 * std::numbers::pi * std::fmod(t, p.period) / p.period;
                          return p.theta0 + 0.5 * std::numbers::pi - 2.0 * odd_sine_sum(x, highest_harmonic(p));
                        },
                    },
                    schedule);
}

std::vector<double> jump_times(const PhaseSchedule& schedule, double horizon) {
  std::vector<double> out;
  const auto* step = std::get_if<StepPeriodicPhase>(&schedule);
  if (!step || !(horizon > 0.0)) return out;
  const double half = 0.5 * step->period;
  const double limit = horizon * (1.0 + 1e-12);
  for (long k = 1;; ++k) {
    const double tj = static_cast<double>(k) * half;
    if (tj > limit) break;
    out.push_back(tj);
  }
  return out;
}

double schedule_period(const PhaseSchedule& schedule) {
  return std::visit(overloaded{
                        [](const ConstantPhase&) { return 0.0; },
                        [](const StepPeriodicPhase& p) { return p.period; },
                        [](const FourierTruncatedPhase& p) { return p.period; },
                    },
                    schedule);
}

double schedule_theta0(const PhaseSchedule& schedule) {
  return std::visit([](const auto& p) { return p.theta0; }, schedule);
}

std::string commutativity_class(const PhaseSchedule& schedule) {
  return std::visit(overloaded{
                        [](const ConstantPhase&) { return std::string("single Hamiltonian (constant phase)"); },
                        [](const StepPeriodicPhase&) { return std::string("commuting family (Δθ = π)"); },
                        [](const FourierTruncatedPhase&) {
                          return std::string("non-commuting family (smooth truncated phase)");
                        },
                    },
                    schedule);
}

}  // namespace spinring
