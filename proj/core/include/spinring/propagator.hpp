#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "spinring/disorder.hpp"
#include "spinring/hamiltonian.hpp"
#include "spinring/phase_schedule.hpp"
#include "spinring/sector_basis.hpp"
#include "spinring/spectral.hpp"

namespace spinring {

struct EvolutionPlan {
  double t_final = 0.0;
  /// Sorted, within [0, t_final]. States are recorded here.
  std::vector<double> sample_times;
  /// Step of the smooth-schedule integrator; 0 selects it automatically.
  double integrator_step = 0.0;
  PhaseSchedule schedule = ConstantPhase{};
};

/// Plan sampling `intervals + 1` uniform times i * t_final / intervals.
EvolutionPlan uniform_plan(const PhaseSchedule& schedule, double t_final, int intervals,
                           double integrator_step = 0.0);

void validate(const EvolutionPlan& plan);

struct Trajectory {
  std::vector<double> times;
  std::vector<MultiSectorState> states;
  MultiSectorState initial;
  EvolutionPlan plan;
  nlohmann::json metadata;
};

/// Exact propagation for piecewise-constant phase laws (constant or step).
///
/// Within each constant-theta segment a sector evolves as
/// V exp(-i Lambda dt) V^dagger psi. Decompositions are cached per
/// (sector, theta); a step law needs two per sector. When the sector
/// diagonal is uniform the theta + pi decomposition is obtained from the
/// theta one by negating the hopping eigenvalues instead of a second solve.
///
/// An instance owns its cache and is not safe for concurrent use; distinct
/// instances share nothing mutable.
class PiecewisePropagator {
 public:
  PiecewisePropagator(const RingSpec& ring, const DisorderRealization& disorder);

  Trajectory evolve(const MultiSectorState& initial, const EvolutionPlan& plan);

  const SpectralDecomposition& decomposition(int n_magnons, double theta);
  /// Number of eigensolver runs so far (derived decompositions excluded).
  std::size_t eigensolver_runs() const { return solver_runs_; }
  /// Cached decompositions for one sector.
  std::size_t cached_decompositions(int n_magnons) const;

 private:
  struct SectorCache {
    std::shared_ptr<const SectorOperator> op;
    std::shared_ptr<const TranslationOrbits> orbits;
    std::map<double, SpectralDecomposition> by_theta;
    std::map<std::pair<double, double>, Eigen::MatrixXcd> transfers;  // (from, to) theta
  };
  SectorCache& sector(int n_magnons);

  RingSpec ring_;
  DisorderRealization disorder_;
  std::map<int, SectorCache> sectors_;
  std::size_t solver_runs_ = 0;
};

Trajectory evolve_piecewise(const MultiSectorState& initial, const RingSpec& ring,
                            const DisorderRealization& disorder, const EvolutionPlan& plan);

/// Time-ordered product of midpoint exponentials
///   U(t + h, t) = exp(-i H(theta(t + h/2)) h),
/// each applied with a Taylor series on the shifted operator H - shift
/// (scaled so every sub-step has ||H - shift|| h <= 0.5). Second order in h.
/// Substeps are aligned to sample times and to phase discontinuities.
///
/// Automatic step: h = 0.1 / max|H - shift|_ij, further limited to
/// T / (40 n_max) for a truncated schedule whose highest harmonic is n_max.
Trajectory evolve_continuous(const MultiSectorState& initial, const RingSpec& ring,
                             const DisorderRealization& disorder, const EvolutionPlan& plan);

/// Step evolve_continuous would use for `op` under `plan` when
/// plan.integrator_step is 0.
double automatic_integrator_step(const SectorOperator& op, const EvolutionPlan& plan);

}  // namespace spinring
