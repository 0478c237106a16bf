#include "spinring/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spinring/errors.hpp"
#include "spinring/serialization.hpp"

namespace spinring {
namespace {

// Jump at tj counts as strictly before ts when tj < ts - tolerance.
double time_tolerance(double t) { return 1e-12 * std::max(1.0, std::abs(t)); }

// Relative phases only; the sector's diagonal shift is a c-number applied
// once per recorded sample, so it adds no rounding per segment.
void advance(Eigen::VectorXcd& coeffs, const SpectralDecomposition& d, double dt) {
  if (dt == 0.0) return;
  const Eigen::VectorXd& eps = d.relative_eigenvalues();
  for (Eigen::Index a = 0; a < coeffs.size(); ++a) coeffs[a] *= std::polar(1.0, -eps[a] * dt);
}

// Segment boundaries [0, jumps...] and the phase held on each segment.
struct Segments {
  std::vector<double> start;
  std::vector<double> theta;
};

Segments make_segments(const PhaseSchedule& schedule, double t_final) {
  Segments s;
  s.start.push_back(0.0);
  for (double tj : jump_times(schedule, t_final)) s.start.push_back(tj);
  const double period = schedule_period(schedule);
  for (std::size_t i = 0; i < s.start.size(); ++i) {
    double probe = s.start[i];
    if (i + 1 < s.start.size()) probe = 0.5 * (s.start[i] + s.start[i + 1]);
    else if (period > 0.0) probe = s.start[i] + 0.25 * period;
    s.theta.push_back(phase_at(schedule, probe));
  }
  return s;
}

nlohmann::json plan_metadata(const EvolutionPlan& plan) {
  nlohmann::json j;
  j["t_final"] = plan.t_final;
  j["n_samples"] = plan.sample_times.size();
  j["integrator_step"] = plan.integrator_step;
  j["schedule"] = plan.schedule;
  return j;
}

}  // namespace

EvolutionPlan uniform_plan(const PhaseSchedule& schedule, double t_final, int intervals,
                           double integrator_step) {
  if (intervals < 1) throw DomainError("sampling needs at least one interval");
  EvolutionPlan plan;
  plan.t_final = t_final;
  plan.schedule = schedule;
  plan.integrator_step = integrator_step;
  plan.sample_times.resize(static_cast<std::size_t>(intervals) + 1);
  for (int i = 0; i <= intervals; ++i) plan.sample_times[i] = t_final * i / intervals;
  plan.sample_times.back() = t_final;
  return plan;
}

void validate(const EvolutionPlan& plan) {
  validate(plan.schedule);
  if (!(plan.t_final > 0.0) || !std::isfinite(plan.t_final)) {
    throw DomainError("plan.t_final must be finite and > 0");
  }
  if (!(plan.integrator_step >= 0.0)) throw DomainError("plan.integrator_step must be >= 0");
  if (plan.sample_times.empty()) throw DomainError("plan has no sample times");
  double prev = -1.0;
  for (double t : plan.sample_times) {
    if (!(t >= 0.0) || t > plan.t_final * (1.0 + 1e-12) || t < prev) {
      throw DomainError("plan.sample_times must be sorted and within [0, t_final]");
    }
    prev = t;
  }
}

PiecewisePropagator::PiecewisePropagator(const RingSpec& ring, const DisorderRealization& disorder)
    : ring_(ring), disorder_(disorder) {
  validate(ring_);
}

PiecewisePropagator::SectorCache& PiecewisePropagator::sector(int n_magnons) {
  auto it = sectors_.find(n_magnons);
  if (it != sectors_.end()) return it->second;
  SectorCache cache;
  cache.op = std::make_shared<const SectorOperator>(ring_, disorder_, make_sector_basis(ring_.n_sites, n_magnons));
  if (disorder_.translation_invariant()) cache.orbits = std::make_shared<const TranslationOrbits>(cache.op->basis_ptr());
  return sectors_.emplace(n_magnons, std::move(cache)).first->second;
}

std::size_t PiecewisePropagator::cached_decompositions(int n_magnons) const {
  auto it = sectors_.find(n_magnons);
  return it == sectors_.end() ? 0 : it->second.by_theta.size();
}

const SpectralDecomposition& PiecewisePropagator::decomposition(int n_magnons, double theta) {
  SectorCache& cache = sector(n_magnons);
  if (auto it = cache.by_theta.find(theta); it != cache.by_theta.end()) return it->second;

  if (cache.op->uniform_diagonal()) {
    for (const auto& [cached_theta, d] : cache.by_theta) {
      const double gap = std::abs(std::abs(theta - cached_theta) - std::numbers::pi);
      if (gap <= 1e-12 * std::max(1.0, std::abs(theta))) {
        return cache.by_theta.emplace(theta, d.with_negated_interaction(theta)).first->second;
      }
    }
  }
  const SectorHamiltonian h(cache.op, theta);
  ++solver_runs_;
  SpectralDecomposition d = cache.orbits ? SpectralDecomposition::momentum(h, cache.orbits)
                                         : SpectralDecomposition::dense(h);
  return cache.by_theta.emplace(theta, std::move(d)).first->second;
}

Trajectory PiecewisePropagator::evolve(const MultiSectorState& initial, const EvolutionPlan& plan) {
  validate(plan);
  if (std::holds_alternative<FourierTruncatedPhase>(plan.schedule)) {
    throw DomainError("evolve_piecewise requires a constant or step-periodic schedule; use evolve_continuous");
  }
  if (initial.n_sites() != ring_.n_sites) throw DomainError("initial state and ring disagree on n_sites");

  const Segments segs = make_segments(plan.schedule, plan.t_final);
  const std::size_t n_samples = plan.sample_times.size();
  std::map<int, std::vector<Eigen::VectorXcd>> recorded;

  for (const auto& [n, comp] : initial.components()) {
    auto& out = recorded[n];
    out.reserve(n_samples);
    std::size_t seg = 0;
    const SpectralDecomposition* d = &decomposition(n, segs.theta[0]);
    Eigen::VectorXcd coeffs = d->to_eigenbasis(comp.state.amplitudes());
    double t = 0.0;
    for (double ts : plan.sample_times) {
      while (seg + 1 < segs.start.size() && segs.start[seg + 1] < ts - time_tolerance(ts)) {
        const double tj = segs.start[seg + 1];
        advance(coeffs, *d, tj - t);
        t = tj;
        ++seg;
        if (segs.theta[seg] != d->theta()) {
          const SpectralDecomposition* next = &decomposition(n, segs.theta[seg]);
          // Shared eigenvectors: coefficients carry over unchanged.
          if (next->shares_eigenvectors(*d)) {
          } else if (d->route() == SpectralDecomposition::Route::Dense &&
                     next->route() == SpectralDecomposition::Route::Dense) {
            auto& transfers = sector(n).transfers;
            const auto key = std::make_pair(d->theta(), next->theta());
            auto it = transfers.find(key);
            if (it == transfers.end()) it = transfers.emplace(key, SpectralDecomposition::transfer(*d, *next)).first;
            coeffs = it->second * coeffs;
          } else {
            coeffs = next->to_eigenbasis(d->from_eigenbasis(coeffs));
          }
          d = next;
        }
      }
      advance(coeffs, *d, ts - t);
      t = ts;
      out.push_back(std::polar(1.0, -d->shift() * ts) * d->from_eigenbasis(coeffs));
    }
  }

  Trajectory traj;
  traj.initial = initial;
  traj.plan = plan;
  traj.times = plan.sample_times;
  traj.states.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    std::map<int, MultiSectorState::Component> comps;
    for (const auto& [n, comp] : initial.components()) {
      comps.emplace(n, MultiSectorState::Component{comp.weight,
                                                   SectorState(comp.state.basis_ptr(), std::move(recorded[n][i]))});
    }
    traj.states.emplace_back(std::move(comps));
  }

  nlohmann::json sectors = nlohmann::json::array();
  for (const auto& [n, cache] : sectors_) {
    const bool momentum = static_cast<bool>(cache.orbits);
    sectors.push_back({{"n_magnons", n},
                       {"dimension", cache.op->dimension()},
                       {"route", momentum ? "momentum" : "dense"},
                       {"decompositions", cache.by_theta.size()}});
  }
  traj.metadata = {{"propagator", "piecewise-spectral"},
                   {"ring", ring_},
                   {"plan", plan_metadata(plan)},
                   {"eigensolver_runs", solver_runs_},
                   {"sectors", sectors}};
  return traj;
}

Trajectory evolve_piecewise(const MultiSectorState& initial, const RingSpec& ring,
                            const DisorderRealization& disorder, const EvolutionPlan& plan) {
  PiecewisePropagator prop(ring, disorder);
  return prop.evolve(initial, plan);
}

double automatic_integrator_step(const SectorOperator& op, const EvolutionPlan& plan) {
  if (plan.integrator_step > 0.0) return plan.integrator_step;
  const double scale = op.max_shifted_element();
  double h = scale > 0.0 ? 0.1 / scale : plan.t_final;
  if (const auto* f = std::get_if<FourierTruncatedPhase>(&plan.schedule)) {
    h = std::min(h, f->period / (40.0 * highest_harmonic(*f)));
  }
  return std::min(h, plan.t_final);
}

namespace {

// psi <- exp(-i (H(theta) - shift) h) psi by a scaled Taylor series.
void exp_step(const SectorOperator& op, double theta, double h, double norm_bound, Eigen::VectorXcd& psi,
              Eigen::VectorXcd& term, Eigen::VectorXcd& scratch) {
  const int pieces = std::max(1, static_cast<int>(std::ceil(norm_bound * h / 0.5)));
  const double dt = h / pieces;
  for (int p = 0; p < pieces; ++p) {
    term = psi;
    for (int k = 1; k <= 60; ++k) {
      op.apply_shifted(theta, term, scratch);
      term = scratch * cplx(0.0, -dt / k);
      psi += term;
      if (term.squaredNorm() < 1e-34) break;
    }
  }
}

}  // namespace

Trajectory evolve_continuous(const MultiSectorState& initial, const RingSpec& ring,
                             const DisorderRealization& disorder, const EvolutionPlan& plan) {
  validate(ring);
  validate(plan);
  if (initial.n_sites() != ring.n_sites) throw DomainError("initial state and ring disagree on n_sites");

  std::vector<double> breaks = jump_times(plan.schedule, plan.t_final);
  const std::size_t n_samples = plan.sample_times.size();
  std::map<int, std::vector<Eigen::VectorXcd>> recorded;
  nlohmann::json sectors = nlohmann::json::array();
  std::size_t total_steps = 0;

  for (const auto& [n, comp] : initial.components()) {
    const SectorOperator op(ring, disorder, comp.state.basis_ptr());
    const double h = automatic_integrator_step(op, plan);
    const double bound = op.shifted_norm_bound();
    Eigen::VectorXcd psi = comp.state.amplitudes();
    Eigen::VectorXcd term, scratch;
    auto& out = recorded[n];
    out.reserve(n_samples);
    std::size_t next_break = 0;
    double t = 0.0;

    auto integrate_to = [&](double target) {
      const double span = target - t;
      if (span <= 0.0) return;
      const auto steps = static_cast<long>(std::max(1.0, std::ceil(span / h - 1e-9)));
      const double dt = span / static_cast<double>(steps);
      for (long s = 0; s < steps; ++s) {
        const double mid = t + (static_cast<double>(s) + 0.5) * dt;
        exp_step(op, phase_at(plan.schedule, mid), dt, bound, psi, term, scratch);
      }
      total_steps += static_cast<std::size_t>(steps);
      t = target;
    };

    for (double ts : plan.sample_times) {
      while (next_break < breaks.size() && breaks[next_break] < ts - time_tolerance(ts)) {
        integrate_to(breaks[next_break++]);
      }
      integrate_to(ts);
      const double drift = std::abs(psi.norm() - 1.0);
      if (drift > 1e-6) {
        std::ostringstream os;
        os << "integrator lost unitarity (norm drift " << drift << " at t=" << ts << ", sector n=" << n
           << "); reduce plan.integrator_step below " << h;
        throw NumericError(os.str());
      }
      out.push_back(psi * std::polar(1.0, -op.diagonal_shift() * ts));
    }
    sectors.push_back({{"n_magnons", n}, {"dimension", op.dimension()}, {"step", h}});
  }

  Trajectory traj;
  traj.initial = initial;
  traj.plan = plan;
  traj.times = plan.sample_times;
  traj.states.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    std::map<int, MultiSectorState::Component> comps;
    for (const auto& [n, comp] : initial.components()) {
      comps.emplace(n, MultiSectorState::Component{comp.weight,
                                                   SectorState(comp.state.basis_ptr(), std::move(recorded[n][i]))});
    }
    traj.states.emplace_back(std::move(comps));
  }
  traj.metadata = {{"propagator", "midpoint-exponential"},
                   {"ring", ring},
                   {"plan", plan_metadata(plan)},
                   {"integrator_steps", total_steps},
                   {"sectors", sectors}};
  return traj;
}

}  // namespace spinring
