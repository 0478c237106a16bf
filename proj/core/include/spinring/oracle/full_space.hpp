#pragma once

#include <vector>

#include <Eigen/Core>

#include "spinring/disorder.hpp"
#include "spinring/propagator.hpp"
#include "spinring/sector_basis.hpp"

// Reference implementations in the full 2^N Hilbert space. Independent of the
// sector basis and sparse operator code: every term is built as an explicit
// Kronecker product of 2x2 single-site matrices. Site i is bit i of the
// full-space index; bit value 1 means spin up.
namespace spinring::oracle {

constexpr int kMaxFullSpaceSites = 12;

/// Dense H(theta) on 2^N amplitudes.
Eigen::MatrixXcd full_hamiltonian(const RingSpec& ring, const DisorderRealization& disorder, double theta);

/// Amplitudes of `state` in the full space.
Eigen::VectorXcd embed(const MultiSectorState& state);

/// Exact evolution of `psi0` sampled at plan.sample_times. Each constant-phase
/// segment is propagated through a dense eigendecomposition of the full H.
/// Constant and step schedules only.
std::vector<Eigen::VectorXcd> full_space_evolve(const Eigen::VectorXcd& psi0, const RingSpec& ring,
                                                const DisorderRealization& disorder, const EvolutionPlan& plan);

}  // namespace spinring::oracle
