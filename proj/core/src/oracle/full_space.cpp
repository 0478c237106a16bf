#include "spinring/oracle/full_space.hpp"

#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>
#include <unsupported/Eigen/KroneckerProduct>

#include "spinring/errors.hpp"

namespace spinring::oracle {
namespace {

using Local = Eigen::SparseMatrix<cplx>;

Local local(std::initializer_list<cplx> row_major) {
  Eigen::Matrix2cd m;
  auto it = row_major.begin();
  m << it[0], it[1], it[2], it[3];
  return m.sparseView();
}

// Basis order per site: index 0 = down, 1 = up.
const Local& raise() {
  static const Local m = local({0.0, 0.0, 1.0, 0.0});
  return m;
}
const Local& lower() {
  static const Local m = local({0.0, 1.0, 0.0, 0.0});
  return m;
}
const Local& pauli_z() {
  static const Local m = local({-1.0, 0.0, 0.0, 1.0});
  return m;
}
const Local& identity() {
  static const Local m = local({1.0, 0.0, 0.0, 1.0});
  return m;
}

// factor[i] acts on site i. The leftmost Kronecker factor is the most
// significant bit, so the product runs from site N-1 down to site 0.
Local chain(const std::vector<const Local*>& factor) {
  Local out = *factor.back();
  for (int i = static_cast<int>(factor.size()) - 2; i >= 0; --i) {
    Local next = Eigen::kroneckerProduct(out, *factor[static_cast<std::size_t>(i)]).eval();
    out = std::move(next);
  }
  return out;
}

void check_size(int n_sites) {
  if (n_sites < 3 || n_sites > kMaxFullSpaceSites) {
    throw DomainError("full-space oracle supports 3 <= N <= " + std::to_string(kMaxFullSpaceSites));
  }
}

}  // namespace

Eigen::MatrixXcd full_hamiltonian(const RingSpec& ring, const DisorderRealization& disorder, double theta) {
  check_size(ring.n_sites);
  const int n = ring.n_sites;
  if (disorder.n_sites() != n) throw DomainError("disorder length differs from N");
  const auto full_dim = static_cast<Eigen::Index>(1) << n;
  Local h(full_dim, full_dim);
  const cplx phase = std::polar(1.0, theta);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const double bond = ring.hop_scale * (ring.coupling + disorder.eta[static_cast<std::size_t>(i)]);
    std::vector<const Local*> fwd(static_cast<std::size_t>(n), &identity());
    fwd[static_cast<std::size_t>(i)] = &raise();
    fwd[static_cast<std::size_t>(j)] = &lower();
    std::vector<const Local*> bwd(static_cast<std::size_t>(n), &identity());
    bwd[static_cast<std::size_t>(i)] = &lower();
    bwd[static_cast<std::size_t>(j)] = &raise();
    h -= bond * (phase * chain(fwd) + std::conj(phase) * chain(bwd));

    std::vector<const Local*> z(static_cast<std::size_t>(n), &identity());
    z[static_cast<std::size_t>(i)] = &pauli_z();
    h += (ring.b_field + disorder.delta[static_cast<std::size_t>(i)]) * chain(z);
  }
  return Eigen::MatrixXcd(h);
}

Eigen::VectorXcd embed(const MultiSectorState& state) {
  check_size(state.n_sites());
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(1) << state.n_sites());
  for (const auto& [n, comp] : state.components()) {
    const SectorBasis& basis = comp.state.basis();
    for (std::size_t k = 0; k < basis.dimension(); ++k) {
      Eigen::Index idx = 0;
      for (int s : basis.unrank(k)) idx |= static_cast<Eigen::Index>(1) << s;
      out[idx] += comp.weight * comp.state.amplitudes()[static_cast<Eigen::Index>(k)];
    }
  }
  return out;
}

std::vector<Eigen::VectorXcd> full_space_evolve(const Eigen::VectorXcd& psi0, const RingSpec& ring,
                                                const DisorderRealization& disorder, const EvolutionPlan& plan) {
  if (std::holds_alternative<FourierTruncatedPhase>(plan.schedule)) {
    throw DomainError("full-space oracle handles constant and step schedules only");
  }
  check_size(ring.n_sites);
  if (psi0.size() != (static_cast<Eigen::Index>(1) << ring.n_sites)) throw DomainError("psi0 has the wrong size");

  std::map<double, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>> solvers;
  auto solver = [&](double theta) -> const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>& {
    auto it = solvers.find(theta);
    if (it == solvers.end()) {
      it = solvers.emplace(theta, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(
                                      full_hamiltonian(ring, disorder, theta))).first;
      if (it->second.info() != Eigen::Success) throw NumericError("full-space eigensolver failed");
    }
    return it->second;
  };
  auto propagate = [&](Eigen::VectorXcd& psi, double t0, double t1) {
    if (t1 <= t0) return;
    const auto& es = solver(phase_at(plan.schedule, 0.5 * (t0 + t1)));
    Eigen::VectorXcd c = es.eigenvectors().adjoint() * psi;
    for (Eigen::Index a = 0; a < c.size(); ++a) c[a] *= std::polar(1.0, -es.eigenvalues()[a] * (t1 - t0));
    psi = es.eigenvectors() * c;
  };

  const std::vector<double> jumps = jump_times(plan.schedule, plan.t_final);
  std::vector<Eigen::VectorXcd> out;
  Eigen::VectorXcd psi = psi0;
  double t = 0.0;
  std::size_t next_jump = 0;
  for (double ts : plan.sample_times) {
    while (next_jump < jumps.size() && jumps[next_jump] < ts - 1e-12 * std::max(1.0, ts)) {
      propagate(psi, t, jumps[next_jump]);
      t = jumps[next_jump++];
    }
    propagate(psi, t, ts);
    t = std::max(t, ts);
    out.push_back(psi);
  }
  return out;
}

}  // namespace spinring::oracle
