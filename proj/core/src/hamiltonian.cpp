#include "spinring/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spinring/errors.hpp"

namespace spinring {

SectorOperator::SectorOperator(const RingSpec& ring, const DisorderRealization& disorder,
                               SectorBasisPtr basis)
    : ring_(ring), disorder_(disorder), basis_(std::move(basis)) {
  validate(ring_);
  if (!basis_) throw DomainError("SectorOperator: null basis");
  const int n_sites = ring_.n_sites;
  if (basis_->n_sites() != n_sites) {
    std::ostringstream os;
    os << "hamiltonian: basis has N=" << basis_->n_sites() << " but ring has N=" << n_sites;
    throw DomainError(os.str());
  }
  if (disorder_.eta.size() != static_cast<std::size_t>(n_sites) ||
      disorder_.delta.size() != static_cast<std::size_t>(n_sites)) {
    std::ostringstream os;
    os << "hamiltonian: disorder vectors have length " << disorder_.eta.size() << "/"
       << disorder_.delta.size() << " but ring has N=" << n_sites;
    throw DomainError(os.str());
  }

  const std::size_t dim = basis_->dimension();
  double field_total = 0.0;
  for (int i = 0; i < n_sites; ++i) field_total += ring_.b_field + disorder_.delta[i];

  // Visits every allowed single-magnon move out of configuration idx as
  // (target index, bond, carries e^{i theta}).
  std::vector<int> moved;
  auto for_each_move = [&](std::size_t idx, auto&& fn) {
    const auto sites = basis_->unrank(idx);
    for (std::size_t j = 0; j < sites.size(); ++j) {
      const int p = sites[j];
      const int left = (p + n_sites - 1) % n_sites;
      const int right = (p + 1) % n_sites;
      // p -> p-1 crosses bond p-1 (e^{i theta}); p -> p+1 crosses bond p.
      for (int dir = 0; dir < 2; ++dir) {
        const int target_site = dir == 0 ? left : right;
        if (basis_->occupied(idx, target_site)) continue;
        moved.assign(sites.begin(), sites.end());
        moved[j] = target_site;
        std::sort(moved.begin(), moved.end());
        fn(basis_->rank(moved), dir == 0 ? left : p, dir == 0);
      }
    }
  };

  diagonal_.resize(static_cast<Eigen::Index>(dim));
  row_start_.assign(dim + 1, 0);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    double up = 0.0;
    for (int s : basis_->unrank(idx)) up += ring_.b_field + disorder_.delta[s];
    diagonal_[static_cast<Eigen::Index>(idx)] = 2.0 * up - field_total;
    for_each_move(idx, [&](std::size_t target, int, bool) { ++row_start_[target + 1]; });
  }
  for (std::size_t r = 0; r < dim; ++r) row_start_[r + 1] += row_start_[r];
  const std::size_t nnz = row_start_[dim];
  col_.resize(nnz);
  amp_.resize(nnz);
  forward_.resize(nnz);
  std::vector<std::size_t> fill(row_start_.begin(), row_start_.end() - 1);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    for_each_move(idx, [&](std::size_t target, int bond, bool forward) {
      const std::size_t k = fill[target]++;
      col_[k] = idx;
      amp_[k] = -ring_.hop_scale * (ring_.coupling + disorder_.eta[bond]);
      forward_[k] = forward ? 1 : 0;
    });
  }

  shift_ = dim > 0 ? diagonal_.mean() : 0.0;
  uniform_diagonal_ = dim == 0 || (diagonal_.maxCoeff() == diagonal_.minCoeff());
  if (uniform_diagonal_ && dim > 0) shift_ = diagonal_[0];
}

void SectorOperator::apply_shifted(double theta, const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
  const std::size_t dim = dimension();
  const cplx fwd = std::polar(1.0, theta);
  const cplx bwd = std::conj(fwd);
  y.resize(static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < dim; ++r) {
    cplx acc = (diagonal_[static_cast<Eigen::Index>(r)] - shift_) * x[static_cast<Eigen::Index>(r)];
    for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
      acc += amp_[k] * (forward_[k] ? fwd : bwd) * x[static_cast<Eigen::Index>(col_[k])];
    }
    y[static_cast<Eigen::Index>(r)] = acc;
  }
}

double SectorOperator::max_shifted_element() const {
  double m = 0.0;
  for (Eigen::Index i = 0; i < diagonal_.size(); ++i) m = std::max(m, std::abs(diagonal_[i] - shift_));
  for (double a : amp_) m = std::max(m, std::abs(a));
  return m;
}

double SectorOperator::shifted_norm_bound() const {
  double m = 0.0;
  for (std::size_t r = 0; r < dimension(); ++r) {
    double row = std::abs(diagonal_[static_cast<Eigen::Index>(r)] - shift_);
    for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) row += std::abs(amp_[k]);
    m = std::max(m, row);
  }
  return m;
}

SparseMatrixC SectorOperator::interaction(double theta) const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  const cplx fwd = std::polar(1.0, theta);
  const cplx bwd = std::conj(fwd);
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(amp_.size());
  for (std::size_t r = 0; r < dimension(); ++r) {
    for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
      trip.emplace_back(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col_[k]),
                        amp_[k] * (forward_[k] ? fwd : bwd));
    }
  }
  SparseMatrixC m(dim, dim);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

SparseMatrixC SectorOperator::assemble(double theta) const {
  SparseMatrixC m = interaction(theta);
  SparseMatrixC d(m.rows(), m.cols());
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(static_cast<std::size_t>(diagonal_.size()));
  for (Eigen::Index i = 0; i < diagonal_.size(); ++i) trip.emplace_back(i, i, cplx{diagonal_[i], 0.0});
  d.setFromTriplets(trip.begin(), trip.end());
  return m + d;
}

SectorHamiltonian::SectorHamiltonian(std::shared_ptr<const SectorOperator> op, double theta)
    : op_(std::move(op)), theta_(theta) {
  if (!op_) throw DomainError("SectorHamiltonian: null operator");
  matrix_ = op_->assemble(theta_);
}

SectorHamiltonian build_hamiltonian(const RingSpec& ring, const DisorderRealization& disorder,
                                    double theta, SectorBasisPtr basis) {
  return SectorHamiltonian(std::make_shared<const SectorOperator>(ring, disorder, std::move(basis)), theta);
}

double commutator_norm(const SectorHamiltonian& h1, const SectorHamiltonian& h2) {
  if (!(h1.basis() == h2.basis())) throw DomainError("commutator_norm: Hamiltonians act on different sectors");
  const SparseMatrixC c = h1.matrix() * h2.matrix() - h2.matrix() * h1.matrix();
  double m = 0.0;
  for (Eigen::Index r = 0; r < c.outerSize(); ++r) {
    for (SparseMatrixC::InnerIterator it(c, r); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

std::vector<double> one_magnon_dispersion(const RingSpec& ring, double theta) {
  validate(ring);
  const int n = ring.n_sites;
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    out[k] = -2.0 * ring.hop_scale * ring.coupling * std::cos(2.0 * std::numbers::pi * k / n + theta) +
             ring.b_field * (2 - n);
  }
  return out;
}

}  // namespace spinring
