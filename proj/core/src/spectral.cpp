#include "spinring/spectral.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "spinring/errors.hpp"

namespace spinring {
namespace {

[[noreturn]] void fail(const SectorHamiltonian& h, const char* what) {
  std::ostringstream os;
  os << "eigendecomposition failed (" << what << ") for sector n=" << h.basis().n_magnons()
     << ", theta=" << h.theta();
  throw NumericError(os.str());
}

// Solver eigenvectors are orthonormal only to ~dim * eps; repeated basis
// changes then leak norm. Newton-Schulz steps V <- V (3 - V^H V) / 2
// converge quadratically to the nearest unitary.
Eigen::MatrixXcd orthonormalized(Eigen::MatrixXcd v) {
  const auto n = v.cols();
  for (int iter = 0; iter < 2; ++iter) {
    const Eigen::MatrixXcd gram = v.adjoint() * v;
    v = v * (1.5 * Eigen::MatrixXcd::Identity(n, n) - 0.5 * gram);
  }
  return v;
}

}  // namespace

SpectralDecomposition SpectralDecomposition::compute(const SectorHamiltonian& h) {
  if (h.op().disorder().translation_invariant()) return momentum(h);
  return dense(h);
}

SpectralDecomposition SpectralDecomposition::dense(const SectorHamiltonian& h) {
  SpectralDecomposition out;
  out.theta_ = h.theta();
  out.n_magnons_ = h.basis().n_magnons();
  out.n_sites_ = h.basis().n_sites();
  out.route_ = Route::Dense;
  out.shift_ = h.op().diagonal_shift();

  Eigen::MatrixXcd m = h.dense();
  m.diagonal().array() -= out.shift_;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) fail(h, "dense solver did not converge");
  out.relative_ = solver.eigenvalues();
  out.dense_vectors_ = std::make_shared<const Eigen::MatrixXcd>(orthonormalized(solver.eigenvectors()));
  return out;
}

SpectralDecomposition SpectralDecomposition::momentum(const SectorHamiltonian& h,
                                                      std::shared_ptr<const TranslationOrbits> orbits) {
  if (!h.op().disorder().translation_invariant()) {
    throw DomainError("momentum decomposition requires translation-invariant disorder");
  }
  const int n_sites = h.basis().n_sites();
  if (!orbits) orbits = std::make_shared<const TranslationOrbits>(h.op().basis_ptr());

  SpectralDecomposition out;
  out.theta_ = h.theta();
  out.n_magnons_ = h.basis().n_magnons();
  out.n_sites_ = n_sites;
  out.route_ = Route::Momentum;
  out.shift_ = h.op().diagonal_shift();
  out.orbits_ = orbits;

  auto roots = std::make_shared<std::vector<cplx>>(static_cast<std::size_t>(n_sites));
  for (int m = 0; m < n_sites; ++m) (*roots)[m] = std::polar(1.0, 2.0 * std::numbers::pi * m / n_sites);
  out.roots_ = roots;

  const SparseMatrixC& mat = h.matrix();
  auto blocks = std::make_shared<std::vector<MomentumBlock>>();
  out.relative_.resize(static_cast<Eigen::Index>(h.dimension()));
  std::size_t offset = 0;
  std::vector<long> local(orbits->orbit_count(), -1);
  for (int q = 0; q < n_sites; ++q) {
    MomentumBlock block;
    block.q = q;
    block.offset = offset;
    for (std::size_t r = 0; r < orbits->orbit_count(); ++r) {
      if (orbits->compatible(q, r)) {
        local[r] = static_cast<long>(block.orbits.size());
        block.orbits.push_back(r);
      } else {
        local[r] = -1;
      }
    }
    const auto bdim = static_cast<Eigen::Index>(block.orbits.size());
    if (bdim == 0) continue;

    // M[r', r] = sqrt(L_r / L_r') sum_{s = T^a rep_{r'}} H[s, rep_r] e^{i k a}
    Eigen::MatrixXcd block_matrix = Eigen::MatrixXcd::Zero(bdim, bdim);
    for (Eigen::Index col = 0; col < bdim; ++col) {
      const std::size_t r = block.orbits[static_cast<std::size_t>(col)];
      const std::size_t rep = orbits->members(r)[0];
      const double len_r = static_cast<double>(orbits->period(r));
      for (SparseMatrixC::InnerIterator it(mat, static_cast<Eigen::Index>(rep)); it; ++it) {
        const auto s = static_cast<std::size_t>(it.col());
        const std::size_t r2 = orbits->orbit_of(s);
        if (local[r2] < 0) continue;
        const std::size_t a = orbits->shift_of(s);
        const double len_r2 = static_cast<double>(orbits->period(r2));
        const cplx h_s_rep = std::conj(it.value());  // H[s, rep] from row rep
        block_matrix(local[r2], col) +=
            h_s_rep * (*roots)[(static_cast<std::size_t>(q) * a) % n_sites] * std::sqrt(len_r / len_r2);
      }
    }
    block_matrix.diagonal().array() -= out.shift_;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block_matrix);
    if (solver.info() != Eigen::Success) fail(h, "momentum block solver did not converge");
    out.relative_.segment(static_cast<Eigen::Index>(offset), bdim) = solver.eigenvalues();
    block.vectors = orthonormalized(solver.eigenvectors());
    offset += static_cast<std::size_t>(bdim);
    blocks->push_back(std::move(block));
  }
  if (offset != h.dimension()) {
    throw NumericError("momentum decomposition: block dimensions do not cover the sector");
  }
  out.blocks_ = blocks;
  return out;
}

SpectralDecomposition SpectralDecomposition::with_negated_interaction(double new_theta) const {
  SpectralDecomposition out = *this;
  out.theta_ = new_theta;
  out.relative_ = -relative_;
  return out;
}

Eigen::VectorXd SpectralDecomposition::eigenvalues() const {
  return (relative_.array() + shift_).matrix();
}

Eigen::VectorXcd SpectralDecomposition::to_eigenbasis(const Eigen::VectorXcd& psi) const {
  if (static_cast<std::size_t>(psi.size()) != dimension()) {
    throw DomainError("to_eigenbasis: vector length does not match the sector");
  }
  if (route_ == Route::Dense) return dense_vectors_->adjoint() * psi;

  Eigen::VectorXcd out(psi.size());
  const auto& roots = *roots_;
  const auto n = static_cast<std::size_t>(n_sites_);
  for (const auto& block : *blocks_) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(block.orbits.size()));
    for (std::size_t i = 0; i < block.orbits.size(); ++i) {
      const auto members = orbits_->members(block.orbits[i]);
      cplx acc{0.0, 0.0};
      for (std::size_t j = 0; j < members.size(); ++j) {
        acc += roots[(static_cast<std::size_t>(block.q) * j) % n] * psi[static_cast<Eigen::Index>(members[j])];
      }
      v[static_cast<Eigen::Index>(i)] = acc / std::sqrt(static_cast<double>(members.size()));
    }
    out.segment(static_cast<Eigen::Index>(block.offset), v.size()) = block.vectors.adjoint() * v;
  }
  return out;
}

Eigen::VectorXcd SpectralDecomposition::from_eigenbasis(const Eigen::VectorXcd& coeffs) const {
  if (static_cast<std::size_t>(coeffs.size()) != dimension()) {
    throw DomainError("from_eigenbasis: vector length does not match the sector");
  }
  if (route_ == Route::Dense) return (*dense_vectors_) * coeffs;

  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(coeffs.size());
  const auto& roots = *roots_;
  const auto n = static_cast<std::size_t>(n_sites_);
  for (const auto& block : *blocks_) {
    const auto bdim = static_cast<Eigen::Index>(block.orbits.size());
    const Eigen::VectorXcd u = block.vectors * coeffs.segment(static_cast<Eigen::Index>(block.offset), bdim);
    for (std::size_t i = 0; i < block.orbits.size(); ++i) {
      const auto members = orbits_->members(block.orbits[i]);
      const cplx ui = u[static_cast<Eigen::Index>(i)] / std::sqrt(static_cast<double>(members.size()));
      for (std::size_t j = 0; j < members.size(); ++j) {
        // e^{-ikj} = conj(e^{ikj})
        psi[static_cast<Eigen::Index>(members[j])] += std::conj(roots[(static_cast<std::size_t>(block.q) * j) % n]) * ui;
      }
    }
  }
  return psi;
}

bool SpectralDecomposition::shares_eigenvectors(const SpectralDecomposition& other) const {
  if (route_ != other.route_) return false;
  if (route_ == Route::Dense) return dense_vectors_ == other.dense_vectors_;
  return blocks_ == other.blocks_;
}

Eigen::MatrixXcd SpectralDecomposition::transfer(const SpectralDecomposition& from, const SpectralDecomposition& to) {
  if (from.route_ != Route::Dense || to.route_ != Route::Dense) {
    throw DomainError("transfer: both decompositions must use the dense route");
  }
  if (from.dimension() != to.dimension()) throw DomainError("transfer: sector dimensions differ");
  return orthonormalized(to.dense_vectors_->adjoint() * (*from.dense_vectors_));
}

Eigen::MatrixXcd SpectralDecomposition::eigenvectors() const {
  if (route_ == Route::Dense) return *dense_vectors_;
  const auto dim = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXcd v(dim, dim);
  Eigen::VectorXcd unit = Eigen::VectorXcd::Zero(dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    unit[c] = 1.0;
    v.col(c) = from_eigenbasis(unit);
    unit[c] = 0.0;
  }
  return v;
}

}  // namespace spinring
