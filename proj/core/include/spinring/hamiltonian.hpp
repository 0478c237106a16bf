#pragma once

#include <memory>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "spinring/disorder.hpp"
#include "spinring/sector_basis.hpp"

namespace spinring {

using SparseMatrixC = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

/// Theta-independent structure of the sector Hamiltonian
///
///   H(theta) = -s sum_i (lambda + eta_i) (e^{i theta} sigma+_i sigma-_{i+1} + h.c.)
///              + sum_i (B + delta_i) sigma^z_i
///
/// restricted to one magnon sector (s = hop_scale). Moving a magnon from site
/// i+1 to site i carries -s (lambda + eta_i) e^{i theta}; the reverse move
/// carries the conjugate. Moves onto occupied sites are absent.
class SectorOperator {
 public:
  SectorOperator(const RingSpec& ring, const DisorderRealization& disorder, SectorBasisPtr basis);

  const SectorBasis& basis() const { return *basis_; }
  const SectorBasisPtr& basis_ptr() const { return basis_; }
  const RingSpec& ring() const { return ring_; }
  const DisorderRealization& disorder() const { return disorder_; }
  std::size_t dimension() const { return basis_->dimension(); }

  /// Diagonal sum_{i in S}(B + delta_i) - sum_{i not in S}(B + delta_i).
  const Eigen::VectorXd& diagonal() const { return diagonal_; }
  /// True when every diagonal entry is identical (no field disorder).
  bool uniform_diagonal() const { return uniform_diagonal_; }
  /// Mean of the diagonal; subtracting it removes the sector's local energy.
  double diagonal_shift() const { return shift_; }

  /// y = (H(theta) - shift) x without forming the matrix.
  void apply_shifted(double theta, const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const;

  /// Largest absolute element of H(theta) - shift (independent of theta).
  double max_shifted_element() const;
  /// Gershgorin bound on the spectral radius of H(theta) - shift.
  double shifted_norm_bound() const;

  SparseMatrixC assemble(double theta) const;
  SparseMatrixC interaction(double theta) const;

 private:
  RingSpec ring_;
  DisorderRealization disorder_;
  SectorBasisPtr basis_;
  Eigen::VectorXd diagonal_;
  double shift_ = 0.0;
  bool uniform_diagonal_ = true;
  // CSR hop table: row_start_[r]..row_start_[r+1] index into col_/amp_/forward_.
  std::vector<std::size_t> row_start_;
  std::vector<std::size_t> col_;
  std::vector<double> amp_;
  std::vector<char> forward_;  // 1: element carries e^{i theta}, 0: e^{-i theta}
};

/// H(theta) on one sector for a fixed disorder realization.
class SectorHamiltonian {
 public:
  SectorHamiltonian(std::shared_ptr<const SectorOperator> op, double theta);

  double theta() const { return theta_; }
  const SectorOperator& op() const { return *op_; }
  const std::shared_ptr<const SectorOperator>& op_ptr() const { return op_; }
  const SectorBasis& basis() const { return op_->basis(); }
  std::size_t dimension() const { return op_->dimension(); }

  const SparseMatrixC& matrix() const { return matrix_; }
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix_); }
  /// Off-diagonal (hopping) part H - diag(H).
  SparseMatrixC interaction() const { return op_->interaction(theta_); }

 private:
  std::shared_ptr<const SectorOperator> op_;
  double theta_;
  SparseMatrixC matrix_;
};

SectorHamiltonian build_hamiltonian(const RingSpec& ring, const DisorderRealization& disorder,
                                    double theta, SectorBasisPtr basis);

/// max |(H1 H2 - H2 H1)_{ij}|. Both Hamiltonians must live on the same sector.
double commutator_norm(const SectorHamiltonian& h1, const SectorHamiltonian& h2);

/// Closed-form one-magnon spectrum of the clean ring, in k order:
///   -2 s lambda cos(2 pi k / N + theta) + B (2 - N),  k = 0..N-1.
std::vector<double> one_magnon_dispersion(const RingSpec& ring, double theta);

}  // namespace spinring
