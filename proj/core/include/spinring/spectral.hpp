#pragma once

#include <memory>
#include <vector>

#include <Eigen/Core>

#include "spinring/hamiltonian.hpp"
#include "spinring/translation_orbits.hpp"

namespace spinring {

/// Eigendecomposition H(theta) = V diag(shift + eps) V^dagger of one sector.
///
/// Eigenvalues are stored relative to `shift` (the sector's mean local
/// energy) so that propagation phases keep full precision when the local
/// field dominates the hopping scale.
///
/// Two routes produce V: a dense Hermitian eigensolver, and, for rings with
/// translation-invariant couplings and fields, block diagonalization in the
/// momentum basis |r,k> = L_r^{-1/2} sum_j e^{-ikj} T^j |r>. The latter stores
/// V implicitly and applies it in O(dim * N).
class SpectralDecomposition {
 public:
  enum class Route { Dense, Momentum };

  /// Momentum route when the disorder is translation invariant, dense otherwise.
  static SpectralDecomposition compute(const SectorHamiltonian& h);
  static SpectralDecomposition dense(const SectorHamiltonian& h);
  static SpectralDecomposition momentum(const SectorHamiltonian& h,
                                        std::shared_ptr<const TranslationOrbits> orbits = nullptr);

  /// Decomposition of 2 shift - H, i.e. H(theta + pi) when the diagonal is
  /// uniform: same eigenvectors, negated relative eigenvalues.
  SpectralDecomposition with_negated_interaction(double new_theta) const;

  double theta() const { return theta_; }
  int n_magnons() const { return n_magnons_; }
  Route route() const { return route_; }
  std::size_t dimension() const { return static_cast<std::size_t>(relative_.size()); }

  double shift() const { return shift_; }
  const Eigen::VectorXd& relative_eigenvalues() const { return relative_; }
  Eigen::VectorXd eigenvalues() const;

  /// c = V^dagger psi.
  Eigen::VectorXcd to_eigenbasis(const Eigen::VectorXcd& psi) const;
  /// psi = V c.
  Eigen::VectorXcd from_eigenbasis(const Eigen::VectorXcd& coeffs) const;
  /// Dense V (columns are eigenvectors, in eigenvalue storage order).
  Eigen::MatrixXcd eigenvectors() const;

  /// True when both decompositions hold the same V, so eigenbasis
  /// coefficients carry over unchanged.
  bool shares_eigenvectors(const SpectralDecomposition& other) const;

  /// Unitary W = V_to^dagger V_from mapping eigenbasis coefficients across a
  /// phase jump in one product. Dense route only.
  static Eigen::MatrixXcd transfer(const SpectralDecomposition& from, const SpectralDecomposition& to);

 private:
  struct MomentumBlock {
    int q = 0;
    std::size_t offset = 0;            // position in the eigenvalue vector
    std::vector<std::size_t> orbits;   // compatible orbits, block row order
    Eigen::MatrixXcd vectors;          // block eigenvectors
  };

  SpectralDecomposition() = default;

  double theta_ = 0.0;
  int n_magnons_ = 0;
  int n_sites_ = 0;
  Route route_ = Route::Dense;
  double shift_ = 0.0;
  Eigen::VectorXd relative_;
  std::shared_ptr<const Eigen::MatrixXcd> dense_vectors_;
  std::shared_ptr<const TranslationOrbits> orbits_;
  std::shared_ptr<const std::vector<MomentumBlock>> blocks_;
  std::shared_ptr<const std::vector<cplx>> roots_;  // e^{2 pi i m / N}
};

}  // namespace spinring
