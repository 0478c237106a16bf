#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace spinring {

using cplx = std::complex<double>;

/// Static ring parameters. Energies are in the same units as `coupling`;
/// with coupling = 1 the time axis is the dimensionless lambda*t.
struct RingSpec {
  int n_sites = 0;
  double b_field = 0.0;
  double coupling = 1.0;
  /// Global multiplier on every hopping element. 1 corresponds to
  /// sigma^+- = (sigma^x +- i sigma^y)/2; 4 reproduces the unnormalized
  /// sigma^x +- i sigma^y convention.
  double hop_scale = 1.0;

  bool operator==(const RingSpec&) const = default;
};

/// Throws DomainError unless n_sites >= 3 and coupling >= 0.
void validate(const RingSpec& ring);

/// Fixed-magnetization subspace with n magnons on an N-site ring.
///
/// Configurations are strictly increasing site lists ranked in colexicographic
/// order: rank({d_0 < d_1 < ... < d_{n-1}}) = sum_j C(d_j, j + 1). For N = 4,
/// n = 2 this enumerates {0,1},{0,2},{1,2},{0,3},{1,3},{2,3}.
class SectorBasis {
 public:
  SectorBasis(int n_sites, int n_magnons);

  int n_sites() const { return n_sites_; }
  int n_magnons() const { return n_magnons_; }
  std::size_t dimension() const { return dimension_; }

  /// Rank of a strictly increasing site list.
  std::size_t rank(std::span<const int> sites) const;
  /// Sites of configuration `index`, strictly increasing.
  std::span<const int> unrank(std::size_t index) const;
  bool occupied(std::size_t index, int site) const;

  /// Index of the configuration obtained by translating every magnon by
  /// `shift` sites around the ring.
  std::size_t translate(std::size_t index, int shift) const;

  /// Eigenvalue of sum_i sigma^z_i on this sector: 2n - N.
  int magnetization() const { return 2 * n_magnons_ - n_sites_; }

  bool operator==(const SectorBasis& other) const {
    return n_sites_ == other.n_sites_ && n_magnons_ == other.n_magnons_;
  }

 private:
  std::uint64_t binom(int n, int k) const;

  int n_sites_;
  int n_magnons_;
  std::size_t dimension_;
  std::vector<std::uint64_t> binom_;  // (n_sites+1) x (n_magnons+1)
  std::vector<int> sites_;            // dimension x n_magnons
  std::vector<std::uint8_t> occupancy_;  // dimension x n_sites
};

using SectorBasisPtr = std::shared_ptr<const SectorBasis>;

/// Shared, immutable basis for (N, n).
SectorBasisPtr make_sector_basis(int n_sites, int n_magnons);

/// Normalized amplitude vector over one sector.
class SectorState {
 public:
  SectorState(SectorBasisPtr basis, Eigen::VectorXcd amplitudes);

  /// Rescales `amplitudes` to unit norm; throws on a zero vector.
  static SectorState normalized(SectorBasisPtr basis, Eigen::VectorXcd amplitudes);

  const SectorBasis& basis() const { return *basis_; }
  const SectorBasisPtr& basis_ptr() const { return basis_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  int n_magnons() const { return basis_->n_magnons(); }
  double norm() const { return amplitudes_.norm(); }

 private:
  SectorBasisPtr basis_;
  Eigen::VectorXcd amplitudes_;
};

/// Superposition across magnetization sectors: |psi> = sum_n w_n |psi_n>.
class MultiSectorState {
 public:
  struct Component {
    cplx weight;
    SectorState state;
  };

  MultiSectorState() = default;
  explicit MultiSectorState(std::map<int, Component> components);

  /// Single-sector state with weight 1.
  static MultiSectorState single(SectorState state);

  int n_sites() const { return n_sites_; }
  const std::map<int, Component>& components() const { return components_; }
  bool has_sector(int n_magnons) const { return components_.count(n_magnons) > 0; }
  const Component& sector(int n_magnons) const;

  /// sqrt(sum_n |w_n|^2 ||psi_n||^2).
  double norm() const;
  /// <this|other>, including sector weights.
  cplx inner(const MultiSectorState& other) const;

 private:
  int n_sites_ = 0;
  std::map<int, Component> components_;
};

/// Cyclic translation of every configuration by `shift` sites.
MultiSectorState translate(const MultiSectorState& state, int shift);

/// sum_i a_i |Psi^(n_i)_{sites_i}>. Sites may be negative (reduced mod N).
struct StateSpec {
  struct Term {
    cplx coeff;
    std::vector<int> sites;
    bool operator==(const Term&) const = default;
  };
  std::vector<Term> terms;
  bool operator==(const StateSpec&) const = default;
};

struct RealizedState {
  MultiSectorState state;
  /// True when the input coefficients were rescaled to unit norm.
  bool renormalized = false;
};

/// Groups terms by magnon count, places coefficients at ranked indices and
/// normalizes globally.
RealizedState realize_state(const StateSpec& spec, int n_sites);

/// 2n - N for every populated sector, keyed by n.
std::map<int, int> magnetization(const MultiSectorState& state);

}  // namespace spinring
