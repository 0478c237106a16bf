#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

#include "spinring/spectral.hpp"
#include "spinring/translation_orbits.hpp"

using namespace spinring;
constexpr double kPi = std::numbers::pi;

namespace {

double residual(const SectorHamiltonian& h, const SpectralDecomposition& d) {
  const Eigen::MatrixXcd v = d.eigenvectors();
  const Eigen::MatrixXcd hv = h.dense() * v;
  const Eigen::MatrixXcd vl = v * d.eigenvalues().asDiagonal();
  return (hv - vl).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(TranslationOrbits, PartitionTheBasis) {
  const auto basis = make_sector_basis(12, 4);
  const TranslationOrbits orbits(basis);
  std::size_t total = 0;
  for (std::size_t r = 0; r < orbits.orbit_count(); ++r) {
    total += orbits.period(r);
    EXPECT_EQ(12 % orbits.period(r), 0u);
    const auto members = orbits.members(r);
    for (std::size_t j = 0; j < members.size(); ++j) {
      EXPECT_EQ(orbits.orbit_of(members[j]), r);
      EXPECT_EQ(orbits.shift_of(members[j]), j);
      EXPECT_EQ(basis->translate(members[0], static_cast<int>(j)), members[j]);
    }
  }
  EXPECT_EQ(total, basis->dimension());
}

TEST(Spectral, DenseReconstructsHamiltonian) {
  DisorderSpec spec;
  spec.eta = GaussianDisorder{0.2};
  spec.delta = GaussianDisorder{0.1};
  const RingSpec ring{10, 3.0, 1.0, 1.0};
  const auto h = build_hamiltonian(ring, sample_disorder(spec, 10, 1), 0.4, make_sector_basis(10, 3));
  const auto d = SpectralDecomposition::compute(h);
  EXPECT_EQ(d.route(), SpectralDecomposition::Route::Dense);
  EXPECT_LT(residual(h, d), 1e-11);
}

TEST(Spectral, MomentumBlocksMatchDense) {
  for (int n : {1, 2, 3}) {
    const RingSpec ring{12, 100.0, 1.0, 1.0};
    const auto h = build_hamiltonian(ring, no_disorder(12), 0.9, make_sector_basis(12, n));
    const auto mom = SpectralDecomposition::compute(h);
    EXPECT_EQ(mom.route(), SpectralDecomposition::Route::Momentum);
    const auto dense = SpectralDecomposition::dense(h);
    Eigen::VectorXd a = mom.eigenvalues(), b = dense.eigenvalues();
    std::sort(a.data(), a.data() + a.size());
    std::sort(b.data(), b.data() + b.size());
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-10) << "n=" << n;
    EXPECT_LT(residual(h, mom), 1e-10) << "n=" << n;
  }
}

TEST(Spectral, EigenbasisRoundTrip) {
  const RingSpec ring{9, 1.0, 1.0, 1.0};
  const auto h = build_hamiltonian(ring, no_disorder(9), 0.3, make_sector_basis(9, 2));
  const auto d = SpectralDecomposition::compute(h);
  const Eigen::VectorXcd psi = Eigen::VectorXcd::Random(static_cast<Eigen::Index>(d.dimension()));
  const Eigen::VectorXcd back = d.from_eigenbasis(d.to_eigenbasis(psi));
  EXPECT_LT((back - psi).norm(), 1e-13);
  EXPECT_NEAR(d.to_eigenbasis(psi).norm(), psi.norm(), 1e-13);
}

TEST(Spectral, NegatedInteractionMatchesDirectSolve) {
  const RingSpec ring{11, 2.0, 1.0, 1.0};
  DisorderSpec spec;
  spec.eta = UniformDisorder{0.3};
  const auto disorder = sample_disorder(spec, 11, 5);
  const auto basis = make_sector_basis(11, 2);
  const auto base = SpectralDecomposition::compute(build_hamiltonian(ring, disorder, 0.2, basis));
  const auto derived = base.with_negated_interaction(0.2 + kPi);
  const auto h_pi = build_hamiltonian(ring, disorder, 0.2 + kPi, basis);
  EXPECT_LT(residual(h_pi, derived), 1e-11);
  EXPECT_DOUBLE_EQ(derived.theta(), 0.2 + kPi);
}
