#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "spinring/errors.hpp"
#include "spinring/hamiltonian.hpp"
#include "spinring/oracle/full_space.hpp"

using namespace spinring;
constexpr double kPi = std::numbers::pi;

namespace {

Eigen::VectorXd spectrum(const SectorHamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.dense(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

DisorderRealization random_disorder(int n, std::uint64_t seed) {
  DisorderSpec spec;
  spec.eta = GaussianDisorder{0.3};
  spec.delta = UniformDisorder{0.4};
  return sample_disorder(spec, n, seed);
}

}  // namespace

TEST(Hamiltonian, ThreeSiteSpectrum) {
  const RingSpec ring{3, 0.0, 1.0, 1.0};
  const auto basis = make_sector_basis(3, 1);
  const auto e0 = spectrum(build_hamiltonian(ring, no_disorder(3), 0.0, basis));
  EXPECT_NEAR(e0[0], -2.0, 1e-13);
  EXPECT_NEAR(e0[1], 1.0, 1e-13);
  EXPECT_NEAR(e0[2], 1.0, 1e-13);
  const auto epi = spectrum(build_hamiltonian(ring, no_disorder(3), kPi, basis));
  EXPECT_NEAR(epi[0], -1.0, 1e-13);
  EXPECT_NEAR(epi[1], -1.0, 1e-13);
  EXPECT_NEAR(epi[2], 2.0, 1e-13);
}

TEST(Hamiltonian, IsHermitian) {
  const RingSpec ring{8, 1.3, 1.0, 1.0};
  const auto h = build_hamiltonian(ring, random_disorder(8, 4), 0.77, make_sector_basis(8, 3));
  const Eigen::MatrixXcd d = h.dense();
  EXPECT_LT((d - d.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Hamiltonian, OneMagnonDispersionMatchesEigensolver) {
  for (double theta : {0.0, 0.4, kPi / 2, 2.5}) {
    const RingSpec ring{17, 2.5, 0.8, 1.0};
    auto expected = one_magnon_dispersion(ring, theta);
    std::sort(expected.begin(), expected.end());
    const auto e = spectrum(build_hamiltonian(ring, no_disorder(17), theta, make_sector_basis(17, 1)));
    for (int k = 0; k < 17; ++k) EXPECT_NEAR(e[k], expected[k], 1e-12);
  }
}

TEST(Hamiltonian, MatchesFullSpaceBlocks) {
  const int n = 7;
  const RingSpec ring{n, 0.9, 1.1, 1.0};
  const auto disorder = random_disorder(n, 21);
  const double theta = 1.234;
  const Eigen::MatrixXcd full = oracle::full_hamiltonian(ring, disorder, theta);
  for (int m = 0; m <= n; ++m) {
    const auto basis = make_sector_basis(n, m);
    const Eigen::MatrixXcd block = build_hamiltonian(ring, disorder, theta, basis).dense();
    std::vector<Eigen::Index> idx;
    for (std::size_t k = 0; k < basis->dimension(); ++k) {
      Eigen::Index b = 0;
      for (int s : basis->unrank(k)) b |= Eigen::Index{1} << s;
      idx.push_back(b);
    }
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = 0; b < idx.size(); ++b) {
        ASSERT_LT(std::abs(block(a, b) - full(idx[a], idx[b])), 1e-13) << "n=" << m;
      }
    }
  }
  // No element of the full matrix connects different magnetizations.
  for (Eigen::Index a = 0; a < full.rows(); ++a) {
    for (Eigen::Index b = 0; b < full.cols(); ++b) {
      if (std::popcount(static_cast<unsigned>(a)) != std::popcount(static_cast<unsigned>(b))) {
        ASSERT_EQ(full(a, b), cplx(0.0));
      }
    }
  }
}

TEST(Hamiltonian, InteractionFlipsSignUnderPiShift) {
  const RingSpec ring{9, 3.0, 1.0, 1.0};
  const auto op = std::make_shared<SectorOperator>(ring, random_disorder(9, 2), make_sector_basis(9, 2));
  const Eigen::MatrixXcd a = Eigen::MatrixXcd(op->interaction(0.6));
  const Eigen::MatrixXcd b = Eigen::MatrixXcd(op->interaction(0.6 + kPi));
  EXPECT_LT((a + b).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Hamiltonian, CommutatorDistinguishesFamilies) {
  const RingSpec ring{8, 1.0, 1.0, 1.0};
  DisorderSpec coupling_only;
  coupling_only.eta = GaussianDisorder{0.3};
  const auto d = sample_disorder(coupling_only, 8, 3);
  const auto basis = make_sector_basis(8, 2);
  const auto op = std::make_shared<const SectorOperator>(ring, d, basis);
  EXPECT_LT(commutator_norm(SectorHamiltonian(op, 0.3), SectorHamiltonian(op, 0.3 + kPi)), 1e-12);
  EXPECT_GT(commutator_norm(SectorHamiltonian(op, 0.3), SectorHamiltonian(op, 0.3 + kPi / 2)), 1e-3);
  // [D + V, D - V] = 2[V, D]: a non-uniform field breaks the commuting pair.
  const auto field = std::make_shared<const SectorOperator>(ring, random_disorder(8, 3), basis);
  EXPECT_GT(commutator_norm(SectorHamiltonian(field, 0.3), SectorHamiltonian(field, 0.3 + kPi)), 1e-3);
  const auto other = std::make_shared<const SectorOperator>(ring, d, make_sector_basis(8, 3));
  EXPECT_THROW(commutator_norm(SectorHamiltonian(op, 0.0), SectorHamiltonian(other, 0.0)), DomainError);
}

TEST(Hamiltonian, HopScaleMultipliesHopping) {
  const RingSpec one{6, 0.0, 1.0, 1.0}, four{6, 0.0, 1.0, 4.0};
  const auto basis = make_sector_basis(6, 1);
  const auto e1 = spectrum(build_hamiltonian(one, no_disorder(6), 0.2, basis));
  const auto e4 = spectrum(build_hamiltonian(four, no_disorder(6), 0.2, basis));
  for (int k = 0; k < 6; ++k) EXPECT_NEAR(e4[k], 4.0 * e1[k], 1e-12);
}

TEST(Hamiltonian, ShiftedApplyMatchesAssembledMatrix) {
  const RingSpec ring{10, 5.0, 1.0, 1.0};
  const SectorOperator op(ring, random_disorder(10, 8), make_sector_basis(10, 3));
  const Eigen::VectorXcd x = Eigen::VectorXcd::Random(static_cast<Eigen::Index>(op.dimension()));
  Eigen::VectorXcd y(x.size());
  op.apply_shifted(0.9, x, y);
  const Eigen::VectorXcd ref = op.assemble(0.9) * x - op.diagonal_shift() * x;
  EXPECT_LT((y - ref).norm(), 1e-12);
  EXPECT_GE(op.shifted_norm_bound(), op.max_shifted_element());
}

TEST(Hamiltonian, RejectsMismatchedDisorder) {
  const RingSpec ring{6, 1.0, 1.0, 1.0};
  EXPECT_THROW(build_hamiltonian(ring, no_disorder(7), 0.0, make_sector_basis(6, 1)), DomainError);
  EXPECT_THROW(build_hamiltonian(ring, no_disorder(6), 0.0, make_sector_basis(7, 1)), DomainError);
}
