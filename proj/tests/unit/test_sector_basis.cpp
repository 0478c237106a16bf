#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <numbers>

#include "spinring/errors.hpp"
#include "spinring/sector_basis.hpp"

using namespace spinring;

namespace {

// Colexicographic order of n-subsets is the numeric order of their bitmasks.
std::vector<std::vector<int>> colex_by_bitmask(int n_sites, int n) {
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = 0; mask < (1u << n_sites); ++mask) {
    if (std::popcount(mask) != n) continue;
    std::vector<int> sites;
    for (int i = 0; i < n_sites; ++i) {
      if (mask >> i & 1u) sites.push_back(i);
    }
    out.push_back(sites);
  }
  return out;
}

}  // namespace

TEST(SectorBasis, RankUnrankExhaustiveSmallRings) {
  for (int n_sites = 3; n_sites <= 20; ++n_sites) {
    for (int n = 0; n <= 3; ++n) {
      const SectorBasis basis(n_sites, n);
      const auto expected = colex_by_bitmask(n_sites, n);
      ASSERT_EQ(basis.dimension(), expected.size()) << "N=" << n_sites << " n=" << n;
      for (std::size_t k = 0; k < expected.size(); ++k) {
        const auto sites = basis.unrank(k);
        ASSERT_EQ(std::vector<int>(sites.begin(), sites.end()), expected[k]);
        ASSERT_EQ(basis.rank(expected[k]), k);
      }
    }
  }
}

TEST(SectorBasis, DocumentedOrderForFourSitesTwoMagnons) {
  const SectorBasis basis(4, 2);
  const std::vector<std::vector<int>> order = {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}};
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto s = basis.unrank(k);
    EXPECT_EQ(std::vector<int>(s.begin(), s.end()), order[k]);
  }
}

TEST(SectorBasis, OccupancyAndMagnetization) {
  const SectorBasis basis(7, 3);
  EXPECT_EQ(basis.magnetization(), -1);
  for (std::size_t k = 0; k < basis.dimension(); ++k) {
    int count = 0;
    for (int s = 0; s < 7; ++s) count += basis.occupied(k, s);
    EXPECT_EQ(count, 3);
  }
}

TEST(SectorBasis, TranslationIsACyclicPermutation) {
  const SectorBasis basis(9, 3);
  for (std::size_t k = 0; k < basis.dimension(); ++k) {
    EXPECT_EQ(basis.translate(basis.translate(k, 4), -4), k);
    EXPECT_EQ(basis.translate(k, 9), k);
    const auto a = basis.unrank(k);
    const auto b = basis.unrank(basis.translate(k, 1));
    for (int s : a) EXPECT_TRUE(std::find(b.begin(), b.end(), (s + 1) % 9) != b.end());
  }
}

TEST(SectorBasis, RejectsBadArguments) {
  EXPECT_THROW(SectorBasis(2, 1), DomainError);
  EXPECT_THROW(SectorBasis(5, 6), DomainError);
  EXPECT_THROW(SectorBasis(5, -1), DomainError);
  const SectorBasis basis(5, 2);
  const std::vector<int> unsorted = {3, 1};
  EXPECT_THROW(basis.rank(unsorted), DomainError);
}

TEST(RealizeState, NormalizesAndGroupsBySector) {
  const double r = 1.0 / std::sqrt(2.0);
  const StateSpec spec{{{cplx(r), {1}}, {cplx(r), {-1}}}};
  const auto realized = realize_state(spec, 11);
  EXPECT_FALSE(realized.renormalized);
  const auto& comp = realized.state.sector(1);
  const int s1 = 1, s10 = 10;
  EXPECT_NEAR(std::abs(comp.state.amplitudes()[comp.state.basis().rank(std::span<const int>(&s1, 1))]), r, 1e-15);
  EXPECT_NEAR(std::abs(comp.state.amplitudes()[comp.state.basis().rank(std::span<const int>(&s10, 1))]), r, 1e-15);
  EXPECT_NEAR(realized.state.norm(), 1.0, 1e-15);
}

TEST(RealizeState, CrossSectorWeights) {
  const StateSpec spec{{{cplx(-std::sqrt(2.0) / 3.0), {20}},
                        {cplx(1.0 / 3.0), {72}},
                        {cplx(std::sqrt(2.0 / 3.0)), {0, 5}}}};
  const auto realized = realize_state(spec, 90);
  EXPECT_NEAR(std::norm(realized.state.sector(1).weight), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(std::norm(realized.state.sector(2).weight), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(magnetization(realized.state), (std::map<int, int>{{1, -88}, {2, -86}}));
  EXPECT_NEAR(std::abs(realized.state.inner(realized.state)), 1.0, 1e-15);
}

TEST(RealizeState, FlagsRenormalization) {
  const StateSpec spec{{{cplx(1.0), {0}}, {cplx(1.0), {2}}}};
  const auto realized = realize_state(spec, 5);
  EXPECT_TRUE(realized.renormalized);
  EXPECT_NEAR(realized.state.norm(), 1.0, 1e-15);
}

TEST(RealizeState, RejectsInvalidTerms) {
  EXPECT_THROW(realize_state(StateSpec{}, 5), DomainError);
  EXPECT_THROW(realize_state(StateSpec{{{cplx(1.0), {5}}}}, 5), DomainError);
  EXPECT_THROW(realize_state(StateSpec{{{cplx(1.0), {1, 1}}}}, 5), DomainError);
  EXPECT_THROW(realize_state(StateSpec{{{cplx(0.0), {1}}}}, 5), DomainError);
}

TEST(MultiSectorState, TranslateMovesEveryMagnon) {
  const auto s = realize_state(StateSpec{{{cplx(1.0), {0, 2}}}}, 6).state;
  const auto moved = translate(s, 3);
  const auto& basis = moved.sector(2).state.basis();
  const std::vector<int> target = {3, 5};
  EXPECT_NEAR(std::abs(moved.sector(2).state.amplitudes()[basis.rank(target)]), 1.0, 1e-15);
}
