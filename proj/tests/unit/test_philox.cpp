#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "spinring/philox.hpp"

using spinring::Philox4x32;

// Known-answer vectors from the Random123 distribution (kat_vectors).
TEST(Philox, KnownAnswerZero) {
  const Philox4x32 g(Philox4x32::Key{0u, 0u});
  const auto r = g({0u, 0u, 0u, 0u});
  EXPECT_EQ(r, (Philox4x32::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerAllOnes) {
  const Philox4x32 g(Philox4x32::Key{0xffffffffu, 0xffffffffu});
  const auto r = g({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu});
  EXPECT_EQ(r, (Philox4x32::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPiDigits) {
  const Philox4x32 g(Philox4x32::Key{0xa4093822u, 0x299f31d0u});
  const auto r = g({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u});
  EXPECT_EQ(r, (Philox4x32::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(Philox, SeedSplitsIntoKeyWords) {
  const std::uint64_t seed = 0x299f31d0a4093822ull;
  const Philox4x32::Counter c{1u, 2u, 3u, 4u};
  EXPECT_EQ(Philox4x32(seed)(c), Philox4x32(Philox4x32::Key{0xa4093822u, 0x299f31d0u})(c));
}

TEST(Philox, DistinctCountersGiveDistinctBlocks) {
  const Philox4x32 g(42ull);
  std::set<Philox4x32::Counter> seen;
  for (std::uint32_t i = 0; i < 1000; ++i) seen.insert(g({i, 0u, 0u, 0u}));
  EXPECT_EQ(seen.size(), 1000u);
}

TEST(Philox, UnitIntervalEndpoints) {
  EXPECT_EQ(spinring::to_unit_interval(0u, 0u), 0.0);
  const double top = spinring::to_unit_interval(0xffffffffu, 0xffffffffu);
  EXPECT_LT(top, 1.0);
  EXPECT_EQ(top, 1.0 - std::ldexp(1.0, -53));
}
