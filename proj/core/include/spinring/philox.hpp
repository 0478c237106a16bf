#pragma once

#include <array>
#include <cstdint>

namespace spinring {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A block is a
/// pure function of (counter, key), so streams are reproducible on any
/// platform and can be generated in any order.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit Philox4x32(Key key) : key_(key) {}
  explicit Philox4x32(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  Counter operator()(Counter counter) const;

 private:
  Key key_;
};

/// Maps two 32-bit words to a double in [0, 1) with 53 random bits.
double to_unit_interval(std::uint32_t hi, std::uint32_t lo);

}  // namespace spinring
