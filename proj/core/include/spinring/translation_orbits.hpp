#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "spinring/sector_basis.hpp"

namespace spinring {

/// Partition of a sector basis into orbits of the ring translation T.
///
/// Orbit r has a representative configuration and period L_r (a divisor of
/// N); member j of the orbit is T^j applied to the representative. Momentum
/// k = 2 pi q / N is compatible with orbit r iff q L_r is a multiple of N.
class TranslationOrbits {
 public:
  explicit TranslationOrbits(SectorBasisPtr basis);

  const SectorBasis& basis() const { return *basis_; }
  std::size_t orbit_count() const { return orbit_start_.size() - 1; }
  std::size_t period(std::size_t orbit) const { return orbit_start_[orbit + 1] - orbit_start_[orbit]; }
  std::span<const std::size_t> members(std::size_t orbit) const {
    return {members_.data() + orbit_start_[orbit], period(orbit)};
  }
  std::size_t orbit_of(std::size_t index) const { return orbit_of_[index]; }
  std::size_t shift_of(std::size_t index) const { return shift_of_[index]; }

  bool compatible(int q, std::size_t orbit) const {
    return (static_cast<std::size_t>(q) * period(orbit)) % static_cast<std::size_t>(basis_->n_sites()) == 0;
  }

 private:
  SectorBasisPtr basis_;
  std::vector<std::size_t> orbit_start_;
  std::vector<std::size_t> members_;
  std::vector<std::size_t> orbit_of_;
  std::vector<std::size_t> shift_of_;
};

}  // namespace spinring
