#include "spinring/translation_orbits.hpp"

#include <limits>

namespace spinring {

TranslationOrbits::TranslationOrbits(SectorBasisPtr basis) : basis_(std::move(basis)) {
  const std::size_t dim = basis_->dimension();
  constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
  orbit_of_.assign(dim, unset);
  shift_of_.assign(dim, 0);
  members_.reserve(dim);
  orbit_start_.push_back(0);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    if (orbit_of_[idx] != unset) continue;
    const std::size_t orbit = orbit_start_.size() - 1;
    std::size_t current = idx;
    std::size_t j = 0;
    do {
      orbit_of_[current] = orbit;
      shift_of_[current] = j++;
      members_.push_back(current);
      current = basis_->translate(current, 1);
    } while (current != idx);
    orbit_start_.push_back(members_.size());
  }
}

}  // namespace spinring
