#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace spinring {

struct NoDisorder {
  bool operator==(const NoDisorder&) const = default;
};

/// Zero-mean normal distribution. `sigma` is read according to the owning
/// DisorderSpec's width convention.
struct GaussianDisorder {
  double sigma = 0.0;
  bool operator==(const GaussianDisorder&) const = default;
};

/// Uniform on [-halfwidth, halfwidth].
struct UniformDisorder {
  double halfwidth = 0.0;
  bool operator==(const UniformDisorder&) const = default;
};

using Distribution = std::variant<NoDisorder, GaussianDisorder, UniformDisorder>;

enum class GaussianWidth {
  StdDev,        // sigma is the standard deviation
  HalfWidthHalfMax,  // sigma is the HWHM; std = sigma / sqrt(2 ln 2)
};

struct DisorderSpec {
  Distribution eta;    // coupling imperfections eta_i, units of the coupling
  Distribution delta;  // local-field imperfections delta_i
  std::uint64_t seed = 0;
  GaussianWidth width = GaussianWidth::StdDev;

  bool operator==(const DisorderSpec&) const = default;
};

/// Throws DomainError on negative or non-finite widths.
void validate(const DisorderSpec& spec);

struct DisorderRealization {
  std::vector<double> eta;
  std::vector<double> delta;
  DisorderSpec spec;
  std::uint64_t seed_used = 0;

  int n_sites() const { return static_cast<int>(eta.size()); }
  /// All eta equal and all delta equal (the ring keeps translation symmetry).
  bool translation_invariant() const;
};

/// Clean realization of length n_sites.
DisorderRealization no_disorder(int n_sites);

/// Deterministic in (spec, n_sites, seed). Site i of the eta stream uses the
/// Philox block with counter (i, 0, 0, 0); delta uses (i, 1, 0, 0). Gaussian
/// values come from the cosine branch of Box-Muller on that block.
DisorderRealization sample_disorder(const DisorderSpec& spec, int n_sites, std::uint64_t seed);

/// Same as sample_disorder(spec, n_sites, spec.seed).
DisorderRealization sample_disorder(const DisorderSpec& spec, int n_sites);

/// CSV with header `site,eta,delta`, 17 significant digits.
void write_disorder_csv(std::ostream& os, const DisorderRealization& r);
DisorderRealization read_disorder_csv(std::istream& is);

}  // namespace spinring
