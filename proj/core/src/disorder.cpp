#include "spinring/disorder.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "spinring/errors.hpp"
#include "spinring/philox.hpp"

namespace spinring {
namespace {

void check_width(const Distribution& d, const char* name) {
  const double w = std::visit(
      [](const auto& dist) -> double {
        using T = std::decay_t<decltype(dist)>;
        if constexpr (std::is_same_v<T, GaussianDisorder>) return dist.sigma;
        else if constexpr (std::is_same_v<T, UniformDisorder>) return dist.halfwidth;
        else return 0.0;
      },
      d);
  if (!(w >= 0.0) || !std::isfinite(w)) {
    std::ostringstream os;
    os << "disorder." << name << ": width must be finite and >= 0 (got " << w << ")";
    throw DomainError(os.str());
  }
}

std::vector<double> sample_stream(const Distribution& dist, GaussianWidth width, int n_sites,
                                  const Philox4x32& gen, std::uint32_t stream) {
  std::vector<double> out(static_cast<std::size_t>(n_sites), 0.0);
  if (std::holds_alternative<NoDisorder>(dist)) return out;
  for (int i = 0; i < n_sites; ++i) {
    const auto block = gen({static_cast<std::uint32_t>(i), stream, 0u, 0u});
    const double u0 = to_unit_interval(block[0], block[1]);
    const double u1 = to_unit_interval(block[2], block[3]);
    if (const auto* g = std::get_if<GaussianDisorder>(&dist)) {
      double sd = g->sigma;
      if (width == GaussianWidth::HalfWidthHalfMax) sd /= std::sqrt(2.0 * std::numbers::ln2);
      // 1 - u0 lies in (0, 1], keeping the logarithm finite.
      const double radius = std::sqrt(-2.0 * std::log(1.0 - u0));
      out[i] = sd * radius * std::cos(2.0 * std::numbers::pi * u1);
    } else {
      const auto& u = std::get<UniformDisorder>(dist);
      out[i] = u.halfwidth * (2.0 * u0 - 1.0);
    }
  }
  return out;
}

}  // namespace

void validate(const DisorderSpec& spec) {
  check_width(spec.eta, "eta");
  check_width(spec.delta, "delta");
}

bool DisorderRealization::translation_invariant() const {
  for (std::size_t i = 1; i < eta.size(); ++i) {
    if (eta[i] != eta[0] || delta[i] != delta[0]) return false;
  }
  return true;
}

DisorderRealization no_disorder(int n_sites) {
  DisorderRealization r;
  r.eta.assign(static_cast<std::size_t>(n_sites), 0.0);
  r.delta.assign(static_cast<std::size_t>(n_sites), 0.0);
  return r;
}

DisorderRealization sample_disorder(const DisorderSpec& spec, int n_sites, std::uint64_t seed) {
  validate(spec);
  if (n_sites < 3) throw DomainError("sample_disorder: n_sites must be >= 3");
  const Philox4x32 gen(seed);
  DisorderRealization r;
  r.eta = sample_stream(spec.eta, spec.width, n_sites, gen, 0u);
  r.delta = sample_stream(spec.delta, spec.width, n_sites, gen, 1u);
  r.spec = spec;
  r.seed_used = seed;
  return r;
}

DisorderRealization sample_disorder(const DisorderSpec& spec, int n_sites) {
  return sample_disorder(spec, n_sites, spec.seed);
}

void write_disorder_csv(std::ostream& os, const DisorderRealization& r) {
  os << "site,eta,delta\n" << std::setprecision(17);
  for (std::size_t i = 0; i < r.eta.size(); ++i) os << i << ',' << r.eta[i] << ',' << r.delta[i] << '\n';
}

DisorderRealization read_disorder_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "site,eta,delta") {
    throw DomainError("disorder CSV: expected header 'site,eta,delta'");
  }
  DisorderRealization r;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string a, b, c;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c)) {
      throw DomainError("disorder CSV: malformed line " + std::to_string(lineno));
    }
    try {
      if (std::stoul(a) != r.eta.size()) {
        throw DomainError("disorder CSV: sites must be listed in order 0..N-1 (line " +
                          std::to_string(lineno) + ")");
      }
      r.eta.push_back(std::stod(b));
      r.delta.push_back(std::stod(c));
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const DomainError*>(&e)) throw;
      throw DomainError("disorder CSV: unparsable number on line " + std::to_string(lineno));
    }
    if (!std::isfinite(r.eta.back()) || !std::isfinite(r.delta.back())) {
      throw DomainError("disorder CSV: non-finite entry on line " + std::to_string(lineno));
    }
  }
  if (r.eta.size() < 3) throw DomainError("disorder CSV: need at least 3 sites");
  return r;
}

}  // namespace spinring
