#include "spinring/sector_basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "spinring/errors.hpp"

namespace spinring {
namespace {

// Largest sector we are willing to enumerate.
constexpr std::uint64_t kMaxDimension = 50'000'000;

int wrap_site(long long site, int n_sites) {
  const long long r = site % n_sites;
  return static_cast<int>(r < 0 ? r + n_sites : r);
}

}  // namespace

void validate(const RingSpec& ring) {
  if (ring.n_sites < 3) {
    std::ostringstream os;
    os << "ring.n_sites must be >= 3 (got " << ring.n_sites << ")";
    throw DomainError(os.str());
  }
  if (!(ring.coupling >= 0.0) || !std::isfinite(ring.coupling)) {
    throw DomainError("ring.coupling must be finite and >= 0");
  }
  if (!std::isfinite(ring.b_field) || !std::isfinite(ring.hop_scale)) {
    throw DomainError("ring.b_field and ring.hop_scale must be finite");
  }
}

SectorBasis::SectorBasis(int n_sites, int n_magnons) : n_sites_(n_sites), n_magnons_(n_magnons) {
  if (n_sites < 3 || n_magnons < 0 || n_magnons > n_sites) {
    std::ostringstream os;
    os << "sector basis requires 3 <= N and 0 <= n <= N (got N=" << n_sites << ", n=" << n_magnons
       << ")";
    throw DomainError(os.str());
  }
  const int kmax = n_magnons_ + 1;
  binom_.assign(static_cast<std::size_t>(n_sites_ + 1) * kmax, 0);
  for (int m = 0; m <= n_sites_; ++m) {
    binom_[static_cast<std::size_t>(m) * kmax] = 1;
    for (int k = 1; k <= std::min(m, n_magnons_); ++k) {
      const std::uint64_t a = binom_[static_cast<std::size_t>(m - 1) * kmax + k - 1];
      const std::uint64_t b = k <= m - 1 ? binom_[static_cast<std::size_t>(m - 1) * kmax + k] : 0;
      if (a > std::numeric_limits<std::uint64_t>::max() - b) {
        throw DomainError("sector dimension overflows 64 bits");
      }
      binom_[static_cast<std::size_t>(m) * kmax + k] = a + b;
    }
  }
  const std::uint64_t dim = binom(n_sites_, n_magnons_);
  if (dim > kMaxDimension) {
    std::ostringstream os;
    os << "sector dimension C(" << n_sites_ << "," << n_magnons_ << ")=" << dim
       << " exceeds the supported maximum " << kMaxDimension;
    throw DomainError(os.str());
  }
  dimension_ = static_cast<std::size_t>(dim);

  // Colexicographic successor enumeration.
  sites_.resize(dimension_ * n_magnons_);
  occupancy_.assign(dimension_ * n_sites_, 0);
  std::vector<int> current(n_magnons_);
  for (int j = 0; j < n_magnons_; ++j) current[j] = j;
  for (std::size_t idx = 0; idx < dimension_; ++idx) {
    std::copy(current.begin(), current.end(), sites_.begin() + idx * n_magnons_);
    for (int s : current) occupancy_[idx * n_sites_ + s] = 1;
    int i = 0;
    while (i < n_magnons_) {
      const int limit = (i + 1 < n_magnons_) ? current[i + 1] : n_sites_;
      if (current[i] + 1 < limit) break;
      ++i;
    }
    if (i == n_magnons_) break;
    ++current[i];
    for (int j = 0; j < i; ++j) current[j] = j;
  }
}

std::uint64_t SectorBasis::binom(int n, int k) const {
  if (k < 0 || n < 0 || k > n) return 0;
  return binom_[static_cast<std::size_t>(n) * (n_magnons_ + 1) + k];
}

std::size_t SectorBasis::rank(std::span<const int> sites) const {
  if (static_cast<int>(sites.size()) != n_magnons_) {
    throw DomainError("rank: site list length does not match magnon number");
  }
  std::uint64_t r = 0;
  int prev = -1;
  for (int j = 0; j < n_magnons_; ++j) {
    const int d = sites[j];
    if (d <= prev || d >= n_sites_) {
      throw DomainError("rank: sites must be strictly increasing and within 0..N-1");
    }
    r += binom(d, j + 1);
    prev = d;
  }
  return static_cast<std::size_t>(r);
}

std::span<const int> SectorBasis::unrank(std::size_t index) const {
  if (index >= dimension_) throw DomainError("unrank: index out of range");
  return {sites_.data() + index * n_magnons_, static_cast<std::size_t>(n_magnons_)};
}

bool SectorBasis::occupied(std::size_t index, int site) const {
  return occupancy_[index * n_sites_ + site] != 0;
}

std::size_t SectorBasis::translate(std::size_t index, int shift) const {
  if (n_magnons_ == 0 || n_magnons_ == n_sites_) return index;
  std::vector<int> moved(unrank(index).begin(), unrank(index).end());
  for (int& s : moved) s = wrap_site(static_cast<long long>(s) + shift, n_sites_);
  std::sort(moved.begin(), moved.end());
  return rank(moved);
}

SectorBasisPtr make_sector_basis(int n_sites, int n_magnons) {
  return std::make_shared<const SectorBasis>(n_sites, n_magnons);
}

SectorState::SectorState(SectorBasisPtr basis, Eigen::VectorXcd amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
  if (!basis_) throw DomainError("SectorState: null basis");
  if (static_cast<std::size_t>(amplitudes_.size()) != basis_->dimension()) {
    std::ostringstream os;
    os << "SectorState: amplitude length " << amplitudes_.size() << " does not match sector dimension "
       << basis_->dimension();
    throw DomainError(os.str());
  }
}

SectorState SectorState::normalized(SectorBasisPtr basis, Eigen::VectorXcd amplitudes) {
  const double nrm = amplitudes.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) {
    throw DomainError("SectorState: cannot normalize a zero or non-finite vector");
  }
  amplitudes /= nrm;
  return SectorState(std::move(basis), std::move(amplitudes));
}

MultiSectorState::MultiSectorState(std::map<int, Component> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw DomainError("MultiSectorState: no components");
  n_sites_ = components_.begin()->second.state.basis().n_sites();
  for (const auto& [n, c] : components_) {
    if (c.state.basis().n_sites() != n_sites_) {
      throw DomainError("MultiSectorState: components disagree on n_sites");
    }
    if (c.state.n_magnons() != n) {
      throw DomainError("MultiSectorState: component key does not match its basis");
    }
  }
}

MultiSectorState MultiSectorState::single(SectorState state) {
  std::map<int, Component> comps;
  const int n = state.n_magnons();
  comps.emplace(n, Component{cplx{1.0, 0.0}, std::move(state)});
  return MultiSectorState(std::move(comps));
}

const MultiSectorState::Component& MultiSectorState::sector(int n_magnons) const {
  auto it = components_.find(n_magnons);
  if (it == components_.end()) {
    std::ostringstream os;
    os << "state has no component in the n=" << n_magnons << " sector";
    throw DomainError(os.str());
  }
  return it->second;
}

double MultiSectorState::norm() const {
  double s = 0.0;
  for (const auto& [n, c] : components_) s += std::norm(c.weight) * c.state.amplitudes().squaredNorm();
  return std::sqrt(s);
}

cplx MultiSectorState::inner(const MultiSectorState& other) const {
  if (other.n_sites_ != n_sites_) throw DomainError("inner product: states differ in n_sites");
  cplx acc{0.0, 0.0};
  for (const auto& [n, c] : components_) {
    auto it = other.components_.find(n);
    if (it == other.components_.end()) continue;
    acc += std::conj(c.weight) * it->second.weight *
           c.state.amplitudes().dot(it->second.state.amplitudes());
  }
  return acc;
}

MultiSectorState translate(const MultiSectorState& state, int shift) {
  std::map<int, MultiSectorState::Component> comps;
  for (const auto& [n, c] : state.components()) {
    const SectorBasis& basis = c.state.basis();
    Eigen::VectorXcd moved = Eigen::VectorXcd::Zero(c.state.amplitudes().size());
    for (std::size_t i = 0; i < basis.dimension(); ++i) {
      moved[static_cast<Eigen::Index>(basis.translate(i, shift))] = c.state.amplitudes()[i];
    }
    comps.emplace(n, MultiSectorState::Component{c.weight, SectorState(c.state.basis_ptr(), std::move(moved))});
  }
  return MultiSectorState(std::move(comps));
}

RealizedState realize_state(const StateSpec& spec, int n_sites) {
  if (spec.terms.empty()) throw DomainError("initial state: empty term list");
  if (n_sites < 3) throw DomainError("initial state: ring needs at least 3 sites");

  std::map<int, Eigen::VectorXcd> vectors;
  std::map<int, SectorBasisPtr> bases;
  for (std::size_t t = 0; t < spec.terms.size(); ++t) {
    const auto& term = spec.terms[t];
    std::vector<int> sites;
    sites.reserve(term.sites.size());
    for (int s : term.sites) {
      if (s >= n_sites) {
        std::ostringstream os;
        os << "initial state term " << t << ": site " << s << " is outside 0.." << n_sites - 1;
        throw DomainError(os.str());
      }
      sites.push_back(wrap_site(s, n_sites));
    }
    std::sort(sites.begin(), sites.end());
    if (std::adjacent_find(sites.begin(), sites.end()) != sites.end()) {
      std::ostringstream os;
      os << "initial state term " << t << ": duplicate site (after reduction mod " << n_sites << ")";
      throw DomainError(os.str());
    }
    if (!std::isfinite(term.coeff.real()) || !std::isfinite(term.coeff.imag())) {
      throw DomainError("initial state: non-finite coefficient");
    }
    const int n = static_cast<int>(sites.size());
    auto [bit, inserted] = bases.try_emplace(n);
    if (inserted) {
      bit->second = make_sector_basis(n_sites, n);
      vectors[n] = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(bit->second->dimension()));
    }
    vectors[n][static_cast<Eigen::Index>(bit->second->rank(sites))] += term.coeff;
  }

  double total = 0.0;
  for (const auto& [n, v] : vectors) total += v.squaredNorm();
  if (!(total > 0.0)) throw DomainError("initial state: coefficients cancel to the zero vector");
  const double total_norm = std::sqrt(total);

  std::map<int, MultiSectorState::Component> comps;
  for (auto& [n, v] : vectors) {
    const double sector_norm = v.norm();
    if (sector_norm == 0.0) continue;
    comps.emplace(n, MultiSectorState::Component{cplx{sector_norm / total_norm, 0.0},
                                                 SectorState(bases[n], v / sector_norm)});
  }
  RealizedState out{MultiSectorState(std::move(comps)), std::abs(total_norm - 1.0) > 1e-12};
  return out;
}

std::map<int, int> magnetization(const MultiSectorState& state) {
  std::map<int, int> out;
  for (const auto& [n, c] : state.components()) out[n] = c.state.basis().magnetization();
  return out;
}

}  // namespace spinring
