#include "spinring/observables.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "spinring/errors.hpp"

namespace spinring {

std::string to_string(ProbeFamily probe) {
  return probe == ProbeFamily::SiteBasis ? "site_basis" : "translated_initial";
}

ProbeFamily probe_from_string(const std::string& name) {
  if (name == "site_basis") return ProbeFamily::SiteBasis;
  if (name == "translated_initial") return ProbeFamily::TranslatedInitial;
  throw DomainError("unknown probe family '" + name + "' (expected site_basis, translated_initial)");
}

std::vector<int> centered_sites(int n_sites) {
  std::vector<int> d;
  d.reserve(static_cast<std::size_t>(n_sites));
  for (int k = -(n_sites / 2); k < (n_sites + 1) / 2; ++k) d.push_back(k);
  return d;
}

namespace {

int site_of(int d, int n_sites) { return ((d % n_sites) + n_sites) % n_sites; }

OverlapMap site_basis_map(const Trajectory& traj) {
  OverlapMap map;
  map.probe = ProbeFamily::SiteBasis;
  map.times = traj.times;
  const int n_sites = traj.initial.n_sites();
  map.sites = centered_sites(n_sites);
  map.values.resize(static_cast<Eigen::Index>(traj.states.size()), static_cast<Eigen::Index>(map.sites.size()));
  if (!traj.initial.has_sector(1)) {
    throw DomainError("site-basis overlap map needs a one-magnon component in the state");
  }
  const SectorBasis& basis = traj.initial.sector(1).state.basis();
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const auto& comp = traj.states[i].sector(1);
    const auto& amps = comp.state.amplitudes();
    for (std::size_t j = 0; j < map.sites.size(); ++j) {
      const int site = site_of(map.sites[j], n_sites);
      const std::size_t idx = basis.rank(std::span<const int>(&site, 1));
      map.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          std::norm(comp.weight * amps(static_cast<Eigen::Index>(idx)));
    }
  }
  return map;
}

OverlapMap translated_map(const Trajectory& traj) {
  OverlapMap map;
  map.probe = ProbeFamily::TranslatedInitial;
  map.times = traj.times;
  const int n_sites = traj.initial.n_sites();
  map.sites = centered_sites(n_sites);
  const auto n_times = static_cast<Eigen::Index>(traj.states.size());
  const auto n_d = static_cast<Eigen::Index>(map.sites.size());
  Eigen::MatrixXcd overlaps = Eigen::MatrixXcd::Zero(n_times, n_d);

  for (const auto& [n, chi] : traj.initial.components()) {
    const SectorBasis& basis = chi.state.basis();
    const auto& chi_amps = chi.state.amplitudes();
    const auto dim = static_cast<Eigen::Index>(basis.dimension());
    // Support of chi; the translated probe only touches these images.
    std::vector<Eigen::Index> support;
    for (Eigen::Index k = 0; k < dim; ++k) {
      if (chi_amps(k) != cplx(0.0)) support.push_back(k);
    }
    std::vector<std::size_t> image(support.size());
    for (Eigen::Index j = 0; j < n_d; ++j) {
      for (std::size_t s = 0; s < support.size(); ++s) {
        image[s] = basis.translate(static_cast<std::size_t>(support[s]), map.sites[static_cast<std::size_t>(j)]);
      }
      for (Eigen::Index i = 0; i < n_times; ++i) {
        const auto& comp = traj.states[static_cast<std::size_t>(i)].sector(n);
        const auto& psi = comp.state.amplitudes();
        cplx acc = 0.0;
        for (std::size_t s = 0; s < support.size(); ++s) {
          acc += std::conj(chi_amps(support[s])) * psi(static_cast<Eigen::Index>(image[s]));
        }
        overlaps(i, j) += std::conj(chi.weight) * comp.weight * acc;
      }
    }
  }
  map.values = overlaps.cwiseAbs2();
  return map;
}

}  // namespace

OverlapMap overlap_map(const Trajectory& traj, ProbeFamily probe) {
  if (traj.states.size() != traj.times.size()) throw DomainError("trajectory times and states differ in length");
  return probe == ProbeFamily::SiteBasis ? site_basis_map(traj) : translated_map(traj);
}

FidelitySeries return_fidelity(const Trajectory& traj, const MultiSectorState& reference, const std::string& probe) {
  if (reference.n_sites() != traj.initial.n_sites()) {
    throw DomainError("reference state has N = " + std::to_string(reference.n_sites()) + ", trajectory has N = " +
                      std::to_string(traj.initial.n_sites()));
  }
  FidelitySeries series;
  series.times = traj.times;
  series.probe = probe;
  series.values.reserve(traj.states.size());
  for (const auto& psi : traj.states) series.values.push_back(std::norm(reference.inner(psi)));
  return series;
}

RevivalReport revival_report(const FidelitySeries& series, double period) {
  if (!(period > 0.0) || !std::isfinite(period)) throw DomainError("revival period must be positive");
  if (series.times.empty()) throw DomainError("empty fidelity series");
  RevivalReport report;
  report.period = period;
  const double tol = period * 1e-4;
  const double t_last = series.times.back();
  for (int m = 1; m * period <= t_last + tol; ++m) {
    const double target = m * period;
    const auto it = std::lower_bound(series.times.begin(), series.times.end(), target);
    std::size_t best = static_cast<std::size_t>(it - series.times.begin());
    if (best == series.times.size() ||
        (best > 0 && target - series.times[best - 1] < series.times[best] - target)) {
      best = best == 0 ? 0 : best - 1;
    }
    if (std::abs(series.times[best] - target) > tol) {
      throw DomainError("no sample within T/1e4 of t = " + std::to_string(target) + " (m = " + std::to_string(m) +
                        "); sample more densely or align the grid with the period");
    }
    report.entries.push_back({m, series.times[best], series.values[best]});
  }
  if (report.entries.empty()) throw DomainError("series is shorter than one period");

  report.min = report.max = report.entries.front().fidelity;
  double sm = 0.0, sf = 0.0;
  for (const auto& e : report.entries) {
    report.min = std::min(report.min, e.fidelity);
    report.max = std::max(report.max, e.fidelity);
    sm += e.m;
    sf += e.fidelity;
  }
  const double k = static_cast<double>(report.entries.size());
  if (report.entries.size() > 1) {
    const double mean_m = sm / k, mean_f = sf / k;
    double num = 0.0, den = 0.0;
    for (const auto& e : report.entries) {
      num += (e.m - mean_m) * (e.fidelity - mean_f);
      den += (e.m - mean_m) * (e.m - mean_m);
    }
    report.slope = num / den;
  }
  return report;
}

double time_average(const FidelitySeries& series) {
  if (series.values.empty()) throw DomainError("empty fidelity series");
  double s = 0.0;
  for (double v : series.values) s += v;
  return s / static_cast<double>(series.values.size());
}

double revival_average(const RevivalReport& report) {
  if (report.entries.empty()) throw DomainError("empty revival report");
  double s = 0.0;
  for (const auto& e : report.entries) s += e.fidelity;
  return s / static_cast<double>(report.entries.size());
}

namespace {

struct PrecisionGuard {
  explicit PrecisionGuard(std::ostream& os) : os(os), old(os.precision(17)), flags(os.flags()) {
    os.unsetf(std::ios::floatfield);
  }
  ~PrecisionGuard() {
    os.precision(old);
    os.flags(flags);
  }
  std::ostream& os;
  std::streamsize old;
  std::ios::fmtflags flags;
};

}  // namespace

void write_overlap_csv(std::ostream& os, const OverlapMap& map) {
  PrecisionGuard guard(os);
  os << "t,d,value\n";
  for (std::size_t i = 0; i < map.times.size(); ++i) {
    for (std::size_t j = 0; j < map.sites.size(); ++j) {
      os << map.times[i] << ',' << map.sites[j] << ','
         << map.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) << '\n';
    }
  }
}

void write_fidelity_csv(std::ostream& os, const FidelitySeries& series) {
  PrecisionGuard guard(os);
  os << "t,value\n";
  for (std::size_t i = 0; i < series.times.size(); ++i) os << series.times[i] << ',' << series.values[i] << '\n';
}

void write_revival_csv(std::ostream& os, const RevivalReport& report) {
  PrecisionGuard guard(os);
  os << "m,t,fidelity\n";
  for (const auto& e : report.entries) os << e.m << ',' << e.t << ',' << e.fidelity << '\n';
}

}  // namespace spinring
