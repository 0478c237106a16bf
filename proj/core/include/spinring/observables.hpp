#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "spinring/propagator.hpp"
#include "spinring/sector_basis.hpp"

namespace spinring {

enum class ProbeFamily {
  SiteBasis,          // |Psi_d>: one magnon at site d
  TranslatedInitial,  // T_d |chi>: the initial state moved d sites around the ring
};

std::string to_string(ProbeFamily probe);
ProbeFamily probe_from_string(const std::string& name);

/// F_d(t) on a (time x distance) grid.
struct OverlapMap {
  std::vector<double> times;
  /// -floor(N/2) .. ceil(N/2) - 1; d is reduced mod N to find the site.
  std::vector<int> sites;
  /// values(i, j) = F_{sites[j]}(times[i]).
  Eigen::MatrixXd values;
  ProbeFamily probe = ProbeFamily::SiteBasis;
};

struct FidelitySeries {
  std::vector<double> times;
  std::vector<double> values;
  std::string probe;
};

struct RevivalEntry {
  int m = 0;
  /// Sample time actually used (the one nearest to m T).
  double t = 0.0;
  double fidelity = 0.0;
};

struct RevivalReport {
  double period = 0.0;
  std::vector<RevivalEntry> entries;
  double min = 0.0;
  double max = 0.0;
  /// Least-squares slope of fidelity against m; 0 for fewer than two entries.
  double slope = 0.0;
};

/// Distances d in [-floor(N/2), ceil(N/2)).
std::vector<int> centered_sites(int n_sites);

/// SiteBasis requires the trajectory to carry a one-magnon component;
/// other sectors are orthogonal to every probe. TranslatedInitial accepts
/// any state.
OverlapMap overlap_map(const Trajectory& traj, ProbeFamily probe);

/// |<reference|psi(t)>|^2 at every snapshot, sector weights included.
FidelitySeries return_fidelity(const Trajectory& traj, const MultiSectorState& reference,
                               const std::string& probe = "initial");

/// Revival-time fidelities for m = 1, 2, ... while m T lies within the
/// series. Each m T must have a sample within period * 1e-4.
RevivalReport revival_report(const FidelitySeries& series, double period);

/// Mean of series.values.
double time_average(const FidelitySeries& series);

/// Mean of the revival-time fidelities.
double revival_average(const RevivalReport& report);

// CSV, 17 significant digits.
void write_overlap_csv(std::ostream& os, const OverlapMap& map);          // t,d,value
void write_fidelity_csv(std::ostream& os, const FidelitySeries& series);  // t,value
void write_revival_csv(std::ostream& os, const RevivalReport& report);    // m,t,fidelity

}  // namespace spinring
