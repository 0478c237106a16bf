#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "spinring/disorder.hpp"
#include "spinring/phase_schedule.hpp"
#include "spinring/sector_basis.hpp"

namespace spinring {

// JSON forms used by the CLI config and metadata sidecars.
//
//   ring      {"n_sites": 201, "b_field": 100, "coupling": 1, "hop_scale": 1}
//   schedule  {"type": "step"|"constant"|"fourier", "theta0": x, "period": T,
//              "harmonics": m, "harmonic_counting": "odd_terms"|"index_bound"}
//   disorder  {"eta": D, "delta": D, "seed": s, "gaussian_width": "stddev"|"hwhm"}
//             D = {"type": "none"} | {"type": "gaussian", "sigma": x}
//                 | {"type": "uniform", "halfwidth": x}
//   state     [{"coeff": [re, im], "sites": [...]}, ...]
//
// Parse errors are DomainError messages that name the offending key path.

void to_json(nlohmann::json& j, const RingSpec& ring);
RingSpec ring_from_json(const nlohmann::json& j, const std::string& path = "ring");

void to_json(nlohmann::json& j, const DisorderSpec& spec);
DisorderSpec disorder_from_json(const nlohmann::json& j, const std::string& path = "disorder");

nlohmann::json distribution_to_json(const Distribution& d);
Distribution distribution_from_json(const nlohmann::json& j, const std::string& path);

nlohmann::json schedule_to_json(const PhaseSchedule& s);
PhaseSchedule schedule_from_json(const nlohmann::json& j, const std::string& path = "schedule");

void to_json(nlohmann::json& j, const StateSpec& spec);
StateSpec state_spec_from_json(const nlohmann::json& j, const std::string& path = "initial");

namespace detail {

/// Reads a required member, converting nlohmann type errors into DomainError.
template <class T>
T required(const nlohmann::json& j, const std::string& key, const std::string& path);

template <class T>
T optional(const nlohmann::json& j, const std::string& key, const std::string& path, T fallback);

}  // namespace detail
}  // namespace spinring

namespace nlohmann {

template <>
struct adl_serializer<spinring::PhaseSchedule> {
  static void to_json(json& j, const spinring::PhaseSchedule& s) { j = spinring::schedule_to_json(s); }
  static spinring::PhaseSchedule from_json(const json& j) { return spinring::schedule_from_json(j); }
};

template <>
struct adl_serializer<spinring::Distribution> {
  static void to_json(json& j, const spinring::Distribution& d) { j = spinring::distribution_to_json(d); }
  static spinring::Distribution from_json(const json& j) { return spinring::distribution_from_json(j, "distribution"); }
};

}  // namespace nlohmann
