#include "spinring/serialization.hpp"

#include <cstdint>

#include "spinring/errors.hpp"

namespace spinring {
namespace detail {

template <class T>
T required(const nlohmann::json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(path + "." + key + ": missing required field");
  const auto& v = j.at(key);
  if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) throw DomainError(path + "." + key + ": expected a number");
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw DomainError(path + "." + key + ": expected an integer");
    if constexpr (std::is_unsigned_v<T>) {
      if (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0) {
        throw DomainError(path + "." + key + ": expected a non-negative integer");
      }
    }
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) throw DomainError(path + "." + key + ": expected a string");
  }
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(path + "." + key + ": " + e.what());
  }
}

template <class T>
T optional(const nlohmann::json& j, const std::string& key, const std::string& path, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  return required<T>(j, key, path);
}

template double required<double>(const nlohmann::json&, const std::string&, const std::string&);
template int required<int>(const nlohmann::json&, const std::string&, const std::string&);
template std::uint64_t required<std::uint64_t>(const nlohmann::json&, const std::string&, const std::string&);
template std::string required<std::string>(const nlohmann::json&, const std::string&, const std::string&);
template double optional<double>(const nlohmann::json&, const std::string&, const std::string&, double);
template int optional<int>(const nlohmann::json&, const std::string&, const std::string&, int);
template std::uint64_t optional<std::uint64_t>(const nlohmann::json&, const std::string&, const std::string&,
                                               std::uint64_t);
template std::string optional<std::string>(const nlohmann::json&, const std::string&, const std::string&,
                                           std::string);

}  // namespace detail

using detail::optional;
using detail::required;

namespace {

void require_object(const nlohmann::json& j, const std::string& path) {
  if (!j.is_object()) throw DomainError(path + ": expected an object");
}

}  // namespace

void to_json(nlohmann::json& j, const RingSpec& ring) {
  j = {{"n_sites", ring.n_sites}, {"b_field", ring.b_field}, {"coupling", ring.coupling}, {"hop_scale", ring.hop_scale}};
}

RingSpec ring_from_json(const nlohmann::json& j, const std::string& path) {
  require_object(j, path);
  RingSpec ring;
  ring.n_sites = required<int>(j, "n_sites", path);
  ring.b_field = required<double>(j, "b_field", path);
  ring.coupling = optional<double>(j, "coupling", path, 1.0);
  ring.hop_scale = optional<double>(j, "hop_scale", path, 1.0);
  return ring;
}

nlohmann::json distribution_to_json(const Distribution& d) {
  if (const auto* g = std::get_if<GaussianDisorder>(&d)) return {{"type", "gaussian"}, {"sigma", g->sigma}};
  if (const auto* u = std::get_if<UniformDisorder>(&d)) return {{"type", "uniform"}, {"halfwidth", u->halfwidth}};
  return {{"type", "none"}};
}

Distribution distribution_from_json(const nlohmann::json& j, const std::string& path) {
  if (j.is_null()) return NoDisorder{};
  require_object(j, path);
  const auto type = required<std::string>(j, "type", path);
  if (type == "none") return NoDisorder{};
  if (type == "gaussian") return GaussianDisorder{required<double>(j, "sigma", path)};
  if (type == "uniform") return UniformDisorder{required<double>(j, "halfwidth", path)};
  throw DomainError(path + ".type: unknown distribution '" + type + "' (expected none, gaussian, uniform)");
}

void to_json(nlohmann::json& j, const DisorderSpec& spec) {
  j = {{"eta", distribution_to_json(spec.eta)},
       {"delta", distribution_to_json(spec.delta)},
       {"seed", spec.seed},
       {"gaussian_width", spec.width == GaussianWidth::StdDev ? "stddev" : "hwhm"}};
}

DisorderSpec disorder_from_json(const nlohmann::json& j, const std::string& path) {
  DisorderSpec spec;
  if (j.is_null()) return spec;
  require_object(j, path);
  spec.eta = distribution_from_json(j.value("eta", nlohmann::json()), path + ".eta");
  spec.delta = distribution_from_json(j.value("delta", nlohmann::json()), path + ".delta");
  spec.seed = optional<std::uint64_t>(j, "seed", path, 0);
  const auto width = optional<std::string>(j, "gaussian_width", path, "stddev");
  if (width == "stddev") spec.width = GaussianWidth::StdDev;
  else if (width == "hwhm") spec.width = GaussianWidth::HalfWidthHalfMax;
  else throw DomainError(path + ".gaussian_width: expected 'stddev' or 'hwhm'");
  return spec;
}

nlohmann::json schedule_to_json(const PhaseSchedule& s) {
  if (const auto* c = std::get_if<ConstantPhase>(&s)) return {{"type", "constant"}, {"theta0", c->theta0}};
  if (const auto* p = std::get_if<StepPeriodicPhase>(&s)) {
    return {{"type", "step"}, {"theta0", p->theta0}, {"period", p->period}};
  }
  const auto& f = std::get<FourierTruncatedPhase>(s);
  nlohmann::json j = {{"type", "fourier"}, {"theta0", f.theta0}, {"period", f.period}, {"harmonics", f.harmonics}};
  if (f.counting == HarmonicCounting::IndexBound) j["harmonic_counting"] = "index_bound";
  return j;
}

PhaseSchedule schedule_from_json(const nlohmann::json& j, const std::string& path) {
  require_object(j, path);
  const auto type = required<std::string>(j, "type", path);
  const double theta0 = optional<double>(j, "theta0", path, 0.0);
  if (type == "constant") return ConstantPhase{theta0};
  if (type == "step") return StepPeriodicPhase{theta0, required<double>(j, "period", path)};
  if (type == "fourier") {
    FourierTruncatedPhase f{theta0, required<double>(j, "period", path), required<int>(j, "harmonics", path)};
    const auto counting = optional<std::string>(j, "harmonic_counting", path, "odd_terms");
    if (counting == "odd_terms") f.counting = HarmonicCounting::OddTerms;
    else if (counting == "index_bound") f.counting = HarmonicCounting::IndexBound;
    else throw DomainError(path + ".harmonic_counting: expected 'odd_terms' or 'index_bound'");
    return f;
  }
  throw DomainError(path + ".type: unknown schedule '" + type + "' (expected constant, step, fourier)");
}

void to_json(nlohmann::json& j, const StateSpec& spec) {
  j = nlohmann::json::array();
  for (const auto& t : spec.terms) {
    j.push_back({{"coeff", {t.coeff.real(), t.coeff.imag()}}, {"sites", t.sites}});
  }
}

StateSpec state_spec_from_json(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array()) throw DomainError(path + ": expected an array of {\"coeff\", \"sites\"} terms");
  StateSpec spec;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const auto& term = j[i];
    require_object(term, p);
    if (!term.contains("coeff")) throw DomainError(p + ".coeff: missing required field");
    const auto& c = term.at("coeff");
    cplx coeff;
    if (c.is_number()) {
      coeff = {c.get<double>(), 0.0};
    } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
      coeff = {c[0].get<double>(), c[1].get<double>()};
    } else {
      throw DomainError(p + ".coeff: expected [re, im] or a real number");
    }
    if (!term.contains("sites") || !term.at("sites").is_array()) throw DomainError(p + ".sites: expected an array");
    std::vector<int> sites;
    for (const auto& s : term.at("sites")) {
      if (!s.is_number_integer()) throw DomainError(p + ".sites: expected integers");
      sites.push_back(s.get<int>());
    }
    spec.terms.push_back({coeff, std::move(sites)});
  }
  return spec;
}

}  // namespace spinring
