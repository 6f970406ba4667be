#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "nodom/bound.hpp"
#include "nodom/configuration.hpp"
#include "nodom/critpoints.hpp"
#include "nodom/geometry.hpp"
#include "nodom/polyline.hpp"
#include "nodom/quaddiff.hpp"
#include "nodom/wos.hpp"

// JSON shapes. Complex numbers are [re, im]; polylines are arrays of them.
//
//   {"kind": "disk", "center": [x, y], "radius": r}
//   {"kind": "exterior_disk", "center": [x, y], "radius": r}
//   {"kind": "half_plane", "point": [x, y], "normal": [x, y]}
//   {"ray": {"angles": [...]}, "domain_at_zero": D, "domain_at_infinity": D,
//    "domains": [D, ...]}

namespace nodom {

using json = nlohmann::json;

inline json to_json_value(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw DomainError("json: complex numbers are [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json_value(const Polyline& line) {
  json a = json::array();
  for (auto z : line) a.push_back(to_json_value(z));
  return a;
}

inline json to_json_value(const ElementaryDomain& d) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return {{"kind", "disk"}, {"center", to_json_value(s.center)}, {"radius", s.radius}};
        } else if constexpr (std::is_same_v<T, ExteriorDisk>) {
          return {{"kind", "exterior_disk"}, {"center", to_json_value(s.center)}, {"radius", s.radius}};
        } else {
          return {{"kind", "half_plane"}, {"point", to_json_value(s.point)}, {"normal", to_json_value(s.normal)}};
        }
      },
      d);
}

inline ElementaryDomain domain_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw DomainError("json: shape needs a \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  auto number = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
      throw DomainError(std::string("json: shape field \"") + key + "\" must be a number");
    }
    return j.at(key).get<double>();
  };
  auto point = [&](const char* key) {
    if (!j.contains(key)) throw DomainError(std::string("json: missing shape field \"") + key + "\"");
    return complex_from_json(j.at(key));
  };
  if (kind == "disk") return make_disk(point("center"), number("radius"));
  if (kind == "exterior_disk") return make_exterior_disk(point("center"), number("radius"));
  if (kind == "half_plane") return make_half_plane(point("point"), point("normal"));
  throw DomainError("json: unknown shape kind \"" + kind + "\"");
}

inline json to_json_value(const RaySystem& r) {
  json pts = json::array();
  for (auto z : r.points()) pts.push_back(to_json_value(z));
  return {{"n", r.n()},
          {"angles", std::vector<double>(r.angles().begin(), r.angles().end())},
          {"alphas", std::vector<double>(r.alphas().begin(), r.alphas().end())},
          {"points", pts}};
}

inline json to_json_value(const Configuration& c) {
  json ds = json::array();
  for (const auto& d : c.domains) ds.push_back(to_json_value(d));
  return {{"ray", to_json_value(c.ray)},
          {"domain_at_zero", to_json_value(c.at_zero)},
          {"domain_at_infinity", to_json_value(ElementaryDomain(c.at_infinity))},
          {"domains", ds}};
}

inline Configuration configuration_from_json(const json& j) {
  const auto ray = RaySystem::from_angles(j.at("ray").at("angles").get<std::vector<double>>());
  const auto inf = domain_from_json(j.at("domain_at_infinity"));
  const auto* e = std::get_if<ExteriorDisk>(&inf);
  if (e == nullptr) throw ConfigurationError("json: domain_at_infinity must be an exterior_disk");
  Configuration c{ray, domain_from_json(j.at("domain_at_zero")), *e, {}};
  for (const auto& d : j.at("domains")) c.domains.push_back(domain_from_json(d));
  validate(c);
  return c;
}

inline json to_json_value(const McEstimate& m) {
  return {{"value", m.value},         {"std_error", m.std_error},
          {"walks", m.walks},         {"epsilon_shell", m.epsilon_shell},
          {"seed", m.seed},           {"log_mean", m.log_mean},
          {"log_std_error", m.log_std_error}, {"mean_steps", m.mean_steps},
          {"truncated", m.truncated}};
}

inline json to_json_value(const BracketedRoot& r) {
  return {{"lo", r.lo},       {"hi", r.hi},
          {"root", r.root},   {"f_lo", r.f_lo},
          {"f_hi", r.f_hi},   {"iterations", r.iterations},
          {"tolerance", r.tolerance}};
}

inline json to_json_value(const bound::ThresholdReport& t) {
  json cmp = json::array();
  for (const auto& [g, wins] : t.comparisons) cmp.push_back({{"gamma", g}, {"symmetric_wins", wins}});
  return {{"gamma_hat", t.gamma_hat},
          {"grid_size", t.grid_size},
          {"refine_tol", t.refine_tol},
          {"witness_alpha", t.witness_alpha},
          {"witness_excess", t.witness_excess},
          {"upper_end_reached", t.upper_end_reached},
          {"lower_end_failed", t.lower_end_failed},
          {"search_interval", {t.search_lo, t.search_hi}},
          {"comparisons", cmp}};
}

inline json to_json_value(const VerifyReport& v) {
  return {{"gamma", v.gamma},         {"samples", v.samples},
          {"seed", v.seed},           {"violations", v.violations},
          {"symmetric_value", v.bound}, {"max_J", v.max_value},
          {"max_ratio", v.max_ratio}, {"argmax_sample", v.argmax_sample}};
}

inline json to_json_value(const InequalityCheck& c) {
  return {{"name", c.name},
          {"lhs", c.lhs},
          {"rhs", c.rhs},
          {"log_margin", c.log_margin},
          {"mc_std_error", c.mc_std_error},
          {"systematic", c.systematic},
          {"tolerance", c.tolerance},
          {"status", status_name(c.status)}};
}

inline json to_json_value(const SeparationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json_value(c));
  json radii = json::array();
  for (const auto& x : r.radii) {
    json e = to_json_value(x.estimate);
    e["name"] = x.name;
    e["systematic"] = x.systematic;
    radii.push_back(e);
  }
  return {{"checks", checks}, {"radii", radii}, {"violated", r.violated},
          {"inconclusive", r.inconclusive}};
}

namespace qd {

inline json to_json_value(const TrajectoryField& f) {
  json zeros = json::array();
  for (const auto& z : f.zeros) {
    zeros.push_back({{"z", nodom::to_json_value(z.z)}, {"multiplicity", z.multiplicity}});
  }
  json poles = json::array();
  for (int j = 0; j < 4; ++j) {
    poles.push_back({{"pole", pole_name(f.poles[j])}, {"order", f.pole_orders[j]}});
  }
  json traj = json::array();
  for (const auto& t : f.trajectories) traj.push_back(nodom::to_json_value(t));
  json inv = json::array();
  for (const auto& t : f.inverted_trajectories) inv.push_back(nodom::to_json_value(t));
  json bnd = json::object();
  for (int j = 0; j < 4; ++j) {
    bnd[pole_name(static_cast<Pole>(j))] = nodom::to_json_value(f.circular_boundaries[j]);
  }
  return {{"gamma", f.gamma},
          {"step", f.step},
          {"zeros", zeros},
          {"poles", poles},
          {"trajectories", traj},
          {"inverted_trajectories", inv},
          {"circular_boundaries", bnd},
          {"infinity_coordinates", "zeta = 1/w"}};
}

inline json to_json_value(const ExtremalEstimate& e) {
  return {{"value", e.value},
          {"std_error", e.std_error},
          {"log_std_error", e.log_std_error},
          {"r_zero", nodom::to_json_value(e.r_zero)},
          {"r_plus_one", nodom::to_json_value(e.r_plus)},
          {"r_minus_one", nodom::to_json_value(e.r_minus)},
          {"r_infinity", nodom::to_json_value(e.r_infinity)}};
}

}  // namespace qd
}  // namespace nodom
