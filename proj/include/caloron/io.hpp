#pragma once

#include "caloron/assembler.hpp"
#include "caloron/errors.hpp"
#include "caloron/fieldcalc.hpp"
#include "caloron/index_engine.hpp"
#include "caloron/rootsys.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace caloron {

using json = nlohmann::json;

inline std::string rational_string(const Rational& q) {
  std::string s = std::to_string(q.numerator());
  if (q.denominator() != std::int64_t{1}) s += "/" + std::to_string(q.denominator());
  return s;
}

inline Rational parse_rational(const std::string& text) {
  auto bad = [&] { fail(ErrorKind::invalid_input, "cannot parse '" + text + "' as a rational number"); };
  try {
    std::size_t slash = text.find('/'), used = 0;
    long long num = std::stoll(text.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? text.size() : slash)) bad();
    if (slash == std::string::npos) return Rational(num);
    std::string den_text = text.substr(slash + 1);
    long long den = std::stoll(den_text, &used);
    if (used != den_text.size() || den == 0) bad();
    return Rational(num, den);
  } catch (const std::logic_error&) {
    bad();
  }
  return {};
}

inline RVec parse_rational_list(const std::string& csv) {
  RVec out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

inline std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      fail(ErrorKind::invalid_input, "cannot parse '" + item + "' as a number");
    }
  }
  return out;
}

inline json to_json(const RVec& v) {
  json a = json::array();
  for (auto& q : v) a.push_back(rational_string(q));
  return a;
}

inline json to_json(const RootDatum& d) {
  json j;
  j["type"] = d.type_string();
  j["rank"] = d.rank;
  j["dimension"] = d.dimension();
  j["ambient_dim"] = d.ambient_dim;
  auto list = [](const RMat& m) {
    json a = json::array();
    for (auto& v : m) a.push_back(to_json(v));
    return a;
  };
  j["simple_roots"] = list(d.simple_roots);
  j["simple_coroots"] = list(d.simple_coroots);
  j["lowest_root"] = to_json(d.lowest_root);
  j["lowest_coroot"] = to_json(d.lowest_coroot);
  j["marks"] = d.marks;
  j["fundamental_coweights"] = list(d.fundamental_coweights);
  j["positive_roots"] = list(d.positive_roots);
  j["rho"] = to_json(d.rho);
  j["killing_scale"] = rational_string(d.killing_scale);
  j["extended_cartan"] = d.extended_cartan;
  j["barycenter"] = to_json(alcove_barycenter(d));
  return j;
}

inline json to_json(const IndexReport& r) {
  return json{{"type", r.type},
              {"mu", r.mu},
              {"omega", to_json(r.omega)},
              {"chern_term", rational_string(r.chern_term)},
              {"boundary_term", rational_string(r.boundary_term)},
              {"boundary_closed_form", rational_string(r.boundary_closed)},
              {"total_index", r.total_index}};
}

inline json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

inline json to_json(const FieldReport& r) {
  return json{{"ym_energy", r.ym_energy},
              {"ym_energy_raw", r.ym_energy_raw},
              {"topological_charge", r.topological},
              {"energy_formula", r.energy_formula},
              {"sd_error_l2", std::sqrt(r.sd_error_l2_sq)},
              {"sd_error_l2_sq", r.sd_error_l2_sq},
              {"sd_error_annulus_sq", r.sd_error_annulus_sq},
              {"recovered_charge", r.recovered_charge},
              {"charge_residual", r.charge_residual},
              {"holonomy_point", to_json(r.holonomy_point)},
              {"holonomy_eigenphases", r.holonomy_eigenphases},
              {"holonomy_expected", r.holonomy_expected},
              {"grid", {{"preset", r.grid}, {"nodes", r.nodes}, {"r_max", r.r_max}, {"tail", r.tail}}}};
}

// ---------------------------------------------------------------- specs

namespace detail {

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::invalid_input, path + ": missing field '" + key + "'");
  return j.at(key);
}

inline double number(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return to_double(parse_rational(j.get<std::string>()));
    } catch (const Error&) {
    }
  }
  fail(ErrorKind::invalid_input, path + ": expected a number or a rational string");
}

inline std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) fail(ErrorKind::invalid_input, path + ": expected an array");
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(number(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

}  // namespace detail

/// Schema:
///   { "epsilon": 0.05, "group": "A2" | {"series": "A", "rank": 2},
///     "omega": [..] (ambient coordinates, numbers or "p/q"),
///     "constituents": [{"mu": 1, "position": [x,y,z], "phase": 0}],
///     "gluing": {"c": 1.0 | "auto"} }
inline CaloronSpec spec_from_json(const json& j) {
  using detail::field;
  CaloronSpec s;
  if (!j.is_object()) fail(ErrorKind::invalid_input, "spec: expected an object");
  s.epsilon = detail::number(field(j, "epsilon", "spec"), "spec.epsilon");
  const json& g = field(j, "group", "spec");
  if (g.is_string()) {
    std::tie(s.series, s.rank) = parse_type(g.get<std::string>());
  } else if (g.is_object()) {
    const json& se = field(g, "series", "spec.group");
    if (!se.is_string() || se.get<std::string>().size() != 1)
      fail(ErrorKind::invalid_input, "spec.group.series: expected a single letter");
    s.series = series_from_letter(se.get<std::string>()[0]);
    const json& rk = field(g, "rank", "spec.group");
    if (!rk.is_number_integer()) fail(ErrorKind::invalid_input, "spec.group.rank: expected an integer");
    s.rank = rk.get<int>();
  } else {
    fail(ErrorKind::invalid_input, "spec.group: expected a type string or an object");
  }
  s.omega = detail::numbers(field(j, "omega", "spec"), "spec.omega");
  RootDatum d = build_root_datum(s.series, s.rank);
  if (static_cast<int>(s.omega.size()) != d.ambient_dim)
    fail(ErrorKind::invalid_input, "spec.omega: expected " + std::to_string(d.ambient_dim) + " ambient coordinates");
  if (j.contains("constituents")) {
    const json& cs = j.at("constituents");
    if (!cs.is_array()) fail(ErrorKind::invalid_input, "spec.constituents: expected an array");
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const std::string path = "spec.constituents[" + std::to_string(k) + "]";
      ConstituentSpec c;
      const json& mu = field(cs[k], "mu", path);
      if (!mu.is_number_integer()) fail(ErrorKind::invalid_input, path + ".mu: expected an integer");
      c.mu = mu.get<int>();
      std::vector<double> p = detail::numbers(field(cs[k], "position", path), path + ".position");
      if (p.size() != 3) fail(ErrorKind::invalid_input, path + ".position: expected 3 coordinates");
      c.position = Vec3(p[0], p[1], p[2]);
      if (cs[k].contains("phase")) c.phase = detail::number(cs[k].at("phase"), path + ".phase");
      s.constituents.push_back(c);
    }
  }
  if (j.contains("gluing")) {
    const json& gl = j.at("gluing");
    if (gl.contains("c") && !(gl.at("c").is_string() && gl.at("c").get<std::string>() == "auto"))
      s.gluing_c = detail::number(gl.at("c"), "spec.gluing.c");
  }
  return s;
}

inline json to_json(const CaloronSpec& s) {
  json cs = json::array();
  for (auto& c : s.constituents) cs.push_back({{"mu", c.mu}, {"position", to_json(c.position)}, {"phase", c.phase}});
  json g = s.gluing_c ? json{{"c", *s.gluing_c}} : json{{"c", "auto"}};
  return json{{"epsilon", s.epsilon},
              {"group", {{"series", std::string(1, series_letter(s.series))}, {"rank", s.rank}}},
              {"omega", s.omega},
              {"constituents", cs},
              {"gluing", g}};
}

inline CaloronSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::invalid_input, "cannot open spec file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::invalid_input, path + ": malformed JSON: " + e.what());
  }
  return spec_from_json(j);
}

}  // namespace caloron
