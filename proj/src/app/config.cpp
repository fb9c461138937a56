#include "mqcrb/app/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include "mqcrb/families.hpp"
#include "mqcrb/tolerances.hpp"

namespace mqcrb::app {

namespace {

using nlohmann::json;

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError(where + key + ": unknown field");
  }
}

double number(const json& obj, const std::string& key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(where + key + ": missing");
  if (!it->is_number()) throw ConfigError(where + key + ": expected a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw ConfigError(where + key + ": must be finite");
  return v;
}

double non_negative(const json& obj, const std::string& key, const std::string& where) {
  const double v = number(obj, key, where);
  if (v < 0.0) throw ConfigError(where + key + ": must be >= 0");
  return v;
}

long long integer(const json& obj, const std::string& key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(where + key + ": missing");
  if (!it->is_number_integer()) throw ConfigError(where + key + ": expected an integer");
  return it->get<long long>();
}

complex complex_value(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  if (v.is_object() && v.contains("re") && v.contains("im")) {
    return {number(v, "re", where), number(v, "im", where)};
  }
  throw ConfigError(where + ": expected a number, [re, im] or {\"re\", \"im\"}");
}

}  // namespace

StateSpec parse_state(const json& state) {
  const std::string where = "state.";
  if (!state.is_object()) throw ConfigError("state: expected an object");
  const auto kind_it = state.find("kind");
  if (kind_it == state.end() || !kind_it->is_string()) throw ConfigError("state.kind: missing");
  const std::string kind = kind_it->get<std::string>();
  if (kind == "coherent") {
    only_keys(state, {"kind", "N", "alpha"}, where);
    if (state.contains("alpha") == state.contains("N")) throw ConfigError("state: coherent needs exactly one of N, alpha");
    if (state.contains("N")) return CoherentSpec{{complex(std::sqrt(non_negative(state, "N", where)), 0.0)}};
    const complex alpha = complex_value(state["alpha"], "state.alpha");
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) throw ConfigError("state.alpha: must be finite");
    return CoherentSpec{{alpha}};
  }
  if (kind == "fock") {
    only_keys(state, {"kind", "n"}, where);
    const long long n = integer(state, "n", where);
    if (n < 0) throw ConfigError("state.n: must be >= 0");
    if (n >= tol::max_fock_cutoff) throw ConfigError("state.n: must be below " + std::to_string(tol::max_fock_cutoff));
    return FockSpec{{static_cast<int>(n)}};
  }
  if (kind == "thermal") {
    only_keys(state, {"kind", "nbar"}, where);
    return ThermalSpec{{non_negative(state, "nbar", where)}};
  }
  if (kind == "squeezed-vacuum") {
    only_keys(state, {"kind", "r", "phi"}, where);
    const double r = non_negative(state, "r", where);
    const double phi = state.contains("phi") ? number(state, "phi", where) : 0.0;
    return SqueezedVacuumSpec{{r}, {phi}};
  }
  if (kind == "custom") {
    only_keys(state, {"kind", "density_matrix"}, where);
    const auto it = state.find("density_matrix");
    if (it == state.end() || !it->is_array() || it->empty()) {
      throw ConfigError("state.density_matrix: expected a non-empty array of rows");
    }
    const auto dim = static_cast<Eigen::Index>(it->size());
    Eigen::MatrixXcd rho(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const json& row = (*it)[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
        throw ConfigError("state.density_matrix: row " + std::to_string(i) + " must have " + std::to_string(dim) + " entries");
      }
      for (Eigen::Index j = 0; j < dim; ++j) {
        rho(i, j) = complex_value(row[static_cast<std::size_t>(j)], "state.density_matrix[" + std::to_string(i) + "][" +
                                                                        std::to_string(j) + "]");
      }
    }
    return CustomSpec{std::move(rho)};
  }
  throw ConfigError("state.kind: unknown kind '" + kind + "' (coherent, fock, thermal, squeezed-vacuum, custom)");
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  only_keys(doc, {"family", "geometry", "state", "grid_points", "fock_cutoff", "fd_step", "derivative", "repetitions",
                  "out", "threads"},
            "");
  RunConfig c;
  if (doc.contains("family")) {
    if (!doc["family"].is_string()) throw ConfigError("family: expected a string");
    c.family = doc["family"].get<std::string>();
  }
  if (doc.contains("geometry")) {
    if (!doc["geometry"].is_object()) throw ConfigError("geometry: expected an object");
    for (const auto& [key, value] : doc["geometry"].items()) c.geometry[key] = number(doc["geometry"], key, "geometry.");
  }
  if (doc.contains("state")) c.state = doc["state"];
  if (doc.contains("grid_points")) {
    const long long n = integer(doc, "grid_points", "");
    if (n < 2) throw ConfigError("grid_points: must be >= 2");
    c.grid_points = static_cast<std::size_t>(n);
  }
  if (doc.contains("fock_cutoff")) {
    const long long n = integer(doc, "fock_cutoff", "");
    if (n < 1 || n > tol::max_fock_cutoff) {
      throw ConfigError("fock_cutoff: must lie in [1, " + std::to_string(tol::max_fock_cutoff) + "]");
    }
    c.fock_cutoff = static_cast<int>(n);
  }
  if (doc.contains("fd_step")) {
    c.fd_step = number(doc, "fd_step", "");
    if (!(c.fd_step > 0.0)) throw ConfigError("fd_step: must be > 0");
  }
  if (doc.contains("derivative")) {
    const auto& d = doc["derivative"];
    if (d == "analytic") {
      c.derivative = DerivativeMethod::analytic;
    } else if (d == "finite-difference") {
      c.derivative = DerivativeMethod::finite_difference;
    } else {
      throw ConfigError("derivative: expected \"analytic\" or \"finite-difference\"");
    }
  }
  if (doc.contains("repetitions")) {
    const long long m = integer(doc, "repetitions", "");
    if (m < 1 || m > std::numeric_limits<int>::max()) throw ConfigError("repetitions: must be >= 1");
    c.repetitions = static_cast<int>(m);
  }
  if (doc.contains("out")) {
    if (!doc["out"].is_string()) throw ConfigError("out: expected a string");
    c.out = doc["out"].get<std::string>();
  }
  if (doc.contains("threads")) {
    const long long t = integer(doc, "threads", "");
    if (t < 0 || t > 4096) throw ConfigError("threads: must lie in [0, 4096]");
    c.threads = static_cast<unsigned>(t);
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  try {
    return parse_config(json::parse(in));
  } catch (const json::exception& e) {
    throw ConfigError("config: " + path.string() + " is not valid JSON (" + e.what() + ")");
  }
}

json config_to_json(const RunConfig& c) {
  json doc = {{"family", c.family},
              {"geometry", c.geometry},
              {"state", c.state},
              {"fd_step", c.fd_step},
              {"derivative", c.derivative == DerivativeMethod::analytic ? "analytic" : "finite-difference"},
              {"repetitions", c.repetitions},
              {"out", c.out.string()},
              {"threads", c.threads}};
  if (c.grid_points) doc["grid_points"] = *c.grid_points;
  if (c.fock_cutoff) doc["fock_cutoff"] = *c.fock_cutoff;
  return doc;
}

void validate(const RunConfig& c) {
  const FamilyDescriptor* d = find_family(c.family);
  if (!d) {
    std::string known;
    for (const auto& f : family_registry()) known += (known.empty() ? "" : ", ") + f.name;
    throw ConfigError("family: unknown family '" + c.family + "'; registered families: " + known);
  }
  for (const auto& [key, value] : c.geometry) {
    bool found = false;
    for (const auto& field : d->geometry) found = found || field.name == key;
    if (!found) throw ConfigError("geometry." + key + ": not a field of family '" + c.family + "'");
    if (!(value > 0.0) || !std::isfinite(value)) throw ConfigError("geometry." + key + ": must be positive and finite");
  }
  parse_state(c.state);
}

}  // namespace mqcrb::app
