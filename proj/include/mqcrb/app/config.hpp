#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "mqcrb/fock.hpp"
#include "mqcrb/parameter_family.hpp"

namespace mqcrb::app {

// Invalid user input; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string family;
  std::map<std::string, double> geometry;
  nlohmann::json state = {{"kind", "coherent"}, {"N", 1.0}};
  std::optional<std::size_t> grid_points;
  std::optional<int> fock_cutoff;
  double fd_step = 1e-4;
  DerivativeMethod derivative = DerivativeMethod::analytic;
  int repetitions = 1;
  std::filesystem::path out = ".";
  unsigned threads = 1;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const RunConfig& config);

// {"kind": "coherent", "N": 4} and friends; see README for the accepted kinds.
StateSpec parse_state(const nlohmann::json& state);

// Fails with ConfigError when the family is unknown or a value is out of range.
void validate(const RunConfig& config);

}  // namespace mqcrb::app
