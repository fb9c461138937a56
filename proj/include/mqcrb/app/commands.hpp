#pragma once

#include <string>
#include <vector>

#include "mqcrb/app/config.hpp"
#include "mqcrb/app/report.hpp"
#include "mqcrb/parameter_family.hpp"

namespace mqcrb::app {

// An engine operation failed; `operation` names it.
class EngineFailure : public std::runtime_error {
 public:
  EngineFailure(std::string operation, const std::string& what)
      : std::runtime_error(operation + ": " + what), operation_(std::move(operation)) {}
  const std::string& operation() const noexcept { return operation_; }

 private:
  std::string operation_;
};

// Full pipeline without touching the disk.
ReportBundle compute_report(const RunConfig& config);
ReportBundle compute_report(const RunConfig& config, const ParameterFamily& family);

// report.json, qfim.csv, qfim_inverse.csv
ReportBundle run_qfim(const RunConfig& config);
// attainability.csv
std::vector<AttainabilityRow> run_attainability(const RunConfig& config);
// modes_<param>.csv, readout_<param>.csv, detection_modes.json
nlohmann::json export_detection_modes(const RunConfig& config);
nlohmann::json export_detection_modes(const RunConfig& config, const ParameterFamily& family);

std::string list_families();

}  // namespace mqcrb::app
