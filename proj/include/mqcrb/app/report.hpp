#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "mqcrb/bounds.hpp"

namespace mqcrb::app {

inline constexpr const char* engine_version = "1.0.0";

struct AttainabilityRow {
  std::string param_a;
  std::string param_b;
  double im_overlap = 0.0;
  double normalized_im_overlap = 0.0;
  double commutator = 0.0;
  bool attainable = true;
};

struct DetectionInfo {
  std::string label;
  double weight = 0.0;
  bool degenerate = false;
};

struct ReportBundle {
  std::string family;
  nlohmann::json state;
  double mean_photons = 0.0;
  double number_information = 0.0;
  QfimReport report;
  double commutator_real_residual = 0.0;
  std::vector<AttainabilityRow> attainability;
  std::vector<DetectionInfo> detection;
  Eigen::MatrixXcd detection_overlaps;  // (f~^a|f~^b)
  std::optional<Eigen::MatrixXd> oracle;       // engine convention
  std::optional<Eigen::MatrixXd> closed_form;  // printed convention
  std::optional<double> printed_carrier_entry;
  std::vector<std::string> warnings;
  nlohmann::json provenance;
};

nlohmann::json to_json(const ReportBundle& bundle);
ReportBundle report_from_json(const nlohmann::json& doc);

}  // namespace mqcrb::app
