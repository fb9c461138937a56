#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mqcrb::app {

// Shortest form that round-trips at 17 significant digits, locale independent.
std::string format_double(double value);

std::string matrix_csv(const Eigen::MatrixXd& m, const std::vector<std::string>& header);

// Writes through a temporary sibling and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace mqcrb::app
