#include "mqcrb/app/report.hpp"

#include <cmath>
#include <limits>

#include "mqcrb/grid.hpp"

namespace mqcrb::app {

namespace {

using nlohmann::json;

// Non-finite values (unbounded variances) serialize as null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double number(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

json matrix(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix(const json& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto m = n ? static_cast<Eigen::Index>(rows[0].size()) : 0;
  Eigen::MatrixXd out(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) out(i, j) = number(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }
  return out;
}

json vector(const Eigen::VectorXd& v) {
  json out = json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

}  // namespace

json to_json(const ReportBundle& b) {
  const QfimReport& r = b.report;
  json bounds = json::array();
  for (const auto& p : r.bounds) {
    bounds.push_back({{"label", p.label},
                      {"multiparameter", number(p.multiparameter)},
                      {"single_parameter", number(p.single_parameter)},
                      {"penalty_ratio", number(p.penalty_ratio)}});
  }
  json null_space = json::array();
  for (const auto& v : r.null_space) null_space.push_back(vector(v));
  json pairs = json::array();
  for (const auto& row : b.attainability) {
    pairs.push_back({{"param_a", row.param_a},
                     {"param_b", row.param_b},
                     {"Im_overlap", row.im_overlap},
                     {"normalized_Im_overlap", row.normalized_im_overlap},
                     {"commutator_expectation", row.commutator},
                     {"attainable", row.attainable}});
  }
  json detection = json::array();
  for (const auto& d : b.detection) {
    detection.push_back({{"label", d.label}, {"weight", d.weight}, {"degenerate", d.degenerate}});
  }
  json oracle = {{"qfim", b.oracle ? matrix(*b.oracle) : json(nullptr)},
                 {"closed_form", b.closed_form ? matrix(*b.closed_form) : json(nullptr)},
                 {"printed_carrier_axial_entry", b.printed_carrier_entry ? json(*b.printed_carrier_entry) : json(nullptr)}};
  return {{"family", b.family},
          {"state", b.state},
          {"state_summary", {{"mean_photons", b.mean_photons}, {"number_information", b.number_information}}},
          {"labels", r.labels},
          {"repetitions", r.repetitions},
          {"qfim", matrix(r.qfim)},
          {"qfim_inverse", matrix(r.pseudo_inverse)},
          {"bounds", std::move(bounds)},
          {"degenerate", r.degenerate},
          {"null_space", std::move(null_space)},
          {"weights", r.weights},
          {"attainability",
           {{"commutator", matrix(r.attainability)},
            {"real_residual", b.commutator_real_residual},
            {"attainable", r.attainable},
            {"pairs", std::move(pairs)}}},
          {"detection_modes",
           {{"parameters", std::move(detection)},
            {"overlaps_re", matrix(b.detection_overlaps.real())},
            {"overlaps_im", matrix(b.detection_overlaps.imag())}}},
          {"oracle", std::move(oracle)},
          {"warnings", b.warnings},
          {"provenance", b.provenance}};
}

ReportBundle report_from_json(const json& doc) {
  ReportBundle b;
  b.family = doc.at("family").get<std::string>();
  b.state = doc.at("state");
  b.mean_photons = doc.at("state_summary").at("mean_photons").get<double>();
  b.number_information = doc.at("state_summary").at("number_information").get<double>();
  QfimReport& r = b.report;
  r.labels = doc.at("labels").get<std::vector<std::string>>();
  r.repetitions = doc.at("repetitions").get<int>();
  r.qfim = matrix(doc.at("qfim"));
  r.pseudo_inverse = matrix(doc.at("qfim_inverse"));
  for (const auto& p : doc.at("bounds")) {
    r.bounds.push_back({p.at("label").get<std::string>(), number(p.at("multiparameter")), number(p.at("single_parameter")),
                        number(p.at("penalty_ratio"))});
  }
  r.degenerate = doc.at("degenerate").get<std::vector<std::string>>();
  for (const auto& v : doc.at("null_space")) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) x(static_cast<Eigen::Index>(i)) = number(v[i]);
    r.null_space.push_back(std::move(x));
  }
  r.weights = doc.at("weights").get<std::vector<double>>();
  const json& att = doc.at("attainability");
  r.attainability = matrix(att.at("commutator"));
  r.attainable = att.at("attainable").get<bool>();
  b.commutator_real_residual = att.at("real_residual").get<double>();
  for (const auto& p : att.at("pairs")) {
    b.attainability.push_back({p.at("param_a").get<std::string>(), p.at("param_b").get<std::string>(),
                               p.at("Im_overlap").get<double>(), p.at("normalized_Im_overlap").get<double>(),
                               p.at("commutator_expectation").get<double>(), p.at("attainable").get<bool>()});
  }
  const json& det = doc.at("detection_modes");
  for (const auto& d : det.at("parameters")) {
    b.detection.push_back({d.at("label").get<std::string>(), d.at("weight").get<double>(), d.at("degenerate").get<bool>()});
  }
  const Eigen::MatrixXd re = matrix(det.at("overlaps_re"));
  const Eigen::MatrixXd im = matrix(det.at("overlaps_im"));
  b.detection_overlaps = re.cast<complex>() + complex(0.0, 1.0) * im.cast<complex>();
  const json& oracle = doc.at("oracle");
  if (!oracle.at("qfim").is_null()) b.oracle = matrix(oracle.at("qfim"));
  if (!oracle.at("closed_form").is_null()) b.closed_form = matrix(oracle.at("closed_form"));
  if (!oracle.at("printed_carrier_axial_entry").is_null()) {
    b.printed_carrier_entry = oracle.at("printed_carrier_axial_entry").get<double>();
  }
  b.warnings = doc.at("warnings").get<std::vector<std::string>>();
  b.provenance = doc.at("provenance");
  return b;
}

}  // namespace mqcrb::app
