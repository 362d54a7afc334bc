#include "su2m/io.hpp"

#include <fstream>

#include "su2m/error.hpp"

namespace su2m {

nlohmann::json state_to_json(const ProbeState& state) {
  validate_state(state, 1e-10);
  nlohmann::json amps = nlohmann::json::array();
  for (Eigen::Index k = 0; k < state.amps.size(); ++k) amps.push_back({state.amps(k).real(), state.amps(k).imag()});
  return {{"two_j", state.two_j}, {"tensor", state.tensor}, {"amps", amps}};
}

ProbeState state_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "state must be a JSON object");
  if (!j.contains("two_j") || !j.at("two_j").is_number_integer()) {
    throw Error(ErrorCode::ParseError, "missing integer field two_j");
  }
  if (!j.contains("amps") || !j.at("amps").is_array()) throw Error(ErrorCode::ParseError, "missing array field amps");
  if (j.contains("tensor") && !j.at("tensor").is_boolean()) throw Error(ErrorCode::ParseError, "tensor must be a boolean");
  ProbeState s;
  s.two_j = j.at("two_j").get<int>();
  if (s.two_j < 0) throw Error(ErrorCode::ParseError, "two_j must be non-negative");
  s.tensor = j.value("tensor", false);
  const auto& amps = j.at("amps");
  s.amps.resize(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const auto& a = amps[k];
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
      throw Error(ErrorCode::ParseError, "amplitude " + std::to_string(k) + " must be [re, im]");
    }
    s.amps(static_cast<Eigen::Index>(k)) = cplx(a[0].get<double>(), a[1].get<double>());
  }
  validate_state(s, 1e-10);
  return s;
}

ProbeState read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
  return state_from_json(j);
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << j.dump(2) << '\n';
}

nlohmann::json matrix_to_json(const RMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json report_to_json(const ConditionReport& r) {
  return {{"first_moments", {r.first_moments(0), r.first_moments(1), r.first_moments(2)}},
          {"cross_moments", matrix_to_json(r.cross_moments)},
          {"variances", {r.variances(0), r.variances(1), r.variances(2)}},
          {"target_variance", r.target_variance},
          {"max_residual", r.max_residual},
          {"weak_commutativity", r.weak_commutativity}};
}

}  // namespace su2m
