#pragma once

#include <string>

#include <json.hpp>

#include "su2m/metrology.hpp"
#include "su2m/spinrep.hpp"

namespace su2m {

// { "two_j": int, "tensor": bool, "amps": [[re, im], ...] }
nlohmann::json state_to_json(const ProbeState& state);

// Extra keys are ignored. Throws ParseError on schema violations and the validate_state errors otherwise.
ProbeState state_from_json(const nlohmann::json& j);

ProbeState read_state_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

nlohmann::json report_to_json(const ConditionReport& report);
nlohmann::json matrix_to_json(const RMatrix& m);

}  // namespace su2m
