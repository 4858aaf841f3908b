#pragma once

#include <string>

#include <json.hpp>

#include "fdsketch/oracle.hpp"

namespace fdsketch {

// Fixed report schema:
//   {"d":..., "ell":..., "steps":..., "measured_error":...,
//    "rows":[{"k":..., "bound":..., "slack":..., "pass":...}, ...], "pass":...}
nlohmann::ordered_json bound_report_to_json(const BoundReport& report);

nlohmann::ordered_json proof_step_report_to_json(const ProofStepReport& report);

/// bound_report_to_json dumped with 2-space indentation.
std::string to_json_string(const BoundReport& report);

}  // namespace fdsketch
