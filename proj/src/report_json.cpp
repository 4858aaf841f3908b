#include "fdsketch/report_json.hpp"

namespace fdsketch {

nlohmann::ordered_json bound_report_to_json(const BoundReport& report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const BoundRow& row : report.rows) {
    rows.push_back({{"k", row.k}, {"bound", row.bound}, {"slack", row.slack}, {"pass", row.pass}});
  }
  return nlohmann::ordered_json{{"d", report.d},
                                {"ell", report.ell},
                                {"steps", report.steps},
                                {"measured_error", report.measured_error},
                                {"rows", std::move(rows)},
                                {"pass", report.pass}};
}

nlohmann::ordered_json proof_step_report_to_json(const ProofStepReport& r) {
  return nlohmann::ordered_json{
      {"k", r.k},
      {"delta_psd", {{"pass", r.delta_psd_pass}, {"min_eigenvalue", r.delta_min_eigenvalue}}},
      {"delta_norm", {{"pass", r.delta_norm_pass}, {"max_deviation", r.delta_norm_max_dev}}},
      {"step_projection",
       {{"pass", r.step_projection_pass}, {"min_slack", r.step_projection_min_slack}}},
      {"telescoping", {{"pass", r.telescoping_pass}, {"max_deviation", r.telescoping_max_dev}}},
      {"sketch_trace", {{"pass", r.sketch_trace_pass}, {"value", r.sketch_projected_trace}}},
      {"chain",
       {{"pass", r.chain_pass},
        {"slack_sum", r.chain_slack_sum},
        {"slack_bound", r.chain_slack_bound}}},
      {"pass", r.pass}};
}

std::string to_json_string(const BoundReport& report) {
  return bound_report_to_json(report).dump(2);
}

}  // namespace fdsketch
