#include "yalign/serialize.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace yalign::serialize {

using nlohmann::json;

json config_json(const AntennaConfig& config) {
  return json{{"M1", config.m1},
              {"M2", config.m2},
              {"M3", config.m3},
              {"N", config.n}};
}

json region_json(const region::HalfspaceSystem& system,
                 const std::optional<region::VertexSet>& vertices) {
  json j;
  j["config"] = config_json(system.config);
  j["halfspaces"] = json::array();
  for (const auto& h : system.rows) {
    json row;
    row["coeffs"] = h.coeffs;
    row["bound"] = h.bound;
    row["tag"] = h.tag;
    j["halfspaces"].push_back(row);
  }
  if (vertices) {
    j["vertices"] = json::array();
    for (const auto& v : vertices->vertices) {
      json vj;
      vj["coords"] = json::array();
      for (const auto& c : v.point.d) vj["coords"].push_back(rat_to_string(c));
      vj["tight"] = v.tight;
      j["vertices"].push_back(vj);
    }
  }
  return j;
}

json plan_json(const planner::PatternPlan& plan) {
  json j;
  j["case"] = plan.case_label == planner::CaseLabel::I ? "I" : "II";
  j["permutation"] = plan.relabel.to_original;
  j["t"] = plan.t;
  j["d_scaled"] = plan.d;
  j["pde_weights"] = plan.pde;
  j["gamma"] = plan.gamma;
  j["residuals"] = plan.residual;
  j["J"] = plan.relay_dims;
  j["blocks"] = json::array();
  for (const auto& b : plan.blocks) {
    j["blocks"].push_back(json{{"label", b.label}, {"size", b.size}});
  }
  return j;
}

json feasibility_json(const planner::FeasibilityReport& report) {
  json j;
  j["ok"] = report.ok();
  j["checks"] = json::array();
  for (const auto& c : report.checks) {
    j["checks"].push_back(json{
        {"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"ok", c.ok}});
  }
  return j;
}

json simulation_json(const simulate::SimulationReport& report) {
  json j;
  j["max_rel_error"] = report.max_rel_error;
  j["directions"] = json::array();
  for (const auto& d : report.directions) {
    j["directions"].push_back(json{{"from", d.from},
                                   {"to", d.to},
                                   {"streams", d.streams},
                                   {"max_rel_error", d.max_rel_error}});
  }
  if (!report.rate_points.empty()) {
    j["rate_points"] = json::array();
    for (const auto& pt : report.rate_points) {
      j["rate_points"].push_back(json{{"P_dB", pt.p_db},
                                      {"sum_rate", pt.sum_rate},
                                      {"per_direction", pt.per_direction}});
    }
    j["slope"] = report.slope;
  }
  j["diagnostics"] = json{{"b_sigma_min", report.diag.b_sigma_min},
                          {"b_cond", report.diag.b_cond},
                          {"t_sigma_min", report.diag.t_sigma_min},
                          {"t_cond", report.diag.t_cond}};
  return j;
}

json monte_carlo_json(const simulate::MonteCarloReport& report) {
  json j;
  j["trials"] = report.trials;
  j["successes"] = report.successes;
  j["max_rel_error"] = report.max_rel_error;
  j["mean_rel_error"] = report.mean_rel_error;
  j["slope_mean"] = report.slope_mean;
  j["slope_min"] = report.slope_min;
  j["slope_max"] = report.slope_max;
  j["trial_errors"] = report.trial_errors;
  j["failures"] = report.failures;
  return j;
}

json verdict_json(const oracle::OracleVerdict& verdict) {
  return json{{"subject", verdict.subject},
              {"pass", verdict.pass},
              {"witness", verdict.witness}};
}

std::string rates_csv(const simulate::SimulationReport& report) {
  std::ostringstream os;
  os << "P_dB,sum_rate";
  for (const auto& [from, to] : kDirections) {
    os << ",rate_" << from << "_" << to;
  }
  os << "\n";
  for (const auto& pt : report.rate_points) {
    os << pt.p_db << "," << pt.sum_rate;
    for (int k = 0; k < 6; ++k) os << "," << pt.per_direction[k];
    os << "\n";
  }
  return os.str();
}

}  // namespace yalign::serialize
