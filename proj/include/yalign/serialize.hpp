#pragma once

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>

#include "yalign/oracle.hpp"
#include "yalign/region.hpp"
#include "yalign/simulate.hpp"

// JSON views of the library types. Rationals cross this boundary as "p/q"
// strings, never floats.
namespace yalign::serialize {

nlohmann::json config_json(const AntennaConfig& config);
nlohmann::json region_json(const region::HalfspaceSystem& system,
                           const std::optional<region::VertexSet>& vertices);
nlohmann::json plan_json(const planner::PatternPlan& plan);
nlohmann::json feasibility_json(const planner::FeasibilityReport& report);
nlohmann::json simulation_json(const simulate::SimulationReport& report);
nlohmann::json monte_carlo_json(const simulate::MonteCarloReport& report);
nlohmann::json verdict_json(const oracle::OracleVerdict& verdict);

std::string rates_csv(const simulate::SimulationReport& report);

}  // namespace yalign::serialize
