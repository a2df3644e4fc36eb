// Command-line front end: DoF region computation, scheme synthesis checks,
// Monte Carlo verification, and rate sweeps for the three-user MIMO Y
// channel with a relay.
#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "yalign/channel.hpp"
#include "yalign/oracle.hpp"
#include "yalign/planner.hpp"
#include "yalign/region.hpp"
#include "yalign/serialize.hpp"
#include "yalign/simulate.hpp"
#include "yalign/transceiver.hpp"

namespace {

using nlohmann::json;
using namespace yalign;

constexpr int kOk = 0;
constexpr int kSemanticFailure = 1;
constexpr int kUsageError = 2;

void emit(const json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot write " + out_path);
    os << text;
  }
}

int cmd_region(const std::string& config_csv, bool with_vertices,
               const std::string& out_path) {
  const AntennaConfig config = parse_config(config_csv);
  const auto system = region::build_region(config);
  std::optional<region::VertexSet> vertices;
  if (with_vertices) vertices = region::enumerate_vertices(system);
  emit(serialize::region_json(system, vertices), out_path);
  return kOk;
}

int cmd_check(const std::string& config_csv, const std::string& dof_csv,
              const std::string& out_path) {
  const AntennaConfig config = parse_config(config_csv);
  const DofTuple d = parse_dof(dof_csv);
  json j;
  const auto system = region::build_region(config);
  const auto violated = region::first_violated(system, d);
  j["config"] = serialize::config_json(config);
  j["dof"] = dof_to_string(d);
  j["member"] = !violated.has_value();
  if (violated) {
    j["violated"] = system.rows[*violated].tag;
    emit(j, out_path);
    return kSemanticFailure;
  }
  const auto plan = planner::plan(d, config);
  const auto report = planner::feasibility_report(plan, config);
  j["plan"] = serialize::plan_json(plan);
  j["feasibility"] = serialize::feasibility_json(report);
  emit(j, out_path);
  return report.ok() ? kOk : kSemanticFailure;
}

int cmd_simulate(const std::string& config_csv, const std::string& dof_csv,
                 std::uint64_t seed, long long trials,
                 const std::string& mode_name,
                 const std::vector<double>& power_grid,
                 const std::string& out_prefix,
                 const std::string& dump_channels, double tolerance) {
  const AntennaConfig config = parse_config(config_csv);
  const DofTuple d = parse_dof(dof_csv);
  const auto mode = mode_name == "rates" ? simulate::Mode::Rates
                                         : simulate::Mode::Noiseless;
  const auto agg =
      simulate::monte_carlo(config, d, trials, seed, mode, power_grid);
  json j = serialize::monte_carlo_json(agg);
  j["config"] = serialize::config_json(config);
  j["dof"] = dof_to_string(d);
  j["mode"] = mode_name;
  j["seed"] = seed;
  long long within = 0;
  for (const double e : agg.trial_errors) {
    if (e <= tolerance) ++within;
  }
  j["recoveries_within_tolerance"] = within;
  j["tolerance"] = tolerance;
  emit(j, out_prefix.empty() ? "" : out_prefix + ".json");

  if (mode == simulate::Mode::Rates && trials > 0) {
    const auto plan = planner::plan(d, config);
    const auto ch = channel::sample(config, plan.t, seed);
    const auto dch = channel::deactivate_dims(ch, plan.relay_dims);
    const auto design = transceiver::design(plan, dch);
    const auto rep =
        simulate::estimate_rates(design, plan, dch, power_grid, seed);
    const std::string csv = serialize::rates_csv(rep);
    if (out_prefix.empty()) {
      std::cout << csv;
    } else {
      std::ofstream os(out_prefix + ".csv");
      os << csv;
    }
  }
  if (!dump_channels.empty() && trials > 0) {
    const auto plan = planner::plan(d, config);
    channel::save(channel::sample(config, plan.t, seed), dump_channels);
  }
  return kOk;
}

int cmd_verify(const std::string& config_csv, const std::string& dof_csv,
               std::uint64_t seed, const std::string& out_path) {
  const AntennaConfig config = parse_config(config_csv);
  const DofTuple d = parse_dof(dof_csv);
  json j;
  j["verdicts"] = json::array();

  const auto membership = oracle::membership_lp(config, d);
  j["verdicts"].push_back(serialize::verdict_json(membership));
  bool all_pass = membership.pass;
  if (membership.pass) {
    const auto plan = planner::plan(d, config);
    const auto ch = channel::sample(config, plan.t, seed);
    const auto dch = channel::deactivate_dims(ch, plan.relay_dims);
    const auto audit = oracle::rank_audit(plan, dch);
    j["verdicts"].push_back(serialize::verdict_json(audit));
    const auto design = transceiver::design(plan, dch);
    const auto e2e = oracle::end_to_end_matrix(design, plan, dch);
    j["verdicts"].push_back(serialize::verdict_json(e2e));
    all_pass = audit.pass && e2e.pass;
  }
  emit(j, out_path);
  return all_pass ? kOk : kSemanticFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DoF region and signal-alignment toolkit for the three-user "
               "MIMO Y channel"};
  app.require_subcommand(1);

  std::string config_csv;
  std::string dof_csv;
  std::string out_path;
  std::string mode_name = "noiseless";
  std::string dump_channels;
  bool with_vertices = false;
  std::uint64_t seed = 1;
  long long trials = 1;
  std::vector<double> power_grid{40, 50, 60};
  double tolerance = 1e-8;

  auto* region_cmd = app.add_subcommand("region", "Emit halfspaces/vertices");
  region_cmd->add_option("--config", config_csv, "M1,M2,M3,N")->required();
  region_cmd->add_flag("--vertices", with_vertices, "Include vertex set");
  region_cmd->add_option("--out", out_path, "Output JSON path");

  auto* check_cmd =
      app.add_subcommand("check", "Membership + plan + feasibility report");
  check_cmd->add_option("--config", config_csv, "M1,M2,M3,N")->required();
  check_cmd->add_option("--dof", dof_csv, "d12,d13,d21,d23,d31,d32")
      ->required();
  check_cmd->add_option("--out", out_path, "Output JSON path");

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo synthesis runs");
  sim_cmd->add_option("--config", config_csv, "M1,M2,M3,N")->required();
  sim_cmd->add_option("--dof", dof_csv, "d12,d13,d21,d23,d31,d32")->required();
  sim_cmd->add_option("--seed", seed, "Base RNG seed");
  sim_cmd->add_option("--trials", trials, "Number of channel draws");
  sim_cmd->add_option("--mode", mode_name, "noiseless|rates")
      ->check(CLI::IsMember({"noiseless", "rates"}));
  sim_cmd->add_option("--power-grid", power_grid, "Power levels in dB");
  sim_cmd->add_option("--out", out_path, "Output prefix (.json/.csv)");
  sim_cmd->add_option("--tolerance", tolerance, "Recovery tolerance");
  sim_cmd->add_option("--dump-channels", dump_channels,
                      "Write the first trial's channel realization");

  auto* verify_cmd =
      app.add_subcommand("verify", "Independent oracle verdicts");
  verify_cmd->add_option("--config", config_csv, "M1,M2,M3,N")->required();
  verify_cmd->add_option("--dof", dof_csv, "d12,d13,d21,d23,d31,d32")
      ->required();
  verify_cmd->add_option("--seed", seed, "Channel seed");
  verify_cmd->add_option("--out", out_path, "Output JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (region_cmd->parsed()) {
      return cmd_region(config_csv, with_vertices, out_path);
    }
    if (check_cmd->parsed()) return cmd_check(config_csv, dof_csv, out_path);
    if (sim_cmd->parsed()) {
      return cmd_simulate(config_csv, dof_csv, seed, trials, mode_name,
                          power_grid, out_path, dump_channels, tolerance);
    }
    if (verify_cmd->parsed()) {
      return cmd_verify(config_csv, dof_csv, seed, out_path);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
