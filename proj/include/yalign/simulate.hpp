#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "yalign/transceiver.hpp"

namespace yalign::simulate {

enum class SymbolSource { Gaussian, Qpsk };
enum class Mode { Noiseless, Rates };

// Per-direction symbol vectors, sizes matching the plan exactly.
struct SymbolLoad {
  std::array<Eigen::VectorXcd, 6> pattern;
  std::array<Eigen::VectorXcd, 6> cyclic;
  std::array<Eigen::VectorXcd, 6> residual;
};

SymbolLoad draw_symbols(const planner::PatternPlan& plan, std::uint64_t seed,
                        SymbolSource source = SymbolSource::Gaussian);

struct DirectionReport {
  int from{0};
  int to{0};  // original (pre-relabeling) user indices
  long long streams{0};
  double max_rel_error{0};
};

struct RatePoint {
  double p_db{0};
  double sum_rate{0};
  std::array<double, 6> per_direction{};
};

struct SimulationReport {
  std::vector<DirectionReport> directions;
  double max_rel_error{0};
  std::vector<RatePoint> rate_points;
  double slope{0};
  transceiver::Diagnostics diag;
};

// Runs the full noiseless MAC+BC chain with self-interference cancellation
// and reports per-direction recovery errors.
SimulationReport run_noiseless(const transceiver::TransceiverDesign& design,
                               const planner::PatternPlan& plan,
                               const channel::DeactivatedChannel& ch,
                               std::uint64_t seed,
                               SymbolSource source = SymbolSource::Gaussian);

// Per-stream log2(1+SNR) rates over the power grid, with relay power
// normalization, and the least-squares slope of sum rate vs log2(P).
SimulationReport estimate_rates(const transceiver::TransceiverDesign& design,
                                const planner::PatternPlan& plan,
                                const channel::DeactivatedChannel& ch,
                                const std::vector<double>& power_grid_db,
                                std::uint64_t seed);

struct MonteCarloReport {
  long long trials{0};
  long long successes{0};
  double max_rel_error{0};
  double mean_rel_error{0};
  double slope_mean{0};
  double slope_min{0};
  double slope_max{0};
  std::vector<double> trial_errors;
  std::vector<std::string> failures;  // per-trial synthesis failures
};

MonteCarloReport monte_carlo(const AntennaConfig& config, const DofTuple& d,
                             long long trials, std::uint64_t seed_base,
                             Mode mode,
                             const std::vector<double>& power_grid_db = {40,
                                                                         50,
                                                                         60});

}  // namespace yalign::simulate
