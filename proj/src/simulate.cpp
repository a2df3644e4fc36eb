#include "yalign/simulate.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace yalign::simulate {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using planner::CaseLabel;
using planner::PatternPlan;
using transceiver::TransceiverDesign;

VectorXcd draw_vector(std::mt19937_64& rng, long long n, SymbolSource source) {
  VectorXcd v(n);
  if (source == SymbolSource::Gaussian) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (long long k = 0; k < n; ++k) {
      v(k) = std::complex<double>(gauss(rng), gauss(rng)) * 0.7071067811865476;
    }
  } else {
    std::uniform_int_distribution<int> bit(0, 1);
    constexpr double s = 0.7071067811865476;
    for (long long k = 0; k < n; ++k) {
      v(k) = std::complex<double>(bit(rng) ? s : -s, bit(rng) ? s : -s);
    }
  }
  return v;
}

// Widths of the pattern / cyclic part of a direction.
long long pattern_width(const PatternPlan& plan, int from, int to) {
  const std::array<std::pair<int, int>, 3> pairs{{{1, 2}, {1, 3}, {2, 3}}};
  for (int k = 0; k < 3; ++k) {
    const auto [i, j] = pairs[k];
    if ((from == i && to == j) || (from == j && to == i)) return plan.pde[k];
  }
  return 0;
}

long long cyclic_width(const PatternPlan& plan, int from, int to) {
  if (plan.case_label != CaseLabel::I) return 0;
  const bool cyc = (from == 1 && to == 2) || (from == 2 && to == 3) ||
                   (from == 3 && to == 1);
  return cyc ? plan.gamma : 0;
}

struct Estimates {
  // Concatenated (pattern, cyclic, residual) estimate per direction.
  std::array<VectorXcd, 6> value;
};

// Runs the per-user decoding chains of the BC phase on received vectors
// y[a], cancelling the receiver's own transmitted symbols.
Estimates decode(const TransceiverDesign& design, const PatternPlan& plan,
                 const SymbolLoad& load,
                 const std::array<VectorXcd, 3>& y) {
  Estimates est;
  for (int k = 0; k < 6; ++k) {
    const auto [from, to] = kDirections[k];
    const VectorXcd& ya = y[to - 1];
    std::vector<VectorXcd> parts;
    if (pattern_width(plan, from, to) > 0) {
      parts.push_back(design.u.pattern[k] * ya -
                      load.pattern[direction_index(to, from)]);
    }
    if (cyclic_width(plan, from, to) > 0) {
      if (from == 3 && to == 1) {
        parts.push_back(design.u.cyclic[k] * ya -
                        load.cyclic[direction_index(1, 2)]);
      } else if (from == 1 && to == 2) {
        parts.push_back(load.cyclic[direction_index(2, 3)] -
                        design.u.cyclic[k] * ya);
      } else {  // (2,3)
        parts.push_back(design.u.cyclic[k] * ya -
                        load.cyclic[direction_index(3, 1)]);
      }
    }
    if (plan.residual[k] > 0) {
      parts.push_back(design.u.residual[k] * ya);
    }
    long long total = 0;
    for (const auto& p : parts) total += p.size();
    VectorXcd cat(total);
    long long off = 0;
    for (const auto& p : parts) {
      cat.segment(off, p.size()) = p;
      off += p.size();
    }
    est.value[k] = std::move(cat);
  }
  return est;
}

VectorXcd true_streams(const PatternPlan& plan, const SymbolLoad& load,
                       int k) {
  const auto [from, to] = kDirections[k];
  std::vector<const VectorXcd*> parts;
  if (pattern_width(plan, from, to) > 0) parts.push_back(&load.pattern[k]);
  if (cyclic_width(plan, from, to) > 0) parts.push_back(&load.cyclic[k]);
  if (plan.residual[k] > 0) parts.push_back(&load.residual[k]);
  long long total = 0;
  for (const auto* p : parts) total += p->size();
  VectorXcd cat(total);
  long long off = 0;
  for (const auto* p : parts) {
    cat.segment(off, p->size()) = *p;
    off += p->size();
  }
  return cat;
}

double slope_fit(const std::vector<RatePoint>& points) {
  if (points.size() < 2) return 0;
  double sx = 0;
  double sy = 0;
  double sxx = 0;
  double sxy = 0;
  const double n = static_cast<double>(points.size());
  for (const auto& pt : points) {
    const double x = pt.p_db / 10.0 * std::log2(10.0);  // log2(P)
    sx += x;
    sy += pt.sum_rate;
    sxx += x * x;
    sxy += x * pt.sum_rate;
  }
  const double denom = n * sxx - sx * sx;
  return denom == 0 ? 0 : (n * sxy - sx * sy) / denom;
}

}  // namespace

SymbolLoad draw_symbols(const PatternPlan& plan, std::uint64_t seed,
                        SymbolSource source) {
  std::mt19937_64 rng(seed);
  SymbolLoad load;
  for (int k = 0; k < 6; ++k) {
    const auto [from, to] = kDirections[k];
    load.pattern[k] = draw_vector(rng, pattern_width(plan, from, to), source);
    load.cyclic[k] = draw_vector(rng, cyclic_width(plan, from, to), source);
    load.residual[k] = draw_vector(rng, plan.residual[k], source);
  }
  return load;
}

SimulationReport run_noiseless(const TransceiverDesign& design,
                               const PatternPlan& plan,
                               const channel::DeactivatedChannel& ch,
                               std::uint64_t seed, SymbolSource source) {
  const SymbolLoad load = draw_symbols(plan, seed, source);

  std::array<VectorXcd, 3> x;
  for (int a = 1; a <= 3; ++a) {
    VectorXcd xa = VectorXcd::Zero(plan.m[a - 1]);
    for (int b = 1; b <= 3; ++b) {
      if (b == a) continue;
      const int k = direction_index(a, b);
      if (load.pattern[k].size()) xa += design.v.pattern[k] * load.pattern[k];
      if (load.cyclic[k].size()) xa += design.v.cyclic[k] * load.cyclic[k];
      if (load.residual[k].size()) {
        xa += design.v.residual[k] * load.residual[k];
      }
    }
    x[a - 1] = std::move(xa);
  }

  VectorXcd y_r = VectorXcd::Zero(plan.relay_dims);
  for (int a = 1; a <= 3; ++a) {
    y_r += transceiver::uplink_of(plan, ch, a) * x[a - 1];
  }
  const VectorXcd s_hat = design.relay_zf * y_r;
  const VectorXcd x_r = design.bc_zf * s_hat;
  std::array<VectorXcd, 3> y;
  for (int a = 1; a <= 3; ++a) {
    y[a - 1] = transceiver::downlink_of(plan, ch, a) * x_r;
  }

  const Estimates est = decode(design, plan, load, y);

  SimulationReport report;
  report.diag = design.diag;
  for (int k = 0; k < 6; ++k) {
    const VectorXcd truth = true_streams(plan, load, k);
    DirectionReport dr;
    dr.from = plan.relabel.original(kDirections[k].first);
    dr.to = plan.relabel.original(kDirections[k].second);
    dr.streams = plan.d[k];
    if (truth.size() > 0) {
      const double denom = std::max(truth.norm(), 1e-300);
      dr.max_rel_error = (est.value[k] - truth).norm() / denom;
    }
    report.directions.push_back(dr);
    report.max_rel_error = std::max(report.max_rel_error, dr.max_rel_error);
  }
  return report;
}

SimulationReport estimate_rates(const TransceiverDesign& design,
                                const PatternPlan& plan,
                                const channel::DeactivatedChannel& ch,
                                const std::vector<double>& power_grid_db,
                                std::uint64_t /*seed*/) {
  if (power_grid_db.size() < 2) {
    throw std::invalid_argument("power grid needs at least 2 points");
  }
  SimulationReport report;
  report.diag = design.diag;
  const long long streams = plan.streams_total();
  if (streams == 0) {
    for (const double p_db : power_grid_db) {
      report.rate_points.push_back({p_db, 0.0, {}});
    }
    report.slope = 0;
    return report;
  }

  // Stream-to-relay map (columns in canonical direction order, p/c/r).
  MatrixXcd m_up = MatrixXcd::Zero(plan.relay_dims, streams);
  long long off = 0;
  for (int k = 0; k < 6; ++k) {
    const int from = kDirections[k].first;
    const auto& a = transceiver::uplink_of(plan, ch, from);
    for (const MatrixXcd* v :
         {&design.v.pattern[k], &design.v.cyclic[k], &design.v.residual[k]}) {
      if (v->cols() == 0) continue;
      m_up.middleCols(off, v->cols()) = a * *v;
      off += v->cols();
    }
  }

  const MatrixXcd tw = design.bc_zf * design.relay_zf;
  const double tw_map = (tw * m_up).squaredNorm();
  const double tw_noise = tw.squaredNorm();

  for (const double p_db : power_grid_db) {
    const double power = std::pow(10.0, p_db / 10.0);
    const double p_stream = power / static_cast<double>(streams);
    const double relay_out = p_stream * tw_map + tw_noise;
    const double beta_sq = relay_out > 0 ? power / relay_out : 1.0;

    RatePoint pt;
    pt.p_db = p_db;
    for (int k = 0; k < 6; ++k) {
      const int to = kDirections[k].second;
      const auto& c_rx = transceiver::downlink_of(plan, ch, to);
      const int orig_k = direction_index(
          plan.relabel.original(kDirections[k].first),
          plan.relabel.original(kDirections[k].second));
      for (const MatrixXcd* u :
           {&design.u.pattern[k], &design.u.cyclic[k], &design.u.residual[k]}) {
        if (u->rows() == 0) continue;
        const MatrixXcd relay_rows = *u * c_rx * tw;
        for (long long s = 0; s < u->rows(); ++s) {
          const double relay_var = beta_sq * relay_rows.row(s).squaredNorm();
          const double direct_var = u->row(s).squaredNorm();
          const double snr =
              beta_sq * p_stream / std::max(relay_var + direct_var, 1e-300);
          const double rate =
              std::log2(1.0 + snr) / static_cast<double>(plan.t);
          pt.sum_rate += rate;
          pt.per_direction[orig_k] += rate;
        }
      }
    }
    report.rate_points.push_back(pt);
  }
  report.slope = slope_fit(report.rate_points);
  return report;
}

MonteCarloReport monte_carlo(const AntennaConfig& config, const DofTuple& d,
                             long long trials, std::uint64_t seed_base,
                             Mode mode,
                             const std::vector<double>& power_grid_db) {
  const planner::PatternPlan p = planner::plan(d, config);
  MonteCarloReport agg;
  agg.trials = trials;
  double err_sum = 0;
  double slope_sum = 0;
  bool first_slope = true;
  for (long long trial = 0; trial < trials; ++trial) {
    const std::uint64_t seed = seed_base + static_cast<std::uint64_t>(trial);
    try {
      const auto ch = channel::sample(config, p.t, seed);
      const auto dch = channel::deactivate_dims(ch, p.relay_dims);
      const auto design = transceiver::design(p, dch);
      SimulationReport rep =
          mode == Mode::Noiseless
              ? run_noiseless(design, p, dch, seed ^ 0x5bd1e995ULL)
              : estimate_rates(design, p, dch, power_grid_db, seed);
      agg.successes += 1;
      agg.trial_errors.push_back(rep.max_rel_error);
      agg.max_rel_error = std::max(agg.max_rel_error, rep.max_rel_error);
      err_sum += rep.max_rel_error;
      if (mode == Mode::Rates) {
        slope_sum += rep.slope;
        if (first_slope) {
          agg.slope_min = agg.slope_max = rep.slope;
          first_slope = false;
        } else {
          agg.slope_min = std::min(agg.slope_min, rep.slope);
          agg.slope_max = std::max(agg.slope_max, rep.slope);
        }
      }
    } catch (const std::exception& e) {
      agg.failures.push_back("trial " + std::to_string(trial) + ": " +
                             e.what());
    }
  }
  if (agg.successes > 0) {
    agg.mean_rel_error = err_sum / static_cast<double>(agg.successes);
    if (mode == Mode::Rates) {
      agg.slope_mean = slope_sum / static_cast<double>(agg.successes);
    }
  }
  return agg;
}

}  // namespace yalign::simulate
