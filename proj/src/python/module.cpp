// Python bindings for the main operations. Structured results cross the
// boundary as JSON strings; the yalign package parses them into dicts.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "yalign/channel.hpp"
#include "yalign/oracle.hpp"
#include "yalign/planner.hpp"
#include "yalign/region.hpp"
#include "yalign/serialize.hpp"
#include "yalign/simulate.hpp"
#include "yalign/transceiver.hpp"

namespace py = pybind11;
using namespace yalign;

namespace {

AntennaConfig make_config(int m1, int m2, int m3, int n) {
  AntennaConfig cfg{m1, m2, m3, n};
  cfg.validate();
  return cfg;
}

DofTuple make_dof(const std::vector<std::string>& entries) {
  if (entries.size() != 6) {
    throw std::invalid_argument("DoF tuple needs 6 entries");
  }
  DofTuple d;
  for (int k = 0; k < 6; ++k) d.d[k] = parse_rational(entries[k]);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "DoF region and signal-alignment toolkit for the three-user "
            "MIMO Y channel (C++ core)";

  m.def(
      "region_json",
      [](int m1, int m2, int m3, int n, bool with_vertices) {
        const auto system = region::build_region(make_config(m1, m2, m3, n));
        std::optional<region::VertexSet> vs;
        if (with_vertices) vs = region::enumerate_vertices(system);
        return serialize::region_json(system, vs).dump();
      },
      py::arg("m1"), py::arg("m2"), py::arg("m3"), py::arg("n"),
      py::arg("with_vertices") = false,
      "Halfspace system (and optionally the vertex set) of the DoF region.");

  m.def(
      "contains",
      [](int m1, int m2, int m3, int n,
         const std::vector<std::string>& dof) {
        const auto system = region::build_region(make_config(m1, m2, m3, n));
        return region::contains(system, make_dof(dof));
      },
      py::arg("m1"), py::arg("m2"), py::arg("m3"), py::arg("n"),
      py::arg("dof"), "Exact membership test of a DoF tuple in the region.");

  m.def(
      "max_weighted",
      [](int m1, int m2, int m3, int n,
         const std::vector<std::string>& weights) {
        const auto system = region::build_region(make_config(m1, m2, m3, n));
        std::array<Rat, 6> w;
        if (weights.size() != 6) {
          throw std::invalid_argument("need 6 weights");
        }
        for (int k = 0; k < 6; ++k) w[k] = parse_rational(weights[k]);
        const auto best = region::max_weighted(system, w);
        nlohmann::json j;
        j["value"] = rat_to_string(best.value);
        j["argmax"] = dof_to_string(best.argmax);
        return j.dump();
      },
      py::arg("m1"), py::arg("m2"), py::arg("m3"), py::arg("n"),
      py::arg("weights"),
      "Maximum weighted DoF sum over the region, with an argmax vertex.");

  m.def(
      "plan_json",
      [](int m1, int m2, int m3, int n,
         const std::vector<std::string>& dof) {
        const auto cfg = make_config(m1, m2, m3, n);
        const auto p = planner::plan(make_dof(dof), cfg);
        nlohmann::json j = serialize::plan_json(p);
        j["feasibility"] =
            serialize::feasibility_json(planner::feasibility_report(p, cfg));
        return j.dump();
      },
      py::arg("m1"), py::arg("m2"), py::arg("m3"), py::arg("n"),
      py::arg("dof"),
      "PDE/CDE pattern decomposition and feasibility report.");

  m.def(
      "monte_carlo_json",
      [](int m1, int m2, int m3, int n, const std::vector<std::string>& dof,
         long long trials, std::uint64_t seed_base, const std::string& mode,
         const std::vector<double>& power_grid_db) {
        const auto cfg = make_config(m1, m2, m3, n);
        const auto agg = simulate::monte_carlo(
            cfg, make_dof(dof), trials, seed_base,
            mode == "rates" ? simulate::Mode::Rates
                            : simulate::Mode::Noiseless,
            power_grid_db);
        return serialize::monte_carlo_json(agg).dump();
      },
      py::arg("m1"), py::arg("m2"), py::arg("m3"), py::arg("n"),
      py::arg("dof"), py::arg("trials") = 10, py::arg("seed_base") = 1,
      py::arg("mode") = "noiseless",
      py::arg("power_grid_db") = std::vector<double>{40, 50, 60},
      "Seeded Monte Carlo synthesis and recovery/rate statistics.");

  m.def(
      "verify_json",
      [](int m1, int m2, int m3, int n, const std::vector<std::string>& dof,
         std::uint64_t seed) {
        const auto cfg = make_config(m1, m2, m3, n);
        const auto d = make_dof(dof);
        nlohmann::json j = nlohmann::json::array();
        const auto membership = oracle::membership_lp(cfg, d);
        j.push_back(serialize::verdict_json(membership));
        if (membership.pass) {
          const auto p = planner::plan(d, cfg);
          const auto ch = channel::sample(cfg, p.t, seed);
          const auto dch = channel::deactivate_dims(ch, p.relay_dims);
          j.push_back(serialize::verdict_json(oracle::rank_audit(p, dch)));
          const auto design = transceiver::design(p, dch);
          j.push_back(serialize::verdict_json(
              oracle::end_to_end_matrix(design, p, dch)));
        }
        return j.dump();
      },
      py::arg("m1"), py::arg("m2"), py::arg("m3"), py::arg("n"),
      py::arg("dof"), py::arg("seed") = 1,
      "Independent oracle verdicts: membership, rank audit, end-to-end map.");
}
