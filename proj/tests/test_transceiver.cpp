#include <doctest.h>

#include "yalign/planner.hpp"
#include "yalign/transceiver.hpp"

using namespace yalign;
using Eigen::MatrixXcd;

namespace {

struct Instance {
  planner::PatternPlan plan;
  channel::DeactivatedChannel ch;
};

Instance make(const std::string& dof, const AntennaConfig& cfg,
              std::uint64_t seed) {
  Instance inst;
  inst.plan = planner::plan(parse_dof(dof), cfg);
  const auto raw = channel::sample(cfg, inst.plan.t, seed);
  inst.ch = channel::deactivate_dims(raw, inst.plan.relay_dims);
  return inst;
}

double rel_residual(const MatrixXcd& lhs, const MatrixXcd& rhs) {
  const double scale = std::max(lhs.norm(), 1e-300);
  return (lhs - rhs).norm() / scale;
}

// Reassembles the relay B-stack exactly as the zero-forcing step defines it.
MatrixXcd b_stack(const transceiver::MacPrecoders& v,
                  const planner::PatternPlan& p,
                  const channel::DeactivatedChannel& ch) {
  const MatrixXcd& a1 = transceiver::uplink_of(p, ch, 1);
  const MatrixXcd& a2 = transceiver::uplink_of(p, ch, 2);
  const MatrixXcd& a3 = transceiver::uplink_of(p, ch, 3);
  std::vector<MatrixXcd> cols;
  cols.push_back(a1 * v.pattern[direction_index(1, 2)]);
  cols.push_back(a1 * v.pattern[direction_index(1, 3)]);
  cols.push_back(a2 * v.pattern[direction_index(2, 3)]);
  if (p.case_label == planner::CaseLabel::I) {
    cols.push_back(a1 * v.cyclic[direction_index(1, 2)]);
    cols.push_back(a2 * v.cyclic[direction_index(2, 3)]);
    cols.push_back(a2 * v.residual[direction_index(2, 3)]);
    cols.push_back(a3 * v.residual[direction_index(3, 1)]);
  } else {
    cols.push_back(a1 * v.residual[direction_index(1, 2)]);
    cols.push_back(a1 * v.residual[direction_index(1, 3)]);
    cols.push_back(a2 * v.residual[direction_index(2, 3)]);
  }
  MatrixXcd b(p.relay_dims, p.relay_dims);
  long long off = 0;
  for (const auto& c : cols) {
    b.middleCols(off, c.cols()) = c;
    off += c.cols();
  }
  return b;
}

}  // namespace

TEST_CASE("null-space dimensions match rank-nullity") {
  const auto inst = make("2,0,0,2,2,0", {3, 2, 2, 4}, 4);
  const MatrixXcd& a1 = transceiver::uplink_of(inst.plan, inst.ch, 1);
  const MatrixXcd& a2 = transceiver::uplink_of(inst.plan, inst.ch, 2);
  const MatrixXcd& a3 = transceiver::uplink_of(inst.plan, inst.ch, 3);

  MatrixXcd pair(4, 5);
  pair << a1, -a2;
  CHECK(transceiver::kernel_basis(pair).cols() == 1);

  MatrixXcd triple(4, 7);
  triple << a1, a2, -a3;
  CHECK(transceiver::kernel_basis(triple).cols() == 3);
}

TEST_CASE("null-space dimensions double under two-slot extension") {
  const AntennaConfig cfg{3, 2, 2, 4};
  const auto raw = channel::sample(cfg, 2, 4);
  const auto ch = channel::deactivate(raw, 4);
  MatrixXcd pair(8, 10);
  pair << ch.uplink[0], -ch.uplink[1];
  CHECK(transceiver::kernel_basis(pair).cols() == 2);
  MatrixXcd triple(8, 14);
  triple << ch.uplink[0], ch.uplink[1], -ch.uplink[2];
  CHECK(transceiver::kernel_basis(triple).cols() == 6);
}

TEST_CASE("zero-weight patterns yield empty precoder blocks") {
  const auto inst = make("2,0,0,2,2,0", {3, 2, 2, 4}, 4);
  const auto v = transceiver::design_mac_precoders(inst.plan, inst.ch);
  for (int k = 0; k < 3; ++k) CHECK(inst.plan.pde[k] == 0);
  for (int k = 0; k < 6; ++k) {
    CHECK(v.pattern[k].cols() == 0);
  }
  CHECK(v.cyclic[direction_index(1, 2)].cols() == 2);
  CHECK(v.cyclic[direction_index(2, 3)].cols() == 2);
  CHECK(v.cyclic[direction_index(3, 1)].cols() == 2);
}

TEST_CASE("alignment residuals on the MAC side") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto inst = make("1,1,1,1,1,1", {2, 2, 2, 3}, seed);
    const auto v = transceiver::design_mac_precoders(inst.plan, inst.ch);
    const MatrixXcd& a1 = transceiver::uplink_of(inst.plan, inst.ch, 1);
    const MatrixXcd& a2 = transceiver::uplink_of(inst.plan, inst.ch, 2);
    const MatrixXcd& a3 = transceiver::uplink_of(inst.plan, inst.ch, 3);
    CHECK(rel_residual(a1 * v.pattern[direction_index(1, 2)],
                       a2 * v.pattern[direction_index(2, 1)]) < 1e-9);
    CHECK(rel_residual(a1 * v.pattern[direction_index(1, 3)],
                       a3 * v.pattern[direction_index(3, 1)]) < 1e-9);
    CHECK(rel_residual(a2 * v.pattern[direction_index(2, 3)],
                       a3 * v.pattern[direction_index(3, 2)]) < 1e-9);
  }
}

TEST_CASE("cyclic alignment residual on the MAC side") {
  const auto inst = make("2,0,0,2,2,0", {3, 2, 2, 4}, 6);
  const auto v = transceiver::design_mac_precoders(inst.plan, inst.ch);
  const MatrixXcd& a1 = transceiver::uplink_of(inst.plan, inst.ch, 1);
  const MatrixXcd& a2 = transceiver::uplink_of(inst.plan, inst.ch, 2);
  const MatrixXcd& a3 = transceiver::uplink_of(inst.plan, inst.ch, 3);
  const MatrixXcd lhs = a1 * v.cyclic[direction_index(1, 2)] +
                        a2 * v.cyclic[direction_index(2, 3)];
  CHECK(rel_residual(lhs, a3 * v.cyclic[direction_index(3, 1)]) < 1e-9);
}

TEST_CASE("receive filters satisfy the mirrored alignment conditions") {
  const auto inst = make("1,1,1,1,1,1", {2, 2, 2, 3}, 8);
  const auto [u, t] = transceiver::design_bc(inst.plan, inst.ch);
  const MatrixXcd& c1 = transceiver::downlink_of(inst.plan, inst.ch, 1);
  const MatrixXcd& c2 = transceiver::downlink_of(inst.plan, inst.ch, 2);
  const MatrixXcd& c3 = transceiver::downlink_of(inst.plan, inst.ch, 3);
  CHECK(rel_residual(u.pattern[direction_index(2, 1)] * c1,
                     u.pattern[direction_index(1, 2)] * c2) < 1e-9);
  CHECK(rel_residual(u.pattern[direction_index(3, 1)] * c1,
                     u.pattern[direction_index(1, 3)] * c3) < 1e-9);
  CHECK(rel_residual(u.pattern[direction_index(3, 2)] * c2,
                     u.pattern[direction_index(2, 3)] * c3) < 1e-9);
}

TEST_CASE("cyclic receive rows combine blocks 4 and 5") {
  const auto inst = make("2,0,0,2,2,0", {3, 2, 2, 4}, 8);
  const auto [u, t] = transceiver::design_bc(inst.plan, inst.ch);
  const MatrixXcd& c1 = transceiver::downlink_of(inst.plan, inst.ch, 1);
  const MatrixXcd& c2 = transceiver::downlink_of(inst.plan, inst.ch, 2);
  const MatrixXcd& c3 = transceiver::downlink_of(inst.plan, inst.ch, 3);
  // User 2's cyclic rows see block 5 minus block 4.
  const MatrixXcd lhs = u.cyclic[direction_index(1, 2)] * c2;
  const MatrixXcd rhs = u.cyclic[direction_index(2, 3)] * c3 -
                        u.cyclic[direction_index(3, 1)] * c1;
  CHECK(rel_residual(lhs, rhs) < 1e-9);
}

TEST_CASE("W inverts the relay B-stack") {
  for (const char* dof : {"2,0,0,2,2,0", "1,1,1,1,1,1"}) {
    const AntennaConfig cfg =
        std::string(dof) == "2,0,0,2,2,0" ? AntennaConfig{3, 2, 2, 4}
                                          : AntennaConfig{2, 2, 2, 3};
    const auto inst = make(dof, cfg, 10);
    const auto v = transceiver::design_mac_precoders(inst.plan, inst.ch);
    const auto w = transceiver::design_relay_zf(v, inst.plan, inst.ch);
    const MatrixXcd b = b_stack(v, inst.plan, inst.ch);
    const MatrixXcd eye =
        MatrixXcd::Identity(inst.plan.relay_dims, inst.plan.relay_dims);
    CHECK((w * b - eye).norm() < 1e-9 * std::max(1.0, b.norm()));
  }
}

TEST_CASE("block widths follow the plan layout") {
  {
    const auto inst = make("2,0,0,2,2,0", {3, 2, 2, 4}, 12);
    const auto d = transceiver::design(inst.plan, inst.ch);
    CHECK(d.block_widths == std::vector<long long>{0, 0, 0, 2, 2, 0, 0});
  }
  {
    const auto inst = make("1,1,0,1,0,0", {2, 1, 2, 3}, 12);
    const auto d = transceiver::design(inst.plan, inst.ch);
    CHECK(d.block_widths == std::vector<long long>{0, 0, 0, 1, 1, 1});
    long long sum = 0;
    for (const auto w : d.block_widths) sum += w;
    CHECK(sum == 3);
  }
}

TEST_CASE("T routes receive-filter rows to their relay blocks") {
  const auto inst = make("1,1,1,1,1,1", {2, 2, 2, 3}, 14);
  const auto design = transceiver::design(inst.plan, inst.ch);
  const MatrixXcd& c1 = transceiver::downlink_of(inst.plan, inst.ch, 1);
  // Block 1 has width 1 at offset 0: the pattern rows of direction 2->1
  // composed with C1 and T select exactly that block.
  const MatrixXcd sel =
      design.u.pattern[direction_index(2, 1)] * c1 * design.bc_zf;
  MatrixXcd expect = MatrixXcd::Zero(1, inst.plan.relay_dims);
  expect(0, 0) = 1.0;
  CHECK((sel - expect).norm() < 1e-9);
}

TEST_CASE("gamma-zero plans carry no cyclic rows") {
  const auto inst = make("1,1,1,1,1,1", {2, 2, 2, 3}, 16);
  const auto [u, t] = transceiver::design_bc(inst.plan, inst.ch);
  for (int k = 0; k < 6; ++k) CHECK(u.cyclic[k].rows() == 0);
  CHECK(t.rows() == 3);
}

TEST_CASE("per-user stacked precoders and filters have full rank") {
  const auto inst = make("2,0,0,2,2,0", {3, 2, 2, 4}, 18);
  const auto design = transceiver::design(inst.plan, inst.ch);
  for (int user = 1; user <= 3; ++user) {
    long long tx = 0, rx = 0;
    std::vector<MatrixXcd> tx_parts, rx_parts;
    for (int other = 1; other <= 3; ++other) {
      if (other == user) continue;
      const int out = direction_index(user, other);
      const int in = direction_index(other, user);
      tx += inst.plan.d[out];
      rx += inst.plan.d[in];
      tx_parts.push_back(design.v.pattern[out]);
      tx_parts.push_back(design.v.cyclic[out]);
      tx_parts.push_back(design.v.residual[out]);
      rx_parts.push_back(design.u.pattern[in]);
      rx_parts.push_back(design.u.cyclic[in]);
      rx_parts.push_back(design.u.residual[in]);
    }
    MatrixXcd tx_stack(inst.plan.m[user - 1], tx);
    long long off = 0;
    for (const auto& p : tx_parts) {
      tx_stack.middleCols(off, p.cols()) = p;
      off += p.cols();
    }
    MatrixXcd rx_stack(rx, inst.plan.m[user - 1]);
    off = 0;
    for (const auto& p : rx_parts) {
      rx_stack.middleRows(off, p.rows()) = p;
      off += p.rows();
    }
    CHECK(transceiver::numerical_rank(tx_stack) == tx);
    CHECK(transceiver::numerical_rank(rx_stack) == rx);
  }
}

TEST_CASE("diagnostics report finite conditioning") {
  const auto inst = make("2,0,0,2,2,0", {3, 2, 2, 4}, 20);
  const auto design = transceiver::design(inst.plan, inst.ch);
  CHECK(design.diag.b_sigma_min > 0);
  CHECK(design.diag.t_sigma_min > 0);
  CHECK(std::isfinite(design.diag.b_cond));
  CHECK(std::isfinite(design.diag.t_cond));
}
