#pragma once

#include <Eigen/Dense>

#include <array>
#include <utility>
#include <vector>

#include "yalign/channel.hpp"
#include "yalign/planner.hpp"

namespace yalign::transceiver {

struct Diagnostics {
  double b_sigma_min{0};  // smallest singular value of the MAC B-stack
  double b_cond{0};
  double t_sigma_min{0};  // smallest singular value of the BC stack
  double t_cond{0};
};

// MAC precoders, indexed by (relabeled) direction. pattern[k] is M_i t wide
// by the NC pair weight, cyclic[k] by gamma, residual[k] by the residual
// stream count; all unused directions hold 0-column matrices.
struct MacPrecoders {
  std::array<Eigen::MatrixXcd, 6> pattern;
  std::array<Eigen::MatrixXcd, 6> cyclic;
  std::array<Eigen::MatrixXcd, 6> residual;
};

// BC receive-filter rows. For direction (i,j), the rows live at the
// receiving user j and have M_j t columns.
struct BcFilters {
  std::array<Eigen::MatrixXcd, 6> pattern;
  std::array<Eigen::MatrixXcd, 6> cyclic;
  std::array<Eigen::MatrixXcd, 6> residual;
};

struct TransceiverDesign {
  MacPrecoders v;
  BcFilters u;
  Eigen::MatrixXcd relay_zf;  // W, J x J
  Eigen::MatrixXcd bc_zf;     // T, J x J
  std::vector<long long> block_widths;  // widths of the relay blocks
  Diagnostics diag;
};

// Orthonormal basis of the right null space (columns), SVD-based, with
// rank tolerance max_dim * eps * sigma_max (or `tol` if positive).
Eigen::MatrixXcd kernel_basis(const Eigen::MatrixXcd& a, double tol = 0.0);

// Numerical rank with the same tolerance rule.
long long numerical_rank(const Eigen::MatrixXcd& a, double tol = 0.0);

// Effective uplink/downlink matrix of relabeled user a (1-based).
const Eigen::MatrixXcd& uplink_of(const planner::PatternPlan& plan,
                                  const channel::DeactivatedChannel& ch,
                                  int a);
const Eigen::MatrixXcd& downlink_of(const planner::PatternPlan& plan,
                                    const channel::DeactivatedChannel& ch,
                                    int a);

// Pairwise/cyclic alignment precoders from stacked null spaces, residual
// precoders random orthonormal; asserts the per-user rank conditions.
// Throws std::runtime_error on null-space deficiency or rank failure.
MacPrecoders design_mac_precoders(const planner::PatternPlan& plan,
                                  const channel::DeactivatedChannel& ch);

// W = inverse of the column concatenation of the relay blocks B_1..B_7.
Eigen::MatrixXcd design_relay_zf(const MacPrecoders& v,
                                 const planner::PatternPlan& plan,
                                 const channel::DeactivatedChannel& ch,
                                 Diagnostics* diag = nullptr);

// Receive filters from left null spaces of stacked downlink matrices, and
// T = inverse of the block-ordered row stack.
std::pair<BcFilters, Eigen::MatrixXcd> design_bc(
    const planner::PatternPlan& plan, const channel::DeactivatedChannel& ch,
    Diagnostics* diag = nullptr);

TransceiverDesign design(const planner::PatternPlan& plan,
                         const channel::DeactivatedChannel& ch);

}  // namespace yalign::transceiver
