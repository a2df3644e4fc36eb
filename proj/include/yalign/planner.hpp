#pragma once

#include <string>
#include <utility>
#include <vector>

#include "yalign/types.hpp"

namespace yalign::planner {

// User relabeling: relabeled user a corresponds to original user
// to_original[a-1].
struct Relabeling {
  std::array<int, 3> to_original{1, 2, 3};

  int original(int relabeled) const { return to_original[relabeled - 1]; }
  int relabeled(int original_user) const;
  Relabeling inverse() const;
  DofTuple apply(const DofTuple& d) const;  // d'(a,b) = d(orig(a), orig(b))
  bool operator==(const Relabeling&) const = default;
};

enum class CaseLabel { I, II };

enum class BlockKind { NcPair, CdeSumA, CdeSumB, Residual };

// One relay decoding block. For NcPair, (from, to) names the pair direction
// with the larger DoF; for Residual it names the residual stream direction.
struct RelayBlock {
  BlockKind kind{BlockKind::NcPair};
  int from{0};
  int to{0};
  long long size{0};
  std::string label;
};

// Decomposition of an (integerized, relabeled) DoF tuple into PDE/CDE
// patterns plus residual streams. All counts are in relabeled coordinates
// scaled by the extension factor t, so everything is integer.
struct PatternPlan {
  CaseLabel case_label{CaseLabel::I};
  Relabeling relabel;
  long long t{1};
  std::array<long long, 6> d{};  // relabeled DoF, scaled by t
  std::array<long long, 3> m{};  // relabeled user antennas, scaled by t
  long long n{0};                // relay antennas, scaled by t
  std::array<long long, 3> pde{};      // NC weights, pairs (1,2),(1,3),(2,3)
  long long gamma{0};                  // CDE 1->2->3->1 weight (0 in Case II)
  std::array<long long, 6> residual{};  // residual stream count per direction
  long long relay_dims{0};             // J, scaled by t
  std::vector<RelayBlock> blocks;

  long long dir(int from, int to) const {
    return d[direction_index(from, to)];
  }
  long long res(int from, int to) const {
    return residual[direction_index(from, to)];
  }
  long long streams_total() const;
  // Antennas per extension slot at relabeled user a (m[a-1] / t).
  long long antennas_per_slot(int a) const { return m[a - 1] / t; }
};

// Least common multiple of the entry denominators, and t*d as integers.
std::pair<long long, std::array<long long, 6>> integerize(const DofTuple& d);

// Finds a relabeling under which d satisfies Case I (d12>=d21, d31>=d13,
// d23>=d32) or Case II (d12>=d21, d13>d31, d23>=d32). Case I is preferred;
// within Case I the cycle is rotated so gamma = d12-d21 is the minimum
// excess (ties broken by smallest rotation).
std::pair<Relabeling, CaseLabel> classify(const DofTuple& d);

// Full pattern decomposition. Throws std::domain_error("not in D*: ...")
// naming the violated halfspace when d is outside the region.
PatternPlan plan(const DofTuple& d, const AntennaConfig& config);

struct FeasibilityCheck {
  std::string name;
  long long lhs{0};
  long long rhs{0};
  bool ok{false};  // lhs <= rhs
};

struct FeasibilityReport {
  std::vector<FeasibilityCheck> checks;
  bool ok() const;
  std::string first_failure() const;
};

// Evaluates the pairwise/cyclic alignment conditions, the per-user
// transmit/receive dimension bounds, and J <= N*t, in relabeled scaled
// coordinates. All must hold for in-region tuples.
FeasibilityReport feasibility_report(const PatternPlan& plan,
                                     const AntennaConfig& config);

}  // namespace yalign::planner
