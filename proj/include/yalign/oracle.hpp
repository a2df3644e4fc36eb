#pragma once

#include <string>
#include <vector>

#include "yalign/transceiver.hpp"

namespace yalign::oracle {

// Independent brute-force verdicts. Implemented with deliberately different
// algorithms from the primary modules (inequality scan vs tagged system,
// Bareiss/Cramer vs rational Gaussian elimination, column-pivoted QR vs SVD).
struct OracleVerdict {
  std::string subject;
  bool pass{false};
  std::string witness;  // always set on failure
};

// Membership in D* by a direct inequality scan with an independently
// generated permutation list.
OracleVerdict membership_lp(const AntennaConfig& config, const DofTuple& d);

// Complete vertex set by 6-subset enumeration solved with integer Bareiss
// determinants and Cramer's rule. Sorted lexicographically.
std::vector<DofTuple> vertices_bruteforce(const AntennaConfig& config);

// Recomputes every null-space dimension used by the transceiver via
// column-pivoted QR and compares with the rank-nullity predictions.
OracleVerdict rank_audit(const planner::PatternPlan& plan,
                         const channel::DeactivatedChannel& ch);

// Builds the explicit total linear map from all transmitted streams to all
// post-cancellation estimates and checks it equals the identity routing.
OracleVerdict end_to_end_matrix(const transceiver::TransceiverDesign& design,
                                const planner::PatternPlan& plan,
                                const channel::DeactivatedChannel& ch,
                                double tol = 1e-9);

}  // namespace yalign::oracle
