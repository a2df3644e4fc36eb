#include "yalign/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace yalign::oracle {

namespace {

using Eigen::MatrixXcd;
using planner::CaseLabel;
using planner::PatternPlan;

struct IntRow {
  std::array<long long, 6> coeffs{};
  long long rhs{0};
  std::string name;
};

// Independent constraint list (direct transcription, not via region::).
std::vector<IntRow> constraint_rows(const AntennaConfig& config) {
  std::vector<IntRow> rows;
  for (int k = 0; k < 6; ++k) {
    IntRow r;
    r.coeffs[k] = -1;
    r.rhs = 0;
    r.name = "nonnegativity of d_{" + std::to_string(kDirections[k].first) +
             "," + std::to_string(kDirections[k].second) + "}";
    rows.push_back(r);
  }
  for (int i = 1; i <= 3; ++i) {
    IntRow src;
    IntRow snk;
    for (int j = 1; j <= 3; ++j) {
      if (j == i) continue;
      src.coeffs[direction_index(i, j)] = 1;
      snk.coeffs[direction_index(j, i)] = 1;
    }
    src.rhs = snk.rhs = config.user(i);
    src.name = "source bound user " + std::to_string(i);
    snk.name = "sink bound user " + std::to_string(i);
    rows.push_back(src);
    rows.push_back(snk);
  }
  std::array<int, 3> p{1, 2, 3};
  do {
    IntRow r;
    r.coeffs[direction_index(p[0], p[1])] += 1;
    r.coeffs[direction_index(p[0], p[2])] += 1;
    r.coeffs[direction_index(p[1], p[2])] += 1;
    r.rhs = config.n;
    r.name = "relay bound permutation (" + std::to_string(p[0]) + "," +
             std::to_string(p[1]) + "," + std::to_string(p[2]) + ")";
    rows.push_back(r);
  } while (std::next_permutation(p.begin(), p.end()));
  return rows;
}

// Fraction-free Bareiss determinant of a 6x6 integer matrix.
long long bareiss_det6(std::array<std::array<long long, 6>, 6> a) {
  long long prev = 1;
  int sign = 1;
  for (int k = 0; k < 5; ++k) {
    if (a[k][k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < 6; ++r) {
        if (a[r][k] != 0) {
          swap_row = r;
          break;
        }
      }
      if (swap_row < 0) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < 6; ++i) {
      for (int j = k + 1; j < 6; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[5][5];
}

bool feasible(const std::vector<IntRow>& rows, const DofTuple& d,
              std::string* witness = nullptr) {
  for (const auto& r : rows) {
    Rat lhs(0);
    for (int k = 0; k < 6; ++k) {
      if (r.coeffs[k]) lhs += Rat(r.coeffs[k]) * d.d[k];
    }
    if (lhs > Rat(r.rhs)) {
      if (witness) *witness = r.name;
      return false;
    }
  }
  return true;
}

long long qr_rank(const MatrixXcd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::ColPivHouseholderQR<MatrixXcd> qr(m);
  return qr.rank();
}

}  // namespace

OracleVerdict membership_lp(const AntennaConfig& config, const DofTuple& d) {
  OracleVerdict v;
  v.subject = "membership of (" + dof_to_string(d) + ")";
  for (int k = 0; k < 6; ++k) {
    if (d.d[k] < Rat(0)) {
      v.witness = "nonnegativity of d[" + std::to_string(k) + "]";
      return v;
    }
  }
  std::string witness;
  if (!feasible(constraint_rows(config), d, &witness)) {
    v.witness = witness;
    return v;
  }
  v.pass = true;
  return v;
}

std::vector<DofTuple> vertices_bruteforce(const AntennaConfig& config) {
  const auto rows = constraint_rows(config);
  const int n = static_cast<int>(rows.size());
  std::vector<DofTuple> found;

  auto consider = [&](const std::array<int, 6>& subset) {
    std::array<std::array<long long, 6>, 6> a{};
    for (int r = 0; r < 6; ++r) a[r] = rows[subset[r]].coeffs;
    const long long det = bareiss_det6(a);
    if (det == 0) return;
    DofTuple x;
    for (int col = 0; col < 6; ++col) {
      auto ak = a;
      for (int r = 0; r < 6; ++r) {
        ak[r] = rows[subset[r]].coeffs;
        ak[r][col] = rows[subset[r]].rhs;
      }
      x.d[col] = Rat(bareiss_det6(ak), det);
    }
    if (!feasible(rows, x)) return;
    if (std::find(found.begin(), found.end(), x) == found.end()) {
      found.push_back(x);
    }
  };

  std::array<int, 6> s{};
  for (s[0] = 0; s[0] < n - 5; ++s[0])
    for (s[1] = s[0] + 1; s[1] < n - 4; ++s[1])
      for (s[2] = s[1] + 1; s[2] < n - 3; ++s[2])
        for (s[3] = s[2] + 1; s[3] < n - 2; ++s[3])
          for (s[4] = s[3] + 1; s[4] < n - 1; ++s[4])
            for (s[5] = s[4] + 1; s[5] < n; ++s[5]) consider(s);

  std::sort(found.begin(), found.end(), [](const DofTuple& a,
                                           const DofTuple& b) {
    for (int k = 0; k < 6; ++k) {
      if (a.d[k] != b.d[k]) return a.d[k] < b.d[k];
    }
    return false;
  });
  return found;
}

OracleVerdict rank_audit(const PatternPlan& plan,
                         const channel::DeactivatedChannel& ch) {
  OracleVerdict v;
  v.subject = "rank audit";

  auto slot_antennas = [&plan](int a) { return plan.antennas_per_slot(a); };
  auto predicted_pair = [&](int i, int j) {
    long long dim = 0;
    for (const long long k : ch.keep) {
      dim += std::max<long long>(0, slot_antennas(i) + slot_antennas(j) - k);
    }
    return dim;
  };

  const std::array<std::pair<int, int>, 3> pairs{{{1, 2}, {1, 3}, {2, 3}}};
  for (int k = 0; k < 3; ++k) {
    const auto [i, j] = pairs[k];
    const auto& ai = transceiver::uplink_of(plan, ch, i);
    const auto& aj = transceiver::uplink_of(plan, ch, j);
    MatrixXcd stacked(plan.relay_dims, ai.cols() + aj.cols());
    stacked << ai, -aj;
    const long long nullity = stacked.cols() - qr_rank(stacked);
    const long long predicted = predicted_pair(i, j);
    if (nullity != predicted) {
      v.witness = "pair (" + std::to_string(i) + "," + std::to_string(j) +
                  ") nullity " + std::to_string(nullity) + " != predicted " +
                  std::to_string(predicted);
      return v;
    }
    if (nullity < plan.pde[k]) {
      v.witness = "pair (" + std::to_string(i) + "," + std::to_string(j) +
                  ") nullity below pattern weight";
      return v;
    }
  }

  if (plan.case_label == CaseLabel::I) {
    const auto& a1 = transceiver::uplink_of(plan, ch, 1);
    const auto& a2 = transceiver::uplink_of(plan, ch, 2);
    const auto& a3 = transceiver::uplink_of(plan, ch, 3);
    MatrixXcd stacked(plan.relay_dims, a1.cols() + a2.cols() + a3.cols());
    stacked << a1, a2, -a3;
    const long long nullity = stacked.cols() - qr_rank(stacked);
    long long predicted = 0;
    for (const long long k : ch.keep) {
      predicted += std::max<long long>(
          0, slot_antennas(1) + slot_antennas(2) + slot_antennas(3) - k);
    }
    if (nullity != predicted) {
      v.witness = "triple stack nullity " + std::to_string(nullity) +
                  " != predicted " + std::to_string(predicted);
      return v;
    }
    if (nullity < plan.gamma) {
      v.witness = "triple stack nullity below gamma";
      return v;
    }
  }

  v.pass = true;
  return v;
}

OracleVerdict end_to_end_matrix(const transceiver::TransceiverDesign& design,
                                const PatternPlan& plan,
                                const channel::DeactivatedChannel& ch,
                                double tol) {
  OracleVerdict v;
  v.subject = "end-to-end matrix";

  const long long streams = plan.streams_total();
  if (streams == 0) {
    v.pass = true;
    return v;
  }

  // Column/row offset of each (direction, kind) stream block, canonical
  // direction order with kinds p, c, r.
  std::array<long long, 6> off_p{};
  std::array<long long, 6> off_c{};
  std::array<long long, 6> off_r{};
  long long off = 0;
  for (int k = 0; k < 6; ++k) {
    off_p[k] = off;
    off += design.v.pattern[k].cols();
    off_c[k] = off;
    off += design.v.cyclic[k].cols();
    off_r[k] = off;
    off += design.v.residual[k].cols();
  }

  MatrixXcd m_up = MatrixXcd::Zero(plan.relay_dims, streams);
  for (int k = 0; k < 6; ++k) {
    const auto& a = transceiver::uplink_of(plan, ch, kDirections[k].first);
    if (design.v.pattern[k].cols()) {
      m_up.middleCols(off_p[k], design.v.pattern[k].cols()) =
          a * design.v.pattern[k];
    }
    if (design.v.cyclic[k].cols()) {
      m_up.middleCols(off_c[k], design.v.cyclic[k].cols()) =
          a * design.v.cyclic[k];
    }
    if (design.v.residual[k].cols()) {
      m_up.middleCols(off_r[k], design.v.residual[k].cols()) =
          a * design.v.residual[k];
    }
  }

  const MatrixXcd relay_chain = design.bc_zf * design.relay_zf * m_up;
  std::array<MatrixXcd, 3> rx_chain;  // user a: M_a t x streams
  for (int a = 1; a <= 3; ++a) {
    rx_chain[a - 1] = transceiver::downlink_of(plan, ch, a) * relay_chain;
  }

  MatrixXcd total = MatrixXcd::Zero(streams, streams);
  auto ident = [streams](long long rows, long long col_off) {
    MatrixXcd m = MatrixXcd::Zero(rows, streams);
    for (long long r = 0; r < rows; ++r) m(r, col_off + r) = 1.0;
    return m;
  };

  for (int k = 0; k < 6; ++k) {
    const auto [from, to] = kDirections[k];
    const MatrixXcd& y = rx_chain[to - 1];
    if (design.u.pattern[k].rows()) {
      const int rev = direction_index(to, from);
      total.middleRows(off_p[k], design.u.pattern[k].rows()) =
          design.u.pattern[k] * y -
          ident(design.u.pattern[k].rows(), off_p[rev]);
    }
    if (design.u.cyclic[k].rows()) {
      if (from == 3 && to == 1) {
        total.middleRows(off_c[k], plan.gamma) =
            design.u.cyclic[k] * y -
            ident(plan.gamma, off_c[direction_index(1, 2)]);
      } else if (from == 1 && to == 2) {
        total.middleRows(off_c[k], plan.gamma) =
            ident(plan.gamma, off_c[direction_index(2, 3)]) -
            design.u.cyclic[k] * y;
      } else {
        total.middleRows(off_c[k], plan.gamma) =
            design.u.cyclic[k] * y -
            ident(plan.gamma, off_c[direction_index(3, 1)]);
      }
    }
    if (design.u.residual[k].rows()) {
      total.middleRows(off_r[k], design.u.residual[k].rows()) =
          design.u.residual[k] * y;
    }
  }

  const MatrixXcd deviation =
      total - MatrixXcd::Identity(streams, streams);
  Eigen::Index worst_r = 0;
  Eigen::Index worst_c = 0;
  const double worst = deviation.cwiseAbs().maxCoeff(&worst_r, &worst_c);
  if (worst > tol) {
    // Name the direction owning the worst row.
    std::string dir = "?";
    for (int k = 0; k < 6; ++k) {
      const long long lo = off_p[k];
      const long long hi =
          k == 5 ? streams : off_p[k + 1];
      if (worst_r >= lo && worst_r < hi) {
        dir = std::to_string(plan.relabel.original(kDirections[k].first)) +
              "->" +
              std::to_string(plan.relabel.original(kDirections[k].second));
        break;
      }
    }
    v.witness = "deviation " + std::to_string(worst) +
                " at recovered stream of direction " + dir;
    return v;
  }
  v.pass = true;
  return v;
}

}  // namespace yalign::oracle
