#include "yalign/transceiver.hpp"

#include <random>
#include <stdexcept>

namespace yalign::transceiver {

namespace {

using Eigen::MatrixXcd;
using planner::CaseLabel;
using planner::PatternPlan;

double rank_tolerance(const Eigen::JacobiSVD<MatrixXcd>& svd, long long rows,
                      long long cols, double tol) {
  if (tol > 0) return tol;
  if (svd.singularValues().size() == 0) return 0;
  return static_cast<double>(std::max(rows, cols)) *
         std::numeric_limits<double>::epsilon() * svd.singularValues()(0);
}

MatrixXcd random_gaussian(std::mt19937_64& rng, long long rows,
                          long long cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  MatrixXcd m(rows, cols);
  for (long long r = 0; r < rows; ++r) {
    for (long long c = 0; c < cols; ++c) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      m(r, c) = std::complex<double>(re, im) * 0.7071067811865476;
    }
  }
  return m;
}

// Random matrix with orthonormal columns.
MatrixXcd random_orthonormal(std::mt19937_64& rng, long long rows,
                             long long cols) {
  if (cols == 0) return MatrixXcd(rows, 0);
  const MatrixXcd g = random_gaussian(rng, rows, cols);
  Eigen::HouseholderQR<MatrixXcd> qr(g);
  return MatrixXcd(qr.householderQ()) .leftCols(cols);
}

// Picks `want` orthonormal vectors from the span of `kernel`. The extended
// channels are block diagonal across slots, so a raw SVD basis can localize
// in one slot and leave zero rows in the relay's B-matrix; a random unitary
// mix of the basis avoids that almost surely.
MatrixXcd mix_kernel(const MatrixXcd& kernel, long long want,
                     std::mt19937_64& rng) {
  if (kernel.cols() == want) return kernel;
  return kernel * random_orthonormal(rng, kernel.cols(), want);
}

MatrixXcd hstack(const std::vector<const MatrixXcd*>& parts, long long rows) {
  long long cols = 0;
  for (const auto* p : parts) cols += p->cols();
  MatrixXcd out(rows, cols);
  long long off = 0;
  for (const auto* p : parts) {
    out.middleCols(off, p->cols()) = *p;
    off += p->cols();
  }
  return out;
}

MatrixXcd vstack(const std::vector<MatrixXcd>& parts, long long cols) {
  long long rows = 0;
  for (const auto& p : parts) rows += p.rows();
  MatrixXcd out(rows, cols);
  long long off = 0;
  for (const auto& p : parts) {
    out.middleRows(off, p.rows()) = p;
    off += p.rows();
  }
  return out;
}

MatrixXcd invert_square(const MatrixXcd& m, const std::string& what,
                        double* sigma_min, double* cond) {
  const long long n = m.rows();
  if (n == 0) {
    if (sigma_min) *sigma_min = 0;
    if (cond) *cond = 1;
    return MatrixXcd(0, 0);
  }
  Eigen::JacobiSVD<MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  const double tol = rank_tolerance(svd, n, n, 0.0);
  if (sv(sv.size() - 1) <= tol) {
    throw std::runtime_error(what + " rank deficient");
  }
  if (sigma_min) *sigma_min = sv(sv.size() - 1);
  if (cond) *cond = sv(0) / sv(sv.size() - 1);
  return m.partialPivLu().inverse();
}

}  // namespace

MatrixXcd kernel_basis(const MatrixXcd& a, double tol) {
  if (a.cols() == 0) return MatrixXcd(0, 0);
  if (a.rows() == 0) return MatrixXcd::Identity(a.cols(), a.cols());
  Eigen::JacobiSVD<MatrixXcd> svd(a, Eigen::ComputeFullV);
  const double threshold = rank_tolerance(svd, a.rows(), a.cols(), tol);
  long long rank = 0;
  for (long long k = 0; k < svd.singularValues().size(); ++k) {
    if (svd.singularValues()(k) > threshold) ++rank;
  }
  return svd.matrixV().rightCols(a.cols() - rank);
}

long long numerical_rank(const MatrixXcd& a, double tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<MatrixXcd> svd(a);
  const double threshold = rank_tolerance(svd, a.rows(), a.cols(), tol);
  long long rank = 0;
  for (long long k = 0; k < svd.singularValues().size(); ++k) {
    if (svd.singularValues()(k) > threshold) ++rank;
  }
  return rank;
}

const MatrixXcd& uplink_of(const PatternPlan& plan,
                           const channel::DeactivatedChannel& ch, int a) {
  return ch.uplink[plan.relabel.original(a) - 1];
}

const MatrixXcd& downlink_of(const PatternPlan& plan,
                             const channel::DeactivatedChannel& ch, int a) {
  return ch.downlink[plan.relabel.original(a) - 1];
}

MacPrecoders design_mac_precoders(const PatternPlan& plan,
                                  const channel::DeactivatedChannel& ch) {
  MacPrecoders v;
  for (int k = 0; k < 6; ++k) {
    const long long rows = plan.m[kDirections[k].first - 1];
    v.pattern[k] = MatrixXcd(rows, 0);
    v.cyclic[k] = MatrixXcd(rows, 0);
    v.residual[k] = MatrixXcd(rows, 0);
  }

  const std::array<const MatrixXcd*, 3> a{&uplink_of(plan, ch, 1),
                                          &uplink_of(plan, ch, 2),
                                          &uplink_of(plan, ch, 3)};
  const long long j_dims = plan.relay_dims;
  std::mt19937_64 mix_rng(ch.seed ^ 0xd6e8feb86659fd93ULL);

  const std::array<std::pair<int, int>, 3> pairs{{{1, 2}, {1, 3}, {2, 3}}};
  for (int k = 0; k < 3; ++k) {
    const auto [i, j] = pairs[k];
    const long long w = plan.pde[k];
    if (w == 0) continue;
    MatrixXcd stacked(j_dims, a[i - 1]->cols() + a[j - 1]->cols());
    stacked << *a[i - 1], -*a[j - 1];
    const MatrixXcd kernel = kernel_basis(stacked);
    if (kernel.cols() < w) {
      throw std::runtime_error(
          "alignment infeasible at runtime: pair (" + std::to_string(i) + "," +
          std::to_string(j) + ") null space dim " +
          std::to_string(kernel.cols()) + " < " + std::to_string(w));
    }
    const MatrixXcd basis = mix_kernel(kernel, w, mix_rng);
    v.pattern[direction_index(i, j)] = basis.topRows(a[i - 1]->cols());
    v.pattern[direction_index(j, i)] = basis.bottomRows(a[j - 1]->cols());
  }

  if (plan.case_label == CaseLabel::I && plan.gamma > 0) {
    MatrixXcd stacked(j_dims,
                      a[0]->cols() + a[1]->cols() + a[2]->cols());
    stacked << *a[0], *a[1], -*a[2];
    const MatrixXcd kernel = kernel_basis(stacked);
    if (kernel.cols() < plan.gamma) {
      throw std::runtime_error(
          "alignment infeasible at runtime: cyclic null space dim " +
          std::to_string(kernel.cols()) + " < " + std::to_string(plan.gamma));
    }
    const MatrixXcd basis = mix_kernel(kernel, plan.gamma, mix_rng);
    v.cyclic[direction_index(1, 2)] = basis.topRows(a[0]->cols());
    v.cyclic[direction_index(2, 3)] = basis.middleRows(a[0]->cols(),
                                                       a[1]->cols());
    v.cyclic[direction_index(3, 1)] = basis.bottomRows(a[2]->cols());
  }

  std::mt19937_64 rng(ch.seed ^ 0x9e3779b97f4a7c15ULL);
  for (int k = 0; k < 6; ++k) {
    const long long r = plan.residual[k];
    if (r == 0) continue;
    v.residual[k] =
        random_orthonormal(rng, plan.m[kDirections[k].first - 1], r);
  }

  // Separability of each user's transmit streams.
  for (int user = 1; user <= 3; ++user) {
    std::vector<const MatrixXcd*> parts;
    long long total = 0;
    for (int other = 1; other <= 3; ++other) {
      if (other == user) continue;
      const int k = direction_index(user, other);
      parts.insert(parts.end(),
                   {&v.pattern[k], &v.cyclic[k], &v.residual[k]});
      total += plan.d[k];
    }
    if (total == 0) continue;
    const MatrixXcd stacked = hstack(parts, plan.m[user - 1]);
    if (numerical_rank(stacked) != total) {
      throw std::runtime_error("transmit rank condition failed at user " +
                               std::to_string(user));
    }
  }
  return v;
}

MatrixXcd design_relay_zf(const MacPrecoders& v, const PatternPlan& plan,
                          const channel::DeactivatedChannel& ch,
                          Diagnostics* diag) {
  const std::array<const MatrixXcd*, 3> a{&uplink_of(plan, ch, 1),
                                          &uplink_of(plan, ch, 2),
                                          &uplink_of(plan, ch, 3)};
  std::vector<MatrixXcd> cols;
  cols.push_back(*a[0] * v.pattern[direction_index(1, 2)]);
  cols.push_back(*a[0] * v.pattern[direction_index(1, 3)]);
  cols.push_back(*a[1] * v.pattern[direction_index(2, 3)]);
  if (plan.case_label == CaseLabel::I) {
    cols.push_back(*a[0] * v.cyclic[direction_index(1, 2)]);   // B4
    cols.push_back(*a[1] * v.cyclic[direction_index(2, 3)]);   // B5
    cols.push_back(*a[1] * v.residual[direction_index(2, 3)]); // B6
    cols.push_back(*a[2] * v.residual[direction_index(3, 1)]); // B7
  } else {
    cols.push_back(*a[0] * v.residual[direction_index(1, 2)]);
    cols.push_back(*a[0] * v.residual[direction_index(1, 3)]);
    cols.push_back(*a[1] * v.residual[direction_index(2, 3)]);
  }
  MatrixXcd b(plan.relay_dims, plan.relay_dims);
  long long off = 0;
  for (const auto& c : cols) {
    b.middleCols(off, c.cols()) = c;
    off += c.cols();
  }
  if (off != plan.relay_dims) {
    throw std::logic_error("relay block widths do not sum to J");
  }
  double smin = 0;
  double cond = 1;
  const MatrixXcd w = invert_square(b, "B-matrix", &smin, &cond);
  if (diag) {
    diag->b_sigma_min = smin;
    diag->b_cond = cond;
  }
  return w;
}

std::pair<BcFilters, MatrixXcd> design_bc(const PatternPlan& plan,
                                          const channel::DeactivatedChannel& ch,
                                          Diagnostics* diag) {
  BcFilters u;
  for (int k = 0; k < 6; ++k) {
    const long long cols = plan.m[kDirections[k].second - 1];
    u.pattern[k] = MatrixXcd(0, cols);
    u.cyclic[k] = MatrixXcd(0, cols);
    u.residual[k] = MatrixXcd(0, cols);
  }

  const std::array<const MatrixXcd*, 3> c{&downlink_of(plan, ch, 1),
                                          &downlink_of(plan, ch, 2),
                                          &downlink_of(plan, ch, 3)};
  const long long j_dims = plan.relay_dims;
  std::mt19937_64 mix_rng(ch.seed ^ 0xa0761d6478bd642fULL);

  const std::array<std::pair<int, int>, 3> pairs{{{1, 2}, {1, 3}, {2, 3}}};
  for (int k = 0; k < 3; ++k) {
    const auto [i, j] = pairs[k];
    const long long w = plan.pde[k];
    if (w == 0) continue;
    MatrixXcd stacked(c[i - 1]->rows() + c[j - 1]->rows(), j_dims);
    stacked << *c[i - 1], -*c[j - 1];
    const MatrixXcd kernel = kernel_basis(stacked.transpose());
    if (kernel.cols() < w) {
      throw std::runtime_error(
          "receive alignment infeasible at runtime: pair (" +
          std::to_string(i) + "," + std::to_string(j) + ") left null dim " +
          std::to_string(kernel.cols()) + " < " + std::to_string(w));
    }
    const MatrixXcd rows = mix_kernel(kernel, w, mix_rng).transpose();
    // The block at user i recovers the stream j->i, and vice versa.
    u.pattern[direction_index(j, i)] = rows.leftCols(c[i - 1]->rows());
    u.pattern[direction_index(i, j)] = rows.rightCols(c[j - 1]->rows());
  }

  if (plan.case_label == CaseLabel::I && plan.gamma > 0) {
    MatrixXcd stacked(c[0]->rows() + c[1]->rows() + c[2]->rows(), j_dims);
    stacked << *c[0], *c[1], -*c[2];
    const MatrixXcd kernel = kernel_basis(stacked.transpose());
    if (kernel.cols() < plan.gamma) {
      throw std::runtime_error(
          "receive alignment infeasible at runtime: cyclic left null dim " +
          std::to_string(kernel.cols()) + " < " + std::to_string(plan.gamma));
    }
    const MatrixXcd rows = mix_kernel(kernel, plan.gamma, mix_rng).transpose();
    u.cyclic[direction_index(3, 1)] = rows.leftCols(c[0]->rows());
    u.cyclic[direction_index(1, 2)] =
        rows.middleCols(c[0]->rows(), c[1]->rows());
    u.cyclic[direction_index(2, 3)] = rows.rightCols(c[2]->rows());
  }

  std::mt19937_64 rng(ch.seed ^ 0xc2b2ae3d27d4eb4fULL);
  for (int k = 0; k < 6; ++k) {
    const long long r = plan.residual[k];
    if (r == 0) continue;
    u.residual[k] =
        random_orthonormal(rng, plan.m[kDirections[k].second - 1], r)
            .transpose();
  }

  // Separability of each user's receive streams.
  for (int user = 1; user <= 3; ++user) {
    std::vector<MatrixXcd> parts;
    long long total = 0;
    for (int other = 1; other <= 3; ++other) {
      if (other == user) continue;
      const int k = direction_index(other, user);
      parts.insert(parts.end(), {u.pattern[k], u.cyclic[k], u.residual[k]});
      total += plan.d[k];
    }
    if (total == 0) continue;
    const MatrixXcd stacked = vstack(parts, plan.m[user - 1]);
    if (numerical_rank(stacked) != total) {
      throw std::runtime_error("receive rank condition failed at user " +
                               std::to_string(user));
    }
  }

  // Row stack of Eq-style representatives, ordered by the relay block layout.
  std::vector<MatrixXcd> stack_rows;
  stack_rows.push_back(u.pattern[direction_index(2, 1)] * *c[0]);
  stack_rows.push_back(u.pattern[direction_index(3, 1)] * *c[0]);
  stack_rows.push_back(u.pattern[direction_index(3, 2)] * *c[1]);
  if (plan.case_label == CaseLabel::I) {
    stack_rows.push_back(u.cyclic[direction_index(3, 1)] * *c[0]);
    stack_rows.push_back(u.cyclic[direction_index(2, 3)] * *c[2]);
    stack_rows.push_back(u.residual[direction_index(2, 3)] * *c[2]);
    stack_rows.push_back(u.residual[direction_index(3, 1)] * *c[0]);
  } else {
    stack_rows.push_back(u.residual[direction_index(1, 2)] * *c[1]);
    stack_rows.push_back(u.residual[direction_index(1, 3)] * *c[2]);
    stack_rows.push_back(u.residual[direction_index(2, 3)] * *c[2]);
  }
  const MatrixXcd stacked = vstack(stack_rows, j_dims);
  if (stacked.rows() != j_dims) {
    throw std::logic_error("BC stack rows do not sum to J");
  }
  double smin = 0;
  double cond = 1;
  const MatrixXcd t = invert_square(stacked, "BC stack", &smin, &cond);
  if (diag) {
    diag->t_sigma_min = smin;
    diag->t_cond = cond;
  }
  return {u, t};
}

TransceiverDesign design(const PatternPlan& plan,
                         const channel::DeactivatedChannel& ch) {
  TransceiverDesign d;
  d.v = design_mac_precoders(plan, ch);
  d.relay_zf = design_relay_zf(d.v, plan, ch, &d.diag);
  auto [u, t] = design_bc(plan, ch, &d.diag);
  d.u = std::move(u);
  d.bc_zf = std::move(t);
  for (const auto& b : plan.blocks) d.block_widths.push_back(b.size);
  return d;
}

}  // namespace yalign::transceiver
