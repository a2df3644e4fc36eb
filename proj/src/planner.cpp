#include "yalign/planner.hpp"

#include <algorithm>
#include <stdexcept>

#include "yalign/region.hpp"

namespace yalign::planner {

namespace {

constexpr std::array<std::array<int, 3>, 6> kPerms{{{1, 2, 3},
                                                    {1, 3, 2},
                                                    {2, 1, 3},
                                                    {2, 3, 1},
                                                    {3, 1, 2},
                                                    {3, 2, 1}}};

bool case1_holds(const DofTuple& d) {
  return d(1, 2) >= d(2, 1) && d(3, 1) >= d(1, 3) && d(2, 3) >= d(3, 2);
}

bool case2_holds(const DofTuple& d) {
  return d(1, 2) >= d(2, 1) && d(1, 3) > d(3, 1) && d(2, 3) >= d(3, 2);
}

// Composes a cyclic rotation of the relabeled users 1->2->3->1.
Relabeling rotate(const Relabeling& base, int r) {
  Relabeling out;
  for (int a = 1; a <= 3; ++a) {
    out.to_original[a - 1] = base.to_original[(a - 1 + r) % 3];
  }
  return out;
}

}  // namespace

int Relabeling::relabeled(int original_user) const {
  for (int a = 1; a <= 3; ++a) {
    if (to_original[a - 1] == original_user) return a;
  }
  throw std::invalid_argument("user index out of range");
}

Relabeling Relabeling::inverse() const {
  Relabeling inv;
  for (int a = 1; a <= 3; ++a) inv.to_original[a - 1] = relabeled(a);
  return inv;
}

DofTuple Relabeling::apply(const DofTuple& d) const {
  DofTuple out;
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      if (a != b) out(a, b) = d(original(a), original(b));
    }
  }
  return out;
}

long long PatternPlan::streams_total() const {
  long long s = 0;
  for (const auto v : d) s += v;
  return s;
}

std::pair<long long, std::array<long long, 6>> integerize(const DofTuple& d) {
  long long t = 1;
  for (const auto& v : d.d) t = lcm_ll(t, v.denominator());
  std::array<long long, 6> out{};
  for (int k = 0; k < 6; ++k) {
    const Rat scaled = d.d[k] * Rat(t);
    out[k] = scaled.numerator();  // denominator is 1 by construction
  }
  return {t, out};
}

std::pair<Relabeling, CaseLabel> classify(const DofTuple& d) {
  if (!d.nonnegative()) {
    throw std::invalid_argument("DoF tuple entries must be nonnegative");
  }
  for (const auto& p : kPerms) {
    Relabeling rel;
    rel.to_original = p;
    const DofTuple dr = rel.apply(d);
    if (!case1_holds(dr)) continue;
    const Rat e1 = dr(1, 2) - dr(2, 1);
    const Rat e2 = dr(2, 3) - dr(3, 2);
    const Rat e3 = dr(3, 1) - dr(1, 3);
    const Rat m = std::min({e1, e2, e3});
    int r = 0;
    if (e1 != m) r = (e2 == m) ? 1 : 2;
    return {rotate(rel, r), CaseLabel::I};
  }
  for (const auto& p : kPerms) {
    Relabeling rel;
    rel.to_original = p;
    if (case2_holds(rel.apply(d))) return {rel, CaseLabel::II};
  }
  // Every 3-node dominance orientation is cyclic or transitive, so one of
  // the predicates must match under some relabeling.
  throw std::logic_error("classification failed: no admissible relabeling");
}

PatternPlan plan(const DofTuple& d, const AntennaConfig& config) {
  config.validate();
  const auto system = region::build_region(config);
  if (const auto viol = region::first_violated(system, d)) {
    throw std::domain_error("not in D*: violated " +
                            system.rows[*viol].tag);
  }

  const auto [t, d_int] = integerize(d);
  const auto [rel, label] = classify(d);

  PatternPlan p;
  p.case_label = label;
  p.relabel = rel;
  p.t = t;
  DofTuple scaled;
  for (int k = 0; k < 6; ++k) scaled.d[k] = Rat(d_int[k]);
  const DofTuple dr = rel.apply(scaled);
  for (int k = 0; k < 6; ++k) p.d[k] = dr.d[k].numerator();
  for (int a = 1; a <= 3; ++a) p.m[a - 1] = config.user(rel.original(a)) * t;
  p.n = static_cast<long long>(config.n) * t;

  auto block = [](BlockKind kind, int from, int to, long long size,
                  const std::string& label_str) {
    RelayBlock b;
    b.kind = kind;
    b.from = from;
    b.to = to;
    b.size = size;
    b.label = label_str;
    return b;
  };

  if (label == CaseLabel::I) {
    p.pde = {p.dir(2, 1), p.dir(1, 3), p.dir(3, 2)};
    p.gamma = p.dir(1, 2) - p.dir(2, 1);
    p.residual[direction_index(2, 3)] = p.dir(2, 3) - p.dir(3, 2) - p.gamma;
    p.residual[direction_index(3, 1)] = p.dir(3, 1) - p.dir(1, 3) - p.gamma;
    p.relay_dims = p.dir(2, 1) + p.dir(2, 3) + p.dir(3, 1);
    p.blocks = {
        block(BlockKind::NcPair, 1, 2, p.pde[0], "NC(1<->2)"),
        block(BlockKind::NcPair, 1, 3, p.pde[1], "NC(1<->3)"),
        block(BlockKind::NcPair, 2, 3, p.pde[2], "NC(2<->3)"),
        block(BlockKind::CdeSumA, 0, 0, p.gamma, "CDE(s12c+s31c)"),
        block(BlockKind::CdeSumB, 0, 0, p.gamma, "CDE(s23c+s31c)"),
        block(BlockKind::Residual, 2, 3, p.res(2, 3), "residual(2->3)"),
        block(BlockKind::Residual, 3, 1, p.res(3, 1), "residual(3->1)"),
    };
  } else {
    p.pde = {p.dir(2, 1), p.dir(3, 1), p.dir(3, 2)};
    p.gamma = 0;
    p.residual[direction_index(1, 2)] = p.dir(1, 2) - p.dir(2, 1);
    p.residual[direction_index(1, 3)] = p.dir(1, 3) - p.dir(3, 1);
    p.residual[direction_index(2, 3)] = p.dir(2, 3) - p.dir(3, 2);
    p.relay_dims = p.dir(1, 2) + p.dir(1, 3) + p.dir(2, 3);
    p.blocks = {
        block(BlockKind::NcPair, 1, 2, p.pde[0], "NC(1<->2)"),
        block(BlockKind::NcPair, 1, 3, p.pde[1], "NC(1<->3)"),
        block(BlockKind::NcPair, 2, 3, p.pde[2], "NC(2<->3)"),
        block(BlockKind::Residual, 1, 2, p.res(1, 2), "residual(1->2)"),
        block(BlockKind::Residual, 1, 3, p.res(1, 3), "residual(1->3)"),
        block(BlockKind::Residual, 2, 3, p.res(2, 3), "residual(2->3)"),
    };
  }

  long long layout_sum = 0;
  for (const auto& b : p.blocks) {
    if (b.size < 0) throw std::logic_error("negative relay block " + b.label);
    layout_sum += b.size;
  }
  if (layout_sum != p.relay_dims || p.gamma < 0) {
    throw std::logic_error("relay block layout does not sum to J");
  }
  return p;
}

bool FeasibilityReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const FeasibilityCheck& c) { return c.ok; });
}

std::string FeasibilityReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.ok) return c.name;
  }
  return {};
}

FeasibilityReport feasibility_report(const PatternPlan& p,
                                     const AntennaConfig& config) {
  config.validate();
  FeasibilityReport rep;
  auto add = [&rep](const std::string& name, long long lhs, long long rhs) {
    rep.checks.push_back({name, lhs, rhs, lhs <= rhs});
  };

  const std::array<std::pair<int, int>, 3> pairs{{{1, 2}, {1, 3}, {2, 3}}};
  for (int k = 0; k < 3; ++k) {
    const auto [i, j] = pairs[k];
    add("pairwise alignment (" + std::to_string(i) + "," + std::to_string(j) +
            "): weight <= M" + std::to_string(i) + "+M" + std::to_string(j) +
            "-J",
        p.pde[k], p.m[i - 1] + p.m[j - 1] - p.relay_dims);
  }
  add("cyclic alignment: gamma <= M1+M2+M3-J", p.gamma,
      p.m[0] + p.m[1] + p.m[2] - p.relay_dims);
  for (int a = 1; a <= 3; ++a) {
    long long out = 0;
    long long in = 0;
    for (int b = 1; b <= 3; ++b) {
      if (b == a) continue;
      out += p.dir(a, b);
      in += p.dir(b, a);
    }
    add("transmit dimensions user " + std::to_string(a), out, p.m[a - 1]);
    add("receive dimensions user " + std::to_string(a), in, p.m[a - 1]);
  }
  add("relay dimensions: J <= N*t", p.relay_dims, p.n);
  return rep;
}

}  // namespace yalign::planner
