#include "yalign/region.hpp"

#include <algorithm>
#include <stdexcept>

namespace yalign::region {

namespace {

constexpr std::array<std::array<int, 3>, 6> kPermutations{{{1, 2, 3},
                                                           {1, 3, 2},
                                                           {2, 1, 3},
                                                           {2, 3, 1},
                                                           {3, 1, 2},
                                                           {3, 2, 1}}};

Rat row_dot(const Halfspace& h, const DofTuple& d) {
  Rat acc(0);
  for (int k = 0; k < 6; ++k) {
    if (h.coeffs[k] != 0) acc += Rat(h.coeffs[k]) * d.d[k];
  }
  return acc;
}

bool lex_less(const DofTuple& a, const DofTuple& b) {
  for (int k = 0; k < 6; ++k) {
    if (a.d[k] != b.d[k]) return a.d[k] < b.d[k];
  }
  return false;
}

// Solves the 6x6 rational system rows(subset) . x = bounds(subset).
// Returns false if the subset matrix is singular.
bool solve_subset(const std::vector<Halfspace>& rows,
                  const std::array<int, 6>& subset, DofTuple* out) {
  Rat a[6][7];
  for (int r = 0; r < 6; ++r) {
    const Halfspace& h = rows[subset[r]];
    for (int c = 0; c < 6; ++c) a[r][c] = Rat(h.coeffs[c]);
    a[r][6] = Rat(h.bound);
  }
  for (int col = 0; col < 6; ++col) {
    int pivot = -1;
    for (int r = col; r < 6; ++r) {
      if (a[r][col] != Rat(0)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return false;
    if (pivot != col) {
      for (int c = col; c < 7; ++c) std::swap(a[pivot][c], a[col][c]);
    }
    const Rat inv = Rat(1) / a[col][col];
    for (int c = col; c < 7; ++c) a[col][c] *= inv;
    for (int r = 0; r < 6; ++r) {
      if (r == col || a[r][col] == Rat(0)) continue;
      const Rat f = a[r][col];
      for (int c = col; c < 7; ++c) a[r][c] -= f * a[col][c];
    }
  }
  for (int k = 0; k < 6; ++k) out->d[k] = a[k][6];
  return true;
}

}  // namespace

HalfspaceSystem build_region(const AntennaConfig& config) {
  config.validate();
  HalfspaceSystem sys;
  sys.config = config;

  for (int k = 0; k < 6; ++k) {
    Halfspace h;
    h.coeffs[k] = -1;
    h.bound = 0;
    h.kind = BoundKind::Nonneg;
    h.tag = "nonneg(d_{" + std::to_string(kDirections[k].first) + "," +
            std::to_string(kDirections[k].second) + "})";
    sys.rows.push_back(h);
  }
  for (int i = 1; i <= 3; ++i) {
    Halfspace h;
    for (int j = 1; j <= 3; ++j) {
      if (j != i) h.coeffs[direction_index(i, j)] = 1;
    }
    h.bound = config.user(i);
    h.kind = BoundKind::Source;
    h.tag = "source(" + std::to_string(i) + ")";
    sys.rows.push_back(h);
  }
  for (int i = 1; i <= 3; ++i) {
    Halfspace h;
    for (int j = 1; j <= 3; ++j) {
      if (j != i) h.coeffs[direction_index(j, i)] = 1;
    }
    h.bound = config.user(i);
    h.kind = BoundKind::Sink;
    h.tag = "sink(" + std::to_string(i) + ")";
    sys.rows.push_back(h);
  }
  for (const auto& p : kPermutations) {
    Halfspace h;
    h.coeffs[direction_index(p[0], p[1])] += 1;
    h.coeffs[direction_index(p[0], p[2])] += 1;
    h.coeffs[direction_index(p[1], p[2])] += 1;
    h.bound = config.n;
    h.kind = BoundKind::Relay;
    h.tag = "relay(" + std::to_string(p[0]) + "," + std::to_string(p[1]) +
            "," + std::to_string(p[2]) + ")";
    sys.rows.push_back(h);
  }
  return sys;
}

bool contains(const HalfspaceSystem& system, const DofTuple& d) {
  return !first_violated(system, d).has_value();
}

std::optional<int> first_violated(const HalfspaceSystem& system,
                                  const DofTuple& d) {
  for (int idx = 0; idx < static_cast<int>(system.rows.size()); ++idx) {
    if (row_dot(system.rows[idx], d) > Rat(system.rows[idx].bound)) {
      return idx;
    }
  }
  return std::nullopt;
}

VertexSet enumerate_vertices(const HalfspaceSystem& system) {
  const int n = static_cast<int>(system.rows.size());
  std::vector<Vertex> found;

  std::array<int, 6> subset{};
  // All 6-subsets of the halfspace rows.
  auto consider = [&](const std::array<int, 6>& s) {
    DofTuple x;
    if (!solve_subset(system.rows, s, &x)) return;
    if (!contains(system, x)) return;
    for (auto& v : found) {
      if (v.point == x) return;
    }
    Vertex v;
    v.point = x;
    for (int idx = 0; idx < n; ++idx) {
      if (row_dot(system.rows[idx], x) == Rat(system.rows[idx].bound)) {
        v.tight.push_back(idx);
      }
    }
    found.push_back(std::move(v));
  };

  for (subset[0] = 0; subset[0] < n - 5; ++subset[0])
    for (subset[1] = subset[0] + 1; subset[1] < n - 4; ++subset[1])
      for (subset[2] = subset[1] + 1; subset[2] < n - 3; ++subset[2])
        for (subset[3] = subset[2] + 1; subset[3] < n - 2; ++subset[3])
          for (subset[4] = subset[3] + 1; subset[4] < n - 1; ++subset[4])
            for (subset[5] = subset[4] + 1; subset[5] < n; ++subset[5])
              consider(subset);

  std::sort(found.begin(), found.end(), [](const Vertex& a, const Vertex& b) {
    return lex_less(a.point, b.point);
  });
  VertexSet out;
  out.vertices = std::move(found);
  return out;
}

WeightedMax max_weighted(const HalfspaceSystem& system,
                         const std::array<Rat, 6>& w) {
  bool any = false;
  for (const auto& x : w) {
    if (x != Rat(0)) any = true;
    if (x < Rat(0)) throw std::invalid_argument("weights must be nonnegative");
  }
  if (!any) throw std::invalid_argument("degenerate objective");

  const VertexSet vs = enumerate_vertices(system);
  if (vs.vertices.empty()) throw std::logic_error("empty vertex set");
  WeightedMax best;
  bool first = true;
  for (const auto& v : vs.vertices) {
    Rat val(0);
    for (int k = 0; k < 6; ++k) val += w[k] * v.point.d[k];
    if (first || val > best.value) {
      best.value = val;
      best.argmax = v.point;
      first = false;
    }
  }
  return best;
}

}  // namespace yalign::region
