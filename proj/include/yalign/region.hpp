#pragma once

#include <optional>
#include <string>
#include <vector>

#include "yalign/types.hpp"

namespace yalign::region {

enum class BoundKind { Nonneg, Source, Sink, Relay };

// One inequality  coeffs . d <= bound  over the six DoF coordinates.
struct Halfspace {
  std::array<long long, 6> coeffs{};
  long long bound{0};
  BoundKind kind{BoundKind::Nonneg};
  std::string tag;  // e.g. "nonneg(d_{1,2})", "source(1)", "relay(2,3,1)"
};

// The 18-row system of the three-user DoF region:
// 6 nonnegativity rows, 3 source bounds, 3 sink bounds, 6 relay bounds.
struct HalfspaceSystem {
  AntennaConfig config;
  std::vector<Halfspace> rows;
};

struct Vertex {
  DofTuple point;
  std::vector<int> tight;  // indices of all halfspaces tight at the point
};

struct VertexSet {
  std::vector<Vertex> vertices;  // sorted lexicographically by coordinates
};

struct WeightedMax {
  Rat value;
  DofTuple argmax;
};

HalfspaceSystem build_region(const AntennaConfig& config);

bool contains(const HalfspaceSystem& system, const DofTuple& d);

// Index of the first violated halfspace, or nullopt if d is in the region.
std::optional<int> first_violated(const HalfspaceSystem& system,
                                  const DofTuple& d);

// Complete vertex set, by exhaustive rank-6 subsets of the halfspaces,
// solved in exact rationals and filtered by feasibility.
VertexSet enumerate_vertices(const HalfspaceSystem& system);

// Maximum of w . d over the polytope, attained at an enumerated vertex.
// Throws std::invalid_argument("degenerate objective") on all-zero weights.
WeightedMax max_weighted(const HalfspaceSystem& system,
                         const std::array<Rat, 6>& w);

}  // namespace yalign::region
