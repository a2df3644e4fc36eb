#pragma once

#include <array>
#include <string>
#include <utility>

#include "yalign/rational.hpp"

namespace yalign {

// Antenna counts (M1, M2, M3, N): M_i at user i, N at the relay.
struct AntennaConfig {
  int m1{1};
  int m2{1};
  int m3{1};
  int n{1};

  int user(int i) const;  // 1-based user index
  void validate() const;  // throws std::invalid_argument if any count < 1
  bool operator==(const AntennaConfig&) const = default;
};

// Message directions (from, to) in canonical order.
inline constexpr std::array<std::pair<int, int>, 6> kDirections{
    {{1, 2}, {1, 3}, {2, 1}, {2, 3}, {3, 1}, {3, 2}}};

// Index of direction (from, to) into the canonical order above.
int direction_index(int from, int to);

// The six-entry DoF tuple (d12, d13, d21, d23, d31, d32), exact rationals.
struct DofTuple {
  std::array<Rat, 6> d{};

  Rat& operator()(int from, int to) { return d[direction_index(from, to)]; }
  const Rat& operator()(int from, int to) const {
    return d[direction_index(from, to)];
  }

  Rat sum() const;
  bool nonnegative() const;
  bool operator==(const DofTuple&) const = default;
};

// Parses "a,b,c,d,e,f" with rational entries ("p/q" or integer).
DofTuple parse_dof(const std::string& csv);
std::string dof_to_string(const DofTuple& d);

// Parses "M1,M2,M3,N".
AntennaConfig parse_config(const std::string& csv);

}  // namespace yalign
