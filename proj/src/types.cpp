#include "yalign/types.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace yalign {

namespace {

std::vector<std::string> split_csv(const std::string& csv, size_t expected) {
  std::vector<std::string> parts;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != expected) {
    throw std::invalid_argument("expected " + std::to_string(expected) +
                                " comma-separated values, got '" + csv + "'");
  }
  return parts;
}

}  // namespace

int AntennaConfig::user(int i) const {
  switch (i) {
    case 1: return m1;
    case 2: return m2;
    case 3: return m3;
    default: throw std::invalid_argument("user index out of range");
  }
}

void AntennaConfig::validate() const {
  if (m1 < 1 || m2 < 1 || m3 < 1 || n < 1) {
    throw std::invalid_argument("antenna counts must be >= 1");
  }
}

int direction_index(int from, int to) {
  for (int k = 0; k < 6; ++k) {
    if (kDirections[k].first == from && kDirections[k].second == to) return k;
  }
  throw std::invalid_argument("invalid direction (" + std::to_string(from) +
                              "," + std::to_string(to) + ")");
}

Rat DofTuple::sum() const {
  Rat s(0);
  for (const auto& v : d) s += v;
  return s;
}

bool DofTuple::nonnegative() const {
  for (const auto& v : d) {
    if (v < Rat(0)) return false;
  }
  return true;
}

DofTuple parse_dof(const std::string& csv) {
  const auto parts = split_csv(csv, 6);
  DofTuple d;
  for (int k = 0; k < 6; ++k) d.d[k] = parse_rational(parts[k]);
  return d;
}

std::string dof_to_string(const DofTuple& d) {
  std::string out;
  for (int k = 0; k < 6; ++k) {
    if (k) out += ",";
    out += rat_to_string(d.d[k]);
  }
  return out;
}

AntennaConfig parse_config(const std::string& csv) {
  const auto parts = split_csv(csv, 4);
  AntennaConfig cfg;
  try {
    cfg.m1 = std::stoi(parts[0]);
    cfg.m2 = std::stoi(parts[1]);
    cfg.m3 = std::stoi(parts[2]);
    cfg.n = std::stoi(parts[3]);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed antenna config: " + csv);
  }
  cfg.validate();
  return cfg;
}

}  // namespace yalign
