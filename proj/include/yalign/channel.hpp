#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "yalign/types.hpp"

namespace yalign::channel {

// Per-slot uplink/downlink channel matrices, CN(0,1) entries, reproducible
// from the seed. Slots carry independent draws (time-varying channel).
struct ChannelRealization {
  AntennaConfig config;
  long long t{1};
  std::uint64_t seed{0};
  // uplink[slot][i]: N x M_{i+1};  downlink[slot][i]: M_{i+1} x N
  std::vector<std::array<Eigen::MatrixXcd, 3>> uplink;
  std::vector<std::array<Eigen::MatrixXcd, 3>> downlink;
};

// Effective channels after relay antenna deactivation and symbol extension:
// block-diagonal over slots, with keep[slot] relay antennas retained.
struct DeactivatedChannel {
  AntennaConfig config;
  long long t{1};
  std::uint64_t seed{0};
  long long relay_dims{0};        // total retained relay dimensions
  std::vector<long long> keep;    // retained antennas per slot
  std::array<Eigen::MatrixXcd, 3> uplink;    // relay_dims x (M_i t)
  std::array<Eigen::MatrixXcd, 3> downlink;  // (M_i t) x relay_dims
};

ChannelRealization sample(const AntennaConfig& config, long long t,
                          std::uint64_t seed);

// Keeps the first `per_slot_dims` relay antennas in every slot.
// Throws std::invalid_argument if per_slot_dims > N.
DeactivatedChannel deactivate(const ChannelRealization& ch,
                              long long per_slot_dims);

// Keeps `total_dims` relay dimensions overall, distributed as evenly as
// possible over slots (first total_dims % t slots keep one more antenna).
// Coincides with deactivate(ch, total_dims / t) when t divides total_dims.
DeactivatedChannel deactivate_dims(const ChannelRealization& ch,
                                   long long total_dims);

// Binary matrix container round trip (see io.hpp for the layout).
void save(const ChannelRealization& ch, const std::string& path);
ChannelRealization load(const std::string& path);

}  // namespace yalign::channel
