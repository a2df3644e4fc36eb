#include "yalign/channel.hpp"

#include <random>
#include <stdexcept>

#include "yalign/io.hpp"

namespace yalign::channel {

namespace {

Eigen::MatrixXcd draw_matrix(std::mt19937_64& rng, long long rows,
                             long long cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  constexpr double kScale = 0.7071067811865476;  // 1/sqrt(2)
  Eigen::MatrixXcd m(rows, cols);
  for (long long r = 0; r < rows; ++r) {
    for (long long c = 0; c < cols; ++c) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      m(r, c) = std::complex<double>(re * kScale, im * kScale);
    }
  }
  return m;
}

DeactivatedChannel assemble(const ChannelRealization& ch,
                            const std::vector<long long>& keep) {
  DeactivatedChannel out;
  out.config = ch.config;
  out.t = ch.t;
  out.seed = ch.seed;
  out.keep = keep;
  long long total = 0;
  for (const auto k : keep) total += k;
  out.relay_dims = total;

  for (int i = 0; i < 3; ++i) {
    const long long mi = ch.config.user(i + 1);
    Eigen::MatrixXcd up = Eigen::MatrixXcd::Zero(total, mi * ch.t);
    Eigen::MatrixXcd down = Eigen::MatrixXcd::Zero(mi * ch.t, total);
    long long row_off = 0;
    for (long long s = 0; s < ch.t; ++s) {
      const long long k = keep[s];
      up.block(row_off, s * mi, k, mi) = ch.uplink[s][i].topRows(k);
      down.block(s * mi, row_off, mi, k) = ch.downlink[s][i].leftCols(k);
      row_off += k;
    }
    out.uplink[i] = std::move(up);
    out.downlink[i] = std::move(down);
  }
  return out;
}

}  // namespace

ChannelRealization sample(const AntennaConfig& config, long long t,
                          std::uint64_t seed) {
  config.validate();
  if (t < 1) throw std::invalid_argument("extension factor must be >= 1");

  ChannelRealization ch;
  ch.config = config;
  ch.t = t;
  ch.seed = seed;
  std::mt19937_64 rng(seed);
  for (long long s = 0; s < t; ++s) {
    std::array<Eigen::MatrixXcd, 3> up;
    std::array<Eigen::MatrixXcd, 3> down;
    for (int i = 0; i < 3; ++i) {
      up[i] = draw_matrix(rng, config.n, config.user(i + 1));
    }
    for (int i = 0; i < 3; ++i) {
      down[i] = draw_matrix(rng, config.user(i + 1), config.n);
    }
    ch.uplink.push_back(std::move(up));
    ch.downlink.push_back(std::move(down));
  }
  return ch;
}

DeactivatedChannel deactivate(const ChannelRealization& ch,
                              long long per_slot_dims) {
  if (per_slot_dims < 0 || per_slot_dims > ch.config.n) {
    throw std::invalid_argument("relay dimension exceeds antennas");
  }
  return assemble(ch, std::vector<long long>(ch.t, per_slot_dims));
}

DeactivatedChannel deactivate_dims(const ChannelRealization& ch,
                                   long long total_dims) {
  if (total_dims < 0 || total_dims > ch.config.n * ch.t) {
    throw std::invalid_argument("relay dimension exceeds antennas");
  }
  std::vector<long long> keep(ch.t, total_dims / ch.t);
  for (long long s = 0; s < total_dims % ch.t; ++s) keep[s] += 1;
  return assemble(ch, keep);
}

void save(const ChannelRealization& ch, const std::string& path) {
  std::vector<io::NamedMatrix> mats;
  Eigen::MatrixXcd meta(1, 7);
  meta << static_cast<double>(ch.config.m1), static_cast<double>(ch.config.m2),
      static_cast<double>(ch.config.m3), static_cast<double>(ch.config.n),
      static_cast<double>(ch.t), static_cast<double>(ch.seed & 0xffffffffULL),
      static_cast<double>(ch.seed >> 32);
  mats.push_back({"meta", meta});
  for (long long s = 0; s < ch.t; ++s) {
    for (int i = 0; i < 3; ++i) {
      mats.push_back({"up/" + std::to_string(s) + "/" + std::to_string(i + 1),
                      ch.uplink[s][i]});
      mats.push_back({"down/" + std::to_string(s) + "/" + std::to_string(i + 1),
                      ch.downlink[s][i]});
    }
  }
  io::write_matrix_file(path, mats);
}

ChannelRealization load(const std::string& path) {
  const auto mats = io::read_matrix_file(path);
  if (mats.empty() || mats[0].name != "meta" || mats[0].value.size() != 7) {
    throw std::runtime_error("not a channel file: " + path);
  }
  const auto& meta = mats[0].value;
  ChannelRealization ch;
  ch.config.m1 = static_cast<int>(meta(0, 0).real());
  ch.config.m2 = static_cast<int>(meta(0, 1).real());
  ch.config.m3 = static_cast<int>(meta(0, 2).real());
  ch.config.n = static_cast<int>(meta(0, 3).real());
  ch.t = static_cast<long long>(meta(0, 4).real());
  ch.seed = static_cast<std::uint64_t>(meta(0, 5).real()) |
            (static_cast<std::uint64_t>(meta(0, 6).real()) << 32);
  ch.config.validate();
  ch.uplink.resize(ch.t);
  ch.downlink.resize(ch.t);
  for (const auto& m : mats) {
    if (m.name == "meta") continue;
    const auto first = m.name.find('/');
    const auto second = m.name.find('/', first + 1);
    const long long slot = std::stoll(m.name.substr(first + 1, second - first));
    const int user = std::stoi(m.name.substr(second + 1));
    if (m.name.rfind("up/", 0) == 0) {
      ch.uplink[slot][user - 1] = m.value;
    } else {
      ch.downlink[slot][user - 1] = m.value;
    }
  }
  return ch;
}

}  // namespace yalign::channel
