#include <doctest.h>

#include <cstdio>

#include "yalign/channel.hpp"

using namespace yalign;

TEST_CASE("sample shapes and determinism") {
  const AntennaConfig cfg{3, 2, 2, 4};
  const auto ch = channel::sample(cfg, 1, 42);
  REQUIRE(ch.uplink.size() == 1);
  CHECK(ch.uplink[0][0].rows() == 4);
  CHECK(ch.uplink[0][0].cols() == 3);
  CHECK(ch.downlink[0][0].rows() == 3);
  CHECK(ch.downlink[0][0].cols() == 4);
  CHECK(ch.uplink[0][1].cols() == 2);
  CHECK(ch.downlink[0][2].rows() == 2);

  const auto again = channel::sample(cfg, 1, 42);
  CHECK(ch.uplink[0][0] == again.uplink[0][0]);
  CHECK(ch.downlink[0][2] == again.downlink[0][2]);

  const auto other = channel::sample(cfg, 1, 43);
  CHECK(ch.uplink[0][0] != other.uplink[0][0]);
}

TEST_CASE("extension slots carry independent draws") {
  const auto ch = channel::sample({2, 2, 2, 3}, 2, 5);
  REQUIRE(ch.uplink.size() == 2);
  CHECK(ch.uplink[0][0] != ch.uplink[1][0]);
  CHECK(ch.downlink[0][1] != ch.downlink[1][1]);
}

TEST_CASE("deactivate keeps the first J relay antennas") {
  {
    // J = N: identity selection.
    const auto ch = channel::sample({3, 2, 2, 4}, 1, 7);
    const auto d = channel::deactivate(ch, 4);
    CHECK(d.uplink[0] == ch.uplink[0][0]);
    CHECK(d.downlink[0] == ch.downlink[0][0]);
  }
  {
    const auto ch = channel::sample({3, 2, 2, 5}, 1, 7);
    const auto d = channel::deactivate(ch, 4);
    CHECK(d.uplink[0].rows() == 4);
    CHECK(d.uplink[0].cols() == 3);
    CHECK(d.uplink[0] == ch.uplink[0][0].topRows(4));
    CHECK(d.downlink[1] == ch.downlink[0][1].leftCols(4));
  }
}

TEST_CASE("deactivation over two slots is block diagonal") {
  const auto ch = channel::sample({2, 2, 2, 3}, 2, 9);
  const auto d = channel::deactivate(ch, 2);
  CHECK(d.relay_dims == 4);
  for (int i = 0; i < 3; ++i) {
    REQUIRE(d.uplink[i].rows() == 4);
    REQUIRE(d.uplink[i].cols() == 4);
    // Per-slot blocks equal row-truncated per-slot samples.
    CHECK(d.uplink[i].topLeftCorner(2, 2) == ch.uplink[0][i].topRows(2));
    CHECK(d.uplink[i].bottomRightCorner(2, 2) == ch.uplink[1][i].topRows(2));
    CHECK(d.uplink[i].topRightCorner(2, 2).isZero(0));
    CHECK(d.uplink[i].bottomLeftCorner(2, 2).isZero(0));
    CHECK(d.downlink[i].topLeftCorner(2, 2) == ch.downlink[0][i].leftCols(2));
    CHECK(d.downlink[i].bottomRightCorner(2, 2) ==
          ch.downlink[1][i].leftCols(2));
  }
}

TEST_CASE("deactivate rejects J above N") {
  const auto ch = channel::sample({1, 1, 1, 2}, 1, 1);
  CHECK_THROWS_WITH_AS(channel::deactivate(ch, 3),
                       "relay dimension exceeds antennas",
                       std::invalid_argument);
}

TEST_CASE("deactivate_dims spreads a non-divisible total over slots") {
  const auto ch = channel::sample({1, 1, 1, 2}, 2, 3);
  const auto d = channel::deactivate_dims(ch, 3);
  CHECK(d.relay_dims == 3);
  CHECK(d.keep == std::vector<long long>{2, 1});
  CHECK(d.uplink[0].rows() == 3);
  CHECK(d.uplink[0].cols() == 2);

  // Divisible totals coincide with the per-slot variant.
  const auto even = channel::deactivate_dims(ch, 4);
  const auto per_slot = channel::deactivate(ch, 2);
  CHECK(even.uplink[1] == per_slot.uplink[1]);
}

TEST_CASE("sampled effective channels have full rank") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto ch = channel::sample({3, 2, 2, 4}, 2, seed);
    const auto d = channel::deactivate(ch, 4);
    for (int i = 0; i < 3; ++i) {
      Eigen::JacobiSVD<Eigen::MatrixXcd> up(d.uplink[i]);
      Eigen::JacobiSVD<Eigen::MatrixXcd> down(d.downlink[i]);
      CHECK(up.singularValues().minCoeff() > 1e-8);
      CHECK(down.singularValues().minCoeff() > 1e-8);
    }
  }
}

TEST_CASE("binary container round trip") {
  const auto ch = channel::sample({3, 2, 2, 4}, 2, 77);
  const std::string path = "channel_roundtrip.ymc";
  channel::save(ch, path);
  const auto back = channel::load(path);
  std::remove(path.c_str());

  CHECK(back.config == ch.config);
  CHECK(back.t == ch.t);
  CHECK(back.seed == ch.seed);
  REQUIRE(back.uplink.size() == ch.uplink.size());
  for (std::size_t s = 0; s < ch.uplink.size(); ++s) {
    for (int i = 0; i < 3; ++i) {
      CHECK(back.uplink[s][i] == ch.uplink[s][i]);
      CHECK(back.downlink[s][i] == ch.downlink[s][i]);
    }
  }
}
