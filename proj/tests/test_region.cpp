#include <doctest.h>

#include <random>

#include "yalign/oracle.hpp"
#include "yalign/region.hpp"

using namespace yalign;

namespace {

DofTuple tuple(const std::string& csv) { return parse_dof(csv); }

// Random tuple with small-denominator rational entries in [0, hi].
DofTuple random_tuple(std::mt19937_64& rng, int hi) {
  std::uniform_int_distribution<long long> num(0, 4LL * hi);
  DofTuple d;
  for (int k = 0; k < 6; ++k) d.d[k] = Rat(num(rng), 4);
  return d;
}

bool has_vertex(const region::VertexSet& vs, const DofTuple& d) {
  for (const auto& v : vs.vertices) {
    if (v.point == d) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("build_region emits the 18-halfspace system") {
  const auto sys = region::build_region({3, 2, 2, 4});
  REQUIRE(sys.rows.size() == 18);
  int nonneg = 0, source = 0, sink = 0, relay = 0;
  for (const auto& h : sys.rows) {
    switch (h.kind) {
      case region::BoundKind::Nonneg:
        ++nonneg;
        CHECK(h.bound == 0);
        break;
      case region::BoundKind::Source:
        ++source;
        break;
      case region::BoundKind::Sink:
        ++sink;
        break;
      case region::BoundKind::Relay:
        ++relay;
        CHECK(h.bound == 4);
        break;
    }
  }
  CHECK(nonneg == 6);
  CHECK(source == 3);
  CHECK(sink == 3);
  CHECK(relay == 6);

  // Source and sink bounds carry the per-user antenna counts {3,2,2}.
  std::vector<long long> source_bounds, sink_bounds;
  for (const auto& h : sys.rows) {
    if (h.kind == region::BoundKind::Source) source_bounds.push_back(h.bound);
    if (h.kind == region::BoundKind::Sink) sink_bounds.push_back(h.bound);
  }
  CHECK(source_bounds == std::vector<long long>{3, 2, 2});
  CHECK(sink_bounds == std::vector<long long>{3, 2, 2});
}

TEST_CASE("build_region unit configuration") {
  const auto sys = region::build_region({1, 1, 1, 1});
  REQUIRE(sys.rows.size() == 18);
  for (const auto& h : sys.rows) {
    if (h.kind != region::BoundKind::Nonneg) CHECK(h.bound == 1);
  }
}

TEST_CASE("build_region relay rows sum three distinct coordinates") {
  const auto sys = region::build_region({2, 2, 2, 3});
  for (const auto& h : sys.rows) {
    if (h.kind != region::BoundKind::Relay) continue;
    int ones = 0;
    for (const auto c : h.coeffs) {
      CHECK((c == 0 || c == 1));
      if (c == 1) ++ones;
    }
    CHECK(ones == 3);
    CHECK(h.bound == 3);
  }
}

TEST_CASE("contains") {
  const auto big = region::build_region({3, 2, 2, 4});
  CHECK(region::contains(big, tuple("2,0,0,2,2,0")));
  CHECK(region::contains(big, tuple("0,0,0,0,0,0")));
  const auto small = region::build_region({3, 2, 2, 3});
  CHECK_FALSE(region::contains(small, tuple("2,0,0,2,2,0")));
  const auto violated = region::first_violated(small, tuple("2,0,0,2,2,0"));
  REQUIRE(violated.has_value());
  CHECK(small.rows[*violated].kind == region::BoundKind::Relay);
}

TEST_CASE("enumerate_vertices finds integral and fractional vertices") {
  const auto sys = region::build_region({1, 1, 1, 1});
  const auto vs = region::enumerate_vertices(sys);
  CHECK(has_vertex(vs, tuple("1,0,0,0,0,0")));
  CHECK(has_vertex(vs, tuple("1/2,0,0,1/2,1/2,0")));
  for (const auto& v : vs.vertices) {
    CHECK(region::contains(sys, v.point));
    CHECK(v.tight.size() >= 6);
  }
}

TEST_CASE("relay bounds slack when N is huge") {
  const auto full = region::build_region({1, 1, 1, 1000});
  const auto full_vs = region::enumerate_vertices(full);

  region::HalfspaceSystem box = full;
  std::erase_if(box.rows, [](const region::Halfspace& h) {
    return h.kind == region::BoundKind::Relay;
  });
  const auto box_vs = region::enumerate_vertices(box);

  REQUIRE(full_vs.vertices.size() == box_vs.vertices.size());
  for (std::size_t k = 0; k < full_vs.vertices.size(); ++k) {
    CHECK(full_vs.vertices[k].point == box_vs.vertices[k].point);
    for (const int idx : full_vs.vertices[k].tight) {
      CHECK(full.rows[idx].kind != region::BoundKind::Relay);
    }
  }
}

TEST_CASE("max_weighted") {
  const auto sys = region::build_region({2, 2, 2, 3});
  std::array<Rat, 6> ones;
  ones.fill(Rat(1));
  const auto best = region::max_weighted(sys, ones);
  CHECK(best.value == Rat(6));
  CHECK(best.argmax == tuple("1,1,1,1,1,1"));

  const auto sys2 = region::build_region({3, 2, 2, 4});
  std::array<Rat, 6> w{};
  w[direction_index(1, 2)] = Rat(1);
  CHECK(region::max_weighted(sys2, w).value == Rat(2));

  std::array<Rat, 6> zero{};
  CHECK_THROWS_WITH_AS(region::max_weighted(sys, zero), "degenerate objective",
                       std::invalid_argument);
}

TEST_CASE("max_weighted scales with the configuration") {
  std::array<Rat, 6> w{};
  w[direction_index(2, 3)] = Rat(1);
  const auto base = region::max_weighted(region::build_region({3, 2, 2, 4}), w);
  for (int k = 2; k <= 3; ++k) {
    const auto scaled = region::max_weighted(
        region::build_region({3 * k, 2 * k, 2 * k, 4 * k}), w);
    CHECK(scaled.value == Rat(k) * base.value);
  }
}

TEST_CASE("membership agrees with the inequality-scan oracle") {
  std::mt19937_64 rng(7);
  for (const AntennaConfig cfg :
       {AntennaConfig{1, 1, 1, 1}, AntennaConfig{3, 2, 2, 4},
        AntennaConfig{2, 2, 2, 1}}) {
    const auto sys = region::build_region(cfg);
    const int hi = std::max({cfg.m1, cfg.m2, cfg.m3, cfg.n});
    for (int trial = 0; trial < 1000; ++trial) {
      const DofTuple d = random_tuple(rng, hi);
      CHECK(region::contains(sys, d) == oracle::membership_lp(cfg, d).pass);
    }
  }
}

TEST_CASE("vertex soundness and completeness against the oracle") {
  std::mt19937_64 rng(11);
  for (const AntennaConfig cfg :
       {AntennaConfig{2, 2, 2, 3}, AntennaConfig{2, 1, 1, 3}}) {
    const auto sys = region::build_region(cfg);
    const auto vs = region::enumerate_vertices(sys);
    const auto brute = oracle::vertices_bruteforce(cfg);

    REQUIRE(vs.vertices.size() == brute.size());
    for (std::size_t k = 0; k < brute.size(); ++k) {
      CHECK(vs.vertices[k].point == brute[k]);
    }

    // 200 random objectives: LP optimum over the brute-force vertex list
    // equals max_weighted.
    std::uniform_int_distribution<long long> num(0, 8);
    for (int trial = 0; trial < 200; ++trial) {
      std::array<Rat, 6> w;
      bool any = false;
      for (int k = 0; k < 6; ++k) {
        w[k] = Rat(num(rng), 2);
        if (w[k] != Rat(0)) any = true;
      }
      if (!any) w[0] = Rat(1);
      const auto best = region::max_weighted(sys, w);
      Rat expect(0);
      bool first = true;
      for (const auto& v : brute) {
        Rat val(0);
        for (int k = 0; k < 6; ++k) val += w[k] * v.d[k];
        if (first || val > expect) expect = val;
        first = false;
      }
      CHECK(best.value == expect);
    }
  }
}

TEST_CASE("scaling equivariance") {
  std::mt19937_64 rng(13);
  const AntennaConfig cfg{3, 2, 2, 4};
  const auto sys = region::build_region(cfg);
  for (int trial = 0; trial < 200; ++trial) {
    const DofTuple d = random_tuple(rng, 4);
    for (long long k = 2; k <= 3; ++k) {
      const auto scaled_sys = region::build_region(
          {static_cast<int>(3 * k), static_cast<int>(2 * k),
           static_cast<int>(2 * k), static_cast<int>(4 * k)});
      DofTuple kd;
      for (int c = 0; c < 6; ++c) kd.d[c] = Rat(k) * d.d[c];
      CHECK(region::contains(sys, d) == region::contains(scaled_sys, kd));
    }
  }
}

TEST_CASE("permutation equivariance") {
  std::mt19937_64 rng(17);
  const AntennaConfig cfg{3, 2, 2, 4};
  const auto sys = region::build_region(cfg);
  const std::array<std::array<int, 3>, 6> perms{
      {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}}};
  const std::array<int, 3> antennas{3, 2, 2};
  for (const auto& p : perms) {
    // Relabeled user a is original user p[a-1].
    AntennaConfig pc{antennas[p[0] - 1], antennas[p[1] - 1],
                     antennas[p[2] - 1], 4};
    const auto psys = region::build_region(pc);
    auto relabeled_of = [&](int orig) {
      for (int a = 1; a <= 3; ++a) {
        if (p[a - 1] == orig) return a;
      }
      return 0;
    };
    for (int trial = 0; trial < 100; ++trial) {
      const DofTuple d = random_tuple(rng, 4);
      DofTuple pd;
      for (const auto& [from, to] : kDirections) {
        pd(relabeled_of(from), relabeled_of(to)) = d(from, to);
      }
      CHECK(region::contains(sys, d) == region::contains(psys, pd));
    }
  }
}

TEST_CASE("symmetric configurations with small N reduce to relay bounds") {
  for (const AntennaConfig cfg :
       {AntennaConfig{2, 2, 2, 1}, AntennaConfig{2, 2, 2, 2},
        AntennaConfig{3, 3, 3, 2}}) {
    const auto full = region::build_region(cfg);
    region::HalfspaceSystem reduced = full;
    std::erase_if(reduced.rows, [](const region::Halfspace& h) {
      return h.kind == region::BoundKind::Source ||
             h.kind == region::BoundKind::Sink;
    });
    const auto full_vs = region::enumerate_vertices(full);
    const auto red_vs = region::enumerate_vertices(reduced);
    REQUIRE(full_vs.vertices.size() == red_vs.vertices.size());
    for (std::size_t k = 0; k < full_vs.vertices.size(); ++k) {
      CHECK(full_vs.vertices[k].point == red_vs.vertices[k].point);
    }
  }
}
