#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "idnc/model.hpp"

using namespace idnc;
using namespace idnc_test;

TEST_CASE("distortion is the importance of what is missing") {
  auto u = PacketUniverse::broadcast(2, {4.0, 5.0, 3.0, 1.0});
  CHECK(compute_distortion(u, {0}, 0) == doctest::Approx(9.0));
  CHECK(compute_distortion(u, {0, 1, 2, 3}, 0) == doctest::Approx(0.0));
  CHECK(compute_distortion(u, {}, 1) == doctest::Approx(13.0));
  CHECK_THROWS_AS(compute_distortion(u, {0}, 5), std::invalid_argument);
}

TEST_CASE("distortion never increases as the Has set grows") {
  Rng rng(77);
  auto u = PacketUniverse::broadcast(1, {2.0, 0.0, 7.5, 1.0, 3.0, 0.25});
  for (int trial = 0; trial < 200; ++trial) {
    PacketSet has;
    for (int m = 0; m < u.packet_count; ++m) {
      if (rng.uniform() < 0.5) has.insert(m);
    }
    double before = compute_distortion(u, has, 0);
    PacketSet grown = has;
    grown.insert(rng.uniform_int(0, u.packet_count - 1));
    CHECK(compute_distortion(u, grown, 0) <= before);
  }
}

TEST_CASE("lossless first stage removes everything from the universe") {
  auto u = PacketUniverse::broadcast(3, {1.0, 2.0, 3.0});
  auto ch = ChannelModel::lossless(3);
  Rng rng(1);
  auto state = apply_stage1(u, ch, rng);
  CHECK(state.packet_count() == 0);
  for (const auto& dev : state.devices) {
    CHECK(dev.lacks.empty());
    CHECK(dev.distortion == 0.0);
  }
}

TEST_CASE("total first-stage loss is repaired by orphan assignment") {
  auto u = PacketUniverse::broadcast(3, {1.0, 2.0, 3.0, 4.0});
  auto ch = ChannelModel::lossless(3);
  ch.stage1_loss = {1.0, 1.0, 1.0};
  Rng rng(9);
  auto state = apply_stage1(u, ch, rng);
  CHECK(state.packet_count() == 4);
  for (int m = 0; m < 4; ++m) {
    int holders = 0;
    for (const auto& dev : state.devices) holders += dev.has.count(m);
    CHECK(holders == 1);  // exactly the one repaired assignment
  }
}

TEST_CASE("stage-1 scenario invariants hold for lossy draws") {
  Rng rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    auto u = PacketUniverse::broadcast(3, {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0,
                                           1.0, 1.0, 1.0});
    auto ch = ChannelModel::lossless(3);
    ch.stage1_loss = {0.5, 0.5, 0.5};
    auto state = apply_stage1(u, ch, rng);
    for (int m = 0; m < state.packet_count(); ++m) {
      int holders = 0;
      for (const auto& dev : state.devices) holders += dev.has.count(m);
      CHECK(holders >= 1);
      CHECK(holders < state.device_count());
    }
  }
}

TEST_CASE("stage-1 reception is deterministic under a fixed seed") {
  auto u = PacketUniverse::broadcast(3, std::vector<double>(10, 1.0));
  auto ch = ChannelModel::lossless(3);
  ch.stage1_loss = {0.5, 0.5, 0.5};
  Rng rng_a(42), rng_b(42);
  auto sa = apply_stage1(u, ch, rng_a);
  auto sb = apply_stage1(u, ch, rng_b);
  REQUIRE(sa.device_count() == sb.device_count());
  for (int n = 0; n < sa.device_count(); ++n) {
    CHECK(sa.devices[n].has == sb.devices[n].has);
  }
}

TEST_CASE("xor decoding yields exactly the one missing packet") {
  DeviceState dev;
  dev.has = {p1, p3};
  dev.lacks = {p2};
  CHECK(xor_decode(dev, {p2, p3}) == p2);

  dev.lacks = {p2, p3};
  dev.has = {p1};
  CHECK_FALSE(xor_decode(dev, {p2, p3}).has_value());

  dev.lacks = {};
  dev.has = {p1, p2, p3};
  CHECK_FALSE(xor_decode(dev, {p1}).has_value());

  CHECK_THROWS_AS(xor_decode(dev, {}), std::invalid_argument);
}

TEST_CASE("decoded packets are never already held") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto state = random_scenario(rng, 3, 8, 0.5);
    if (state.packet_count() == 0) continue;
    PacketSet coded;
    for (int m = 0; m < state.packet_count(); ++m) {
      if (rng.uniform() < 0.4) coded.insert(m);
    }
    if (coded.empty()) coded.insert(0);
    for (const auto& dev : state.devices) {
      auto decoded = xor_decode(dev, coded);
      if (decoded) CHECK(dev.has.count(*decoded) == 0);
    }
  }
}

TEST_CASE("channel model rejects degenerate loss probabilities") {
  auto ch = ChannelModel::lossless(2);
  ch.d2d_loss[1] = 1.0;  // eps(0,1)
  CHECK_THROWS_AS(ch.validate(), std::invalid_argument);
}
