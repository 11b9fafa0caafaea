/* Copyright 2026 The svac Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <doctest.h>

#include <random>

#include "resample_oracle.hpp"
#include "svac/resample.hpp"
#include "test_util.hpp"

using namespace svac;
using namespace svac::testing;

TEST_CASE("cubic kernel values") {
  CHECK(cubic_weight(0.0, -0.5) == 1.0);
  CHECK(cubic_weight(1.0, -0.5) == 0.0);
  CHECK(cubic_weight(-1.0, -0.5) == 0.0);
  CHECK(cubic_weight(2.0, -0.5) == 0.0);
  CHECK(cubic_weight(2.5, -0.5) == 0.0);
  // (1.5)(0.125) - (2.5)(0.25) + 1, evaluated by hand.
  CHECK(cubic_weight(0.5, -0.5) == doctest::Approx(0.5625).epsilon(1e-15));
  CHECK(cubic_weight(-0.5, -0.5) == doctest::Approx(0.5625).epsilon(1e-15));
  // Outer lobe: a|x|^3 - 5a|x|^2 + 8a|x| - 4a at x = 1.5, a = -0.5 -> -0.0625.
  CHECK(cubic_weight(1.5, -0.5) == doctest::Approx(-0.0625).epsilon(1e-15));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> xs(-2.5, 2.5);
  for (int i = 0; i < 500; ++i) {
    const double x = xs(rng);
    CHECK(cubic_weight(x, -0.5) == doctest::Approx(oracle_kernel(x, -0.5)).epsilon(1e-12));
    CHECK(cubic_weight(x, -0.75) == doctest::Approx(oracle_kernel(x, -0.75)).epsilon(1e-12));
  }
}

TEST_CASE("kernel is a partition of unity") {
  for (int i = 0; i < 1000; ++i) {
    const double t = i / 1000.0;
    double sum = 0.0;
    for (int k = -1; k <= 2; ++k) sum += cubic_weight(t - k, -0.5);
    CHECK(std::fabs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("identity resize is byte identical") {
  std::mt19937_64 rng(5);
  const Frame f = random_frame(rng, 13, 17);
  CHECK(bicubic_resize(f, 13, 17).pixels_equal(f));

  // Also holds without the short-circuit: integer-offset taps vanish.
  const std::vector<double> cont = oracle_resize_continuous(f, 13, 17, -0.5);
  for (std::size_t i = 0; i < cont.size(); ++i) {
    CHECK(std::round(cont[i]) == f.data()[i]);
  }
}

TEST_CASE("constant images stay constant") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> dim(1, 64);
  for (std::uint8_t value : {std::uint8_t{0}, std::uint8_t{128}, std::uint8_t{255}}) {
    const Frame f = constant_frame(12, 20, value);
    for (int i = 0; i < 20; ++i) {
      const Frame out = bicubic_resize(f, dim(rng), dim(rng));
      for (std::uint8_t b : out.data()) REQUIRE(b == value);
    }
  }
}

TEST_CASE("horizontal ramp downscale matches the direct sum") {
  Frame ramp(1, 16);
  for (int x = 0; x < 16; ++x) {
    for (int c = 0; c < 3; ++c) ramp.at(0, x, c) = static_cast<std::uint8_t>(16 * x);
  }
  const Frame out = bicubic_resize(ramp, 1, 8);
  const std::vector<double> oracle = oracle_resize_continuous(ramp, 1, 8, -0.5);
  for (int x = 0; x < 8; ++x) {
    CHECK(out.at(0, x, 0) == static_cast<std::uint8_t>(std::round(oracle_clamp(oracle[x * 3]))));
  }
  // Interior outputs reproduce the ramp at the mapped coordinate 2x + 0.5.
  for (int x = 1; x <= 6; ++x) {
    CHECK(std::abs(out.at(0, x, 0) - (32 * x + 8)) <= 1);
  }
}

TEST_CASE("separable result is within half a grey level of the 2D sum") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> dim(1, 40);
  for (int trial = 0; trial < 50; ++trial) {
    const Frame src = random_frame(rng, 16, 16);
    const int oh = dim(rng), ow = dim(rng);
    const Frame out = bicubic_resize(src, oh, ow);
    const std::vector<double> oracle = oracle_resize_continuous(src, oh, ow, -0.5);
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      REQUIRE(std::fabs(out.data()[i] - oracle_clamp(oracle[i])) <= 0.5 + 1e-9);
    }
  }
}

TEST_CASE("resize is deterministic and honours kernel_a") {
  std::mt19937_64 rng(23);
  const Frame src = random_frame(rng, 20, 30);
  CHECK(bicubic_resize(src, 7, 11).pixels_equal(bicubic_resize(src, 7, 11)));

  ResampleSpec sharp;
  sharp.kernel_a = -0.75;
  const Frame out = bicubic_resize(src, 9, 13, sharp);
  const std::vector<double> oracle = oracle_resize_continuous(src, 9, 13, -0.75);
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    REQUIRE(std::fabs(out.data()[i] - oracle_clamp(oracle[i])) <= 0.5 + 1e-9);
  }
}

TEST_CASE("invalid target size") {
  CHECK_THROWS(bicubic_resize(constant_frame(2, 2, 1), 0, 3));
}
