// Copyright 2026 The Panoptica Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "panoptica/rle.hpp"

#include <stdexcept>

#include "doctest.h"
#include "panoptica/rng.hpp"

namespace panoptica {
namespace {

GrayImage RandomMask(Rng& rng, int width, int height, double density) {
  GrayImage mask(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      mask.at(x, y) = rng.NextDouble() < density ? 1 : 0;
    }
  }
  return mask;
}

TEST_SUITE("rle") {

TEST_CASE("counts start with a zero run when the first pixel is set") {
  GrayImage mask(4, 1);
  mask.at(0, 0) = 1;
  mask.at(1, 0) = 1;
  const RleMask rle = RleMask::FromDense(mask);
  CHECK(rle.counts() == std::vector<std::int64_t>{0, 2, 2});
  CHECK(rle.area() == 2);
}

TEST_CASE("runs are row-major across row boundaries") {
  GrayImage mask(3, 2);
  mask.at(2, 0) = 1;
  mask.at(0, 1) = 1;
  const RleMask rle = RleMask::FromDense(mask);
  CHECK(rle.counts() == std::vector<std::int64_t>{2, 2, 2});
}

TEST_CASE("dense round-trip preserves every pixel") {
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const int width = 1 + static_cast<int>(rng.UniformIndex(48));
    const int height = 1 + static_cast<int>(rng.UniformIndex(48));
    const GrayImage mask = RandomMask(rng, width, height, rng.NextDouble());
    const RleMask rle = RleMask::FromDense(mask);
    CHECK(rle.ToDense() == mask);
    std::int64_t set_pixels = 0;
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) set_pixels += mask.at(x, y) != 0;
    }
    CHECK(rle.area() == set_pixels);
  }
}

TEST_CASE("counts constructor validates its input") {
  CHECK_NOTHROW(RleMask(2, 2, {0, 4}));
  CHECK_NOTHROW(RleMask(2, 2, {4}));
  CHECK_THROWS_AS(RleMask(2, 2, {3}), std::invalid_argument);         // wrong total
  CHECK_THROWS_AS(RleMask(2, 2, {-1, 5}), std::invalid_argument);     // negative run
  CHECK_THROWS_AS(RleMask(2, 2, {1, 0, 3}), std::invalid_argument);   // interior zero
}

TEST_CASE("at matches the dense form") {
  Rng rng(42);
  const GrayImage mask = RandomMask(rng, 13, 7, 0.4);
  const RleMask rle = RleMask::FromDense(mask);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      REQUIRE(rle.at(x, y) == (mask.at(x, y) != 0));
    }
  }
}

TEST_CASE("intersection area matches per-pixel counting") {
  Rng rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const int width = 1 + static_cast<int>(rng.UniformIndex(32));
    const int height = 1 + static_cast<int>(rng.UniformIndex(32));
    const GrayImage a = RandomMask(rng, width, height, 0.5);
    const GrayImage b = RandomMask(rng, width, height, 0.5);
    std::int64_t expected = 0;
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) expected += (a.at(x, y) != 0 && b.at(x, y) != 0);
    }
    CHECK(IntersectionArea(RleMask::FromDense(a), RleMask::FromDense(b)) == expected);
  }
}

TEST_CASE("intersection requires matching dimensions") {
  const RleMask a = RleMask::FromDense(GrayImage(2, 2, 1));
  const RleMask b = RleMask::FromDense(GrayImage(2, 3, 1));
  CHECK_THROWS_AS(IntersectionArea(a, b), std::invalid_argument);
}

}  // TEST_SUITE

}  // namespace
}  // namespace panoptica
