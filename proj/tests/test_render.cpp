// Copyright 2026 The cpmap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cpmap/render.hpp"

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "cpmap/errors.hpp"

using namespace cpmap;

namespace {

CPMap map_of(int m, std::vector<std::optional<double>> cells) {
  return CPMap{GridSpec{m, 1}, MetricKind::eer, Provenance{}, std::move(cells)};
}

DeltaMap delta_of(int m, std::vector<std::optional<double>> cells) {
  return DeltaMap{m, "r", "t", 1e-5, std::move(cells), 0};
}

// Parses the pixel block after the 3-line header.
std::vector<int> pixels_of(const std::string& pnm) {
  std::istringstream in(pnm);
  std::string magic;
  int w = 0;
  int h = 0;
  int maxval = 0;
  in >> magic >> w >> h >> maxval;
  std::vector<int> px;
  int v = 0;
  while (in >> v) px.push_back(v);
  return px;
}

}  // namespace

TEST_CASE("sequential render clamps at both ends of the scale") {
  const auto at_min = map_of(2, {0.2, 0.2, 0.2, 0.2});
  const auto bright =
      render_sequential(at_min, ColorScale::sequential(0.2, 0.8));
  CHECK(bright.substr(0, 11) == "P2\n2 2\n255\n");
  for (int px : pixels_of(bright)) CHECK(px == 255);

  const auto at_max = map_of(2, {0.8, 0.8, 0.8, 0.8});
  for (int px : pixels_of(
           render_sequential(at_max, ColorScale::sequential(0.2, 0.8)))) {
    CHECK(px == 0);
  }
}

TEST_CASE("undefined cells render black") {
  const auto map = map_of(2, {0.0, 0.0, std::nullopt, 0.0});
  const auto pgm = render_sequential(map, ColorScale::sequential(0.0, 1.0));
  const auto px = pixels_of(pgm);
  REQUIRE(px.size() == 4);
  // cells[2] is (x=1, y=2): top row, first pixel.
  CHECK(px[0] == 0);
  CHECK(px[1] == 255);
  CHECK(px[2] == 255);
  CHECK(px[3] == 255);
}

TEST_CASE("sequential rows run from y = M down to 1") {
  const auto map = map_of(2, {1.0, 1.0, 0.0, 0.0});  // bottom row dark
  const auto px = pixels_of(
      render_sequential(map, ColorScale::sequential(0.0, 1.0)));
  CHECK(px == std::vector<int>{255, 255, 0, 0});
}

TEST_CASE("diverging render hits the documented colors") {
  const double span = 0.5;
  const auto delta = delta_of(2, {0.0, span, -span, -span / 2});
  const auto ppm = render_diverging(delta, ColorScale::diverging(span));
  CHECK(ppm.substr(0, 11) == "P3\n2 2\n255\n");
  const auto px = pixels_of(ppm);
  REQUIRE(px.size() == 12);
  // rows y=2 first: cells[2] = (1,2) = -span -> blue, cells[3] = (2,2) = -span/2
  CHECK((px[0] == 0 && px[1] == 0 && px[2] == 255));
  CHECK((px[3] == 127 && px[4] == 127 && px[5] == 255));
  // then y=1: 0 -> white, +span -> red
  CHECK((px[6] == 255 && px[7] == 255 && px[8] == 255));
  CHECK((px[9] == 255 && px[10] == 0 && px[11] == 0));
}

TEST_CASE("diverging values clamp beyond the span") {
  const auto delta = delta_of(2, {3.0, -3.0, 0.0, 0.0});
  const auto px = pixels_of(render_diverging(delta, ColorScale::diverging(1.0)));
  // cells[0] = (1,1) bottom-left: pure red; cells[1] = (2,1): pure blue
  CHECK((px[6] == 255 && px[7] == 0 && px[8] == 0));
  CHECK((px[9] == 0 && px[10] == 0 && px[11] == 255));
}

TEST_CASE("undefined delta cells render black") {
  const auto delta = delta_of(2, {std::nullopt, 0.0, 0.0, 0.0});
  const auto px = pixels_of(render_diverging(delta, ColorScale::diverging(1.0)));
  CHECK((px[6] == 0 && px[7] == 0 && px[8] == 0));
}

TEST_CASE("rendering is a pure function of map and scale") {
  std::mt19937_64 rng(601);
  std::uniform_real_distribution<double> value(0.0, 1.0);
  std::vector<std::optional<double>> cells;
  for (int i = 0; i < 25; ++i) {
    if (i % 7 == 3) {
      cells.emplace_back();
    } else {
      cells.emplace_back(value(rng));
    }
  }
  const auto map = map_of(5, cells);
  const auto scale = default_sequential_scale(map);
  CHECK(render_sequential(map, scale) == render_sequential(map, scale));
}

TEST_CASE("pixels stay in range and dimensions match the grid") {
  std::mt19937_64 rng(602);
  std::uniform_real_distribution<double> value(-2.0, 2.0);
  for (int m : {2, 3, 7}) {
    std::vector<std::optional<double>> cells;
    for (int i = 0; i < m * m; ++i) cells.emplace_back(value(rng));
    const auto map = map_of(m, cells);
    const auto px =
        pixels_of(render_sequential(map, default_sequential_scale(map)));
    CHECK(px.size() == static_cast<std::size_t>(m) * m);
    for (int v : px) {
      CHECK(v >= 0);
      CHECK(v <= 255);
    }

    DeltaMap delta = delta_of(m, cells);
    const auto rgb =
        pixels_of(render_diverging(delta, default_diverging_scale(delta)));
    CHECK(rgb.size() == static_cast<std::size_t>(m) * m * 3);
    for (int v : rgb) {
      CHECK(v >= 0);
      CHECK(v <= 255);
    }
  }
}

TEST_CASE("flat maps get widened default scales instead of errors") {
  const auto flat = map_of(2, {0.3, 0.3, 0.3, 0.3});
  const auto scale = default_sequential_scale(flat);
  CHECK(scale.value_min < scale.value_max);
  CHECK_NOTHROW(render_sequential(flat, scale));

  const auto zero_delta = delta_of(2, {0.0, 0.0, 0.0, 0.0});
  const auto dscale = default_diverging_scale(zero_delta);
  CHECK(dscale.span > 0.0);
  const auto px = pixels_of(render_diverging(zero_delta, dscale));
  for (int v : px) CHECK(v == 255);
}

TEST_CASE("degenerate scales are rejected") {
  const auto map = map_of(2, {0.1, 0.2, 0.3, 0.4});
  CHECK_THROWS_AS(render_sequential(map, ColorScale::sequential(0.5, 0.5)),
                  InputError);
  CHECK_THROWS_AS(render_sequential(map, ColorScale::sequential(0.9, 0.1)),
                  InputError);
  CHECK_THROWS_AS(render_sequential(map, ColorScale::diverging(1.0)),
                  InputError);

  const auto delta = delta_of(2, {0.0, 0.0, 0.0, 0.0});
  CHECK_THROWS_AS(render_diverging(delta, ColorScale::diverging(0.0)),
                  InputError);
  CHECK_THROWS_AS(render_diverging(delta, ColorScale::sequential(0.0, 1.0)),
                  InputError);
}
