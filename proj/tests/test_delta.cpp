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

#include "cpmap/delta.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "cpmap/errors.hpp"

using namespace cpmap;

namespace {

CPMap map_of(int m, std::vector<std::optional<double>> cells,
             MetricKind kind = MetricKind::eer) {
  return CPMap{GridSpec{m, 1}, kind, Provenance{"sys", "shared"},
               std::move(cells)};
}

CPMap random_map(std::mt19937_64& rng, int m, double undefined_share = 0.0) {
  std::vector<std::optional<double>> cells;
  std::uniform_real_distribution<double> value(0.01, 0.9);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < m * m; ++i) {
    if (coin(rng) < undefined_share) {
      cells.emplace_back();
    } else {
      cells.emplace_back(value(rng));
    }
  }
  return map_of(m, std::move(cells));
}

}  // namespace

TEST_CASE("RCR spot values from the definition") {
  const auto ref = map_of(2, {0.10, 0.10, 0.10, 0.10});
  const auto test = map_of(2, {0.05, 0.05, 0.05, 0.05});
  const auto delta = compute_delta_map(ref, test, 1e-5);
  CHECK(*delta.at(1, 1) == 0.5);  // exact in doubles: fl(0.1) = 2*fl(0.05)

  const auto worse = compute_delta_map(map_of(2, {0.04, 0.04, 0.04, 0.04}),
                                       map_of(2, {0.06, 0.06, 0.06, 0.06}),
                                       1e-5);
  CHECK(*worse.at(2, 2) == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("self-comparison gives all-zero RCR and full tie") {
  std::mt19937_64 rng(401);
  const auto map = random_map(rng, 5, 0.2);
  const auto delta = compute_delta_map(map, map, 1e-5);
  for (const auto& cell : delta.cells) {
    if (cell) CHECK(*cell == 0.0);
  }
  const auto wtl = summarize_wtl(delta);
  CHECK(wtl.win == 0.0);
  CHECK(wtl.tie == 1.0);
  CHECK(wtl.lose == 0.0);
}

TEST_CASE("undefined and zero-reference cells propagate") {
  const auto ref = map_of(2, {0.0, 0.1, std::nullopt, 0.2});
  const auto test = map_of(2, {0.1, 0.1, 0.1, std::nullopt});
  const auto delta = compute_delta_map(ref, test, 1e-5);
  CHECK(!delta.at(1, 1).has_value());  // ref == 0
  CHECK(delta.at(2, 1).has_value());
  CHECK(!delta.at(1, 2).has_value());  // ref undefined
  CHECK(!delta.at(2, 2).has_value());  // test undefined
  CHECK(delta.zero_ref_cells == 1);
}

TEST_CASE("win/tie/lose counts the three bands") {
  const auto ref = map_of(2, {0.1, 0.1, 0.1, 0.1});
  // RCR values: 0.2, -0.3, 0.0, 5e-6 (inside the tie band)
  const auto test = map_of(
      2, {0.1 * (1.0 - 0.2), 0.1 * (1.0 + 0.3), 0.1, 0.1 * (1.0 - 5e-6)});
  const auto delta = compute_delta_map(ref, test, 1e-5);
  const auto wtl = summarize_wtl(delta);
  CHECK(wtl.defined_cells == 4);
  CHECK(wtl.win == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(wtl.tie == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(wtl.lose == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("tie band uses strict inequality at epsilon") {
  // Dyadic values keep the RCRs exact, so the band edges are sharp.
  const double eps = 0x1p-20;
  const auto ref = map_of(2, {1.0, 1.0, 1.0, 1.0});
  const auto test = map_of(2, {1.0 - eps, 1.0 + eps, 1.0 - eps / 2, 1.0});
  // RCR exactly +eps and -eps count as win and lose, not tie.
  const auto wtl = summarize_wtl(compute_delta_map(ref, test, eps));
  CHECK(wtl.win == 0.25);
  CHECK(wtl.lose == 0.25);
  CHECK(wtl.tie == 0.5);
}

TEST_CASE("fractions sum to one over defined cells") {
  std::mt19937_64 rng(402);
  for (int round = 0; round < 50; ++round) {
    const int m = 2 + static_cast<int>(rng() % 6);
    const auto ref = random_map(rng, m, 0.1);
    const auto test = random_map(rng, m, 0.1);
    const auto delta = compute_delta_map(ref, test, 1e-5);
    bool any = false;
    for (const auto& c : delta.cells) any = any || c.has_value();
    if (!any) continue;
    const auto wtl = summarize_wtl(delta);
    CHECK(std::abs(wtl.win + wtl.tie + wtl.lose - 1.0) <= 1e-12);
    CHECK(wtl.win >= 0.0);
    CHECK(wtl.tie >= 0.0);
    CHECK(wtl.lose >= 0.0);
  }
}

TEST_CASE("swapping ref and test swaps win and lose") {
  std::mt19937_64 rng(403);
  for (int round = 0; round < 30; ++round) {
    const int m = 2 + static_cast<int>(rng() % 5);
    // strictly positive cells so both directions are defined everywhere
    const auto a = random_map(rng, m);
    const auto b = random_map(rng, m);
    const auto ab = summarize_wtl(compute_delta_map(a, b, 1e-5));
    const auto ba = summarize_wtl(compute_delta_map(b, a, 1e-5));
    CHECK(ab.defined_cells == ba.defined_cells);
    CHECK(ab.win == doctest::Approx(ba.lose).epsilon(1e-12));
    CHECK(ab.lose == doctest::Approx(ba.win).epsilon(1e-12));
    CHECK(ab.tie == doctest::Approx(ba.tie).epsilon(1e-12));
  }
}

TEST_CASE("RCR is invariant under joint positive scaling") {
  std::mt19937_64 rng(404);
  const auto ref = random_map(rng, 4);
  const auto test = random_map(rng, 4);
  const auto base = compute_delta_map(ref, test, 1e-5);

  const auto scale = [&](const CPMap& map, double c) {
    CPMap out = map_of(4, {});
    out.cells = map.cells;
    for (auto& cell : out.cells) {
      if (cell) *cell *= c;
    }
    return out;
  };
  // powers of two scale exactly
  const auto pow2 = compute_delta_map(scale(ref, 1024.0), scale(test, 1024.0),
                                      1e-5);
  for (std::size_t i = 0; i < base.cells.size(); ++i) {
    CHECK(*pow2.cells[i] == *base.cells[i]);
  }
  // arbitrary factors within rounding
  const auto odd = compute_delta_map(scale(ref, 3.7), scale(test, 3.7), 1e-5);
  for (std::size_t i = 0; i < base.cells.size(); ++i) {
    CHECK(std::abs(*odd.cells[i] - *base.cells[i]) <= 1e-12);
  }
}

TEST_CASE("delta validates shape, metric, ordering and epsilon") {
  const auto a = map_of(2, {0.1, 0.1, 0.1, 0.1});
  const auto b3 = map_of(3, std::vector<std::optional<double>>(9, 0.1));
  CHECK_THROWS_AS(compute_delta_map(a, b3, 1e-5), InputError);

  auto dcf_map = map_of(2, {0.1, 0.1, 0.1, 0.1}, MetricKind::min_dcf);
  CHECK_THROWS_AS(compute_delta_map(a, dcf_map, 1e-5), InputError);

  auto other_order = map_of(2, {0.1, 0.1, 0.1, 0.1});
  other_order.provenance.ordering_desc = "different";
  CHECK_THROWS_AS(compute_delta_map(a, other_order, 1e-5), InputError);

  CHECK_THROWS_AS(compute_delta_map(a, a, 0.0), InputError);
  CHECK_THROWS_AS(compute_delta_map(a, a, -1.0), InputError);
}

TEST_CASE("summarize_wtl needs at least one defined cell") {
  DeltaMap empty{2, "r", "t", 1e-5,
                 std::vector<std::optional<double>>(4), 0};
  CHECK_THROWS_AS(summarize_wtl(empty), EvalError);
}

TEST_CASE("delta CSV export matches the map layout") {
  DeltaMap delta{2, "r", "t", 1e-5,
                 {0.5, std::nullopt, -0.25, 0.125}, 0};
  CHECK(export_delta_map(delta) ==
        "x_frac,0.500000,1.000000\n"
        "1.000000,-0.250000,0.125000\n"
        "0.500000,0.500000,NA\n");
}

TEST_CASE("wtl summary line format") {
  const WtlSummary s{0.25, 0.5, 0.25, 4};
  CHECK(format_wtl(s) == "win=0.250000 tie=0.500000 lose=0.250000 defined=4");
}
