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

// Brute-force reference implementations the tests check the library
// against. Everything here recomputes from first principles -- direct
// counting over explicit threshold candidates, O(n^2) ranks, quadrature
// for the normal CDF -- and shares no code with the library paths it
// verifies.

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "cpmap/score_io.hpp"

namespace oracle {

struct ErrorRates {
  double frr = 0.0;
  double far = 0.0;
};

// Direct counts at a fixed threshold, rule "score >= theta accepts".
ErrorRates error_rates(std::span<const double> pos, std::span<const double> neg,
                       double theta);

// All candidate thresholds that visit every empirical operating region
// exactly once: a sentinel below the minimum, midpoints between
// consecutive distinct pooled scores, a sentinel above the maximum.
std::vector<double> region_candidates(std::span<const double> pos,
                                      std::span<const double> neg);

struct EerOracle {
  double eer = 0.0;
  // The crossing lies in (threshold_low, threshold_high].
  double threshold_low = 0.0;
  double threshold_high = 0.0;
};

// Exhaustive sweep: evaluates FRR/FAR in every region, finds where
// FRR - FAR changes sign, and interpolates linearly on the ROC segment if
// no region achieves exact equality.
EerOracle eer(std::span<const double> pos, std::span<const double> neg);

struct DcfOracle {
  double min_dcf = 0.0;
  double threshold = 0.0;
};

DcfOracle min_dcf(std::span<const double> pos, std::span<const double> neg,
                  double p_target, double c_miss, double c_fa);

std::vector<std::pair<double, double>> det_points(
    std::span<const double> pos, std::span<const double> neg);  // (far, frr)

// O(n^2) tie-averaged ranks mapped to [0, 1].
std::vector<double> rank_normalize(std::span<const double> scores);

// Standard normal CDF by adaptive Simpson quadrature of the density;
// accurate to ~1e-13 and fully independent of erf/erfc.
double normal_cdf(double x);

// Score extraction helpers for ScoredTrials fixtures.
std::vector<double> scores_of(const std::vector<cpmap::ScoredTrial>& side);

// Random fixture: n_pos/n_neg scores on a coarse dyadic grid (so strictly
// increasing transforms cannot collide values), with unique keys. Ties
// across and within classes are likely by construction.
cpmap::ScoredTrials random_scored(std::mt19937_64& rng, std::size_t n_pos,
                                  std::size_t n_neg);

}  // namespace oracle
