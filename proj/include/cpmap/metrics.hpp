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

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cpmap/score_io.hpp"

namespace cpmap {

/// Equal error rate and the threshold realizing it.
struct EerResult {
  double eer = 0.0;
  double threshold = 0.0;
};

/// Detection cost parameters. Defaults follow the common convention of
/// unit costs with a 0.01 target prior.
struct DcfParams {
  double p_target = 0.01;
  double c_miss = 1.0;
  double c_fa = 1.0;
};

/// Minimum normalized detection cost and the threshold achieving it.
struct DcfResult {
  double min_dcf = 0.0;
  double threshold = 0.0;
};

struct DetPoint {
  double far = 0.0;
  double frr = 0.0;

  bool operator==(const DetPoint&) const = default;
};

/// Throws InputError unless 0 < p_target < 1 and both costs are positive.
void validate(const DcfParams& params);

/// Error rates at a fixed decision threshold, with the rule "score >= theta
/// accepts": frr = |{positive < theta}| / P, far = |{negative >= theta}| / Q.
/// theta may be +-infinity. Throws EvalError if either class is empty.
std::pair<double, double> error_rates_at(const ScoredTrials& scored,
                                         double theta);

/*
  compute_eer finds where the two empirical error-rate step functions cross.
  As theta sweeps upward, FRR(theta) is non-decreasing and FAR(theta) is
  non-increasing, and both are constant between consecutive distinct scores,
  so the sign of FRR - FAR is decided exactly with the integer cross product
  cp*Q - cn*P. If some threshold region makes the rates exactly equal, that
  common value is the EER and the reported threshold is the midpoint of the
  region. Otherwise the crossing falls on the jump between two adjacent
  operating points and the EER is the linear interpolation along the ROC
  segment joining them, with the jump's score as the threshold.
*/
EerResult compute_eer(const ScoredTrials& scored);

/// Minimum of the normalized detection cost
///   [c_miss*p_target*FRR(t) + c_fa*(1-p_target)*FAR(t)] /
///   min(c_miss*p_target, c_fa*(1-p_target))
/// over every achievable operating point. Candidate thresholds are the
/// midpoints between consecutive distinct pooled scores plus one sentinel
/// below the minimum and one above the maximum.
DcfResult compute_min_dcf(const ScoredTrials& scored, const DcfParams& params);

/// All empirical DET operating points, ordered by threshold: from
/// (far=1, frr=0) at the accept-all end to (far=0, frr=1) at reject-all.
std::vector<DetPoint> det_points(const ScoredTrials& scored);

// Sorted-span variants. Inputs must be ascending; both spans non-empty.
// These are the single implementation the ScoredTrials overloads and the
// C-P map cells share, so a full-set map cell is bit-identical to the
// global metric.
EerResult compute_eer_sorted(std::span<const double> pos_ascending,
                             std::span<const double> neg_ascending);
DcfResult compute_min_dcf_sorted(std::span<const double> pos_ascending,
                                 std::span<const double> neg_ascending,
                                 const DcfParams& params);
std::vector<DetPoint> det_points_sorted(std::span<const double> pos_ascending,
                                        std::span<const double> neg_ascending);

namespace detail {

// Operating point of one threshold region, as exact counts:
// cp = rejected positives, cn = accepted negatives.
struct RegionCounts {
  std::int64_t cp = 0;
  std::int64_t cn = 0;
};

// EER from the two operating points bracketing the crossing: `below` has
// FRR < FAR, `above` has FRR > FAR. Linear interpolation on the ROC segment
// between them. Both map-cell and full-set paths go through this helper so
// equal counts give bit-equal results.
double interpolate_eer(const RegionCounts& below, const RegionCounts& above,
                       std::int64_t num_pos, std::int64_t num_neg);

}  // namespace detail

}  // namespace cpmap
