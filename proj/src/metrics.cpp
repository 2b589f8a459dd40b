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

#include "cpmap/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cpmap/errors.hpp"

namespace cpmap {

namespace {

std::vector<double> sorted_scores(const std::vector<ScoredTrial>& side) {
  std::vector<double> out;
  out.reserve(side.size());
  for (const auto& st : side) out.push_back(st.score);
  std::sort(out.begin(), out.end());
  return out;
}

void require_both_classes(std::size_t num_pos, std::size_t num_neg) {
  if (num_pos == 0 || num_neg == 0) {
    throw EvalError("metric needs both trial classes, got " +
                    std::to_string(num_pos) + " positives and " +
                    std::to_string(num_neg) + " negatives");
  }
}

// Walks the threshold regions of the pooled score axis in ascending order.
// visit(value, at, above) is called once per distinct pooled value with the
// region counts at theta == value and just above it; it returns true to
// stop the walk.
template <typename Visit>
void walk_regions(std::span<const double> pos, std::span<const double> neg,
                  Visit&& visit) {
  const std::int64_t q = static_cast<std::int64_t>(neg.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < pos.size() || j < neg.size()) {
    const double value = i < pos.size() && (j >= neg.size() || pos[i] <= neg[j])
                             ? pos[i]
                             : neg[j];
    const detail::RegionCounts at{static_cast<std::int64_t>(i),
                                  q - static_cast<std::int64_t>(j)};
    while (i < pos.size() && pos[i] == value) ++i;
    while (j < neg.size() && neg[j] == value) ++j;
    const detail::RegionCounts above{static_cast<std::int64_t>(i),
                                     q - static_cast<std::int64_t>(j)};
    if (visit(value, at, above)) return;
  }
}

}  // namespace

namespace detail {

double interpolate_eer(const RegionCounts& below, const RegionCounts& above,
                       std::int64_t num_pos, std::int64_t num_neg) {
  const double frr_a = static_cast<double>(below.cp) / static_cast<double>(num_pos);
  const double far_a = static_cast<double>(below.cn) / static_cast<double>(num_neg);
  const double frr_b = static_cast<double>(above.cp) / static_cast<double>(num_pos);
  const double far_b = static_cast<double>(above.cn) / static_cast<double>(num_neg);
  const double t = (far_a - frr_a) / ((frr_b - frr_a) + (far_a - far_b));
  return frr_a + t * (frr_b - frr_a);
}

}  // namespace detail

void validate(const DcfParams& params) {
  if (!(params.p_target > 0.0) || !(params.p_target < 1.0)) {
    throw InputError("p_target must lie in (0, 1)");
  }
  if (!(params.c_miss > 0.0) || !(params.c_fa > 0.0)) {
    throw InputError("c_miss and c_fa must be positive");
  }
}

std::pair<double, double> error_rates_at(const ScoredTrials& scored,
                                         double theta) {
  require_both_classes(scored.positives.size(), scored.negatives.size());
  if (std::isnan(theta)) throw InputError("threshold is NaN");
  std::size_t rejected_pos = 0;
  for (const auto& st : scored.positives) {
    if (st.score < theta) ++rejected_pos;
  }
  std::size_t accepted_neg = 0;
  for (const auto& st : scored.negatives) {
    if (st.score >= theta) ++accepted_neg;
  }
  return {static_cast<double>(rejected_pos) / scored.positives.size(),
          static_cast<double>(accepted_neg) / scored.negatives.size()};
}

EerResult compute_eer_sorted(std::span<const double> pos,
                             std::span<const double> neg) {
  require_both_classes(pos.size(), neg.size());
  const auto p = static_cast<std::int64_t>(pos.size());
  const auto q = static_cast<std::int64_t>(neg.size());

  EerResult result;
  bool found = false;
  walk_regions(pos, neg, [&](double value, const detail::RegionCounts& at,
                             const detail::RegionCounts& above) {
    const std::int64_t f_above = above.cp * q - above.cn * p;
    if (f_above < 0) return false;
    if (f_above == 0) {
      // FRR == FAR holds across (value, next); report the midpoint. A zero
      // region is never the last one (there FRR - FAR == 1), so a next
      // pooled value exists.
      double next = std::numeric_limits<double>::infinity();
      auto pit = std::upper_bound(pos.begin(), pos.end(), value);
      if (pit != pos.end()) next = *pit;
      auto nit = std::upper_bound(neg.begin(), neg.end(), value);
      if (nit != neg.end()) next = std::min(next, *nit);
      result.eer = static_cast<double>(above.cp) / static_cast<double>(p);
      result.threshold = (value + next) / 2.0;
    } else {
      result.eer = detail::interpolate_eer(at, above, p, q);
      result.threshold = value;
    }
    found = true;
    return true;
  });
  if (!found) {
    // Unreachable: the last region always has FRR - FAR == 1.
    throw EvalError("no EER crossing found");
  }
  return result;
}

DcfResult compute_min_dcf_sorted(std::span<const double> pos,
                                 std::span<const double> neg,
                                 const DcfParams& params) {
  require_both_classes(pos.size(), neg.size());
  validate(params);
  const double p = static_cast<double>(pos.size());
  const double q = static_cast<double>(neg.size());
  const double miss_weight = params.c_miss * params.p_target;
  const double fa_weight = params.c_fa * (1.0 - params.p_target);
  const double normalizer = std::min(miss_weight, fa_weight);

  const auto dcf = [&](const detail::RegionCounts& c) {
    return (miss_weight * (static_cast<double>(c.cp) / p) +
            fa_weight * (static_cast<double>(c.cn) / q)) /
           normalizer;
  };

  // Region below the lowest score: everything accepted.
  const double lowest = std::min(pos.front(), neg.front());
  DcfResult best{dcf(detail::RegionCounts{0, static_cast<std::int64_t>(neg.size())}),
                 lowest - 1.0};

  double prev_value = lowest;
  bool have_prev = false;
  detail::RegionCounts pending{};
  walk_regions(pos, neg, [&](double value, const detail::RegionCounts&,
                             const detail::RegionCounts& above) {
    if (have_prev) {
      // Region between the previous distinct value and this one.
      const double candidate = dcf(pending);
      if (candidate < best.min_dcf) {
        best = DcfResult{candidate, (prev_value + value) / 2.0};
      }
    }
    prev_value = value;
    pending = above;
    have_prev = true;
    return false;
  });
  // Region above the highest score: everything rejected.
  const double candidate = dcf(pending);
  if (candidate < best.min_dcf) {
    best = DcfResult{candidate, prev_value + 1.0};
  }
  return best;
}

std::vector<DetPoint> det_points_sorted(std::span<const double> pos,
                                        std::span<const double> neg) {
  require_both_classes(pos.size(), neg.size());
  const double p = static_cast<double>(pos.size());
  const double q = static_cast<double>(neg.size());
  std::vector<DetPoint> points;
  points.push_back(DetPoint{1.0, 0.0});
  walk_regions(pos, neg, [&](double, const detail::RegionCounts&,
                             const detail::RegionCounts& above) {
    points.push_back(DetPoint{static_cast<double>(above.cn) / q,
                              static_cast<double>(above.cp) / p});
    return false;
  });
  return points;
}

EerResult compute_eer(const ScoredTrials& scored) {
  return compute_eer_sorted(sorted_scores(scored.positives),
                            sorted_scores(scored.negatives));
}

DcfResult compute_min_dcf(const ScoredTrials& scored, const DcfParams& params) {
  return compute_min_dcf_sorted(sorted_scores(scored.positives),
                                sorted_scores(scored.negatives), params);
}

std::vector<DetPoint> det_points(const ScoredTrials& scored) {
  return det_points_sorted(sorted_scores(scored.positives),
                           sorted_scores(scored.negatives));
}

}  // namespace cpmap
