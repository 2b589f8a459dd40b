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

#include <span>
#include <string>
#include <vector>

#include "cpmap/score_io.hpp"
#include "cpmap/trials.hpp"

namespace cpmap {

/// The two permutations that define the C-P map axes, hardest trial first:
/// positives ascending by fused score (low-scoring positives are hard),
/// negatives descending (high-scoring negatives are hard).
struct HardnessOrder {
  std::vector<TrialKey> positive_order;
  std::vector<TrialKey> negative_order;
};

enum class FusionMethod { rank_mean, raw_mean };

/// Replaces each value by (average rank - 1) / (n - 1) in [0, 1], ties
/// receiving the mean of their rank range. A single element maps to 0.5.
/// Throws InputError on empty input.
std::vector<double> rank_normalize(std::span<const double> scores);

/// Fuses one or more systems scored on the same trials into a single
/// hardness ordering. rank_mean averages per-system rank-normalized scores
/// (scale-free); raw_mean averages raw scores. Ties are broken by trial key
/// so the permutations are stable across runs. Throws InputError if the
/// systems do not score exactly the same keys, naming the first mismatch.
HardnessOrder fuse_orderings(std::span<const ScoredTrials> systems,
                             FusionMethod method);

/// Ordering by the system's own scores; equivalent to single-system fusion.
HardnessOrder self_order(const ScoredTrials& scored);

/// One trial key per line, hardest first.
std::string write_order(std::span<const TrialKey> order);
std::vector<TrialKey> parse_order(std::istream& in);

}  // namespace cpmap
