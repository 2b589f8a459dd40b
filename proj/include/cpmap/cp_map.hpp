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

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cpmap/hardness.hpp"
#include "cpmap/metrics.hpp"
#include "cpmap/score_io.hpp"

namespace cpmap {

/// Grid geometry: resolution M (cells per axis, 2..500) and the minimum
/// trials per class below which a cell is left undefined. Cells near the
/// origin hold too few trials for a stable metric, so they are masked
/// rather than reported as noise.
struct GridSpec {
  int resolution = 20;
  int min_trials_per_class = 50;
};

void validate(const GridSpec& spec);

/// The trial subset behind grid cell (x_index, y_index): the first
/// ceil((x/M)*P) entries of the positive order and the first ceil((y/M)*Q)
/// entries of the negative order, hardest first.
struct TrialConfig {
  int x_index = 0;
  int y_index = 0;
  std::size_t num_positives = 0;
  std::size_t num_negatives = 0;
};

TrialConfig config_at(const HardnessOrder& order, const GridSpec& spec,
                      int x_index, int y_index);

/// The trial keys a config selects, as views into the order.
std::span<const TrialKey> config_positives(const HardnessOrder& order,
                                           const TrialConfig& config);
std::span<const TrialKey> config_negatives(const HardnessOrder& order,
                                           const TrialConfig& config);

enum class MetricKind { eer, min_dcf };

/// Where a map came from: which system's scores colored it and which
/// ordering fixed the axes. Two maps are comparable only when the
/// ordering matches.
struct Provenance {
  std::string system_name;
  std::string ordering_desc;
};

/// The Config-Performance map: an M x M grid of metric values, one per
/// trial config. x grows with easier positives, y with easier negatives,
/// so cell (M, M) is the full trial set.
struct CPMap {
  GridSpec spec;
  MetricKind metric_kind = MetricKind::eer;
  Provenance provenance;
  std::vector<std::optional<double>> cells;  // indexed (y-1)*M + (x-1)

  std::optional<double>& at(int x_index, int y_index);
  const std::optional<double>& at(int x_index, int y_index) const;
};

/// Computes the metric for every defined cell, evaluating the target
/// system's own scores over the trials each config selects. The ordering
/// decides membership; the scores decide the value. Throws InputError if
/// the order is not a permutation of the scored keys, per class.
///
/// EER cells are located by binary search over threshold candidates with
/// prefix counts from a segment tree of sorted batches, so a map costs
/// O((P+Q)log(P+Q)) setup plus polylogarithmic work per cell. minDCF has
/// no monotone structure to search, so those cells sweep their subset's
/// threshold regions over incrementally merged prefixes.
CPMap compute_cp_map(const ScoredTrials& scored, const HardnessOrder& order,
                     const GridSpec& spec, MetricKind metric_kind,
                     const std::optional<DcfParams>& dcf_params = std::nullopt,
                     Provenance provenance = {});

/// CSV form: a header row labelling the M x-axis fractions, then M rows
/// from y_frac = 1.0 down to 1/M, each row's first column the y fraction.
/// Values use 6 decimal places; undefined cells read `NA`. The text reads
/// like the rendered figure: easy configs at the top right.
std::string export_cp_map(const CPMap& map);

/// Re-reads an exported CSV. The CSV carries grid values only; metric kind
/// and provenance are not recoverable and default to eer / "csv".
CPMap parse_cp_map_csv(std::istream& in);

}  // namespace cpmap
