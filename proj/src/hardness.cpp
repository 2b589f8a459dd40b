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

#include "cpmap/hardness.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>

#include "cpmap/errors.hpp"
#include "text_lines.hpp"

namespace cpmap {

namespace {

// (key, score) pairs of one class for one system, sorted by key.
using KeyedScores = std::vector<ScoredTrial>;

KeyedScores by_key(const std::vector<ScoredTrial>& side) {
  KeyedScores out = side;
  std::sort(out.begin(), out.end(),
            [](const ScoredTrial& a, const ScoredTrial& b) {
              return a.key < b.key;
            });
  return out;
}

// All systems must score the same key set per class; returns per-system
// score columns aligned to the first system's sorted keys.
std::vector<std::vector<double>> aligned_columns(
    std::span<const ScoredTrials> systems, bool positives,
    std::vector<TrialKey>* keys_out) {
  const char* side_name = positives ? "positive" : "negative";
  std::vector<std::vector<double>> columns;
  std::vector<TrialKey> keys;
  for (std::size_t s = 0; s < systems.size(); ++s) {
    const auto& side = positives ? systems[s].positives : systems[s].negatives;
    KeyedScores sorted = by_key(side);
    if (s == 0) {
      keys.reserve(sorted.size());
      for (auto& st : sorted) keys.push_back(st.key);
    } else {
      const std::size_t n = std::min(keys.size(), sorted.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (sorted[i].key != keys[i]) {
          throw InputError("system " + std::to_string(s + 1) + " " +
                           side_name + " trials differ from system 1 at key '" +
                           (sorted[i].key < keys[i] ? sorted[i].key : keys[i]) +
                           "'");
        }
      }
      if (sorted.size() != keys.size()) {
        const auto& longer = sorted.size() > keys.size()
                                 ? sorted[n].key
                                 : keys[n];
        throw InputError("system " + std::to_string(s + 1) + " scores " +
                         std::to_string(sorted.size()) + " " + side_name +
                         " trials but system 1 scores " +
                         std::to_string(keys.size()) + "; first extra key '" +
                         longer + "'");
      }
    }
    std::vector<double> column;
    column.reserve(sorted.size());
    for (const auto& st : sorted) column.push_back(st.score);
    columns.push_back(std::move(column));
  }
  *keys_out = std::move(keys);
  return columns;
}

std::vector<TrialKey> fused_order(std::span<const ScoredTrials> systems,
                                  FusionMethod method, bool positives) {
  std::vector<TrialKey> keys;
  auto columns = aligned_columns(systems, positives, &keys);
  std::vector<double> fused(keys.size(), 0.0);
  for (auto& column : columns) {
    if (method == FusionMethod::rank_mean) column = rank_normalize(column);
    for (std::size_t i = 0; i < fused.size(); ++i) fused[i] += column[i];
  }
  const double inv = 1.0 / static_cast<double>(columns.size());
  for (double& f : fused) f *= inv;

  std::vector<std::size_t> idx(keys.size());
  std::iota(idx.begin(), idx.end(), 0);
  if (positives) {
    // Hard positives score low: ascending.
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      if (fused[a] != fused[b]) return fused[a] < fused[b];
      return keys[a] < keys[b];
    });
  } else {
    // Hard negatives score high: descending.
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      if (fused[a] != fused[b]) return fused[a] > fused[b];
      return keys[a] < keys[b];
    });
  }
  std::vector<TrialKey> order;
  order.reserve(keys.size());
  for (std::size_t i : idx) order.push_back(std::move(keys[i]));
  return order;
}

}  // namespace

std::vector<double> rank_normalize(std::span<const double> scores) {
  if (scores.empty()) throw InputError("rank_normalize on empty input");
  const std::size_t n = scores.size();
  if (n == 1) return {0.5};

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });

  std::vector<double> out(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[idx[j + 1]] == scores[idx[i]]) ++j;
    // 1-based ranks i+1 .. j+1 share the average rank.
    const double avg_rank = static_cast<double>(i + j + 2) / 2.0;
    const double value = (avg_rank - 1.0) / static_cast<double>(n - 1);
    for (std::size_t k = i; k <= j; ++k) out[idx[k]] = value;
    i = j + 1;
  }
  return out;
}

HardnessOrder fuse_orderings(std::span<const ScoredTrials> systems,
                             FusionMethod method) {
  if (systems.empty()) {
    throw InputError("fuse_orderings needs at least one system");
  }
  HardnessOrder order;
  order.positive_order = fused_order(systems, method, true);
  order.negative_order = fused_order(systems, method, false);
  return order;
}

HardnessOrder self_order(const ScoredTrials& scored) {
  return fuse_orderings(std::span<const ScoredTrials>(&scored, 1),
                        FusionMethod::raw_mean);
}

std::string write_order(std::span<const TrialKey> order) {
  std::string out;
  for (const auto& key : order) {
    out.append(key);
    out.push_back('\n');
  }
  return out;
}

std::vector<TrialKey> parse_order(std::istream& in) {
  std::vector<TrialKey> order;
  text::for_each_line(in, [&](std::size_t line_no, std::string_view line) {
    std::array<std::string_view, 2> f;
    if (text::split_fields(line, f) != 2) {
      text::fail_line(line_no, "expected <enroll> <test>");
    }
    order.push_back(make_trial_key(std::string(f[0]), std::string(f[1])));
  });
  return order;
}

}  // namespace cpmap
