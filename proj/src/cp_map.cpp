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

#include "cpmap/cp_map.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "cpmap/errors.hpp"
#include "text_lines.hpp"

namespace cpmap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t prefix_size(int index, int resolution, std::size_t total) {
  // ceil((index / M) * total) without floating point
  const auto m = static_cast<std::size_t>(resolution);
  return (static_cast<std::size_t>(index) * total + m - 1) / m;
}

/*
  Segment tree over the hardness-ordered scores, partitioned into the M
  per-axis batches. Each node keeps the sorted scores of its batch range,
  so any grid prefix decomposes into O(log M) sorted arrays and a
  count-below-threshold query is a handful of binary searches. This is what
  keeps per-cell EER search polylogarithmic instead of linear in the
  subset size.
*/
class SortedPrefixTree {
 public:
  SortedPrefixTree(std::span<const double> values_in_order,
                   std::span<const std::size_t> cuts)
      : num_batches_(cuts.size() - 1), nodes_(4 * std::max<std::size_t>(num_batches_, 1)) {
    build(1, 0, num_batches_, values_in_order, cuts);
  }

  // Queries address the first `batches` batches.
  std::int64_t count_less(std::size_t batches, double v) const {
    std::int64_t n = 0;
    visit_prefix(1, 0, num_batches_, batches, [&](const std::vector<double>& node) {
      n += std::lower_bound(node.begin(), node.end(), v) - node.begin();
    });
    return n;
  }

  std::int64_t count_less_equal(std::size_t batches, double v) const {
    std::int64_t n = 0;
    visit_prefix(1, 0, num_batches_, batches, [&](const std::vector<double>& node) {
      n += std::upper_bound(node.begin(), node.end(), v) - node.begin();
    });
    return n;
  }

  // Smallest value strictly above v within the prefix; +inf if none.
  double successor(std::size_t batches, double v) const {
    double next = kInf;
    visit_prefix(1, 0, num_batches_, batches, [&](const std::vector<double>& node) {
      auto it = std::upper_bound(node.begin(), node.end(), v);
      if (it != node.end()) next = std::min(next, *it);
    });
    return next;
  }

  // All values, sorted: the root node.
  std::span<const double> all_sorted() const { return nodes_[1]; }

 private:
  void build(std::size_t node, std::size_t lo, std::size_t hi,
             std::span<const double> values, std::span<const std::size_t> cuts) {
    if (hi - lo <= 1) {
      if (hi > lo) {
        auto& leaf = nodes_[node];
        leaf.assign(values.begin() + cuts[lo], values.begin() + cuts[hi]);
        std::sort(leaf.begin(), leaf.end());
      }
      return;
    }
    const std::size_t mid = (lo + hi) / 2;
    build(2 * node, lo, mid, values, cuts);
    build(2 * node + 1, mid, hi, values, cuts);
    auto& merged = nodes_[node];
    merged.resize(nodes_[2 * node].size() + nodes_[2 * node + 1].size());
    std::merge(nodes_[2 * node].begin(), nodes_[2 * node].end(),
               nodes_[2 * node + 1].begin(), nodes_[2 * node + 1].end(),
               merged.begin());
  }

  template <typename Fn>
  void visit_prefix(std::size_t node, std::size_t lo, std::size_t hi,
                    std::size_t prefix, Fn&& fn) const {
    if (prefix <= lo || lo >= hi) return;
    if (prefix >= hi) {
      fn(nodes_[node]);
      return;
    }
    const std::size_t mid = (lo + hi) / 2;
    visit_prefix(2 * node, lo, mid, prefix, fn);
    visit_prefix(2 * node + 1, mid, hi, prefix, fn);
  }

  std::size_t num_batches_;
  std::vector<std::vector<double>> nodes_;
};

/*
  Per-cell EER via threshold search. Over the cell's subset, the sign of
  FRR - FAR is decided by the exact integer F(v) = cp*q - cn*p evaluated
  just above candidate v. F only jumps at subset score values and is
  strictly increasing across jumps, so the first candidate with F >= 0 is
  the subset's own crossing value even when the search runs over the full
  class arrays. The operating points on both sides of the crossing then
  come straight from prefix counts, and the interpolation matches the
  full-set walk bit for bit.
*/
double cell_eer(const SortedPrefixTree& tree_pos, const SortedPrefixTree& tree_neg,
                std::size_t batches_x, std::size_t batches_y,
                std::int64_t p, std::int64_t q) {
  const auto f_above = [&](double v) {
    const std::int64_t cp = tree_pos.count_less_equal(batches_x, v);
    const std::int64_t cn = q - tree_neg.count_less_equal(batches_y, v);
    return cp * q - cn * p;
  };
  const auto first_crossing = [&](std::span<const double> values) {
    auto it = std::partition_point(values.begin(), values.end(),
                                   [&](double v) { return f_above(v) < 0; });
    return it == values.end() ? kInf : *it;
  };
  const double s = std::min(first_crossing(tree_pos.all_sorted()),
                            first_crossing(tree_neg.all_sorted()));

  const std::int64_t cp_above = tree_pos.count_less_equal(batches_x, s);
  const std::int64_t cn_above = q - tree_neg.count_less_equal(batches_y, s);
  if (cp_above * q - cn_above * p == 0) {
    return static_cast<double>(cp_above) / static_cast<double>(p);
  }
  const detail::RegionCounts below{tree_pos.count_less(batches_x, s),
                                   q - tree_neg.count_less(batches_y, s)};
  const detail::RegionCounts above{cp_above, cn_above};
  return detail::interpolate_eer(below, above, p, q);
}

// Target scores arranged in hardness order. Rejects anything but an exact
// bijection between the order and the scored keys.
std::vector<double> scores_in_order(const std::vector<ScoredTrial>& side,
                                    std::span<const TrialKey> order,
                                    const char* side_name) {
  if (side.size() != order.size()) {
    throw InputError(std::string(side_name) + " order lists " +
                     std::to_string(order.size()) + " keys but " +
                     std::to_string(side.size()) + " are scored");
  }
  std::vector<const ScoredTrial*> sorted;
  sorted.reserve(side.size());
  for (const auto& st : side) sorted.push_back(&st);
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoredTrial* a, const ScoredTrial* b) {
              return a->key < b->key;
            });
  std::vector<bool> used(side.size(), false);
  std::vector<double> out;
  out.reserve(order.size());
  for (const auto& key : order) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), key,
                               [](const ScoredTrial* st, const TrialKey& k) {
                                 return st->key < k;
                               });
    if (it == sorted.end() || (*it)->key != key) {
      throw InputError(std::string(side_name) + " order key '" + key +
                       "' has no score");
    }
    const auto idx = static_cast<std::size_t>(it - sorted.begin());
    if (used[idx]) {
      throw InputError(std::string(side_name) + " order repeats key '" + key +
                       "'");
    }
    used[idx] = true;
    out.push_back((*it)->score);
  }
  return out;
}

std::vector<std::size_t> axis_cuts(int resolution, std::size_t total) {
  std::vector<std::size_t> cuts(static_cast<std::size_t>(resolution) + 1, 0);
  for (int i = 1; i <= resolution; ++i) {
    cuts[static_cast<std::size_t>(i)] = prefix_size(i, resolution, total);
  }
  return cuts;
}

// Sorted copies of each batch, for the incremental prefix merges on the
// minDCF path.
std::vector<std::vector<double>> sorted_batches(
    std::span<const double> values, std::span<const std::size_t> cuts) {
  std::vector<std::vector<double>> batches;
  batches.reserve(cuts.size() - 1);
  for (std::size_t b = 0; b + 1 < cuts.size(); ++b) {
    std::vector<double> batch(values.begin() + cuts[b],
                              values.begin() + cuts[b + 1]);
    std::sort(batch.begin(), batch.end());
    batches.push_back(std::move(batch));
  }
  return batches;
}

void merge_in(std::vector<double>& prefix, const std::vector<double>& batch,
              std::vector<double>& scratch) {
  if (batch.empty()) return;
  scratch.resize(prefix.size() + batch.size());
  std::merge(prefix.begin(), prefix.end(), batch.begin(), batch.end(),
             scratch.begin());
  prefix.swap(scratch);
}

}  // namespace

void validate(const GridSpec& spec) {
  if (spec.resolution < 2 || spec.resolution > 500) {
    throw InputError("grid resolution must be in [2, 500], got " +
                     std::to_string(spec.resolution));
  }
  if (spec.min_trials_per_class < 1) {
    throw InputError("min_trials_per_class must be >= 1, got " +
                     std::to_string(spec.min_trials_per_class));
  }
}

TrialConfig config_at(const HardnessOrder& order, const GridSpec& spec,
                      int x_index, int y_index) {
  validate(spec);
  if (x_index < 1 || x_index > spec.resolution || y_index < 1 ||
      y_index > spec.resolution) {
    throw InputError("grid index out of range: (" + std::to_string(x_index) +
                     ", " + std::to_string(y_index) + ") with resolution " +
                     std::to_string(spec.resolution));
  }
  return TrialConfig{
      x_index, y_index,
      prefix_size(x_index, spec.resolution, order.positive_order.size()),
      prefix_size(y_index, spec.resolution, order.negative_order.size())};
}

std::span<const TrialKey> config_positives(const HardnessOrder& order,
                                           const TrialConfig& config) {
  return std::span<const TrialKey>(order.positive_order)
      .first(config.num_positives);
}

std::span<const TrialKey> config_negatives(const HardnessOrder& order,
                                           const TrialConfig& config) {
  return std::span<const TrialKey>(order.negative_order)
      .first(config.num_negatives);
}

std::optional<double>& CPMap::at(int x_index, int y_index) {
  if (x_index < 1 || x_index > spec.resolution || y_index < 1 ||
      y_index > spec.resolution) {
    throw InputError("grid index out of range");
  }
  return cells[static_cast<std::size_t>(y_index - 1) *
                   static_cast<std::size_t>(spec.resolution) +
               static_cast<std::size_t>(x_index - 1)];
}

const std::optional<double>& CPMap::at(int x_index, int y_index) const {
  return const_cast<CPMap*>(this)->at(x_index, y_index);
}

CPMap compute_cp_map(const ScoredTrials& scored, const HardnessOrder& order,
                     const GridSpec& spec, MetricKind metric_kind,
                     const std::optional<DcfParams>& dcf_params,
                     Provenance provenance) {
  validate(spec);
  if (metric_kind == MetricKind::min_dcf) {
    if (!dcf_params) {
      throw InputError("min_dcf map requires DcfParams");
    }
    validate(*dcf_params);
  }

  const std::vector<double> pos_scores =
      scores_in_order(scored.positives, order.positive_order, "positive");
  const std::vector<double> neg_scores =
      scores_in_order(scored.negatives, order.negative_order, "negative");

  const int m = spec.resolution;
  const auto cuts_x = axis_cuts(m, pos_scores.size());
  const auto cuts_y = axis_cuts(m, neg_scores.size());
  const auto min_trials = static_cast<std::size_t>(spec.min_trials_per_class);

  CPMap map{spec, metric_kind, std::move(provenance),
            std::vector<std::optional<double>>(
                static_cast<std::size_t>(m) * static_cast<std::size_t>(m)),
            };

  if (metric_kind == MetricKind::eer) {
    const SortedPrefixTree tree_pos(pos_scores, cuts_x);
    const SortedPrefixTree tree_neg(neg_scores, cuts_y);
    for (int y = 1; y <= m; ++y) {
      const std::size_t q = cuts_y[static_cast<std::size_t>(y)];
      if (q < min_trials) continue;
      for (int x = 1; x <= m; ++x) {
        const std::size_t p = cuts_x[static_cast<std::size_t>(x)];
        if (p < min_trials) continue;
        auto& cell = map.at(x, y);
        // Repeated prefix sizes (more cells than trials) reuse the value.
        if (x > 1 && p == cuts_x[static_cast<std::size_t>(x - 1)]) {
          cell = map.at(x - 1, y);
        } else if (y > 1 && q == cuts_y[static_cast<std::size_t>(y - 1)]) {
          cell = map.at(x, y - 1);
        } else {
          cell = cell_eer(tree_pos, tree_neg, static_cast<std::size_t>(x),
                          static_cast<std::size_t>(y),
                          static_cast<std::int64_t>(p),
                          static_cast<std::int64_t>(q));
        }
      }
    }
  } else {
    const auto pos_batches = sorted_batches(pos_scores, cuts_x);
    const auto neg_batches = sorted_batches(neg_scores, cuts_y);
    std::vector<double> neg_prefix;
    std::vector<double> pos_prefix;
    std::vector<double> scratch;
    neg_prefix.reserve(neg_scores.size());
    pos_prefix.reserve(pos_scores.size());
    for (int y = 1; y <= m; ++y) {
      merge_in(neg_prefix, neg_batches[static_cast<std::size_t>(y - 1)], scratch);
      if (neg_prefix.size() < min_trials) continue;
      pos_prefix.clear();
      for (int x = 1; x <= m; ++x) {
        merge_in(pos_prefix, pos_batches[static_cast<std::size_t>(x - 1)], scratch);
        if (pos_prefix.size() < min_trials) continue;
        auto& cell = map.at(x, y);
        if (x > 1 && pos_batches[static_cast<std::size_t>(x - 1)].empty() &&
            map.at(x - 1, y)) {
          cell = map.at(x - 1, y);
        } else {
          cell = compute_min_dcf_sorted(pos_prefix, neg_prefix, *dcf_params)
                     .min_dcf;
        }
      }
    }
  }
  return map;
}

std::string export_cp_map(const CPMap& map) {
  const int m = map.spec.resolution;
  std::string out = "x_frac";
  char buf[32];
  for (int x = 1; x <= m; ++x) {
    std::snprintf(buf, sizeof(buf), ",%.6f",
                  static_cast<double>(x) / static_cast<double>(m));
    out.append(buf);
  }
  out.push_back('\n');
  for (int y = m; y >= 1; --y) {
    std::snprintf(buf, sizeof(buf), "%.6f",
                  static_cast<double>(y) / static_cast<double>(m));
    out.append(buf);
    for (int x = 1; x <= m; ++x) {
      const auto& cell = map.at(x, y);
      if (cell) {
        std::snprintf(buf, sizeof(buf), ",%.6f", *cell);
        out.append(buf);
      } else {
        out.append(",NA");
      }
    }
    out.push_back('\n');
  }
  return out;
}

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
}

double parse_csv_number(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    text::fail_line(line_no,
                    "cannot parse number '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

CPMap parse_cp_map_csv(std::istream& in) {
  const std::string data = text::read_all(in);
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t eol = data.find('\n', pos);
    const std::size_t end = eol == std::string::npos ? data.size() : eol;
    std::string_view line(data.data() + pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    pos = eol == std::string::npos ? data.size() : eol + 1;
  }
  if (lines.empty()) throw InputError("empty C-P map CSV");

  const auto header = split_csv(lines[0]);
  if (header.empty() || header[0] != "x_frac") {
    throw InputError("line 1: expected header starting with 'x_frac'");
  }
  const std::size_t m = header.size() - 1;
  if (m < 2 || m > 500) {
    throw InputError("C-P map CSV resolution " + std::to_string(m) +
                     " out of range");
  }
  if (lines.size() != m + 1) {
    throw InputError("expected " + std::to_string(m) + " data rows, got " +
                     std::to_string(lines.size() - 1));
  }

  CPMap map{GridSpec{static_cast<int>(m), 1},
            MetricKind::eer,
            Provenance{"csv", "csv"},
            std::vector<std::optional<double>>(m * m)};
  for (std::size_t row = 0; row < m; ++row) {
    const std::size_t line_no = row + 2;
    const auto fields = split_csv(lines[row + 1]);
    if (fields.size() != m + 1) {
      text::fail_line(line_no, "expected " + std::to_string(m + 1) +
                                   " columns, got " +
                                   std::to_string(fields.size()));
    }
    const int y = static_cast<int>(m - row);  // rows run y = M..1
    const double y_frac = parse_csv_number(fields[0], line_no);
    const double expected =
        static_cast<double>(y) / static_cast<double>(m);
    if (std::abs(y_frac - expected) > 1e-6) {
      text::fail_line(line_no, "row fraction out of order");
    }
    for (std::size_t x = 1; x <= m; ++x) {
      if (fields[x] == "NA") continue;
      map.at(static_cast<int>(x), y) = parse_csv_number(fields[x], line_no);
    }
  }
  return map;
}

}  // namespace cpmap
