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
#include <cstdio>

#include "cpmap/errors.hpp"

namespace cpmap {

std::optional<double>& DeltaMap::at(int x_index, int y_index) {
  if (x_index < 1 || x_index > resolution || y_index < 1 ||
      y_index > resolution) {
    throw InputError("grid index out of range");
  }
  return cells[static_cast<std::size_t>(y_index - 1) *
                   static_cast<std::size_t>(resolution) +
               static_cast<std::size_t>(x_index - 1)];
}

const std::optional<double>& DeltaMap::at(int x_index, int y_index) const {
  return const_cast<DeltaMap*>(this)->at(x_index, y_index);
}

DeltaMap compute_delta_map(const CPMap& ref, const CPMap& test,
                           double epsilon) {
  if (ref.spec.resolution != test.spec.resolution) {
    throw InputError("grid resolution mismatch: " +
                     std::to_string(ref.spec.resolution) + " vs " +
                     std::to_string(test.spec.resolution));
  }
  if (ref.metric_kind != test.metric_kind) {
    throw InputError("metric kind mismatch between maps");
  }
  if (ref.provenance.ordering_desc != test.provenance.ordering_desc) {
    throw InputError("maps were built over different orderings: '" +
                     ref.provenance.ordering_desc + "' vs '" +
                     test.provenance.ordering_desc + "'");
  }
  if (!(epsilon > 0.0)) {
    throw InputError("epsilon must be positive");
  }

  DeltaMap delta{ref.spec.resolution,
                 ref.provenance.system_name,
                 test.provenance.system_name,
                 epsilon,
                 std::vector<std::optional<double>>(ref.cells.size()),
                 0};
  for (std::size_t i = 0; i < ref.cells.size(); ++i) {
    const auto& r = ref.cells[i];
    const auto& t = test.cells[i];
    if (!r || !t) continue;
    if (*r == 0.0) {
      ++delta.zero_ref_cells;
      continue;
    }
    delta.cells[i] = (*r - *t) / *r;
  }
  return delta;
}

WtlSummary summarize_wtl(const DeltaMap& delta) {
  std::size_t win = 0;
  std::size_t tie = 0;
  std::size_t lose = 0;
  for (const auto& cell : delta.cells) {
    if (!cell) continue;
    if (*cell >= delta.epsilon) {
      ++win;
    } else if (*cell <= -delta.epsilon) {
      ++lose;
    } else {
      ++tie;
    }
  }
  const std::size_t defined = win + tie + lose;
  if (defined == 0) {
    throw EvalError("delta map has no defined cells");
  }
  const double n = static_cast<double>(defined);
  return WtlSummary{static_cast<double>(win) / n, static_cast<double>(tie) / n,
                    static_cast<double>(lose) / n, defined};
}

std::string export_delta_map(const DeltaMap& delta) {
  const int m = delta.resolution;
  std::string out = "x_frac";
  char buf[48];
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
      const auto& cell = delta.at(x, y);
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

std::string format_wtl(const WtlSummary& summary) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "win=%.6f tie=%.6f lose=%.6f defined=%zu",
                summary.win, summary.tie, summary.lose,
                summary.defined_cells);
  return std::string(buf);
}

}  // namespace cpmap
