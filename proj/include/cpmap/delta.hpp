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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cpmap/cp_map.hpp"

namespace cpmap {

/// Cell-wise relative change ratio between two C-P maps:
/// RCR = (CP_ref - CP_test) / CP_ref. Positive cells mean the test system
/// beats the reference there. Cells undefined in either input stay
/// undefined; so do cells whose reference value is 0 (nothing to divide
/// by) -- those are tallied in zero_ref_cells.
struct DeltaMap {
  int resolution = 0;
  std::string ref_name;
  std::string test_name;
  double epsilon = 1e-5;
  std::vector<std::optional<double>> cells;  // indexed (y-1)*M + (x-1)
  std::size_t zero_ref_cells = 0;

  std::optional<double>& at(int x_index, int y_index);
  const std::optional<double>& at(int x_index, int y_index) const;
};

/// Win/tie/lose proportions over the defined delta cells: win where
/// RCR >= epsilon, lose where RCR <= -epsilon, tie where |RCR| < epsilon.
struct WtlSummary {
  double win = 0.0;
  double tie = 0.0;
  double lose = 0.0;
  std::size_t defined_cells = 0;
};

/// Throws InputError if the grids differ in resolution or metric kind, or
/// were built over different orderings (their axes would not correspond),
/// or if epsilon is not positive.
DeltaMap compute_delta_map(const CPMap& ref, const CPMap& test, double epsilon);

/// Throws EvalError if the delta map has no defined cells.
WtlSummary summarize_wtl(const DeltaMap& delta);

/// Same CSV layout as export_cp_map; RCR values, `NA` when undefined.
std::string export_delta_map(const DeltaMap& delta);

/// The one-line summary the CLI prints: `win=... tie=... lose=... defined=N`.
std::string format_wtl(const WtlSummary& summary);

}  // namespace cpmap
