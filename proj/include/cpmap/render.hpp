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

#include <string>

#include "cpmap/cp_map.hpp"
#include "cpmap/delta.hpp"

namespace cpmap {

enum class ScaleKind { sequential_grayscale, diverging };

/// Color mapping for heatmap emission. Sequential uses [value_min,
/// value_max]; diverging is centered at 0 with symmetric span.
struct ColorScale {
  ScaleKind kind = ScaleKind::sequential_grayscale;
  double value_min = 0.0;
  double value_max = 1.0;
  double span = 1.0;

  static ColorScale sequential(double value_min, double value_max);
  static ColorScale diverging(double span);
};

/// Data-driven defaults: min/max over defined cells (widened to a unit
/// interval around a flat map), and max |RCR| for the diverging span
/// (1.0 when the delta map is flat zero).
ColorScale default_sequential_scale(const CPMap& map);
ColorScale default_diverging_scale(const DeltaMap& delta);

/// ASCII PGM ("P2"), one pixel per cell, maxval 255. Low metric values
/// render bright, high render dark; undefined cells are black. Rows run
/// from y_index = M at the top down to 1, like the exported CSV.
std::string render_sequential(const CPMap& map, const ColorScale& scale);

/// ASCII PPM ("P3"). RCR 0 renders white, +span pure red (test system
/// wins), -span pure blue, clamped beyond; undefined cells are black.
std::string render_diverging(const DeltaMap& delta, const ColorScale& scale);

}  // namespace cpmap
