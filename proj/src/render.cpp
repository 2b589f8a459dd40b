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

#include "cpmap/render.hpp"

#include <algorithm>
#include <cmath>

#include "cpmap/errors.hpp"

namespace cpmap {

namespace {

double clamp01(double t) { return std::clamp(t, 0.0, 1.0); }

int shade255(double t) {
  // round half up, t in [0, 1]
  return static_cast<int>(std::lround(255.0 * t));
}

std::string pnm_header(const char* magic, int m) {
  std::string out = magic;
  out.push_back('\n');
  out.append(std::to_string(m));
  out.push_back(' ');
  out.append(std::to_string(m));
  out.append("\n255\n");
  return out;
}

}  // namespace

ColorScale ColorScale::sequential(double value_min, double value_max) {
  return ColorScale{ScaleKind::sequential_grayscale, value_min, value_max, 0.0};
}

ColorScale ColorScale::diverging(double span) {
  return ColorScale{ScaleKind::diverging, 0.0, 0.0, span};
}

ColorScale default_sequential_scale(const CPMap& map) {
  double lo = 0.0;
  double hi = 0.0;
  bool any = false;
  for (const auto& cell : map.cells) {
    if (!cell) continue;
    if (!any) {
      lo = hi = *cell;
      any = true;
    } else {
      lo = std::min(lo, *cell);
      hi = std::max(hi, *cell);
    }
  }
  if (!any || lo == hi) return ColorScale::sequential(lo, lo + 1.0);
  return ColorScale::sequential(lo, hi);
}

ColorScale default_diverging_scale(const DeltaMap& delta) {
  double span = 0.0;
  for (const auto& cell : delta.cells) {
    if (cell) span = std::max(span, std::abs(*cell));
  }
  return ColorScale::diverging(span > 0.0 ? span : 1.0);
}

std::string render_sequential(const CPMap& map, const ColorScale& scale) {
  if (scale.kind != ScaleKind::sequential_grayscale) {
    throw InputError("render_sequential needs a sequential scale");
  }
  if (!(scale.value_min < scale.value_max)) {
    throw InputError("degenerate sequential scale: min must be below max");
  }
  const int m = map.spec.resolution;
  const double range = scale.value_max - scale.value_min;
  std::string out = pnm_header("P2", m);
  for (int y = m; y >= 1; --y) {
    for (int x = 1; x <= m; ++x) {
      const auto& cell = map.at(x, y);
      int gray = 0;  // undefined stays black
      if (cell) {
        const double t = clamp01((*cell - scale.value_min) / range);
        gray = shade255(1.0 - t);
      }
      if (x > 1) out.push_back(' ');
      out.append(std::to_string(gray));
    }
    out.push_back('\n');
  }
  return out;
}

std::string render_diverging(const DeltaMap& delta, const ColorScale& scale) {
  if (scale.kind != ScaleKind::diverging) {
    throw InputError("render_diverging needs a diverging scale");
  }
  if (!(scale.span > 0.0)) {
    throw InputError("diverging scale span must be positive");
  }
  const int m = delta.resolution;
  std::string out = pnm_header("P3", m);
  for (int y = m; y >= 1; --y) {
    for (int x = 1; x <= m; ++x) {
      int r = 0;
      int g = 0;
      int b = 0;
      const auto& cell = delta.at(x, y);
      if (cell) {
        const double t = clamp01(std::abs(*cell) / scale.span);
        const int faded = 255 - shade255(t);
        if (*cell >= 0.0) {
          r = 255;
          g = b = faded;
        } else {
          b = 255;
          r = g = faded;
        }
      }
      if (x > 1) out.push_back(' ');
      out.append(std::to_string(r));
      out.push_back(' ');
      out.append(std::to_string(g));
      out.push_back(' ');
      out.append(std::to_string(b));
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace cpmap
