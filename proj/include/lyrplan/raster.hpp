/*
 * lyrplan - lyric video render planner
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace lyrplan {

using Rgb = std::array<std::uint8_t, 3>;

// 8-bit RGB frame, row-major interleaved.
struct Frame {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // width * height * 3

  std::uint8_t at(int x, int y, int c) const {
    return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
  std::uint8_t& at(int x, int y, int c) {
    return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
};

// Per-frame grayscale mask, values in [0,1].
struct MaskFrame {
  int width = 0;
  int height = 0;
  std::vector<float> values;  // width * height

  float at(int x, int y) const {
    return values[static_cast<std::size_t>(y) * width + x];
  }
  float& at(int x, int y) {
    return values[static_cast<std::size_t>(y) * width + x];
  }
};

// Single-channel double raster for derived quantities (averaged masks,
// color-difference images).
struct Grid {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  Grid() = default;
  Grid(int w, int h, double fill = 0.0)
      : width(w), height(h),
        values(static_cast<std::size_t>(w) * h, fill) {}

  double at(int x, int y) const {
    return values[static_cast<std::size_t>(y) * width + x];
  }
  double& at(int x, int y) {
    return values[static_cast<std::size_t>(y) * width + x];
  }
};

// Real-valued RGB raster; channels stay in [0,255] but are not re-quantized.
struct Image3f {
  int width = 0;
  int height = 0;
  std::vector<double> values;  // width * height * 3

  Image3f() = default;
  Image3f(int w, int h)
      : width(w), height(h),
        values(static_cast<std::size_t>(w) * h * 3, 0.0) {}

  double at(int x, int y, int c) const {
    return values[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
  double& at(int x, int y, int c) {
    return values[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
};

}  // namespace lyrplan
