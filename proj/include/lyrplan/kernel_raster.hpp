/*
 * lyrplan - lyric video render planner
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "lyrplan/raster.hpp"

namespace lyrplan {

enum class TextAlignment { left, center };

struct TextStyle {
  int glyph_height_px = 40;
  Rgb color{255, 255, 255};
  int leading_px = 10;  // glyph_height_px / 4 by default
  TextAlignment alignment = TextAlignment::center;
};

// Half-open pixel rectangle of one word inside a kernel.
struct WordBox {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  bool contains(int x, int y) const {
    return x >= x0 && x < x1 && y >= y0 && y < y1;
  }
};

// Grayscale raster of a laid-out phrase, tightly cropped, used as a
// cross-correlation kernel. word_boxes cover each word in reading order.
struct TextKernel {
  int width = 0;
  int height = 0;
  std::vector<float> coverage;  // row-major, in [0,1]
  std::vector<WordBox> word_boxes;

  float at(int x, int y) const {
    return coverage[static_cast<std::size_t>(y) * width + x];
  }
};

// Deterministic raster of the line block with the embedded 5x7 font,
// nearest-neighbor scaled to glyph_height_px. Characters outside printable
// ASCII render as a filled box and append a warning.
TextKernel rasterize_phrase(const std::vector<std::string>& lines,
                            const TextStyle& style,
                            std::vector<std::string>* warnings = nullptr);

// Embeds the kernel in a zero border of `margin` pixels.
TextKernel pad_kernel(const TextKernel& kernel, int margin);

// Substitution point for an external rasterizer (same contract as
// rasterize_phrase minus the warning channel).
using PhraseRasterizer =
    std::function<TextKernel(const std::vector<std::string>&, const TextStyle&)>;

// Writes the kernel coverage as an 8-bit grayscale PNG (debug aid).
void dump_kernel_png(const TextKernel& kernel,
                     const std::filesystem::path& path);

}  // namespace lyrplan
