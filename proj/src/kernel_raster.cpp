/*
 * lyrplan - lyric video render planner
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include "lyrplan/kernel_raster.hpp"

#include <algorithm>
#include <cmath>

#include "lyrplan/error.hpp"
#include "lyrplan/font5x7.hpp"
#include "lyrplan/lyric_text.hpp"
#include "lyrplan/png_io.hpp"

namespace lyrplan {

namespace {

struct CellGeometry {
  int glyph_h;
  int glyph_w;
  int gap;  // inter-glyph spacing, one scaled source column

  int advance() const { return glyph_w + gap; }
  int line_width(int cells) const {
    return cells * glyph_w + (cells - 1) * gap;
  }
};

CellGeometry cell_geometry(const TextStyle& style) {
  CellGeometry g;
  g.glyph_h = style.glyph_height_px;
  g.glyph_w = std::max(
      1, static_cast<int>(std::lround(style.glyph_height_px * 5.0 / 7.0)));
  g.gap = std::max(
      1, static_cast<int>(std::lround(style.glyph_height_px * 1.0 / 7.0)));
  return g;
}

void stamp_glyph(std::vector<float>& canvas, int canvas_w,
                 const char* const* rows, int ox, int oy,
                 const CellGeometry& g) {
  for (int y = 0; y < g.glyph_h; ++y) {
    int sr = y * font::kGlyphRows / g.glyph_h;
    for (int x = 0; x < g.glyph_w; ++x) {
      int sc = x * font::kGlyphCols / g.glyph_w;
      if (rows[sr][sc] == '#') {
        canvas[static_cast<std::size_t>(oy + y) * canvas_w + ox + x] = 1.0f;
      }
    }
  }
}

}  // namespace

TextKernel rasterize_phrase(const std::vector<std::string>& lines,
                            const TextStyle& style,
                            std::vector<std::string>* warnings) {
  if (lines.empty()) throw InputError("cannot rasterize zero lines");
  for (const std::string& line : lines) {
    if (line.empty()) throw InputError("cannot rasterize an empty line");
  }
  if (style.glyph_height_px < 5) {
    throw InputError("glyph height must be at least 5 px");
  }
  if (style.leading_px < 0) throw InputError("leading must be non-negative");

  const CellGeometry g = cell_geometry(style);

  std::vector<std::vector<char32_t>> decoded;
  decoded.reserve(lines.size());
  int block_w = 0;
  for (const std::string& line : lines) {
    decoded.push_back(utf8_decode(line));
    block_w = std::max(block_w,
                       g.line_width(static_cast<int>(decoded.back().size())));
  }
  const int line_count = static_cast<int>(lines.size());
  const int block_h =
      line_count * g.glyph_h + (line_count - 1) * style.leading_px;

  std::vector<float> canvas(static_cast<std::size_t>(block_w) * block_h, 0.0f);
  std::vector<WordBox> boxes;

  for (int li = 0; li < line_count; ++li) {
    const std::vector<char32_t>& cps = decoded[li];
    const int lw = g.line_width(static_cast<int>(cps.size()));
    const int ox0 = style.alignment == TextAlignment::center
                        ? (block_w - lw) / 2
                        : 0;
    const int oy = li * (g.glyph_h + style.leading_px);

    int word_start_cell = -1;
    auto close_word = [&](int end_cell) {
      if (word_start_cell < 0) return;
      WordBox box;
      box.x0 = ox0 + word_start_cell * g.advance();
      box.x1 = ox0 + (end_cell - 1) * g.advance() + g.glyph_w;
      box.y0 = oy;
      box.y1 = oy + g.glyph_h;
      boxes.push_back(box);
      word_start_cell = -1;
    };

    for (std::size_t ci = 0; ci < cps.size(); ++ci) {
      char32_t cp = cps[ci];
      if (cp == U' ') {
        close_word(static_cast<int>(ci));
        continue;
      }
      if (word_start_cell < 0) word_start_cell = static_cast<int>(ci);
      const char* const* rows = font::glyph_rows(cp);
      if (rows == nullptr) {
        rows = font::box_glyph_rows();
        if (warnings) {
          warnings->push_back("code point U+" + std::to_string(cp) +
                              " outside the embedded font; rendered as box");
        }
      }
      stamp_glyph(canvas, block_w, rows, ox0 + static_cast<int>(ci) * g.advance(),
                  oy, g);
    }
    close_word(static_cast<int>(cps.size()));
  }

  // Tight crop to nonzero coverage.
  int min_x = block_w, max_x = -1, min_y = block_h, max_y = -1;
  for (int y = 0; y < block_h; ++y) {
    for (int x = 0; x < block_w; ++x) {
      if (canvas[static_cast<std::size_t>(y) * block_w + x] > 0.0f) {
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
      }
    }
  }
  if (max_x < 0) {
    throw InputError("phrase rasterized to an empty kernel");
  }

  TextKernel kernel;
  kernel.width = max_x - min_x + 1;
  kernel.height = max_y - min_y + 1;
  kernel.coverage.resize(static_cast<std::size_t>(kernel.width) *
                         kernel.height);
  for (int y = 0; y < kernel.height; ++y) {
    for (int x = 0; x < kernel.width; ++x) {
      kernel.coverage[static_cast<std::size_t>(y) * kernel.width + x] =
          canvas[static_cast<std::size_t>(y + min_y) * block_w + (x + min_x)];
    }
  }
  for (WordBox box : boxes) {
    box.x0 = std::clamp(box.x0 - min_x, 0, kernel.width);
    box.x1 = std::clamp(box.x1 - min_x, 0, kernel.width);
    box.y0 = std::clamp(box.y0 - min_y, 0, kernel.height);
    box.y1 = std::clamp(box.y1 - min_y, 0, kernel.height);
    kernel.word_boxes.push_back(box);
  }
  return kernel;
}

TextKernel pad_kernel(const TextKernel& kernel, int margin) {
  if (margin < 0) throw InputError("pad margin must be non-negative");
  if (margin == 0) return kernel;
  TextKernel out;
  out.width = kernel.width + 2 * margin;
  out.height = kernel.height + 2 * margin;
  out.coverage.assign(static_cast<std::size_t>(out.width) * out.height, 0.0f);
  for (int y = 0; y < kernel.height; ++y) {
    for (int x = 0; x < kernel.width; ++x) {
      out.coverage[static_cast<std::size_t>(y + margin) * out.width + x +
                   margin] = kernel.at(x, y);
    }
  }
  for (WordBox box : kernel.word_boxes) {
    box.x0 += margin;
    box.x1 += margin;
    box.y0 += margin;
    box.y1 += margin;
    out.word_boxes.push_back(box);
  }
  return out;
}

void dump_kernel_png(const TextKernel& kernel,
                     const std::filesystem::path& path) {
  std::vector<std::uint8_t> gray(kernel.coverage.size());
  for (std::size_t i = 0; i < kernel.coverage.size(); ++i) {
    gray[i] = static_cast<std::uint8_t>(
        std::lround(std::clamp(kernel.coverage[i], 0.0f, 1.0f) * 255.0f));
  }
  write_gray8_png(path, kernel.width, kernel.height, gray.data());
}

}  // namespace lyrplan
