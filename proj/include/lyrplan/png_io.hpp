/*
 * lyrplan - lyric video render planner
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "lyrplan/raster.hpp"

namespace lyrplan {

struct Gray8 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> values;
};

Frame read_rgb8_png(const std::filesystem::path& path);
Gray8 read_gray8_png(const std::filesystem::path& path);

void write_rgb8_png(const std::filesystem::path& path, const Frame& frame);
void write_gray8_png(const std::filesystem::path& path, int width, int height,
                     const std::uint8_t* values);

}  // namespace lyrplan
