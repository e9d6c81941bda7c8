/*
 * lyrplan - lyric video render planner
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include "lyrplan/png_io.hpp"

#include <png.h>

#include <cstring>

#include "lyrplan/error.hpp"

namespace lyrplan {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const png_image& img,
                       const char* verb) {
  throw InputError(std::string("failed to ") + verb + " PNG " + path.string() +
                   ": " + img.message);
}

}  // namespace

Frame read_rgb8_png(const std::filesystem::path& path) {
  png_image img;
  std::memset(&img, 0, sizeof(img));
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&img, path.c_str())) {
    fail(path, img, "read");
  }
  img.format = PNG_FORMAT_RGB;
  Frame frame;
  frame.width = static_cast<int>(img.width);
  frame.height = static_cast<int>(img.height);
  frame.pixels.resize(PNG_IMAGE_SIZE(img));
  if (!png_image_finish_read(&img, nullptr, frame.pixels.data(), 0, nullptr)) {
    fail(path, img, "read");
  }
  return frame;
}

Gray8 read_gray8_png(const std::filesystem::path& path) {
  png_image img;
  std::memset(&img, 0, sizeof(img));
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&img, path.c_str())) {
    fail(path, img, "read");
  }
  img.format = PNG_FORMAT_GRAY;
  Gray8 gray;
  gray.width = static_cast<int>(img.width);
  gray.height = static_cast<int>(img.height);
  gray.values.resize(PNG_IMAGE_SIZE(img));
  if (!png_image_finish_read(&img, nullptr, gray.values.data(), 0, nullptr)) {
    fail(path, img, "read");
  }
  return gray;
}

void write_rgb8_png(const std::filesystem::path& path, const Frame& frame) {
  png_image img;
  std::memset(&img, 0, sizeof(img));
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(frame.width);
  img.height = static_cast<png_uint_32>(frame.height);
  img.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&img, path.c_str(), 0, frame.pixels.data(), 0,
                               nullptr)) {
    fail(path, img, "write");
  }
}

void write_gray8_png(const std::filesystem::path& path, int width, int height,
                     const std::uint8_t* values) {
  png_image img;
  std::memset(&img, 0, sizeof(img));
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(width);
  img.height = static_cast<png_uint_32>(height);
  img.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&img, path.c_str(), 0, values, 0, nullptr)) {
    fail(path, img, "write");
  }
}

}  // namespace lyrplan
