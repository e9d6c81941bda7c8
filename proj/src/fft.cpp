/*
 * lyrplan - lyric video render planner
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include "lyrplan/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lyrplan::fft {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void transform(std::vector<std::complex<double>>& data, bool inverse) {
  const std::size_t n = data.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("fft size must be a power of two");
  }
  if (n == 1) return;

  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle =
        (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(angle), std::sin(angle));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = data[i + k];
        std::complex<double> v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }

  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& c : data) c *= scale;
  }
}

void transform_2d(std::vector<std::complex<double>>& grid, int width,
                  int height, bool inverse) {
  std::vector<std::complex<double>> scratch;
  scratch.resize(static_cast<std::size_t>(width));
  for (int y = 0; y < height; ++y) {
    scratch.assign(grid.begin() + static_cast<std::size_t>(y) * width,
                   grid.begin() + static_cast<std::size_t>(y + 1) * width);
    transform(scratch, inverse);
    std::copy(scratch.begin(), scratch.end(),
              grid.begin() + static_cast<std::size_t>(y) * width);
  }
  scratch.resize(static_cast<std::size_t>(height));
  for (int x = 0; x < width; ++x) {
    for (int y = 0; y < height; ++y) {
      scratch[y] = grid[static_cast<std::size_t>(y) * width + x];
    }
    transform(scratch, inverse);
    for (int y = 0; y < height; ++y) {
      grid[static_cast<std::size_t>(y) * width + x] = scratch[y];
    }
  }
}

}  // namespace lyrplan::fft
