/*
 * lyrplan - lyric video render planner
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace lyrplan::fft {

std::size_t next_pow2(std::size_t n);

// In-place iterative radix-2 transform; data.size() must be a power of two.
// The inverse applies the 1/N scale.
void transform(std::vector<std::complex<double>>& data, bool inverse);

// Row-column 2D transform over a row-major grid; both dims powers of two.
void transform_2d(std::vector<std::complex<double>>& grid, int width,
                  int height, bool inverse);

}  // namespace lyrplan::fft
