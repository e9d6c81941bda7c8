/*
 * lyrplan - lyric video render planner
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#pragma once

namespace lyrplan::font {

inline constexpr int kGlyphCols = 5;
inline constexpr int kGlyphRows = 7;

// Rows of a 5x7 glyph, '#' marks an inked cell. Returns nullptr for code
// points outside printable ASCII (32..126).
const char* const* glyph_rows(char32_t code_point);

// Fallback filled-box glyph for unsupported code points.
const char* const* box_glyph_rows();

}  // namespace lyrplan::font
