/*
 * lyrplan - lyric video render planner
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include "lyrplan/font5x7.hpp"

namespace lyrplan::font {

namespace {

// Printable ASCII 32..126, row-major 5x7 cells.
const char* const kGlyphs[95][7] = {
    // ' '
    {".....", ".....", ".....", ".....", ".....", ".....", "....."},
    // '!'
    {"..#..", "..#..", "..#..", "..#..", "..#..", ".....", "..#.."},
    // '"'
    {".#.#.", ".#.#.", ".#.#.", ".....", ".....", ".....", "....."},
    // '#'
    {".#.#.", ".#.#.", "#####", ".#.#.", "#####", ".#.#.", ".#.#."},
    // '$'
    {"..#..", ".####", "#.#..", ".###.", "..#.#", "####.", "..#.."},
    // '%'
    {"##...", "##..#", "...#.", "..#..", ".#...", "#..##", "...##"},
    // '&'
    {".##..", "#..#.", "#.#..", ".#...", "#.#.#", "#..#.", ".##.#"},
    // '\''
    {".##..", "..#..", ".#...", ".....", ".....", ".....", "....."},
    // '('
    {"...#.", "..#..", ".#...", ".#...", ".#...", "..#..", "...#."},
    // ')'
    {".#...", "..#..", "...#.", "...#.", "...#.", "..#..", ".#..."},
    // '*'
    {".....", "..#..", "#.#.#", ".###.", "#.#.#", "..#..", "....."},
    // '+'
    {".....", "..#..", "..#..", "#####", "..#..", "..#..", "....."},
    // ','
    {".....", ".....", ".....", ".....", ".##..", "..#..", ".#..."},
    // '-'
    {".....", ".....", ".....", "#####", ".....", ".....", "....."},
    // '.'
    {".....", ".....", ".....", ".....", ".....", ".##..", ".##.."},
    // '/'
    {".....", "....#", "...#.", "..#..", ".#...", "#....", "....."},
    // '0'
    {".###.", "#...#", "#..##", "#.#.#", "##..#", "#...#", ".###."},
    // '1'
    {"..#..", ".##..", "..#..", "..#..", "..#..", "..#..", ".###."},
    // '2'
    {".###.", "#...#", "....#", "...#.", "..#..", ".#...", "#####"},
    // '3'
    {"#####", "...#.", "..#..", "...#.", "....#", "#...#", ".###."},
    // '4'
    {"...#.", "..##.", ".#.#.", "#..#.", "#####", "...#.", "...#."},
    // '5'
    {"#####", "#....", "####.", "....#", "....#", "#...#", ".###."},
    // '6'
    {"..##.", ".#...", "#....", "####.", "#...#", "#...#", ".###."},
    // '7'
    {"#####", "....#", "...#.", "..#..", ".#...", ".#...", ".#..."},
    // '8'
    {".###.", "#...#", "#...#", ".###.", "#...#", "#...#", ".###."},
    // '9'
    {".###.", "#...#", "#...#", ".####", "....#", "...#.", ".##.."},
    // ':'
    {".....", ".##..", ".##..", ".....", ".##..", ".##..", "....."},
    // ';'
    {".....", ".##..", ".##..", ".....", ".##..", "..#..", ".#..."},
    // '<'
    {"...#.", "..#..", ".#...", "#....", ".#...", "..#..", "...#."},
    // '='
    {".....", ".....", "#####", ".....", "#####", ".....", "....."},
    // '>'
    {".#...", "..#..", "...#.", "....#", "...#.", "..#..", ".#..."},
    // '?'
    {".###.", "#...#", "....#", "...#.", "..#..", ".....", "..#.."},
    // '@'
    {".###.", "#...#", "....#", ".##.#", "#.#.#", "#.#.#", ".###."},
    // 'A'
    {".###.", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"},
    // 'B'
    {"####.", "#...#", "#...#", "####.", "#...#", "#...#", "####."},
    // 'C'
    {".###.", "#...#", "#....", "#....", "#....", "#...#", ".###."},
    // 'D'
    {"###..", "#..#.", "#...#", "#...#", "#...#", "#..#.", "###.."},
    // 'E'
    {"#####", "#....", "#....", "####.", "#....", "#....", "#####"},
    // 'F'
    {"#####", "#....", "#....", "####.", "#....", "#....", "#...."},
    // 'G'
    {".###.", "#...#", "#....", "#.###", "#...#", "#...#", ".####"},
    // 'H'
    {"#...#", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"},
    // 'I'
    {".###.", "..#..", "..#..", "..#..", "..#..", "..#..", ".###."},
    // 'J'
    {"..###", "...#.", "...#.", "...#.", "...#.", "#..#.", ".##.."},
    // 'K'
    {"#...#", "#..#.", "#.#..", "##...", "#.#..", "#..#.", "#...#"},
    // 'L'
    {"#....", "#....", "#....", "#....", "#....", "#....", "#####"},
    // 'M'
    {"#...#", "##.##", "#.#.#", "#.#.#", "#...#", "#...#", "#...#"},
    // 'N'
    {"#...#", "#...#", "##..#", "#.#.#", "#..##", "#...#", "#...#"},
    // 'O'
    {".###.", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."},
    // 'P'
    {"####.", "#...#", "#...#", "####.", "#....", "#....", "#...."},
    // 'Q'
    {".###.", "#...#", "#...#", "#...#", "#.#.#", "#..#.", ".##.#"},
    // 'R'
    {"####.", "#...#", "#...#", "####.", "#.#..", "#..#.", "#...#"},
    // 'S'
    {".####", "#....", "#....", ".###.", "....#", "....#", "####."},
    // 'T'
    {"#####", "..#..", "..#..", "..#..", "..#..", "..#..", "..#.."},
    // 'U'
    {"#...#", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."},
    // 'V'
    {"#...#", "#...#", "#...#", "#...#", "#...#", ".#.#.", "..#.."},
    // 'W'
    {"#...#", "#...#", "#...#", "#.#.#", "#.#.#", "#.#.#", ".#.#."},
    // 'X'
    {"#...#", "#...#", ".#.#.", "..#..", ".#.#.", "#...#", "#...#"},
    // 'Y'
    {"#...#", "#...#", ".#.#.", "..#..", "..#..", "..#..", "..#.."},
    // 'Z'
    {"#####", "....#", "...#.", "..#..", ".#...", "#....", "#####"},
    // '['
    {".###.", ".#...", ".#...", ".#...", ".#...", ".#...", ".###."},
    // '\\'
    {".....", "#....", ".#...", "..#..", "...#.", "....#", "....."},
    // ']'
    {".###.", "...#.", "...#.", "...#.", "...#.", "...#.", ".###."},
    // '^'
    {"..#..", ".#.#.", "#...#", ".....", ".....", ".....", "....."},
    // '_'
    {".....", ".....", ".....", ".....", ".....", ".....", "#####"},
    // '`'
    {".#...", "..#..", "...#.", ".....", ".....", ".....", "....."},
    // 'a'
    {".....", ".....", ".###.", "....#", ".####", "#...#", ".####"},
    // 'b'
    {"#....", "#....", "####.", "#...#", "#...#", "#...#", "####."},
    // 'c'
    {".....", ".....", ".###.", "#....", "#....", "#...#", ".###."},
    // 'd'
    {"....#", "....#", ".####", "#...#", "#...#", "#...#", ".####"},
    // 'e'
    {".....", ".....", ".###.", "#...#", "#####", "#....", ".###."},
    // 'f'
    {"..##.", ".#..#", ".#...", "###..", ".#...", ".#...", ".#..."},
    // 'g'
    {".....", ".####", "#...#", "#...#", ".####", "....#", ".###."},
    // 'h'
    {"#....", "#....", "####.", "#...#", "#...#", "#...#", "#...#"},
    // 'i'
    {"..#..", ".....", ".##..", "..#..", "..#..", "..#..", ".###."},
    // 'j'
    {"...#.", ".....", "..##.", "...#.", "...#.", "#..#.", ".##.."},
    // 'k'
    {"#....", "#....", "#..#.", "#.#..", "##...", "#.#..", "#..#."},
    // 'l'
    {".##..", "..#..", "..#..", "..#..", "..#..", "..#..", ".###."},
    // 'm'
    {".....", ".....", "##.#.", "#.#.#", "#.#.#", "#.#.#", "#.#.#"},
    // 'n'
    {".....", ".....", "####.", "#...#", "#...#", "#...#", "#...#"},
    // 'o'
    {".....", ".....", ".###.", "#...#", "#...#", "#...#", ".###."},
    // 'p'
    {".....", "####.", "#...#", "#...#", "####.", "#....", "#...."},
    // 'q'
    {".....", ".####", "#...#", "#...#", ".####", "....#", "....#"},
    // 'r'
    {".....", ".....", "#.##.", "##..#", "#....", "#....", "#...."},
    // 's'
    {".....", ".....", ".####", "#....", ".###.", "....#", "####."},
    // 't'
    {".#...", ".#...", "###..", ".#...", ".#...", ".#..#", "..##."},
    // 'u'
    {".....", ".....", "#...#", "#...#", "#...#", "#..##", ".##.#"},
    // 'v'
    {".....", ".....", "#...#", "#...#", "#...#", ".#.#.", "..#.."},
    // 'w'
    {".....", ".....", "#...#", "#...#", "#.#.#", "#.#.#", ".#.#."},
    // 'x'
    {".....", ".....", "#...#", ".#.#.", "..#..", ".#.#.", "#...#"},
    // 'y'
    {".....", "#...#", "#...#", "#...#", ".####", "....#", ".###."},
    // 'z'
    {".....", ".....", "#####", "...#.", "..#..", ".#...", "#####"},
    // '{'
    {"...#.", "..#..", "..#..", ".#...", "..#..", "..#..", "...#."},
    // '|'
    {"..#..", "..#..", "..#..", "..#..", "..#..", "..#..", "..#.."},
    // '}'
    {".#...", "..#..", "..#..", "...#.", "..#..", "..#..", ".#..."},
    // '~'
    {".....", ".....", ".#...", "#.#.#", "...#.", ".....", "....."},
};

const char* const kBox[7] = {"#####", "#####", "#####", "#####",
                             "#####", "#####", "#####"};

}  // namespace

const char* const* glyph_rows(char32_t code_point) {
  if (code_point < 32 || code_point > 126) return nullptr;
  return kGlyphs[code_point - 32];
}

const char* const* box_glyph_rows() { return kBox; }

}  // namespace lyrplan::font
