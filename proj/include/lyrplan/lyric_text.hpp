/*
 * lyrplan - lyric video render planner
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lyrplan {

// One lyric word with its sung interval in seconds.
struct WordTiming {
  std::string text;
  double t_in = 0.0;
  double t_out = 0.0;
};

// A group of words displayed together, with broken lines and timing taken
// from the first word's in time and the last word's out time.
struct LyricPhrase {
  std::vector<WordTiming> words;
  std::vector<std::string> lines;
  double t_in = 0.0;
  double t_out = 0.0;
  int shot_index = 0;

  std::string joined_text() const;  // words joined by single spaces
};

struct GroupingConfig {
  double gap_threshold_s = 0.5;
  std::optional<int> line_break_threshold_override;
};

struct WordTimingParse {
  std::vector<WordTiming> words;
  std::vector<std::string> warnings;
};

// Counts Unicode scalar values in a UTF-8 string.
std::size_t utf8_length(std::string_view text);

// Decodes UTF-8 to code points; malformed bytes decode to U+FFFD.
std::vector<char32_t> utf8_decode(std::string_view text);

// Reads `word<TAB>t_in<TAB>t_out` records, one per line. Lines starting
// with '#' and blank lines are skipped. Throws InputError with the line
// number for malformed records; out-of-order in times are kept but noted
// in warnings.
WordTimingParse parse_word_timings(std::istream& source);

// Splits the word sequence into phrases wherever the silence between the
// previous word's out time and the next word's in time exceeds the gap
// threshold. Each phrase starts with a single joined line.
std::vector<LyricPhrase> group_words_into_phrases(
    const std::vector<WordTiming>& words, const GroupingConfig& cfg);

// Median character count (spaces included, Unicode scalars) over all
// phrases' joined lines; even counts take the lower median. An override
// wins when present.
int compute_line_break_threshold(const std::vector<LyricPhrase>& phrases,
                                 std::optional<int> override_value = std::nullopt);

// Splits `words` into the fewest lines keeping average length at or below
// the threshold, minimizing squared deviation from the mean line length.
// Ties pick the lexicographically largest length tuple. Breaks happen only
// at word boundaries; a single over-long word keeps its own line.
std::vector<std::string> balanced_line_break(const std::vector<std::string>& words,
                                             int threshold);

// Applies balanced_line_break to a phrase, returning the phrase with its
// lines replaced.
LyricPhrase break_phrase_lines(const LyricPhrase& phrase, int threshold);

}  // namespace lyrplan
