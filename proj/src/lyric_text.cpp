/*
 * lyrplan - lyric video render planner
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include "lyrplan/lyric_text.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>

#include "lyrplan/error.hpp"

namespace lyrplan {

std::string LyricPhrase::joined_text() const {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += ' ';
    out += words[i].text;
  }
  return out;
}

std::size_t utf8_length(std::string_view text) {
  std::size_t n = 0;
  for (unsigned char b : text) {
    if ((b & 0xC0) != 0x80) ++n;  // count non-continuation bytes
  }
  return n;
}

std::vector<char32_t> utf8_decode(std::string_view text) {
  std::vector<char32_t> out;
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char b0 = static_cast<unsigned char>(text[i]);
    char32_t cp = 0xFFFD;
    std::size_t len = 1;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0 && i + 1 < text.size()) {
      unsigned char b1 = static_cast<unsigned char>(text[i + 1]);
      if ((b1 & 0xC0) == 0x80) {
        cp = ((b0 & 0x1Fu) << 6) | (b1 & 0x3Fu);
        len = 2;
      }
    } else if ((b0 & 0xF0) == 0xE0 && i + 2 < text.size()) {
      unsigned char b1 = static_cast<unsigned char>(text[i + 1]);
      unsigned char b2 = static_cast<unsigned char>(text[i + 2]);
      if ((b1 & 0xC0) == 0x80 && (b2 & 0xC0) == 0x80) {
        cp = ((b0 & 0x0Fu) << 12) | ((b1 & 0x3Fu) << 6) | (b2 & 0x3Fu);
        len = 3;
      }
    } else if ((b0 & 0xF8) == 0xF0 && i + 3 < text.size()) {
      unsigned char b1 = static_cast<unsigned char>(text[i + 1]);
      unsigned char b2 = static_cast<unsigned char>(text[i + 2]);
      unsigned char b3 = static_cast<unsigned char>(text[i + 3]);
      if ((b1 & 0xC0) == 0x80 && (b2 & 0xC0) == 0x80 && (b3 & 0xC0) == 0x80) {
        cp = ((b0 & 0x07u) << 18) | ((b1 & 0x3Fu) << 12) |
             ((b2 & 0x3Fu) << 6) | (b3 & 0x3Fu);
        len = 4;
      }
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

namespace {

bool parse_seconds(std::string_view field, double& out) {
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

WordTimingParse parse_word_timings(std::istream& source) {
  WordTimingParse result;
  std::string line;
  int line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view = line;
    if (view.find_first_not_of(" \t") == std::string_view::npos) continue;
    if (view.front() == '#') continue;

    std::size_t tab1 = view.find('\t');
    std::size_t tab2 = tab1 == std::string_view::npos
                           ? std::string_view::npos
                           : view.find('\t', tab1 + 1);
    if (tab1 == std::string_view::npos || tab2 == std::string_view::npos ||
        view.find('\t', tab2 + 1) != std::string_view::npos) {
      throw InputError("malformed word timing record at line " +
                       std::to_string(line_no) +
                       " (expected word<TAB>t_in<TAB>t_out)");
    }

    WordTiming w;
    w.text = std::string(view.substr(0, tab1));
    if (w.text.empty()) {
      throw InputError("empty word at line " + std::to_string(line_no));
    }
    if (w.text.find(' ') != std::string::npos) {
      throw InputError("word contains a space at line " +
                       std::to_string(line_no) +
                       " (one record per word expected)");
    }
    if (!parse_seconds(view.substr(tab1 + 1, tab2 - tab1 - 1), w.t_in) ||
        !parse_seconds(view.substr(tab2 + 1), w.t_out)) {
      throw InputError("malformed time value at line " +
                       std::to_string(line_no));
    }
    if (w.t_in < 0.0) {
      throw InputError("negative t_in at line " + std::to_string(line_no));
    }
    if (w.t_out <= w.t_in) {
      throw InputError("t_out <= t_in at line " + std::to_string(line_no));
    }
    if (!result.words.empty() && w.t_in < result.words.back().t_in) {
      result.warnings.push_back("non-monotonic t_in at line " +
                                std::to_string(line_no));
    }
    result.words.push_back(std::move(w));
  }
  return result;
}

std::vector<LyricPhrase> group_words_into_phrases(
    const std::vector<WordTiming>& words, const GroupingConfig& cfg) {
  if (cfg.gap_threshold_s <= 0.0) {
    throw InputError("gap_threshold_s must be positive");
  }
  std::vector<LyricPhrase> phrases;
  LyricPhrase current;
  auto flush = [&]() {
    if (current.words.empty()) return;
    current.t_in = current.words.front().t_in;
    current.t_out = current.words.back().t_out;
    current.lines = {current.joined_text()};
    phrases.push_back(std::move(current));
    current = LyricPhrase{};
  };
  for (const WordTiming& w : words) {
    if (!current.words.empty() &&
        w.t_in - current.words.back().t_out > cfg.gap_threshold_s) {
      flush();
    }
    current.words.push_back(w);
  }
  flush();
  return phrases;
}

int compute_line_break_threshold(const std::vector<LyricPhrase>& phrases,
                                 std::optional<int> override_value) {
  if (override_value) {
    if (*override_value < 1) {
      throw InputError("line break threshold override must be >= 1");
    }
    return *override_value;
  }
  if (phrases.empty()) {
    throw InputError("cannot compute line break threshold of zero phrases");
  }
  std::vector<std::size_t> counts;
  counts.reserve(phrases.size());
  for (const LyricPhrase& p : phrases) {
    counts.push_back(utf8_length(p.joined_text()));
  }
  std::sort(counts.begin(), counts.end());
  // lower median for even counts
  return static_cast<int>(counts[(counts.size() - 1) / 2]);
}

namespace {

constexpr long long kInfCost = std::numeric_limits<long long>::max();

// Character count of words[i..j] joined with single spaces.
long long run_length(const std::vector<long long>& prefix, std::size_t i,
                     std::size_t j) {
  return prefix[j + 1] - prefix[i] + static_cast<long long>(j - i);
}

}  // namespace

std::vector<std::string> balanced_line_break(const std::vector<std::string>& words,
                                             int threshold) {
  if (threshold < 1) throw InputError("line break threshold must be >= 1");
  if (words.empty()) return {};

  const std::size_t count = words.size();
  std::vector<long long> prefix(count + 1, 0);
  for (std::size_t i = 0; i < count; ++i) {
    prefix[i + 1] = prefix[i] + static_cast<long long>(utf8_length(words[i]));
  }

  auto join = [&](std::size_t i, std::size_t j) {
    std::string s;
    for (std::size_t k = i; k <= j; ++k) {
      if (k > i) s += ' ';
      s += words[k];
    }
    return s;
  };

  const long long total = run_length(prefix, 0, count - 1);
  if (total <= threshold) {
    return {join(0, count - 1)};
  }

  std::size_t lines = static_cast<std::size_t>((total + threshold - 1) / threshold);
  lines = std::min(lines, count);
  if (lines <= 1) return {join(0, count - 1)};

  // Minimizing sum((len - mean)^2) with mean = chars/lines equals
  // minimizing the integer sum((lines*len - chars)^2); one joining space
  // disappears per break.
  const long long n = static_cast<long long>(lines);
  const long long chars = total - (n - 1);
  auto line_cost = [&](std::size_t i, std::size_t e) {
    long long d = n * run_length(prefix, i, e - 1) - chars;
    return d * d;
  };

  // dp[i][j]: minimal cost of laying words[i..] out on j lines.
  std::vector<std::vector<long long>> dp(
      count + 1, std::vector<long long>(lines + 1, kInfCost));
  dp[count][0] = 0;
  for (std::size_t j = 1; j <= lines; ++j) {
    for (std::size_t i = 0; i < count; ++i) {
      // words [i, e) form this line; leave at least j-1 words for the rest
      for (std::size_t e = i + 1; e + (j - 1) <= count; ++e) {
        if (dp[e][j - 1] == kInfCost) continue;
        long long cost = line_cost(i, e) + dp[e][j - 1];
        if (cost < dp[i][j]) dp[i][j] = cost;
      }
    }
  }

  // Reconstruct, preferring the longest feasible first line at each step --
  // this maximizes the length tuple lexicographically among optimal splits.
  std::vector<std::string> out;
  std::size_t i = 0;
  for (std::size_t j = lines; j >= 1; --j) {
    std::size_t chosen = 0;
    for (std::size_t e = i + 1; e + (j - 1) <= count; ++e) {
      if (dp[e][j - 1] == kInfCost) continue;
      if (line_cost(i, e) + dp[e][j - 1] == dp[i][j]) chosen = e;
    }
    out.push_back(join(i, chosen - 1));
    i = chosen;
  }
  return out;
}

LyricPhrase break_phrase_lines(const LyricPhrase& phrase, int threshold) {
  LyricPhrase out = phrase;
  std::vector<std::string> texts;
  texts.reserve(phrase.words.size());
  for (const WordTiming& w : phrase.words) texts.push_back(w.text);
  out.lines = balanced_line_break(texts, threshold);
  return out;
}

}  // namespace lyrplan
