/*
 * lyrplan - lyric video render planner
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lyrplan/lyric_text.hpp"
#include "lyrplan/raster.hpp"

namespace lyrplan {

// Half-open run of frames belonging to one shot.
struct Shot {
  int start_frame = 0;  // inclusive
  int end_frame = 0;    // exclusive
};

// Inclusive frame index range spanned by a phrase's display times.
struct FrameSpan {
  int first = 0;
  int last = 0;
};

// Averaged rasters over a phrase's frame span: focus mask, foreground mask
// and the foreground-free background mean.
struct PhraseContext {
  Grid avg_focus;
  Grid avg_foreground;
  Image3f avg_background;
  FrameSpan frame_span;
};

struct MediaSequence {
  std::vector<Frame> frames;
  std::vector<MaskFrame> focus;
  std::vector<MaskFrame> foreground;
  double fps = 0.0;
  std::vector<std::string> warnings;
};

// Loads `%06d.png` frames plus aligned focus/foreground masks. A missing
// mask directory yields all-zero masks and a warning. Numbering gaps,
// count mismatches, and mask/frame dimension mismatches are errors.
MediaSequence load_sequence(const std::filesystem::path& frame_dir,
                            const std::optional<std::filesystem::path>& focus_dir,
                            const std::optional<std::filesystem::path>& foreground_dir,
                            double fps);

// Splits the frame range at color histogram discontinuities: 8 bins per
// RGB channel, L1-normalized, boundary where half the L1 distance between
// consecutive histograms exceeds cut_threshold.
std::vector<Shot> detect_shots(const std::vector<Frame>& frames,
                               double cut_threshold);

// Reads explicit `start,end` shot boundaries, one per line; the shots must
// tile [0, frame_count) in order.
std::vector<Shot> parse_shot_boundaries(std::istream& source, int frame_count);

// Index of the shot containing frame f.
int shot_index_for_frame(const std::vector<Shot>& shots, int frame);

// Maps display seconds to an inclusive frame range: floor at the in time,
// ceil at the out time, clamped into the video.
FrameSpan phrase_frame_span(const LyricPhrase& phrase, double fps,
                            int frame_count);

// Per-pixel means over the span: focus, foreground, and frame*(1 - s_fgd)
// per channel for the background.
PhraseContext build_phrase_context(const FrameSpan& span,
                                   const std::vector<Frame>& frames,
                                   const std::vector<MaskFrame>& focus,
                                   const std::vector<MaskFrame>& foreground);

}  // namespace lyrplan
