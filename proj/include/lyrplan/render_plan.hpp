/*
 * lyrplan - lyric video render planner
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lyrplan/kernel_raster.hpp"
#include "lyrplan/lyric_text.hpp"
#include "lyrplan/placement.hpp"
#include "lyrplan/raster.hpp"

namespace lyrplan {

enum class PhraseAnimation { fade, slide_up, slide_down, fade_slide_up, fade_slide_down };
enum class WordHighlight { fade, slide_up, slide_down, accent_color, none };

struct AnimationSpec {
  PhraseAnimation phrase_in_out = PhraseAnimation::fade;
  WordHighlight word_highlight = WordHighlight::slide_up;
  Rgb accent{255, 200, 64};
  double pad_s = 0.2;
};

struct PlannedWord {
  std::string text;
  double t_in = 0.0;
  double t_out = 0.0;
};

struct PlannedPhrase {
  std::vector<std::string> lines;
  PixelCoord position;
  int kernel_width = 0;
  int kernel_height = 0;
  int shot_index = 0;
  double t_in = 0.0;
  double t_out = 0.0;
  double display_in = 0.0;   // t_in - pad, clamped at 0
  double display_out = 0.0;  // t_out + pad
  std::vector<PlannedWord> words;
};

struct RenderPlan {
  int frame_width = 0;
  int frame_height = 0;
  double fps = 0.0;
  TextStyle style;
  AnimationSpec anim;
  std::vector<PlannedPhrase> phrases;
};

// One placed phrase heading into the plan; position is empty until stage 2
// has run.
struct PhrasePlacement {
  LyricPhrase phrase;
  std::optional<PixelCoord> position;
  int kernel_width = 0;
  int kernel_height = 0;
};

// Orders phrases by in time, applies animation padding to the display
// window (lower-clamped at zero), and validates every placement against
// its valid region.
RenderPlan assemble_plan(const std::vector<PhrasePlacement>& placed,
                         const TextStyle& style, const AnimationSpec& anim,
                         int frame_width, int frame_height, double fps);

// Canonical JSON serialization: fixed key order, phrases ordered by t_in,
// seconds with three fractional digits. emit -> parse -> emit is a fixed
// point.
std::string emit_json(const RenderPlan& plan);
RenderPlan parse_plan_json(const std::string& text);

// ASS subtitle file with one Dialogue event per phrase. Word timing is
// carried by \k karaoke tags in centiseconds; inter-word silence extends
// the preceding word, and the lead-in pad becomes an initial empty \k.
std::string emit_ass(const RenderPlan& plan);

// Composites every phrase active at frame_index over the frame, then puts
// the foreground back on top: out = s_fgd*frame + (1-s_fgd)*composited.
Frame render_overlay_frame(const RenderPlan& plan, const Frame& frame,
                           const MaskFrame& foreground,
                           const std::vector<TextKernel>& kernels,
                           int frame_index);

// Runs render_overlay_frame over the whole sequence, writing %06d.png.
void render_overlay_frames(const RenderPlan& plan,
                           const std::vector<Frame>& frames,
                           const std::vector<MaskFrame>& foreground,
                           const std::vector<TextKernel>& kernels,
                           const std::filesystem::path& out_dir);

const char* to_string(PhraseAnimation v);
const char* to_string(WordHighlight v);
const char* to_string(TextAlignment v);
PhraseAnimation phrase_animation_from_string(const std::string& s);
WordHighlight word_highlight_from_string(const std::string& s);
TextAlignment alignment_from_string(const std::string& s);

}  // namespace lyrplan
