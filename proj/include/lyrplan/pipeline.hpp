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

#include "lyrplan/kernel_raster.hpp"
#include "lyrplan/lyric_text.hpp"
#include "lyrplan/media_ingest.hpp"
#include "lyrplan/placement.hpp"
#include "lyrplan/render_plan.hpp"

namespace lyrplan {

enum class PipelineMode { full, baseline, readability_ablated, attention_ablated };

PipelineMode mode_from_string(const std::string& s);
const char* to_string(PipelineMode mode);

struct PipelineConfig {
  PipelineMode mode = PipelineMode::full;
  double fps = 30.0;
  EnergyWeights weights;
  GroupingConfig grouping;
  TextStyle style;
  AnimationSpec anim;
  AnchorMode anchor_mode = AnchorMode::upper_left;
  double cut_threshold = 0.3;
  int surround_margin = 2;
  bool normalize_terms = true;
  int baseline_margin_px = 16;
  CorrelationPolicy correlation;

  // toggled by apply_mode, not a config-file key
  bool line_breaking = true;
  bool force_bottom_center = false;
};

// Loads the JSON config; every key is optional, unknown keys are errors.
PipelineConfig load_config(const std::filesystem::path& path);

// Applies the mode's documented overrides; `full` is the identity.
PipelineConfig apply_mode(PipelineConfig cfg);

// Shot-aware E_prv chaining: the previous position carries over only
// within the same shot.
std::optional<PixelCoord> effective_prev(
    const std::optional<PixelCoord>& prev_position, int prev_shot,
    int current_shot);

struct PlacedPhraseRecord {
  LyricPhrase phrase;
  FrameSpan span;
  TextKernel kernel;
  PlacementResult placement;
};

// Stage 2: places phrases in time order (each placement feeds the next
// phrase's E_prv). Assigns shot indices from each phrase's first frame.
// When dump_dir is set, the normalized per-term and combined maps land
// there as grayscale PNGs. A custom rasterizer replaces the embedded
// bitmap font when supplied.
std::vector<PlacedPhraseRecord> place_phrases(
    std::vector<LyricPhrase> phrases, const MediaSequence& media,
    const std::vector<Shot>& shots, const PipelineConfig& cfg,
    const std::optional<std::filesystem::path>& dump_dir = std::nullopt,
    std::vector<std::string>* warnings = nullptr,
    const PhraseRasterizer& rasterizer = {});

struct PipelineInputs {
  std::filesystem::path words_file;
  std::filesystem::path frame_dir;
  std::optional<std::filesystem::path> focus_dir;
  std::optional<std::filesystem::path> foreground_dir;
  std::optional<std::filesystem::path> shot_file;
};

struct PipelineOutputs {
  std::filesystem::path json_path;
  std::optional<std::filesystem::path> ass_path;
  std::optional<std::filesystem::path> overlay_dir;
  std::optional<std::filesystem::path> dump_dir;
  std::optional<std::filesystem::path> kernel_dump_dir;
};

// Full three-stage run. Returns the process exit status (0 ok, 1 input
// error, 2 internal error); progress and per-phrase energies go to `log`.
int run_pipeline(const PipelineConfig& config, const PipelineInputs& inputs,
                 const PipelineOutputs& outputs, std::ostream& log);

void dump_cost_maps(const PlacementMaps& maps,
                    const std::filesystem::path& dir, int phrase_index);

}  // namespace lyrplan
