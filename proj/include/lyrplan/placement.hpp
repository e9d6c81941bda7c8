/*
 * lyrplan - lyric video render planner
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lyrplan/kernel_raster.hpp"
#include "lyrplan/media_ingest.hpp"
#include "lyrplan/raster.hpp"

namespace lyrplan {

// Upper-left corner of the text rectangle, origin top-left.
struct PixelCoord {
  int x = 0;
  int y = 0;

  bool operator==(const PixelCoord&) const = default;
};

// Energy values over every placement keeping the text inside the frame.
// Dimensions are (frame - kernel + 1) per axis.
struct CostMap {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  CostMap() = default;
  CostMap(int w, int h, double fill = 0.0)
      : width(w), height(h),
        values(static_cast<std::size_t>(w) * h, fill) {}

  double at(int x, int y) const {
    return values[static_cast<std::size_t>(y) * width + x];
  }
  double& at(int x, int y) {
    return values[static_cast<std::size_t>(y) * width + x];
  }
};

struct EnergyWeights {
  double fcs = 1.0;
  double fgd = 1.0;
  double cnt = 1.0;
  double prv = 1.0;
};

enum class AnchorMode { upper_left, center };

enum class CorrelationBackend { automatic, direct, transform };

struct CorrelationPolicy {
  CorrelationBackend backend = CorrelationBackend::automatic;
  // automatic switches to the transform path above this kernel-area times
  // valid-area product. Default from measuring both paths on x86-64 at
  // lyric-kernel shapes: break-even lands between 4e7 and 1e8.
  std::uint64_t crossover = 60'000'000;
};

struct PlacementConfig {
  AnchorMode anchor_mode = AnchorMode::upper_left;
  int surround_margin = 2;
  bool normalize_terms = true;
  Rgb text_color{255, 255, 255};
  CorrelationPolicy correlation;
};

// Argmin position plus the (normalized) per-term values there.
struct PlacementResult {
  PixelCoord position;
  double e_fcs = 0.0;
  double e_fgd = 0.0;
  double e_cnt = 0.0;
  double e_prv = 0.0;
  double combined = 0.0;
};

// Optional capture of the per-term and combined maps for debug dumps.
struct PlacementMaps {
  CostMap fcs;
  CostMap fgd;
  CostMap cnt;
  CostMap prv;
  CostMap combined;
};

// Valid-mode cross-correlation: out(p) = sum of image under the kernel at p.
CostMap cross_correlate(const Grid& image, const TextKernel& kernel,
                        const CorrelationPolicy& policy = {});

// Intensity-weighted mean coordinate of a mask; falls back to the raster
// center when the mask is identically zero.
struct CenterOfMass {
  double x = 0.0;
  double y = 0.0;
};
CenterOfMass focus_center(const Grid& mask);

// Distance from the anchored text position to the focus center of mass.
CostMap energy_fcs(const Grid& avg_focus, int valid_width, int valid_height,
                   AnchorMode anchor, int kernel_width, int kernel_height);

// Foreground overlap: cross-correlation of the averaged foreground mask
// with the text kernel.
CostMap energy_fgd(const Grid& avg_foreground, const TextKernel& kernel,
                   const CorrelationPolicy& policy = {});

// Color-contrast energy: correlates the RGB distance between background
// and text color with the inverted, margin-padded kernel, then inverts so
// lower values mean higher surrounding contrast.
CostMap energy_cnt(const Image3f& avg_background, Rgb text_color,
                   const TextKernel& kernel, int surround_margin,
                   const CorrelationPolicy& policy = {});

// Distance to the previous phrase position; identically zero when absent.
CostMap energy_prv(const std::optional<PixelCoord>& prev, int valid_width,
                   int valid_height);

// Min-max normalization to [0,1]; a constant map collapses to zeros.
CostMap normalize_map(const CostMap& map);

// Full placement: builds the four maps, normalizes (unless disabled),
// forms the weighted sum and returns the row-major-first argmin.
PlacementResult place_phrase(const PhraseContext& context,
                             const TextKernel& kernel,
                             const EnergyWeights& weights,
                             const std::optional<PixelCoord>& prev,
                             const PlacementConfig& cfg,
                             PlacementMaps* maps = nullptr);

}  // namespace lyrplan
