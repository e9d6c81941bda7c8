/*
 * lyrplan - lyric video render planner
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include "lyrplan/placement.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "lyrplan/error.hpp"
#include "lyrplan/fft.hpp"

namespace lyrplan {

namespace {

CostMap correlate_direct(const double* img, int iw, int ih, const float* ker,
                         int kw, int kh) {
  CostMap out(iw - kw + 1, ih - kh + 1);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      double sum = 0.0;
      for (int i = 0; i < kh; ++i) {
        const double* irow = img + static_cast<std::size_t>(y + i) * iw + x;
        const float* krow = ker + static_cast<std::size_t>(i) * kw;
        for (int j = 0; j < kw; ++j) sum += irow[j] * krow[j];
      }
      out.at(x, y) = sum;
    }
  }
  return out;
}

// Correlation theorem path: IFFT(FFT(image) * conj(FFT(kernel))). With both
// zero-padded to the same power-of-two grid, entries inside the valid
// region are free of circular wrap.
CostMap correlate_fft(const double* img, int iw, int ih, const float* ker,
                      int kw, int kh) {
  const int pw = static_cast<int>(fft::next_pow2(static_cast<std::size_t>(iw)));
  const int ph = static_cast<int>(fft::next_pow2(static_cast<std::size_t>(ih)));
  std::vector<std::complex<double>> a(static_cast<std::size_t>(pw) * ph);
  std::vector<std::complex<double>> b(static_cast<std::size_t>(pw) * ph);
  for (int y = 0; y < ih; ++y) {
    for (int x = 0; x < iw; ++x) {
      a[static_cast<std::size_t>(y) * pw + x] =
          img[static_cast<std::size_t>(y) * iw + x];
    }
  }
  for (int y = 0; y < kh; ++y) {
    for (int x = 0; x < kw; ++x) {
      b[static_cast<std::size_t>(y) * pw + x] =
          static_cast<double>(ker[static_cast<std::size_t>(y) * kw + x]);
    }
  }
  fft::transform_2d(a, pw, ph, false);
  fft::transform_2d(b, pw, ph, false);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= std::conj(b[i]);
  fft::transform_2d(a, pw, ph, true);

  CostMap out(iw - kw + 1, ih - kh + 1);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      out.at(x, y) = a[static_cast<std::size_t>(y) * pw + x].real();
    }
  }
  return out;
}

CostMap correlate(const double* img, int iw, int ih, const float* ker, int kw,
                  int kh, const CorrelationPolicy& policy) {
  if (kw > iw || kh > ih) {
    throw InputError("kernel " + std::to_string(kw) + "x" + std::to_string(kh) +
                     " larger than image " + std::to_string(iw) + "x" +
                     std::to_string(ih));
  }
  bool use_fft = false;
  switch (policy.backend) {
    case CorrelationBackend::direct:
      break;
    case CorrelationBackend::transform:
      use_fft = true;
      break;
    case CorrelationBackend::automatic: {
      const std::uint64_t valid = static_cast<std::uint64_t>(iw - kw + 1) *
                                  static_cast<std::uint64_t>(ih - kh + 1);
      const std::uint64_t area = static_cast<std::uint64_t>(kw) *
                                 static_cast<std::uint64_t>(kh);
      use_fft = valid * area > policy.crossover;
      break;
    }
  }
  return use_fft ? correlate_fft(img, iw, ih, ker, kw, kh)
                 : correlate_direct(img, iw, ih, ker, kw, kh);
}

}  // namespace

CostMap cross_correlate(const Grid& image, const TextKernel& kernel,
                        const CorrelationPolicy& policy) {
  return correlate(image.values.data(), image.width, image.height,
                   kernel.coverage.data(), kernel.width, kernel.height,
                   policy);
}

CenterOfMass focus_center(const Grid& mask) {
  double total = 0.0, sx = 0.0, sy = 0.0;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      double v = mask.at(x, y);
      total += v;
      sx += v * x;
      sy += v * y;
    }
  }
  if (total <= 0.0) {
    // undefined center of an empty mask: fall back to the raster center
    return {(mask.width - 1) / 2.0, (mask.height - 1) / 2.0};
  }
  return {sx / total, sy / total};
}

CostMap energy_fcs(const Grid& avg_focus, int valid_width, int valid_height,
                   AnchorMode anchor, int kernel_width, int kernel_height) {
  if (valid_width < 1 || valid_height < 1) {
    throw InputError("valid region is empty");
  }
  const CenterOfMass c = focus_center(avg_focus);
  const double ax = anchor == AnchorMode::center ? kernel_width / 2.0 : 0.0;
  const double ay = anchor == AnchorMode::center ? kernel_height / 2.0 : 0.0;
  CostMap out(valid_width, valid_height);
  for (int y = 0; y < valid_height; ++y) {
    for (int x = 0; x < valid_width; ++x) {
      double dx = (x + ax) - c.x;
      double dy = (y + ay) - c.y;
      out.at(x, y) = std::sqrt(dx * dx + dy * dy);
    }
  }
  return out;
}

CostMap energy_fgd(const Grid& avg_foreground, const TextKernel& kernel,
                   const CorrelationPolicy& policy) {
  return cross_correlate(avg_foreground, kernel, policy);
}

CostMap energy_cnt(const Image3f& avg_background, Rgb text_color,
                   const TextKernel& kernel, int surround_margin,
                   const CorrelationPolicy& policy) {
  if (surround_margin < 0) throw InputError("surround margin must be >= 0");
  const int w = avg_background.width;
  const int h = avg_background.height;
  const int m = surround_margin;

  // RGB distance to the text color, replicate-padded by the margin so the
  // surround exists at frame borders too.
  Grid diff(w + 2 * m, h + 2 * m);
  for (int y = 0; y < diff.height; ++y) {
    int sy = std::clamp(y - m, 0, h - 1);
    for (int x = 0; x < diff.width; ++x) {
      int sx = std::clamp(x - m, 0, w - 1);
      double dr = avg_background.at(sx, sy, 0) - text_color[0];
      double dg = avg_background.at(sx, sy, 1) - text_color[1];
      double db = avg_background.at(sx, sy, 2) - text_color[2];
      diff.at(x, y) = std::sqrt(dr * dr + dg * dg + db * db);
    }
  }

  const TextKernel padded = pad_kernel(kernel, m);
  std::vector<float> inverted(padded.coverage.size());
  for (std::size_t i = 0; i < inverted.size(); ++i) {
    inverted[i] = 1.0f - padded.coverage[i];
  }

  CostMap c = correlate(diff.values.data(), diff.width, diff.height,
                        inverted.data(), padded.width, padded.height, policy);
  double max_v = 0.0;
  for (double v : c.values) max_v = std::max(max_v, v);
  for (double& v : c.values) v = max_v - v;
  return c;
}

CostMap energy_prv(const std::optional<PixelCoord>& prev, int valid_width,
                   int valid_height) {
  CostMap out(valid_width, valid_height, 0.0);
  if (!prev) return out;
  for (int y = 0; y < valid_height; ++y) {
    for (int x = 0; x < valid_width; ++x) {
      double dx = static_cast<double>(x - prev->x);
      double dy = static_cast<double>(y - prev->y);
      out.at(x, y) = std::sqrt(dx * dx + dy * dy);
    }
  }
  return out;
}

CostMap normalize_map(const CostMap& map) {
  CostMap out = map;
  if (map.values.empty()) return out;
  double lo = map.values[0], hi = map.values[0];
  for (double v : map.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi == lo) {
    for (double& v : out.values) v = 0.0;
    return out;
  }
  const double range = hi - lo;
  for (double& v : out.values) v = (v - lo) / range;
  return out;
}

PlacementResult place_phrase(const PhraseContext& context,
                             const TextKernel& kernel,
                             const EnergyWeights& weights,
                             const std::optional<PixelCoord>& prev,
                             const PlacementConfig& cfg, PlacementMaps* maps) {
  if (weights.fcs < 0 || weights.fgd < 0 || weights.cnt < 0 ||
      weights.prv < 0) {
    throw InputError("energy weights must be non-negative");
  }
  if (weights.fcs == 0 && weights.fgd == 0 && weights.cnt == 0 &&
      weights.prv == 0) {
    throw InputError("at least one energy weight must be positive");
  }
  const int fw = context.avg_foreground.width;
  const int fh = context.avg_foreground.height;
  if (kernel.width > fw || kernel.height > fh) {
    throw InputError("text kernel " + std::to_string(kernel.width) + "x" +
                     std::to_string(kernel.height) + " does not fit frame " +
                     std::to_string(fw) + "x" + std::to_string(fh) +
                     "; reduce the line break threshold or the text size");
  }
  const int vw = fw - kernel.width + 1;
  const int vh = fh - kernel.height + 1;

  CostMap fcs = energy_fcs(context.avg_focus, vw, vh, cfg.anchor_mode,
                           kernel.width, kernel.height);
  CostMap fgd = energy_fgd(context.avg_foreground, kernel, cfg.correlation);
  CostMap cnt = energy_cnt(context.avg_background, cfg.text_color, kernel,
                           cfg.surround_margin, cfg.correlation);
  CostMap prv_map = energy_prv(prev, vw, vh);

  if (cfg.normalize_terms) {
    fcs = normalize_map(fcs);
    fgd = normalize_map(fgd);
    cnt = normalize_map(cnt);
    prv_map = normalize_map(prv_map);
  }

  CostMap combined(vw, vh);
  for (std::size_t i = 0; i < combined.values.size(); ++i) {
    combined.values[i] = weights.fcs * fcs.values[i] +
                         weights.fgd * fgd.values[i] +
                         weights.cnt * cnt.values[i] +
                         weights.prv * prv_map.values[i];
  }

  // row-major scan with strict improvement: ties resolve to smallest y,
  // then smallest x
  PixelCoord best{0, 0};
  double best_v = combined.at(0, 0);
  for (int y = 0; y < vh; ++y) {
    for (int x = 0; x < vw; ++x) {
      if (combined.at(x, y) < best_v) {
        best_v = combined.at(x, y);
        best = {x, y};
      }
    }
  }

  PlacementResult result;
  result.position = best;
  result.e_fcs = fcs.at(best.x, best.y);
  result.e_fgd = fgd.at(best.x, best.y);
  result.e_cnt = cnt.at(best.x, best.y);
  result.e_prv = prv_map.at(best.x, best.y);
  result.combined = best_v;

  if (maps) {
    maps->fcs = std::move(fcs);
    maps->fgd = std::move(fgd);
    maps->cnt = std::move(cnt);
    maps->prv = std::move(prv_map);
    maps->combined = std::move(combined);
  }
  return result;
}

}  // namespace lyrplan
