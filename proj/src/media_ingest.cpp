/*
 * lyrplan - lyric video render planner
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include "lyrplan/media_ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>

#include "lyrplan/error.hpp"
#include "lyrplan/png_io.hpp"

namespace lyrplan {

namespace fs = std::filesystem;

namespace {

// Collects indices of files named %06d.png and verifies they run 0..n-1.
int count_numbered_pngs(const fs::path& dir) {
  std::vector<int> indices;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string name = entry.path().filename().string();
    if (name.size() != 10 || name.substr(6) != ".png") continue;
    if (!std::all_of(name.begin(), name.begin() + 6,
                     [](char c) { return c >= '0' && c <= '9'; })) {
      continue;
    }
    int idx = 0;
    std::from_chars(name.data(), name.data() + 6, idx);
    indices.push_back(idx);
  }
  std::sort(indices.begin(), indices.end());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] != static_cast<int>(i)) {
      throw InputError("gap in PNG numbering in " + dir.string() +
                       ": expected index " + std::to_string(i) + ", found " +
                       std::to_string(indices[i]));
    }
  }
  return static_cast<int>(indices.size());
}

fs::path numbered_png(const fs::path& dir, int index) {
  char name[16];
  std::snprintf(name, sizeof(name), "%06d.png", index);
  return dir / name;
}

std::vector<MaskFrame> load_masks(const fs::path& dir, const char* label,
                                  int frame_count, int width, int height) {
  int count = count_numbered_pngs(dir);
  if (count != frame_count) {
    throw InputError(std::string(label) + " mask count " +
                     std::to_string(count) + " != frame count " +
                     std::to_string(frame_count) + " in " + dir.string());
  }
  std::vector<MaskFrame> masks;
  masks.reserve(frame_count);
  for (int i = 0; i < frame_count; ++i) {
    Gray8 gray = read_gray8_png(numbered_png(dir, i));
    if (gray.width != width || gray.height != height) {
      throw InputError("dimension mismatch: " + std::string(label) + " mask " +
                       std::to_string(i) + " is " + std::to_string(gray.width) +
                       "x" + std::to_string(gray.height) + ", frames are " +
                       std::to_string(width) + "x" + std::to_string(height));
    }
    MaskFrame m;
    m.width = width;
    m.height = height;
    m.values.resize(gray.values.size());
    for (std::size_t k = 0; k < gray.values.size(); ++k) {
      m.values[k] = static_cast<float>(gray.values[k]) / 255.0f;
    }
    masks.push_back(std::move(m));
  }
  return masks;
}

std::vector<MaskFrame> zero_masks(int frame_count, int width, int height) {
  MaskFrame zero;
  zero.width = width;
  zero.height = height;
  zero.values.assign(static_cast<std::size_t>(width) * height, 0.0f);
  return std::vector<MaskFrame>(frame_count, zero);
}

}  // namespace

MediaSequence load_sequence(const fs::path& frame_dir,
                            const std::optional<fs::path>& focus_dir,
                            const std::optional<fs::path>& foreground_dir,
                            double fps) {
  if (fps <= 0.0) throw InputError("fps must be positive");
  if (!fs::is_directory(frame_dir)) {
    throw InputError("frame directory not found: " + frame_dir.string());
  }

  MediaSequence seq;
  seq.fps = fps;
  int frame_count = count_numbered_pngs(frame_dir);
  if (frame_count == 0) {
    throw InputError("no %06d.png frames in " + frame_dir.string());
  }
  seq.frames.reserve(frame_count);
  for (int i = 0; i < frame_count; ++i) {
    Frame f = read_rgb8_png(numbered_png(frame_dir, i));
    if (i > 0 && (f.width != seq.frames[0].width ||
                  f.height != seq.frames[0].height)) {
      throw InputError("dimension mismatch: frame " + std::to_string(i) +
                       " differs from frame 0");
    }
    seq.frames.push_back(std::move(f));
  }
  const int w = seq.frames[0].width;
  const int h = seq.frames[0].height;

  auto load_or_zero = [&](const std::optional<fs::path>& dir,
                          const char* label) {
    if (dir && fs::is_directory(*dir)) {
      return load_masks(*dir, label, frame_count, w, h);
    }
    seq.warnings.push_back(std::string(label) +
                           " mask directory missing; using all-zero masks");
    return zero_masks(frame_count, w, h);
  };
  seq.focus = load_or_zero(focus_dir, "focus");
  seq.foreground = load_or_zero(foreground_dir, "foreground");
  return seq;
}

namespace {

constexpr int kBinsPerChannel = 8;
constexpr int kHistSize = kBinsPerChannel * kBinsPerChannel * kBinsPerChannel;

std::array<double, kHistSize> frame_histogram(const Frame& f) {
  std::array<double, kHistSize> hist{};
  const std::size_t pixels = static_cast<std::size_t>(f.width) * f.height;
  for (std::size_t p = 0; p < pixels; ++p) {
    int r = f.pixels[p * 3 + 0] >> 5;
    int g = f.pixels[p * 3 + 1] >> 5;
    int b = f.pixels[p * 3 + 2] >> 5;
    hist[(r * kBinsPerChannel + g) * kBinsPerChannel + b] += 1.0;
  }
  for (double& v : hist) v /= static_cast<double>(pixels);
  return hist;
}

}  // namespace

std::vector<Shot> detect_shots(const std::vector<Frame>& frames,
                               double cut_threshold) {
  if (frames.empty()) throw InputError("cannot detect shots of zero frames");
  if (cut_threshold <= 0.0 || cut_threshold > 1.0) {
    throw InputError("cut_threshold must lie in (0,1]");
  }
  std::vector<Shot> shots;
  int start = 0;
  std::array<double, kHistSize> prev = frame_histogram(frames[0]);
  for (std::size_t i = 1; i < frames.size(); ++i) {
    std::array<double, kHistSize> cur = frame_histogram(frames[i]);
    double dist = 0.0;
    for (int k = 0; k < kHistSize; ++k) dist += std::abs(cur[k] - prev[k]);
    dist *= 0.5;
    if (dist > cut_threshold) {
      shots.push_back({start, static_cast<int>(i)});
      start = static_cast<int>(i);
    }
    prev = cur;
  }
  shots.push_back({start, static_cast<int>(frames.size())});
  return shots;
}

std::vector<Shot> parse_shot_boundaries(std::istream& source, int frame_count) {
  std::vector<Shot> shots;
  std::string line;
  int line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::size_t comma = line.find(',');
    Shot s;
    bool ok = comma != std::string::npos;
    if (ok) {
      const char* data = line.data();
      auto r1 = std::from_chars(data, data + comma, s.start_frame);
      auto r2 =
          std::from_chars(data + comma + 1, data + line.size(), s.end_frame);
      ok = r1.ec == std::errc() && r1.ptr == data + comma &&
           r2.ec == std::errc() && r2.ptr == data + line.size();
    }
    if (!ok) {
      throw InputError("malformed shot boundary at line " +
                       std::to_string(line_no) + " (expected start,end)");
    }
    shots.push_back(s);
  }
  if (shots.empty()) throw InputError("shot boundary file is empty");
  int expected = 0;
  for (const Shot& s : shots) {
    if (s.start_frame != expected || s.end_frame <= s.start_frame) {
      throw InputError("shot boundaries do not tile the frame range at shot " +
                       std::to_string(&s - shots.data()));
    }
    expected = s.end_frame;
  }
  if (expected != frame_count) {
    throw InputError("shot boundaries end at frame " + std::to_string(expected) +
                     ", video has " + std::to_string(frame_count) + " frames");
  }
  return shots;
}

int shot_index_for_frame(const std::vector<Shot>& shots, int frame) {
  for (std::size_t i = 0; i < shots.size(); ++i) {
    if (frame >= shots[i].start_frame && frame < shots[i].end_frame) {
      return static_cast<int>(i);
    }
  }
  throw InputError("frame " + std::to_string(frame) + " outside shot range");
}

FrameSpan phrase_frame_span(const LyricPhrase& phrase, double fps,
                            int frame_count) {
  if (fps <= 0.0) throw InputError("fps must be positive");
  FrameSpan span;
  span.first = static_cast<int>(std::floor(phrase.t_in * fps));
  if (span.first >= frame_count) {
    throw InputError("phrase \"" + phrase.joined_text() +
                     "\" starts beyond the end of the video");
  }
  span.last = std::min(static_cast<int>(std::ceil(phrase.t_out * fps)),
                       frame_count - 1);
  span.last = std::max(span.last, span.first);
  return span;
}

PhraseContext build_phrase_context(const FrameSpan& span,
                                   const std::vector<Frame>& frames,
                                   const std::vector<MaskFrame>& focus,
                                   const std::vector<MaskFrame>& foreground) {
  if (span.first < 0 || span.last >= static_cast<int>(frames.size()) ||
      span.first > span.last) {
    throw InputError("frame span out of range");
  }
  const int w = frames[span.first].width;
  const int h = frames[span.first].height;
  const std::size_t n = static_cast<std::size_t>(w) * h;

  PhraseContext ctx;
  ctx.frame_span = span;
  ctx.avg_focus = Grid(w, h);
  ctx.avg_foreground = Grid(w, h);
  ctx.avg_background = Image3f(w, h);

  for (int f = span.first; f <= span.last; ++f) {
    const Frame& frame = frames[f];
    const MaskFrame& fcs = focus[f];
    const MaskFrame& fgd = foreground[f];
    for (std::size_t p = 0; p < n; ++p) {
      double s_fgd = fgd.values[p];
      ctx.avg_focus.values[p] += fcs.values[p];
      ctx.avg_foreground.values[p] += s_fgd;
      double keep = 1.0 - s_fgd;
      ctx.avg_background.values[p * 3 + 0] += frame.pixels[p * 3 + 0] * keep;
      ctx.avg_background.values[p * 3 + 1] += frame.pixels[p * 3 + 1] * keep;
      ctx.avg_background.values[p * 3 + 2] += frame.pixels[p * 3 + 2] * keep;
    }
  }
  const double inv = 1.0 / static_cast<double>(span.last - span.first + 1);
  for (double& v : ctx.avg_focus.values) v *= inv;
  for (double& v : ctx.avg_foreground.values) v *= inv;
  for (double& v : ctx.avg_background.values) v *= inv;
  return ctx;
}

}  // namespace lyrplan
