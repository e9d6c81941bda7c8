/*
 * lyrplan - lyric video render planner
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "lyrplan/error.hpp"
#include "lyrplan/pipeline.hpp"
#include "lyrplan/png_io.hpp"
#include "test_util.hpp"

using namespace lyrplan;

namespace {

MediaSequence synthetic_media(int frames, int w, int h, double fps,
                              int cut_at = -1) {
  MediaSequence seq;
  seq.fps = fps;
  std::mt19937 rng(2024);
  for (int i = 0; i < frames; ++i) {
    Frame f;
    f.width = w;
    f.height = h;
    f.pixels.resize(static_cast<std::size_t>(w) * h * 3);
    Rgb base = (cut_at >= 0 && i >= cut_at) ? Rgb{220, 40, 40} : Rgb{20, 20, 80};
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        std::size_t off = (static_cast<std::size_t>(y) * w + x) * 3;
        f.pixels[off] = base[0];
        f.pixels[off + 1] = static_cast<std::uint8_t>((base[1] + x) % 256);
        f.pixels[off + 2] = base[2];
      }
    }
    seq.frames.push_back(std::move(f));

    MaskFrame focus, fgd;
    focus.width = fgd.width = w;
    focus.height = fgd.height = h;
    focus.values.assign(static_cast<std::size_t>(w) * h, 0.0f);
    fgd.values.assign(static_cast<std::size_t>(w) * h, 0.0f);
    // small moving blobs
    int cx = (5 + i) % w, cy = h / 2;
    focus.at(cx, cy) = 1.0f;
    fgd.at((cx + 3) % w, cy) = 1.0f;
    seq.focus.push_back(std::move(focus));
    seq.foreground.push_back(std::move(fgd));
  }
  return seq;
}

LyricPhrase phrase_at(const std::string& text, double t_in, double dur) {
  LyricPhrase p;
  std::istringstream iss(text);
  std::string tok;
  double t = t_in;
  double per = dur;
  std::vector<std::string> toks;
  while (iss >> tok) toks.push_back(tok);
  per = dur / toks.size();
  for (const std::string& w : toks) {
    p.words.push_back({w, t, t + per * 0.8});
    t += per;
  }
  p.t_in = p.words.front().t_in;
  p.t_out = p.words.back().t_out;
  p.lines = {p.joined_text()};
  return p;
}

}  // namespace

TEST_CASE("apply_mode attention_ablated zeroes attention weights") {
  PipelineConfig cfg;
  cfg.mode = PipelineMode::attention_ablated;
  cfg.weights = {2.0, 3.0, 4.0, 5.0};
  PipelineConfig out = apply_mode(cfg);
  CHECK(out.weights.fcs == 0.0);
  CHECK(out.weights.fgd == 0.0);
  CHECK(out.weights.prv == 0.0);
  CHECK(out.weights.cnt == 4.0);
  CHECK(out.line_breaking);
  CHECK(out.anim.word_highlight == WordHighlight::slide_up);
}

TEST_CASE("apply_mode baseline forces bottom-center placement") {
  PipelineConfig cfg;
  cfg.mode = PipelineMode::baseline;
  PipelineConfig out = apply_mode(cfg);
  CHECK(out.force_bottom_center);
  CHECK_FALSE(out.line_breaking);
  CHECK(out.anim.word_highlight == WordHighlight::none);

  // W=320, H=180, kernel 100x20, margin 16 -> (110, 144)
  MediaSequence media = synthetic_media(5, 320, 180, 10.0);
  std::vector<Shot> shots{{0, 5}};
  LyricPhrase p = phrase_at("ab", 0.0, 0.4);
  out.style.glyph_height_px = 28;  // 100x20 kernel is synthetic; use real one
  std::vector<PlacedPhraseRecord> placed =
      place_phrases({p}, media, shots, out);
  REQUIRE(placed.size() == 1);
  const PlacedPhraseRecord& r = placed[0];
  CHECK(r.placement.position.x == (320 - r.kernel.width) / 2);
  CHECK(r.placement.position.y == 180 - r.kernel.height - 16);
}

TEST_CASE("apply_mode readability_ablated drops contrast and highlighting") {
  PipelineConfig cfg;
  cfg.mode = PipelineMode::readability_ablated;
  PipelineConfig out = apply_mode(cfg);
  CHECK(out.weights.cnt == 0.0);
  CHECK(out.weights.fcs == 1.0);
  CHECK_FALSE(out.line_breaking);
  CHECK(out.anim.word_highlight == WordHighlight::none);
  CHECK_FALSE(out.force_bottom_center);
}

TEST_CASE("apply_mode full is the identity") {
  PipelineConfig cfg;
  cfg.weights = {2.0, 3.0, 4.0, 5.0};
  PipelineConfig out = apply_mode(cfg);
  CHECK(out.weights.fcs == 2.0);
  CHECK(out.weights.prv == 5.0);
  CHECK(out.line_breaking);
  CHECK_FALSE(out.force_bottom_center);
}

TEST_CASE("effective_prev resets across shots") {
  CHECK(effective_prev(std::nullopt, -1, 0) == std::nullopt);
  CHECK(effective_prev(PixelCoord{5, 6}, 0, 1) == std::nullopt);
  auto kept = effective_prev(PixelCoord{5, 6}, 1, 1);
  REQUIRE(kept.has_value());
  CHECK(*kept == PixelCoord{5, 6});
}

TEST_CASE("place_phrases chains E_prv within a shot") {
  MediaSequence media = synthetic_media(40, 64, 48, 10.0);
  std::vector<Shot> shots{{0, 40}};
  PipelineConfig cfg;
  cfg.style.glyph_height_px = 7;
  cfg.style.leading_px = 1;
  cfg.weights = {0.0, 0.0, 0.0, 1.0};  // only E_prv

  std::vector<LyricPhrase> phrases{phrase_at("aa", 0.0, 0.5),
                                   phrase_at("bb", 1.0, 0.5)};
  auto placed = place_phrases(phrases, media, shots, cfg);
  REQUIRE(placed.size() == 2);
  // an all-zero prv map leaves the scan at (0,0); the second phrase must
  // land exactly on the first
  CHECK(placed[1].placement.position == placed[0].placement.position);
}

TEST_CASE("place_phrases resets E_prv at shot boundaries") {
  MediaSequence media = synthetic_media(40, 64, 48, 10.0, 20);
  std::vector<Shot> shots{{0, 20}, {20, 40}};
  PipelineConfig cfg;
  cfg.style.glyph_height_px = 7;
  cfg.style.leading_px = 1;
  cfg.weights = {0.0, 0.0, 0.0, 1.0};

  // second phrase starts in shot 1
  std::vector<LyricPhrase> phrases{phrase_at("aa", 0.0, 0.5),
                                   phrase_at("bb", 2.5, 0.5)};
  auto placed = place_phrases(phrases, media, shots, cfg);
  CHECK(placed[0].phrase.shot_index == 0);
  CHECK(placed[1].phrase.shot_index == 1);
  // with prev dropped the map is identically zero: scan picks (0,0)
  CHECK(placed[1].placement.position == PixelCoord{0, 0});
}

TEST_CASE("a substituted rasterizer replaces the embedded font") {
  MediaSequence media = synthetic_media(10, 64, 48, 10.0);
  std::vector<Shot> shots{{0, 10}};
  PipelineConfig cfg;
  PhraseRasterizer stub = [](const std::vector<std::string>&,
                             const TextStyle&) {
    TextKernel k;
    k.width = 6;
    k.height = 3;
    k.coverage.assign(18, 1.0f);
    return k;
  };
  auto placed = place_phrases({phrase_at("whatever text", 0.0, 0.5)}, media,
                              shots, cfg, std::nullopt, nullptr, stub);
  REQUIRE(placed.size() == 1);
  CHECK(placed[0].kernel.width == 6);
  CHECK(placed[0].kernel.height == 3);
}

TEST_CASE("load_config accepts documented keys and rejects others") {
  testutil::TempDir tmp("cfg");
  {
    std::ofstream out(tmp.path() / "good.json");
    out << R"({
      "mode": "attention_ablated",
      "fps": 24.0,
      "weights": {"fcs": 2.0, "cnt": 0.5},
      "grouping": {"gap_threshold_s": 0.7, "line_break_threshold": 18},
      "style": {"glyph_height_px": 24, "color": [250, 240, 230]},
      "animation": {"word_highlight": "accent_color", "pad_s": 0.3},
      "anchor_mode": "center",
      "cut_threshold": 0.25,
      "surround_margin": 3,
      "normalize_terms": true,
      "baseline_margin_px": 20
    })";
  }
  PipelineConfig cfg = load_config(tmp.path() / "good.json");
  CHECK(cfg.mode == PipelineMode::attention_ablated);
  CHECK(cfg.fps == 24.0);
  CHECK(cfg.weights.fcs == 2.0);
  CHECK(cfg.weights.fgd == 1.0);  // untouched default
  CHECK(cfg.grouping.gap_threshold_s == 0.7);
  REQUIRE(cfg.grouping.line_break_threshold_override.has_value());
  CHECK(*cfg.grouping.line_break_threshold_override == 18);
  CHECK(cfg.style.glyph_height_px == 24);
  CHECK(cfg.style.leading_px == 6);  // follows glyph height
  CHECK(cfg.style.color[0] == 250);
  CHECK(cfg.anim.word_highlight == WordHighlight::accent_color);
  CHECK(cfg.anchor_mode == AnchorMode::center);
  CHECK(cfg.baseline_margin_px == 20);

  {
    std::ofstream out(tmp.path() / "bad.json");
    out << R"({"waits": {"fcs": 1.0}})";
  }
  try {
    load_config(tmp.path() / "bad.json");
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("waits") != std::string::npos);
  }

  {
    std::ofstream out(tmp.path() / "bad2.json");
    out << R"({"weights": {"fcs": 1.0, "fgx": 2.0}})";
  }
  CHECK_THROWS_AS(load_config(tmp.path() / "bad2.json"), InputError);
}

TEST_CASE("run_pipeline end to end on a tiny fixture") {
  testutil::TempDir tmp("pipe");
  // frames
  MediaSequence media = synthetic_media(20, 96, 64, 10.0, 10);
  for (int i = 0; i < 20; ++i) {
    char name[16];
    std::snprintf(name, sizeof(name), "%06d.png", i);
    std::filesystem::create_directories(tmp.path() / "frames");
    write_rgb8_png(tmp.path() / "frames" / name, media.frames[i]);
  }
  // words: two phrases
  {
    std::ofstream out(tmp.path() / "words.tsv");
    out << "hi\t0.10\t0.40\nthere\t0.50\t0.90\n";
    out << "go\t1.40\t1.80\n";
  }
  PipelineConfig cfg;
  cfg.fps = 10.0;
  cfg.style.glyph_height_px = 7;
  cfg.style.leading_px = 1;

  PipelineInputs in;
  in.words_file = tmp.path() / "words.tsv";
  in.frame_dir = tmp.path() / "frames";
  PipelineOutputs out;
  out.json_path = tmp.path() / "plan.json";
  out.ass_path = tmp.path() / "plan.ass";
  out.overlay_dir = tmp.path() / "overlay";

  std::ostringstream log1, log2;
  CHECK(run_pipeline(cfg, in, out, log1) == 0);
  CHECK(std::filesystem::exists(tmp.path() / "plan.json"));
  CHECK(std::filesystem::exists(tmp.path() / "plan.ass"));
  CHECK(std::filesystem::exists(tmp.path() / "overlay/000000.png"));
  // zero-mask warning surfaced
  CHECK(log1.str().find("warning") != std::string::npos);
  CHECK(log1.str().find("pos (") != std::string::npos);

  // determinism: byte-identical outputs on a second run
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(f)),
                       std::istreambuf_iterator<char>());
  };
  std::string json1 = slurp(tmp.path() / "plan.json");
  std::string ass1 = slurp(tmp.path() / "plan.ass");
  CHECK(run_pipeline(cfg, in, out, log2) == 0);
  CHECK(slurp(tmp.path() / "plan.json") == json1);
  CHECK(slurp(tmp.path() / "plan.ass") == ass1);
}

TEST_CASE("run_pipeline reports input errors with exit code 1") {
  testutil::TempDir tmp("pipeerr");
  PipelineConfig cfg;
  PipelineInputs in;
  in.words_file = tmp.path() / "missing.tsv";
  in.frame_dir = tmp.path() / "frames";
  PipelineOutputs out;
  out.json_path = tmp.path() / "plan.json";
  std::ostringstream log;
  CHECK(run_pipeline(cfg, in, out, log) == 1);
  CHECK(log.str().find("error") != std::string::npos);
}
