/*
 * lyrplan - lyric video render planner
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lyrplan/error.hpp"
#include "lyrplan/pipeline.hpp"

namespace {

using lyrplan::PipelineConfig;

// Config-mirroring flags; only values the user actually set override the
// config file.
struct ConfigFlags {
  std::optional<std::string> mode;
  std::optional<double> fps;
  std::optional<double> w_fcs, w_fgd, w_cnt, w_prv;
  std::optional<double> gap_threshold;
  std::optional<int> line_break_threshold;
  std::optional<int> glyph_height;
  std::optional<int> leading;
  std::optional<std::string> alignment;
  std::optional<std::vector<int>> color;
  std::optional<std::string> phrase_anim;
  std::optional<std::string> word_highlight;
  std::optional<std::vector<int>> accent;
  std::optional<double> pad;
  std::optional<std::string> anchor_mode;
  std::optional<double> cut_threshold;
  std::optional<int> surround_margin;
  std::optional<bool> normalize_terms;
  std::optional<int> baseline_margin;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f) {
  cmd->add_option("--mode", f.mode,
                  "full | baseline | readability_ablated | attention_ablated");
  cmd->add_option("--fps", f.fps, "frames per second of the sequence");
  cmd->add_option("--w-fcs", f.w_fcs, "focus attraction weight");
  cmd->add_option("--w-fgd", f.w_fgd, "foreground occlusion weight");
  cmd->add_option("--w-cnt", f.w_cnt, "color contrast weight");
  cmd->add_option("--w-prv", f.w_prv, "previous phrase attraction weight");
  cmd->add_option("--gap-threshold", f.gap_threshold,
                  "max silence in seconds inside a phrase");
  cmd->add_option("--line-break-threshold", f.line_break_threshold,
                  "character threshold override (default: median)");
  cmd->add_option("--glyph-height", f.glyph_height, "text height in pixels");
  cmd->add_option("--leading", f.leading, "inter-line spacing in pixels");
  cmd->add_option("--alignment", f.alignment, "left | center");
  cmd->add_option("--color", f.color, "text color r g b")->expected(3);
  cmd->add_option("--phrase-anim", f.phrase_anim, "phrase in/out animation");
  cmd->add_option("--word-highlight", f.word_highlight,
                  "word highlight animation");
  cmd->add_option("--accent", f.accent, "accent color r g b")->expected(3);
  cmd->add_option("--pad", f.pad, "animation padding in seconds");
  cmd->add_option("--anchor-mode", f.anchor_mode, "upper_left | center");
  cmd->add_option("--cut-threshold", f.cut_threshold,
                  "shot cut histogram distance threshold in (0,1]");
  cmd->add_option("--surround-margin", f.surround_margin,
                  "contrast surround margin in pixels");
  cmd->add_option("--normalize-terms", f.normalize_terms,
                  "min-max normalize energy terms before weighting");
  cmd->add_option("--baseline-margin", f.baseline_margin,
                  "baseline mode bottom margin in pixels");
}

lyrplan::Rgb to_rgb(const std::vector<int>& v, const char* what) {
  for (int c : v) {
    if (c < 0 || c > 255) {
      throw lyrplan::InputError(std::string(what) + " channel out of [0,255]");
    }
  }
  return {static_cast<std::uint8_t>(v[0]), static_cast<std::uint8_t>(v[1]),
          static_cast<std::uint8_t>(v[2])};
}

PipelineConfig resolve_config(const std::optional<std::string>& config_path,
                              const ConfigFlags& f) {
  PipelineConfig cfg;
  if (config_path) cfg = lyrplan::load_config(*config_path);
  if (f.mode) cfg.mode = lyrplan::mode_from_string(*f.mode);
  if (f.fps) cfg.fps = *f.fps;
  if (f.w_fcs) cfg.weights.fcs = *f.w_fcs;
  if (f.w_fgd) cfg.weights.fgd = *f.w_fgd;
  if (f.w_cnt) cfg.weights.cnt = *f.w_cnt;
  if (f.w_prv) cfg.weights.prv = *f.w_prv;
  if (f.gap_threshold) cfg.grouping.gap_threshold_s = *f.gap_threshold;
  if (f.line_break_threshold) {
    cfg.grouping.line_break_threshold_override = *f.line_break_threshold;
  }
  if (f.glyph_height) {
    cfg.style.glyph_height_px = *f.glyph_height;
    cfg.style.leading_px = *f.glyph_height / 4;
  }
  if (f.leading) cfg.style.leading_px = *f.leading;
  if (f.alignment) {
    cfg.style.alignment = lyrplan::alignment_from_string(*f.alignment);
  }
  if (f.color) cfg.style.color = to_rgb(*f.color, "--color");
  if (f.phrase_anim) {
    cfg.anim.phrase_in_out = lyrplan::phrase_animation_from_string(*f.phrase_anim);
  }
  if (f.word_highlight) {
    cfg.anim.word_highlight =
        lyrplan::word_highlight_from_string(*f.word_highlight);
  }
  if (f.accent) cfg.anim.accent = to_rgb(*f.accent, "--accent");
  if (f.pad) cfg.anim.pad_s = *f.pad;
  if (f.anchor_mode) {
    if (*f.anchor_mode == "upper_left") {
      cfg.anchor_mode = lyrplan::AnchorMode::upper_left;
    } else if (*f.anchor_mode == "center") {
      cfg.anchor_mode = lyrplan::AnchorMode::center;
    } else {
      throw lyrplan::InputError("unknown anchor mode: " + *f.anchor_mode);
    }
  }
  if (f.cut_threshold) cfg.cut_threshold = *f.cut_threshold;
  if (f.surround_margin) cfg.surround_margin = *f.surround_margin;
  if (f.normalize_terms) cfg.normalize_terms = *f.normalize_terms;
  if (f.baseline_margin) cfg.baseline_margin_px = *f.baseline_margin;
  return cfg;
}

struct IoFlags {
  std::string words;
  std::string frames;
  std::optional<std::string> masks;
  std::optional<std::string> shot_file;
  std::string out_json = "plan.json";
  std::optional<std::string> out_ass;
  std::optional<std::string> overlay_dir;
  std::optional<std::string> dump_maps;
  std::optional<std::string> dump_kernels;
};

void add_io_flags(CLI::App* cmd, IoFlags& io) {
  cmd->add_option("--words", io.words,
                  "word timing file (word<TAB>t_in<TAB>t_out per line)")
      ->required();
  cmd->add_option("--frames", io.frames, "directory of %06d.png frames")
      ->required();
  cmd->add_option("--masks", io.masks,
                  "directory holding focus/ and foreground/ mask dirs");
  cmd->add_option("--shots", io.shot_file,
                  "explicit shot boundary file (start,end per line)");
  cmd->add_option("-o,--out-json", io.out_json, "render plan output path");
  cmd->add_option("--out-ass", io.out_ass, "ASS karaoke subtitle output path");
  cmd->add_option("--render-overlays", io.overlay_dir,
                  "also composite overlay frames into this directory");
  cmd->add_option("--dump-maps", io.dump_maps,
                  "dump per-term and combined cost maps as PNGs");
  cmd->add_option("--dump-kernels", io.dump_kernels,
                  "dump rasterized text kernels as PNGs");
}

int run_plan(const std::optional<std::string>& config_path,
             const ConfigFlags& flags, const IoFlags& io) {
  PipelineConfig cfg = resolve_config(config_path, flags);
  lyrplan::PipelineInputs in;
  in.words_file = io.words;
  in.frame_dir = io.frames;
  if (io.masks) {
    in.focus_dir = std::filesystem::path(*io.masks) / "focus";
    in.foreground_dir = std::filesystem::path(*io.masks) / "foreground";
  }
  if (io.shot_file) in.shot_file = *io.shot_file;
  lyrplan::PipelineOutputs out;
  out.json_path = io.out_json;
  if (io.out_ass) out.ass_path = *io.out_ass;
  if (io.overlay_dir) out.overlay_dir = *io.overlay_dir;
  if (io.dump_maps) out.dump_dir = *io.dump_maps;
  if (io.dump_kernels) out.kernel_dump_dir = *io.dump_kernels;
  return lyrplan::run_pipeline(cfg, in, out, std::cout);
}

int run_render(const std::string& plan_path, const std::string& frames,
               const std::optional<std::string>& masks,
               const std::string& out_dir) {
  std::ifstream in(plan_path, std::ios::binary);
  if (!in) throw lyrplan::InputError("cannot open plan " + plan_path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  lyrplan::RenderPlan plan = lyrplan::parse_plan_json(text);

  std::optional<std::filesystem::path> focus_dir, fgd_dir;
  if (masks) {
    focus_dir = std::filesystem::path(*masks) / "focus";
    fgd_dir = std::filesystem::path(*masks) / "foreground";
  }
  lyrplan::MediaSequence media =
      lyrplan::load_sequence(frames, focus_dir, fgd_dir, plan.fps);
  for (const std::string& w : media.warnings) {
    std::cout << "warning: " << w << "\n";
  }

  // kernels re-rasterize deterministically from the plan's lines and style
  std::vector<lyrplan::TextKernel> kernels;
  for (const lyrplan::PlannedPhrase& p : plan.phrases) {
    kernels.push_back(lyrplan::rasterize_phrase(p.lines, plan.style));
    if (kernels.back().width != p.kernel_width ||
        kernels.back().height != p.kernel_height) {
      throw lyrplan::InputError(
          "re-rasterized kernel does not match the plan (was the plan "
          "generated with a different style?)");
    }
  }
  lyrplan::render_overlay_frames(plan, media.frames, media.foreground, kernels,
                                 out_dir);
  std::cout << "wrote " << media.frames.size() << " overlay frames to "
            << out_dir << "\n";
  return 0;
}

int run_shots(const std::string& frames, double cut_threshold,
              const std::optional<std::string>& out_path) {
  lyrplan::MediaSequence media =
      lyrplan::load_sequence(frames, std::nullopt, std::nullopt, 30.0);
  std::vector<lyrplan::Shot> shots =
      lyrplan::detect_shots(media.frames, cut_threshold);
  std::string text;
  for (const lyrplan::Shot& s : shots) {
    text += std::to_string(s.start_frame) + "," + std::to_string(s.end_frame) +
            "\n";
  }
  if (out_path) {
    std::ofstream out(*out_path, std::ios::binary);
    if (!out) throw lyrplan::InputError("cannot write " + *out_path);
    out << text;
  } else {
    std::cout << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lyrplan: turn word-timed lyrics, frames and attention masks "
               "into an optimized lyric-video render plan"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  app.add_option("--config", config_path, "JSON config file")
      ->check(CLI::ExistingFile);

  ConfigFlags plan_flags;
  IoFlags plan_io;
  CLI::App* plan_cmd =
      app.add_subcommand("plan", "run the full pipeline to a render plan");
  add_io_flags(plan_cmd, plan_io);
  add_config_flags(plan_cmd, plan_flags);

  ConfigFlags ablate_flags;
  IoFlags ablate_io;
  CLI::App* ablate_cmd = app.add_subcommand(
      "ablate", "run the pipeline in an ablation mode (requires --mode)");
  add_io_flags(ablate_cmd, ablate_io);
  add_config_flags(ablate_cmd, ablate_flags);

  std::string render_plan_path, render_frames, render_out = "out";
  std::optional<std::string> render_masks;
  CLI::App* render_cmd =
      app.add_subcommand("render", "composite overlay frames from a plan");
  render_cmd->add_option("--plan", render_plan_path, "render plan JSON")
      ->required();
  render_cmd->add_option("--frames", render_frames, "directory of %06d.png")
      ->required();
  render_cmd->add_option("--masks", render_masks,
                         "directory holding foreground/ masks");
  render_cmd->add_option("--out", render_out, "output directory");

  std::string shots_frames;
  double shots_threshold = 0.3;
  std::optional<std::string> shots_out;
  CLI::App* shots_cmd =
      app.add_subcommand("shots", "detect shot boundaries only");
  shots_cmd->add_option("--frames", shots_frames, "directory of %06d.png")
      ->required();
  shots_cmd->add_option("--cut-threshold", shots_threshold,
                        "histogram distance threshold in (0,1]");
  shots_cmd->add_option("--out", shots_out, "write start,end lines here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (plan_cmd->parsed()) {
      return run_plan(config_path, plan_flags, plan_io);
    }
    if (ablate_cmd->parsed()) {
      if (!ablate_flags.mode) {
        std::cerr << "error: ablate requires --mode\n";
        return 1;
      }
      return run_plan(config_path, ablate_flags, ablate_io);
    }
    if (render_cmd->parsed()) {
      return run_render(render_plan_path, render_frames, render_masks,
                        render_out);
    }
    if (shots_cmd->parsed()) {
      return run_shots(shots_frames, shots_threshold, shots_out);
    }
  } catch (const lyrplan::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
