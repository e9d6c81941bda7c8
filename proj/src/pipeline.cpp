/*
 * lyrplan - lyric video render planner
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include "lyrplan/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "lyrplan/error.hpp"
#include "lyrplan/png_io.hpp"

namespace lyrplan {

namespace fs = std::filesystem;

PipelineMode mode_from_string(const std::string& s) {
  if (s == "full") return PipelineMode::full;
  if (s == "baseline") return PipelineMode::baseline;
  if (s == "readability_ablated") return PipelineMode::readability_ablated;
  if (s == "attention_ablated") return PipelineMode::attention_ablated;
  throw InputError("unknown mode: " + s);
}

const char* to_string(PipelineMode mode) {
  switch (mode) {
    case PipelineMode::full: return "full";
    case PipelineMode::baseline: return "baseline";
    case PipelineMode::readability_ablated: return "readability_ablated";
    case PipelineMode::attention_ablated: return "attention_ablated";
  }
  return "full";
}

namespace {

void require_keys(const nlohmann::json& obj,
                  std::initializer_list<const char*> allowed,
                  const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return it.key() == k;
        }) == allowed.end()) {
      throw InputError("unknown config key \"" + it.key() + "\" in " + where);
    }
  }
}

Rgb parse_rgb(const nlohmann::json& arr, const std::string& where) {
  if (!arr.is_array() || arr.size() != 3) {
    throw InputError(where + " must be a [r, g, b] array");
  }
  Rgb c;
  for (int i = 0; i < 3; ++i) {
    int v = arr.at(i).get<int>();
    if (v < 0 || v > 255) throw InputError(where + " channel out of [0,255]");
    c[i] = static_cast<std::uint8_t>(v);
  }
  return c;
}

}  // namespace

PipelineConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("invalid config JSON in " + path.string() + ": " +
                     e.what());
  }

  PipelineConfig cfg;
  try {
    require_keys(j,
                 {"mode", "fps", "weights", "grouping", "style", "animation",
                  "anchor_mode", "cut_threshold", "surround_margin",
                  "normalize_terms", "baseline_margin_px", "conv_crossover"},
                 "config root");
    if (j.contains("mode")) cfg.mode = mode_from_string(j["mode"]);
    if (j.contains("fps")) cfg.fps = j["fps"].get<double>();
    if (j.contains("weights")) {
      const auto& w = j["weights"];
      require_keys(w, {"fcs", "fgd", "cnt", "prv"}, "weights");
      if (w.contains("fcs")) cfg.weights.fcs = w["fcs"].get<double>();
      if (w.contains("fgd")) cfg.weights.fgd = w["fgd"].get<double>();
      if (w.contains("cnt")) cfg.weights.cnt = w["cnt"].get<double>();
      if (w.contains("prv")) cfg.weights.prv = w["prv"].get<double>();
    }
    if (j.contains("grouping")) {
      const auto& g = j["grouping"];
      require_keys(g, {"gap_threshold_s", "line_break_threshold"}, "grouping");
      if (g.contains("gap_threshold_s")) {
        cfg.grouping.gap_threshold_s = g["gap_threshold_s"].get<double>();
      }
      if (g.contains("line_break_threshold") &&
          !g["line_break_threshold"].is_null()) {
        cfg.grouping.line_break_threshold_override =
            g["line_break_threshold"].get<int>();
      }
    }
    if (j.contains("style")) {
      const auto& s = j["style"];
      require_keys(s, {"glyph_height_px", "color", "leading_px", "alignment"},
                   "style");
      if (s.contains("glyph_height_px")) {
        cfg.style.glyph_height_px = s["glyph_height_px"].get<int>();
      }
      // leading follows the glyph height unless given explicitly
      cfg.style.leading_px = cfg.style.glyph_height_px / 4;
      if (s.contains("color")) {
        cfg.style.color = parse_rgb(s["color"], "style.color");
      }
      if (s.contains("leading_px")) {
        cfg.style.leading_px = s["leading_px"].get<int>();
      }
      if (s.contains("alignment")) {
        cfg.style.alignment =
            alignment_from_string(s["alignment"].get<std::string>());
      }
    }
    if (j.contains("animation")) {
      const auto& a = j["animation"];
      require_keys(a, {"phrase_in_out", "word_highlight", "accent", "pad_s"},
                   "animation");
      if (a.contains("phrase_in_out")) {
        cfg.anim.phrase_in_out =
            phrase_animation_from_string(a["phrase_in_out"].get<std::string>());
      }
      if (a.contains("word_highlight")) {
        cfg.anim.word_highlight =
            word_highlight_from_string(a["word_highlight"].get<std::string>());
      }
      if (a.contains("accent")) {
        cfg.anim.accent = parse_rgb(a["accent"], "animation.accent");
      }
      if (a.contains("pad_s")) cfg.anim.pad_s = a["pad_s"].get<double>();
    }
    if (j.contains("anchor_mode")) {
      std::string m = j["anchor_mode"].get<std::string>();
      if (m == "upper_left") {
        cfg.anchor_mode = AnchorMode::upper_left;
      } else if (m == "center") {
        cfg.anchor_mode = AnchorMode::center;
      } else {
        throw InputError("unknown anchor_mode: " + m);
      }
    }
    if (j.contains("cut_threshold")) {
      cfg.cut_threshold = j["cut_threshold"].get<double>();
    }
    if (j.contains("surround_margin")) {
      cfg.surround_margin = j["surround_margin"].get<int>();
    }
    if (j.contains("normalize_terms")) {
      cfg.normalize_terms = j["normalize_terms"].get<bool>();
    }
    if (j.contains("baseline_margin_px")) {
      cfg.baseline_margin_px = j["baseline_margin_px"].get<int>();
    }
    if (j.contains("conv_crossover")) {
      cfg.correlation.crossover = j["conv_crossover"].get<std::uint64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError("mistyped config value in " + path.string() + ": " +
                     e.what());
  }

  if (cfg.fps <= 0) throw InputError("fps must be positive");
  if (cfg.grouping.gap_threshold_s <= 0) {
    throw InputError("gap_threshold_s must be positive");
  }
  if (cfg.anim.pad_s < 0) throw InputError("pad_s must be >= 0");
  return cfg;
}

PipelineConfig apply_mode(PipelineConfig cfg) {
  switch (cfg.mode) {
    case PipelineMode::full:
      break;
    case PipelineMode::baseline:
      cfg.line_breaking = false;
      cfg.anim.word_highlight = WordHighlight::none;
      cfg.force_bottom_center = true;
      break;
    case PipelineMode::readability_ablated:
      cfg.line_breaking = false;
      cfg.anim.word_highlight = WordHighlight::none;
      cfg.weights.cnt = 0.0;
      break;
    case PipelineMode::attention_ablated:
      cfg.weights.fcs = 0.0;
      cfg.weights.fgd = 0.0;
      cfg.weights.prv = 0.0;
      break;
  }
  return cfg;
}

std::optional<PixelCoord> effective_prev(
    const std::optional<PixelCoord>& prev_position, int prev_shot,
    int current_shot) {
  if (!prev_position || prev_shot != current_shot) return std::nullopt;
  return prev_position;
}

void dump_cost_maps(const PlacementMaps& maps, const fs::path& dir,
                    int phrase_index) {
  fs::create_directories(dir);
  auto dump = [&](const CostMap& map, const char* term) {
    // darker pixels mean lower energy
    const CostMap norm = normalize_map(map);
    std::vector<std::uint8_t> gray(norm.values.size());
    for (std::size_t i = 0; i < norm.values.size(); ++i) {
      gray[i] = static_cast<std::uint8_t>(
          std::lround(std::clamp(norm.values[i], 0.0, 1.0) * 255.0));
    }
    char name[48];
    std::snprintf(name, sizeof(name), "phrase_%03d_%s.png", phrase_index,
                  term);
    write_gray8_png(dir / name, norm.width, norm.height, gray.data());
  };
  dump(maps.fcs, "fcs");
  dump(maps.fgd, "fgd");
  dump(maps.cnt, "cnt");
  dump(maps.prv, "prv");
  dump(maps.combined, "combined");
}

std::vector<PlacedPhraseRecord> place_phrases(
    std::vector<LyricPhrase> phrases, const MediaSequence& media,
    const std::vector<Shot>& shots, const PipelineConfig& cfg,
    const std::optional<fs::path>& dump_dir,
    std::vector<std::string>* warnings, const PhraseRasterizer& rasterizer) {
  const int frame_count = static_cast<int>(media.frames.size());
  const int fw = frame_count > 0 ? media.frames[0].width : 0;
  const int fh = frame_count > 0 ? media.frames[0].height : 0;

  PlacementConfig pcfg;
  pcfg.anchor_mode = cfg.anchor_mode;
  pcfg.surround_margin = cfg.surround_margin;
  pcfg.normalize_terms = cfg.normalize_terms;
  pcfg.text_color = cfg.style.color;
  pcfg.correlation = cfg.correlation;

  std::vector<PlacedPhraseRecord> placed;
  std::optional<PixelCoord> prev_position;
  int prev_shot = -1;

  for (std::size_t i = 0; i < phrases.size(); ++i) {
    LyricPhrase& phrase = phrases[i];
    PlacedPhraseRecord rec;
    rec.span = phrase_frame_span(phrase, media.fps, frame_count);
    phrase.shot_index = shot_index_for_frame(shots, rec.span.first);

    std::vector<std::string> raster_warnings;
    rec.kernel = rasterizer ? rasterizer(phrase.lines, cfg.style)
                            : rasterize_phrase(phrase.lines, cfg.style,
                                               &raster_warnings);
    if (warnings) {
      for (std::string& w : raster_warnings) {
        warnings->push_back("phrase " + std::to_string(i) + ": " +
                            std::move(w));
      }
    }

    if (rec.kernel.width > fw || rec.kernel.height > fh) {
      throw InputError(
          "phrase " + std::to_string(i) + " \"" + phrase.joined_text() +
          "\": text kernel " + std::to_string(rec.kernel.width) + "x" +
          std::to_string(rec.kernel.height) + " does not fit frame " +
          std::to_string(fw) + "x" + std::to_string(fh) +
          "; reduce the line break threshold or the text size");
    }

    if (cfg.force_bottom_center) {
      rec.placement.position = {
          (fw - rec.kernel.width) / 2,
          std::max(0, fh - rec.kernel.height - cfg.baseline_margin_px)};
      rec.phrase = phrase;
      placed.push_back(std::move(rec));
      // bottom-center placement ignores masks and the E_prv chain
      continue;
    }

    PhraseContext ctx = build_phrase_context(rec.span, media.frames,
                                             media.focus, media.foreground);
    std::optional<PixelCoord> prev =
        effective_prev(prev_position, prev_shot, phrase.shot_index);

    PlacementMaps maps;
    try {
      rec.placement = place_phrase(ctx, rec.kernel, cfg.weights, prev, pcfg,
                                   dump_dir ? &maps : nullptr);
    } catch (const InputError& e) {
      throw InputError("phrase " + std::to_string(i) + " \"" +
                       phrase.joined_text() + "\": " + e.what());
    }
    if (dump_dir) dump_cost_maps(maps, *dump_dir, static_cast<int>(i));

    prev_position = rec.placement.position;
    prev_shot = phrase.shot_index;
    rec.phrase = phrase;
    placed.push_back(std::move(rec));
  }
  return placed;
}

namespace {

std::vector<LyricPhrase> build_phrases(const fs::path& words_file,
                                       const PipelineConfig& cfg,
                                       std::vector<std::string>& warnings) {
  std::ifstream in(words_file);
  if (!in) throw InputError("cannot open word timing file " +
                            words_file.string());
  WordTimingParse parsed = parse_word_timings(in);
  warnings.insert(warnings.end(), parsed.warnings.begin(),
                  parsed.warnings.end());
  if (parsed.words.empty()) {
    throw InputError("word timing file " + words_file.string() +
                     " contains no words");
  }
  std::vector<LyricPhrase> phrases =
      group_words_into_phrases(parsed.words, cfg.grouping);
  if (cfg.line_breaking) {
    int threshold = compute_line_break_threshold(
        phrases, cfg.grouping.line_break_threshold_override);
    for (LyricPhrase& p : phrases) p = break_phrase_lines(p, threshold);
  }
  return phrases;
}

}  // namespace

int run_pipeline(const PipelineConfig& config, const PipelineInputs& inputs,
                 const PipelineOutputs& outputs, std::ostream& log) {
  try {
    const PipelineConfig cfg = apply_mode(config);
    std::vector<std::string> warnings;

    // stage 1: lyric phrases + media
    std::vector<LyricPhrase> phrases =
        build_phrases(inputs.words_file, cfg, warnings);
    // stage 2 walks phrases in time order so each placement can feed the
    // next phrase's E_prv
    std::stable_sort(phrases.begin(), phrases.end(),
                     [](const LyricPhrase& a, const LyricPhrase& b) {
                       return a.t_in < b.t_in;
                     });
    MediaSequence media = load_sequence(inputs.frame_dir, inputs.focus_dir,
                                        inputs.foreground_dir, cfg.fps);
    warnings.insert(warnings.end(), media.warnings.begin(),
                    media.warnings.end());

    std::vector<Shot> shots;
    if (inputs.shot_file) {
      std::ifstream in(*inputs.shot_file);
      if (!in) {
        throw InputError("cannot open shot file " + inputs.shot_file->string());
      }
      shots = parse_shot_boundaries(in, static_cast<int>(media.frames.size()));
    } else {
      shots = detect_shots(media.frames, cfg.cut_threshold);
    }
    log << "loaded " << media.frames.size() << " frames, " << shots.size()
        << " shots, " << phrases.size() << " phrases (mode "
        << to_string(cfg.mode) << ")\n";
    for (const std::string& w : warnings) log << "warning: " << w << "\n";

    // stage 2: placement
    std::vector<PlacedPhraseRecord> placed =
        place_phrases(std::move(phrases), media, shots, cfg,
                      outputs.dump_dir, nullptr);
    for (std::size_t i = 0; i < placed.size(); ++i) {
      const PlacedPhraseRecord& r = placed[i];
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "phrase %zu shot %d pos (%d,%d) E_fcs=%.4f E_fgd=%.4f "
                    "E_cnt=%.4f E_prv=%.4f total=%.4f",
                    i, r.phrase.shot_index, r.placement.position.x,
                    r.placement.position.y, r.placement.e_fcs,
                    r.placement.e_fgd, r.placement.e_cnt, r.placement.e_prv,
                    r.placement.combined);
      log << buf << " \"" << r.phrase.joined_text() << "\"\n";
    }

    if (outputs.kernel_dump_dir) {
      fs::create_directories(*outputs.kernel_dump_dir);
      for (std::size_t i = 0; i < placed.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "kernel_%03zu.png", i);
        dump_kernel_png(placed[i].kernel, *outputs.kernel_dump_dir / name);
      }
    }

    // stage 3: plan + emitters
    std::vector<PhrasePlacement> for_plan;
    std::vector<TextKernel> kernels;
    for (PlacedPhraseRecord& r : placed) {
      PhrasePlacement pp;
      pp.phrase = std::move(r.phrase);
      pp.position = r.placement.position;
      pp.kernel_width = r.kernel.width;
      pp.kernel_height = r.kernel.height;
      for_plan.push_back(std::move(pp));
      kernels.push_back(std::move(r.kernel));
    }
    RenderPlan plan = assemble_plan(for_plan, cfg.style, cfg.anim,
                                    media.frames[0].width,
                                    media.frames[0].height, cfg.fps);

    if (outputs.json_path.has_parent_path()) {
      fs::create_directories(outputs.json_path.parent_path());
    }
    std::ofstream json_out(outputs.json_path, std::ios::binary);
    if (!json_out) {
      throw InputError("cannot write plan to " + outputs.json_path.string());
    }
    json_out << emit_json(plan);
    json_out.close();
    log << "wrote " << outputs.json_path.string() << "\n";

    if (outputs.ass_path) {
      std::ofstream ass_out(*outputs.ass_path, std::ios::binary);
      if (!ass_out) {
        throw InputError("cannot write ASS to " + outputs.ass_path->string());
      }
      ass_out << emit_ass(plan);
      ass_out.close();
      log << "wrote " << outputs.ass_path->string() << "\n";
    }

    if (outputs.overlay_dir) {
      render_overlay_frames(plan, media.frames, media.foreground, kernels,
                            *outputs.overlay_dir);
      log << "wrote " << media.frames.size() << " overlay frames to "
          << outputs.overlay_dir->string() << "\n";
    }
    return 0;
  } catch (const InputError& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    log << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace lyrplan
