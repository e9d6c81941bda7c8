/*
 * lyrplan - lyric video render planner
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include "lyrplan/render_plan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "lyrplan/error.hpp"
#include "lyrplan/png_io.hpp"

namespace lyrplan {

const char* to_string(PhraseAnimation v) {
  switch (v) {
    case PhraseAnimation::fade: return "fade";
    case PhraseAnimation::slide_up: return "slide_up";
    case PhraseAnimation::slide_down: return "slide_down";
    case PhraseAnimation::fade_slide_up: return "fade_slide_up";
    case PhraseAnimation::fade_slide_down: return "fade_slide_down";
  }
  return "fade";
}

const char* to_string(WordHighlight v) {
  switch (v) {
    case WordHighlight::fade: return "fade";
    case WordHighlight::slide_up: return "slide_up";
    case WordHighlight::slide_down: return "slide_down";
    case WordHighlight::accent_color: return "accent_color";
    case WordHighlight::none: return "none";
  }
  return "none";
}

const char* to_string(TextAlignment v) {
  return v == TextAlignment::left ? "left" : "center";
}

PhraseAnimation phrase_animation_from_string(const std::string& s) {
  if (s == "fade") return PhraseAnimation::fade;
  if (s == "slide_up") return PhraseAnimation::slide_up;
  if (s == "slide_down") return PhraseAnimation::slide_down;
  if (s == "fade_slide_up") return PhraseAnimation::fade_slide_up;
  if (s == "fade_slide_down") return PhraseAnimation::fade_slide_down;
  throw InputError("unknown phrase animation: " + s);
}

WordHighlight word_highlight_from_string(const std::string& s) {
  if (s == "fade") return WordHighlight::fade;
  if (s == "slide_up") return WordHighlight::slide_up;
  if (s == "slide_down") return WordHighlight::slide_down;
  if (s == "accent_color") return WordHighlight::accent_color;
  if (s == "none") return WordHighlight::none;
  throw InputError("unknown word highlight: " + s);
}

TextAlignment alignment_from_string(const std::string& s) {
  if (s == "left") return TextAlignment::left;
  if (s == "center") return TextAlignment::center;
  throw InputError("unknown alignment: " + s);
}

RenderPlan assemble_plan(const std::vector<PhrasePlacement>& placed,
                         const TextStyle& style, const AnimationSpec& anim,
                         int frame_width, int frame_height, double fps) {
  if (anim.pad_s < 0) throw InputError("animation pad must be >= 0");
  RenderPlan plan;
  plan.frame_width = frame_width;
  plan.frame_height = frame_height;
  plan.fps = fps;
  plan.style = style;
  plan.anim = anim;

  for (const PhrasePlacement& pp : placed) {
    if (!pp.position) {
      throw InputError("unplaced phrase \"" + pp.phrase.joined_text() + "\"");
    }
    PlannedPhrase out;
    out.lines = pp.phrase.lines;
    out.position = *pp.position;
    out.kernel_width = pp.kernel_width;
    out.kernel_height = pp.kernel_height;
    out.shot_index = pp.phrase.shot_index;
    out.t_in = pp.phrase.t_in;
    out.t_out = pp.phrase.t_out;
    out.display_in = std::max(0.0, pp.phrase.t_in - anim.pad_s);
    out.display_out = pp.phrase.t_out + anim.pad_s;
    for (const WordTiming& w : pp.phrase.words) {
      out.words.push_back({w.text, w.t_in, w.t_out});
    }
    if (out.position.x < 0 || out.position.y < 0 ||
        out.position.x + out.kernel_width > frame_width ||
        out.position.y + out.kernel_height > frame_height) {
      throw InputError("placement of phrase \"" + pp.phrase.joined_text() +
                       "\" leaves the frame");
    }
    plan.phrases.push_back(std::move(out));
  }
  std::stable_sort(plan.phrases.begin(), plan.phrases.end(),
                   [](const PlannedPhrase& a, const PlannedPhrase& b) {
                     return a.t_in < b.t_in;
                   });
  return plan;
}

namespace {

std::string fmt_seconds(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", t);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

std::string rgb_json(const Rgb& c) {
  return "[" + std::to_string(c[0]) + ", " + std::to_string(c[1]) + ", " +
         std::to_string(c[2]) + "]";
}

}  // namespace

std::string emit_json(const RenderPlan& plan) {
  std::string o;
  o += "{\n";
  o += "  \"version\": 1,\n";
  o += "  \"video\": { \"width\": " + std::to_string(plan.frame_width) +
       ", \"height\": " + std::to_string(plan.frame_height) +
       ", \"fps\": " + fmt_seconds(plan.fps) + " },\n";
  o += "  \"style\": { \"glyph_height_px\": " +
       std::to_string(plan.style.glyph_height_px) +
       ", \"color\": " + rgb_json(plan.style.color) +
       ", \"leading_px\": " + std::to_string(plan.style.leading_px) +
       ", \"alignment\": \"" + to_string(plan.style.alignment) + "\" },\n";
  o += "  \"animation\": { \"phrase_in_out\": \"" +
       std::string(to_string(plan.anim.phrase_in_out)) +
       "\", \"word_highlight\": \"" +
       std::string(to_string(plan.anim.word_highlight)) +
       "\", \"accent\": " + rgb_json(plan.anim.accent) +
       ", \"pad_s\": " + fmt_seconds(plan.anim.pad_s) + " },\n";
  if (plan.phrases.empty()) {
    o += "  \"phrases\": []\n";
  } else {
    o += "  \"phrases\": [\n";
    for (std::size_t i = 0; i < plan.phrases.size(); ++i) {
      const PlannedPhrase& p = plan.phrases[i];
      o += "    {\n";
      o += "      \"t_in\": " + fmt_seconds(p.t_in) + ",\n";
      o += "      \"t_out\": " + fmt_seconds(p.t_out) + ",\n";
      o += "      \"display_in\": " + fmt_seconds(p.display_in) + ",\n";
      o += "      \"display_out\": " + fmt_seconds(p.display_out) + ",\n";
      o += "      \"shot\": " + std::to_string(p.shot_index) + ",\n";
      o += "      \"x\": " + std::to_string(p.position.x) + ",\n";
      o += "      \"y\": " + std::to_string(p.position.y) + ",\n";
      o += "      \"kernel_width\": " + std::to_string(p.kernel_width) + ",\n";
      o += "      \"kernel_height\": " + std::to_string(p.kernel_height) + ",\n";
      o += "      \"lines\": [";
      for (std::size_t k = 0; k < p.lines.size(); ++k) {
        if (k > 0) o += ", ";
        o += "\"" + json_escape(p.lines[k]) + "\"";
      }
      o += "],\n";
      if (p.words.empty()) {
        o += "      \"words\": []\n";
      } else {
        o += "      \"words\": [\n";
        for (std::size_t k = 0; k < p.words.size(); ++k) {
          o += "        { \"text\": \"" + json_escape(p.words[k].text) +
               "\", \"t_in\": " + fmt_seconds(p.words[k].t_in) +
               ", \"t_out\": " + fmt_seconds(p.words[k].t_out) + " }";
          o += (k + 1 < p.words.size()) ? ",\n" : "\n";
        }
        o += "      ]\n";
      }
      o += (i + 1 < plan.phrases.size()) ? "    },\n" : "    }\n";
    }
    o += "  ]\n";
  }
  o += "}\n";
  return o;
}

RenderPlan parse_plan_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid plan JSON: ") + e.what());
  }
  try {
    RenderPlan plan;
    plan.frame_width = j.at("video").at("width").get<int>();
    plan.frame_height = j.at("video").at("height").get<int>();
    plan.fps = j.at("video").at("fps").get<double>();
    const auto& style = j.at("style");
    plan.style.glyph_height_px = style.at("glyph_height_px").get<int>();
    auto color = style.at("color");
    plan.style.color = {color.at(0).get<std::uint8_t>(),
                        color.at(1).get<std::uint8_t>(),
                        color.at(2).get<std::uint8_t>()};
    plan.style.leading_px = style.at("leading_px").get<int>();
    plan.style.alignment =
        alignment_from_string(style.at("alignment").get<std::string>());
    const auto& anim = j.at("animation");
    plan.anim.phrase_in_out = phrase_animation_from_string(
        anim.at("phrase_in_out").get<std::string>());
    plan.anim.word_highlight = word_highlight_from_string(
        anim.at("word_highlight").get<std::string>());
    auto accent = anim.at("accent");
    plan.anim.accent = {accent.at(0).get<std::uint8_t>(),
                        accent.at(1).get<std::uint8_t>(),
                        accent.at(2).get<std::uint8_t>()};
    plan.anim.pad_s = anim.at("pad_s").get<double>();

    for (const auto& jp : j.at("phrases")) {
      PlannedPhrase p;
      p.t_in = jp.at("t_in").get<double>();
      p.t_out = jp.at("t_out").get<double>();
      p.display_in = jp.at("display_in").get<double>();
      p.display_out = jp.at("display_out").get<double>();
      p.shot_index = jp.at("shot").get<int>();
      p.position.x = jp.at("x").get<int>();
      p.position.y = jp.at("y").get<int>();
      p.kernel_width = jp.at("kernel_width").get<int>();
      p.kernel_height = jp.at("kernel_height").get<int>();
      for (const auto& line : jp.at("lines")) {
        p.lines.push_back(line.get<std::string>());
      }
      for (const auto& jw : jp.at("words")) {
        p.words.push_back({jw.at("text").get<std::string>(),
                           jw.at("t_in").get<double>(),
                           jw.at("t_out").get<double>()});
      }
      plan.phrases.push_back(std::move(p));
    }

    for (std::size_t i = 0; i + 1 < plan.phrases.size(); ++i) {
      if (plan.phrases[i].t_in > plan.phrases[i + 1].t_in) {
        throw InputError("plan phrases are not ordered by t_in");
      }
    }
    for (const PlannedPhrase& p : plan.phrases) {
      if (p.position.x < 0 || p.position.y < 0 ||
          p.position.x + p.kernel_width > plan.frame_width ||
          p.position.y + p.kernel_height > plan.frame_height) {
        throw InputError("plan placement leaves the frame");
      }
    }
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("plan JSON missing or mistyped field: ") +
                     e.what());
  }
}

namespace {

long long to_cs(double seconds) {
  return std::llround(seconds * 100.0);
}

std::string fmt_ass_time(double seconds) {
  long long cs = to_cs(seconds);
  if (cs < 0) cs = 0;
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%lld:%02lld:%02lld.%02lld", cs / 360000,
                (cs / 6000) % 60, (cs / 100) % 60, cs % 100);
  return buf;
}

std::string ass_color(const Rgb& c) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "&H00%02X%02X%02X", c[2], c[1], c[0]);
  return buf;
}

std::vector<std::size_t> words_per_line(const PlannedPhrase& p) {
  std::vector<std::size_t> counts;
  std::size_t total = 0;
  for (const std::string& line : p.lines) {
    std::size_t n = 0;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) ++n;
    counts.push_back(n);
    total += n;
  }
  if (total != p.words.size()) {
    throw InputError("phrase lines do not match its word list");
  }
  return counts;
}

}  // namespace

std::string emit_ass(const RenderPlan& plan) {
  const Rgb primary = plan.anim.word_highlight == WordHighlight::accent_color
                          ? plan.anim.accent
                          : plan.style.color;
  const Rgb secondary = plan.style.color;

  std::string o;
  o += "[Script Info]\n";
  o += "ScriptType: v4.00+\n";
  o += "PlayResX: " + std::to_string(plan.frame_width) + "\n";
  o += "PlayResY: " + std::to_string(plan.frame_height) + "\n";
  o += "WrapStyle: 2\n";
  o += "ScaledBorderAndShadow: yes\n";
  o += "\n";
  o += "[V4+ Styles]\n";
  o += "Format: Name, Fontname, Fontsize, PrimaryColour, SecondaryColour, "
       "OutlineColour, BackColour, Bold, Italic, Underline, StrikeOut, "
       "ScaleX, ScaleY, Spacing, Angle, BorderStyle, Outline, Shadow, "
       "Alignment, MarginL, MarginR, MarginV, Encoding\n";
  o += "Style: Lyric,Arial," + std::to_string(plan.style.glyph_height_px) +
       "," + ass_color(primary) + "," + ass_color(secondary) +
       ",&H00000000,&H00000000,0,0,0,0,100,100,0,0,1,0,0,7,0,0,0,1\n";
  o += "\n";
  o += "[Events]\n";
  o += "Format: Layer, Start, End, Style, Name, MarginL, MarginR, MarginV, "
       "Effect, Text\n";

  for (const PlannedPhrase& p : plan.phrases) {
    std::string text = "{\\pos(" + std::to_string(p.position.x) + "," +
                       std::to_string(p.position.y) + ")}{\\an7}";
    if (!p.words.empty()) {
      // lead-in pad keeps word onsets at their true in times
      long long lead = to_cs(p.words.front().t_in) - to_cs(p.display_in);
      if (lead > 0) text += "{\\k" + std::to_string(lead) + "}";
      const std::vector<std::size_t> line_words = words_per_line(p);
      std::size_t w = 0;
      for (std::size_t li = 0; li < line_words.size(); ++li) {
        for (std::size_t k = 0; k < line_words[li]; ++k, ++w) {
          // inter-word silence extends the previous word; the final word
          // keeps its own duration and the tail pad stays unhighlighted
          long long dur =
              (w + 1 < p.words.size())
                  ? to_cs(p.words[w + 1].t_in) - to_cs(p.words[w].t_in)
                  : to_cs(p.words[w].t_out) - to_cs(p.words[w].t_in);
          if (dur < 0) dur = 0;  // overlapping word timings
          text += "{\\k" + std::to_string(dur) + "}" + p.words[w].text;
          if (k + 1 < line_words[li]) text += " ";
        }
        if (li + 1 < line_words.size()) text += "\\N";
      }
    }
    o += "Dialogue: 0," + fmt_ass_time(p.display_in) + "," +
         fmt_ass_time(p.display_out) + ",Lyric,,0,0,0,," + text + "\n";
  }
  return o;
}

Frame render_overlay_frame(const RenderPlan& plan, const Frame& frame,
                           const MaskFrame& foreground,
                           const std::vector<TextKernel>& kernels,
                           int frame_index) {
  if (foreground.width != frame.width || foreground.height != frame.height) {
    throw InputError("foreground mask does not match frame dimensions");
  }
  if (kernels.size() != plan.phrases.size()) {
    throw InputError("kernel list does not match plan phrases");
  }
  const double t = frame_index / plan.fps;

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < plan.phrases.size(); ++i) {
    if (t >= plan.phrases[i].display_in && t < plan.phrases[i].display_out) {
      active.push_back(i);
    }
  }
  if (active.empty()) return frame;

  const std::size_t n = static_cast<std::size_t>(frame.width) * frame.height;
  std::vector<double> comp(frame.pixels.begin(), frame.pixels.end());

  for (std::size_t idx : active) {
    const PlannedPhrase& p = plan.phrases[idx];
    const TextKernel& k = kernels[idx];
    if (k.width != p.kernel_width || k.height != p.kernel_height) {
      throw InputError("kernel dimensions do not match the plan");
    }
    int sung = -1;
    if (plan.anim.word_highlight == WordHighlight::accent_color) {
      for (std::size_t w = 0; w < p.words.size(); ++w) {
        if (t >= p.words[w].t_in && t < p.words[w].t_out) {
          sung = static_cast<int>(w);
          break;
        }
      }
    }
    for (int ky = 0; ky < k.height; ++ky) {
      for (int kx = 0; kx < k.width; ++kx) {
        float cov = k.at(kx, ky);
        if (cov <= 0.0f) continue;
        Rgb color = plan.style.color;
        if (sung >= 0 &&
            static_cast<std::size_t>(sung) < k.word_boxes.size() &&
            k.word_boxes[sung].contains(kx, ky)) {
          color = plan.anim.accent;
        }
        int x = p.position.x + kx;
        int y = p.position.y + ky;
        if (x < 0 || x >= frame.width || y < 0 || y >= frame.height) continue;
        std::size_t off = (static_cast<std::size_t>(y) * frame.width + x) * 3;
        for (int c = 0; c < 3; ++c) {
          comp[off + c] = (1.0 - cov) * comp[off + c] + cov * color[c];
        }
      }
    }
  }

  Frame out = frame;
  for (std::size_t p = 0; p < n; ++p) {
    double s = foreground.values[p];
    for (int c = 0; c < 3; ++c) {
      double v = s * frame.pixels[p * 3 + c] + (1.0 - s) * comp[p * 3 + c];
      out.pixels[p * 3 + c] =
          static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
    }
  }
  return out;
}

void render_overlay_frames(const RenderPlan& plan,
                           const std::vector<Frame>& frames,
                           const std::vector<MaskFrame>& foreground,
                           const std::vector<TextKernel>& kernels,
                           const std::filesystem::path& out_dir) {
  if (frames.size() != foreground.size()) {
    throw InputError("frame and mask sequences differ in length");
  }
  std::filesystem::create_directories(out_dir);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    Frame out = render_overlay_frame(plan, frames[i], foreground[i], kernels,
                                     static_cast<int>(i));
    char name[16];
    std::snprintf(name, sizeof(name), "%06zu.png", i);
    write_rgb8_png(out_dir / name, out);
  }
}

}  // namespace lyrplan
