/*
 * lyrplan - lyric video render planner
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lyrplan/error.hpp"
#include "lyrplan/placement.hpp"
#include "placement_oracle.hpp"

using namespace lyrplan;

namespace {

TextKernel kernel_of(int w, int h, float fill = 1.0f) {
  TextKernel k;
  k.width = w;
  k.height = h;
  k.coverage.assign(static_cast<std::size_t>(w) * h, fill);
  return k;
}

Grid random_grid(int w, int h, std::mt19937& rng, double lo = 0.0,
                 double hi = 1.0) {
  Grid g(w, h);
  std::uniform_real_distribution<double> u(lo, hi);
  for (double& v : g.values) v = u(rng);
  return g;
}

TextKernel random_kernel(int w, int h, std::mt19937& rng) {
  TextKernel k = kernel_of(w, h, 0.0f);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  for (auto& v : k.coverage) v = u(rng);
  k.coverage[0] = 1.0f;  // keep the kernel nonzero
  return k;
}

CorrelationPolicy direct_policy() {
  CorrelationPolicy p;
  p.backend = CorrelationBackend::direct;
  return p;
}

CorrelationPolicy fft_policy() {
  CorrelationPolicy p;
  p.backend = CorrelationBackend::transform;
  return p;
}

PhraseContext context_of(Grid focus, Grid fgd, Image3f bg) {
  PhraseContext ctx;
  ctx.avg_focus = std::move(focus);
  ctx.avg_foreground = std::move(fgd);
  ctx.avg_background = std::move(bg);
  ctx.frame_span = {0, 0};
  return ctx;
}

}  // namespace

TEST_CASE("identity kernel reproduces the image") {
  std::mt19937 rng(1);
  Grid img = random_grid(7, 5, rng);
  CostMap out = cross_correlate(img, kernel_of(1, 1), direct_policy());
  REQUIRE(out.width == 7);
  REQUIRE(out.height == 5);
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 7; ++x) {
      CHECK(out.at(x, y) == img.at(x, y));
    }
  }
}

TEST_CASE("window sums over a point image") {
  Grid img(3, 3, 0.0);
  img.at(1, 1) = 1.0;
  CostMap out = cross_correlate(img, kernel_of(2, 2), direct_policy());
  REQUIRE(out.width == 2);
  REQUIRE(out.height == 2);
  for (double v : out.values) CHECK(v == 1.0);  // every window covers center
}

TEST_CASE("kernel larger than image is an error") {
  Grid img(3, 3, 0.0);
  CHECK_THROWS_AS(cross_correlate(img, kernel_of(4, 2), direct_policy()),
                  InputError);
}

TEST_CASE("transform path agrees with the direct path") {
  std::mt19937 rng(2);
  for (int iter = 0; iter < 8; ++iter) {
    Grid img = random_grid(64, 64, rng);
    TextKernel k = iter % 2 == 0 ? random_kernel(9, 17, rng)
                                 : random_kernel(17, 9, rng);
    CostMap a = cross_correlate(img, k, direct_policy());
    CostMap b = cross_correlate(img, k, fft_policy());
    REQUIRE(a.width == b.width);
    REQUIRE(a.height == b.height);
    double max_diff = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      max_diff = std::max(max_diff, std::abs(a.values[i] - b.values[i]));
    }
    CHECK(max_diff <= 1e-6);
  }
}

TEST_CASE("automatic backend picks by area product") {
  std::mt19937 rng(3);
  Grid img = random_grid(32, 32, rng);
  TextKernel k = random_kernel(4, 4, rng);
  CorrelationPolicy tiny;
  tiny.crossover = 1;  // force transform
  CostMap via_fft = cross_correlate(img, k, tiny);
  CostMap via_direct = cross_correlate(img, k, direct_policy());
  for (std::size_t i = 0; i < via_fft.values.size(); ++i) {
    CHECK(std::abs(via_fft.values[i] - via_direct.values[i]) <= 1e-6);
  }
}

TEST_CASE("focus center of a point mass") {
  Grid focus(8, 6, 0.0);
  focus.at(3, 2) = 1.0;
  CenterOfMass c = focus_center(focus);
  CHECK(c.x == 3.0);
  CHECK(c.y == 2.0);
  CostMap map = energy_fcs(focus, 5, 4, AnchorMode::upper_left, 4, 3);
  CHECK(map.at(3, 2) == 0.0);

  focus.at(3, 2) = 0.7;  // fractional intensity keeps the same center
  c = focus_center(focus);
  CHECK(c.x == doctest::Approx(3.0));
  CHECK(c.y == doctest::Approx(2.0));
}

TEST_CASE("focus center of a uniform mask is the raster center") {
  Grid focus(9, 5, 0.4);
  CenterOfMass c = focus_center(focus);
  CHECK(c.x == doctest::Approx(4.0));
  CHECK(c.y == doctest::Approx(2.0));
}

TEST_CASE("empty focus mask falls back to the frame center") {
  Grid focus(8, 6, 0.0);
  CenterOfMass c = focus_center(focus);
  CHECK(c.x == doctest::Approx(3.5));
  CHECK(c.y == doctest::Approx(2.5));
}

TEST_CASE("focus center matches the weighted-mean oracle") {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> coord(0, 15);
  for (int iter = 0; iter < 50; ++iter) {
    Grid focus(16, 16, 0.0);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    for (int i = 0; i < 5; ++i) focus.at(coord(rng), coord(rng)) = u(rng);
    double total = 0, sx = 0, sy = 0;
    for (int y = 0; y < 16; ++y) {
      for (int x = 0; x < 16; ++x) {
        total += focus.at(x, y);
        sx += focus.at(x, y) * x;
        sy += focus.at(x, y) * y;
      }
    }
    CenterOfMass c = focus_center(focus);
    CHECK(std::abs(c.x - sx / total) <= 1e-9);
    CHECK(std::abs(c.y - sy / total) <= 1e-9);
  }
}

TEST_CASE("center anchor shifts the distance field by half the kernel") {
  Grid focus(10, 10, 0.0);
  focus.at(5, 5) = 1.0;
  CostMap ul = energy_fcs(focus, 7, 7, AnchorMode::upper_left, 4, 4);
  CostMap ctr = energy_fcs(focus, 7, 7, AnchorMode::center, 4, 4);
  CHECK(ul.at(5, 5) == 0.0);
  CHECK(ctr.at(3, 3) == 0.0);  // 3 + 4/2 = 5
}

TEST_CASE("foreground energy basics") {
  TextKernel k = kernel_of(3, 2, 1.0f);

  Grid zeros(8, 8, 0.0);
  CostMap none = energy_fgd(zeros, k, direct_policy());
  for (double v : none.values) CHECK(v == 0.0);

  Grid ones(8, 8, 1.0);
  CostMap full = energy_fgd(ones, k, direct_policy());
  for (double v : full.values) CHECK(v == 6.0);  // kernel sum
}

TEST_CASE("foreground energy matches the window-sum oracle") {
  std::mt19937 rng(5);
  Grid fgd = random_grid(20, 14, rng);
  TextKernel k = random_kernel(5, 4, rng);
  CostMap got = energy_fgd(fgd, k, direct_policy());
  oracle::Map expected = oracle::fgd_map(fgd, k);
  REQUIRE(got.width == expected.w);
  for (int y = 0; y < got.height; ++y) {
    for (int x = 0; x < got.width; ++x) {
      CHECK(std::abs(got.at(x, y) - expected.at(x, y)) <= 1e-9);
    }
  }
}

TEST_CASE("contrast energy is flat when the surround is uniform") {
  Image3f black(12, 10);  // all zeros
  TextKernel k = kernel_of(3, 3, 1.0f);
  k.coverage[4] = 0.0f;  // hollow center so 1-k has interior support
  CostMap c = energy_cnt(black, {255, 255, 255}, k, 2, direct_policy());
  for (double v : c.values) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("contrast energy is zero when background equals the text color") {
  Image3f bg(12, 10);
  for (std::size_t p = 0; p < bg.values.size(); ++p) bg.values[p] = 200.0;
  TextKernel k = kernel_of(4, 3, 1.0f);
  CostMap c = energy_cnt(bg, {200, 200, 200}, k, 2, direct_policy());
  for (double v : c.values) CHECK(v == 0.0);
}

TEST_CASE("contrast energy prefers dark surrounds for white text") {
  Image3f bg(16, 16);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) {
      double v = x < 8 ? 0.0 : 255.0;  // left black, right white
      for (int c = 0; c < 3; ++c) bg.at(x, y, c) = v;
    }
  }
  TextKernel k = kernel_of(3, 3, 1.0f);
  k.coverage[4] = 0.0f;
  CostMap c = energy_cnt(bg, {255, 255, 255}, k, 1, direct_policy());
  CHECK(c.at(1, 7) < c.at(10, 7));

  // and the whole map matches the independent windowed-sum oracle
  oracle::Map expected = oracle::cnt_map(bg, {255, 255, 255}, k, 1);
  REQUIRE(c.width == expected.w);
  for (int y = 0; y < c.height; ++y) {
    for (int x = 0; x < c.width; ++x) {
      CHECK(std::abs(c.at(x, y) - expected.at(x, y)) <= 1e-9);
    }
  }
}

TEST_CASE("all-ones kernel with margin zero gives a flat zero map") {
  std::mt19937 rng(6);
  Image3f bg(10, 8);
  std::uniform_real_distribution<double> u(0.0, 255.0);
  for (double& v : bg.values) v = u(rng);
  CostMap c = energy_cnt(bg, {255, 255, 255}, kernel_of(3, 3, 1.0f), 0,
                         direct_policy());
  for (double v : c.values) CHECK(v == 0.0);
}

TEST_CASE("previous-phrase energy") {
  CostMap zero = energy_prv(std::nullopt, 4, 4);
  for (double v : zero.values) CHECK(v == 0.0);

  CostMap self = energy_prv(PixelCoord{10, 20}, 30, 30);
  CHECK(self.at(10, 20) == 0.0);

  CostMap small = energy_prv(PixelCoord{0, 0}, 3, 3);
  const double r2 = std::sqrt(2.0), r5 = std::sqrt(5.0), r8 = std::sqrt(8.0);
  CHECK(small.at(0, 0) == 0.0);
  CHECK(small.at(1, 0) == 1.0);
  CHECK(small.at(2, 0) == 2.0);
  CHECK(small.at(0, 1) == 1.0);
  CHECK(small.at(1, 1) == doctest::Approx(r2));
  CHECK(small.at(2, 1) == doctest::Approx(r5));
  CHECK(small.at(0, 2) == 2.0);
  CHECK(small.at(1, 2) == doctest::Approx(r5));
  CHECK(small.at(2, 2) == doctest::Approx(r8));
}

TEST_CASE("normalize_map") {
  CostMap m(3, 1);
  m.values = {0.0, 5.0, 10.0};
  CostMap n = normalize_map(m);
  CHECK(n.values == std::vector<double>{0.0, 0.5, 1.0});

  CostMap flat(4, 2, 3.3);
  for (double v : normalize_map(flat).values) CHECK(v == 0.0);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-4.0, 9.0);
  CostMap r(6, 6);
  for (double& v : r.values) v = u(rng);
  CostMap rn = normalize_map(r);
  double lo = 2, hi = -1;
  for (double v : rn.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo == 0.0);
  CHECK(hi == 1.0);
}

TEST_CASE("place_phrase honors a lone prv weight") {
  std::mt19937 rng(8);
  PhraseContext ctx = context_of(random_grid(24, 20, rng),
                                 random_grid(24, 20, rng), Image3f(24, 20));
  TextKernel k = kernel_of(5, 4, 1.0f);
  EnergyWeights w{0, 0, 0, 1};
  PlacementConfig cfg;
  cfg.correlation = direct_policy();
  PlacementResult r =
      place_phrase(ctx, k, w, PixelCoord{10, 12}, cfg, nullptr);
  CHECK(r.position == PixelCoord{10, 12});
  CHECK(r.combined == 0.0);
}

TEST_CASE("place_phrase honors a lone fcs weight") {
  Grid focus(24, 20, 0.0);
  focus.at(7, 9) = 1.0;
  PhraseContext ctx = context_of(std::move(focus), Grid(24, 20, 0.0),
                                 Image3f(24, 20));
  TextKernel k = kernel_of(5, 4, 1.0f);
  EnergyWeights w{1, 0, 0, 0};
  PlacementConfig cfg;
  cfg.correlation = direct_policy();
  PlacementResult r = place_phrase(ctx, k, w, std::nullopt, cfg, nullptr);
  CHECK(r.position == PixelCoord{7, 9});
}

TEST_CASE("place_phrase matches the exhaustive oracle") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> fdim(12, 32), kdim(2, 8);
  std::uniform_real_distribution<double> wdist(0.0, 3.0);
  std::uniform_int_distribution<int> byte(0, 255);
  for (int iter = 0; iter < 25; ++iter) {
    int fw = fdim(rng), fh = fdim(rng);
    int kw = kdim(rng), kh = kdim(rng);
    PhraseContext ctx;
    ctx.avg_focus = random_grid(fw, fh, rng);
    ctx.avg_foreground = random_grid(fw, fh, rng);
    ctx.avg_background = Image3f(fw, fh);
    for (double& v : ctx.avg_background.values) v = byte(rng);
    TextKernel k = random_kernel(kw, kh, rng);
    EnergyWeights w{wdist(rng), wdist(rng), wdist(rng), wdist(rng)};
    if (w.fcs + w.fgd + w.cnt + w.prv == 0.0) w.fcs = 1.0;
    std::optional<PixelCoord> prev;
    if (iter % 2 == 0) {
      prev = PixelCoord{iter % (fw - kw + 1), iter % (fh - kh + 1)};
    }
    PlacementConfig cfg;
    cfg.correlation = direct_policy();
    PlacementResult r = place_phrase(ctx, k, w, prev, cfg, nullptr);
    PixelCoord expected =
        oracle::place_argmin(ctx, k, w, prev, cfg.surround_margin);
    CHECK(r.position == expected);
    CHECK(r.position.x >= 0);
    CHECK(r.position.x <= fw - kw);
    CHECK(r.position.y >= 0);
    CHECK(r.position.y <= fh - kh);
  }
}

TEST_CASE("fgd-only placement touches the least foreground everywhere") {
  std::mt19937 rng(12);
  for (int iter = 0; iter < 20; ++iter) {
    PhraseContext ctx = context_of(random_grid(20, 16, rng),
                                   random_grid(20, 16, rng), Image3f(20, 16));
    TextKernel k = random_kernel(5, 4, rng);
    PlacementConfig cfg;
    cfg.correlation = direct_policy();
    PlacementResult r = place_phrase(ctx, k, EnergyWeights{0, 1, 0, 0},
                                     std::nullopt, cfg, nullptr);
    // independent overlap sums at every valid position
    double best = 0.0;
    for (int i = 0; i < k.height; ++i) {
      for (int j = 0; j < k.width; ++j) {
        best += ctx.avg_foreground.at(r.position.x + j, r.position.y + i) *
                k.at(j, i);
      }
    }
    for (int y = 0; y + k.height <= 16; ++y) {
      for (int x = 0; x + k.width <= 20; ++x) {
        double o = 0.0;
        for (int i = 0; i < k.height; ++i) {
          for (int j = 0; j < k.width; ++j) {
            o += ctx.avg_foreground.at(x + j, y + i) * k.at(j, i);
          }
        }
        CHECK(best <= o + 1e-12);
      }
    }
  }
}

TEST_CASE("weight scaling leaves the argmin unchanged") {
  std::mt19937 rng(10);
  PhraseContext ctx;
  ctx.avg_focus = random_grid(28, 22, rng);
  ctx.avg_foreground = random_grid(28, 22, rng);
  ctx.avg_background = Image3f(28, 22);
  std::uniform_int_distribution<int> byte(0, 255);
  for (double& v : ctx.avg_background.values) v = byte(rng);
  TextKernel k = random_kernel(6, 5, rng);
  PlacementConfig cfg;
  cfg.correlation = direct_policy();
  EnergyWeights w{1.0, 0.7, 1.3, 0.4};
  PlacementResult base =
      place_phrase(ctx, k, w, PixelCoord{3, 3}, cfg, nullptr);
  for (double c : {0.5, 2.0, 10.0}) {
    EnergyWeights scaled{w.fcs * c, w.fgd * c, w.cnt * c, w.prv * c};
    PlacementResult r =
        place_phrase(ctx, k, scaled, PixelCoord{3, 3}, cfg, nullptr);
    CHECK(r.position == base.position);
  }
}

TEST_CASE("place_phrase rejects oversized kernels and bad weights") {
  PhraseContext ctx = context_of(Grid(10, 10, 0.0), Grid(10, 10, 0.0),
                                 Image3f(10, 10));
  PlacementConfig cfg;
  CHECK_THROWS_AS(place_phrase(ctx, kernel_of(11, 3, 1.0f), EnergyWeights{},
                               std::nullopt, cfg, nullptr),
                  InputError);
  CHECK_THROWS_AS(place_phrase(ctx, kernel_of(3, 3, 1.0f),
                               EnergyWeights{0, 0, 0, 0}, std::nullopt, cfg,
                               nullptr),
                  InputError);
  CHECK_THROWS_AS(place_phrase(ctx, kernel_of(3, 3, 1.0f),
                               EnergyWeights{-1, 1, 1, 1}, std::nullopt, cfg,
                               nullptr),
                  InputError);
}

TEST_CASE("place_phrase reports maps whose minimum is the chosen position") {
  std::mt19937 rng(11);
  PhraseContext ctx;
  ctx.avg_focus = random_grid(20, 16, rng);
  ctx.avg_foreground = random_grid(20, 16, rng);
  ctx.avg_background = Image3f(20, 16);
  std::uniform_int_distribution<int> byte(0, 255);
  for (double& v : ctx.avg_background.values) v = byte(rng);
  TextKernel k = random_kernel(4, 4, rng);
  PlacementConfig cfg;
  cfg.correlation = direct_policy();
  PlacementMaps maps;
  PlacementResult r = place_phrase(ctx, k, EnergyWeights{}, PixelCoord{2, 2},
                                   cfg, &maps);
  double min_v = maps.combined.values[0];
  for (double v : maps.combined.values) min_v = std::min(min_v, v);
  CHECK(maps.combined.at(r.position.x, r.position.y) == min_v);
  CHECK(r.combined == min_v);
}
