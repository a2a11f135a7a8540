#include "qrsteg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qrsteg/error.hpp"

namespace qrsteg {

namespace {

std::uint8_t clamp_byte(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

void gradient_frame(FrameYuv420& f, std::size_t t, std::uint64_t seed) {
  SplitMixSource rng(derive_seed(seed, 0x4752414400000000ULL, t));
  const double phase = static_cast<double>(seed % 1000) / 1000.0 * 2.0 * std::numbers::pi;
  const double drift = static_cast<double>(t) * 0.7;
  const double w = static_cast<double>(f.width);
  const double h = static_cast<double>(f.height);
  for (std::size_t r = 0; r < f.height; ++r) {
    for (std::size_t c = 0; c < f.width; ++c) {
      const double x = (static_cast<double>(c) + drift) / w;
      const double y = static_cast<double>(r) / h;
      const double base = 40.0 + 150.0 * (0.55 * x + 0.45 * y);
      const double wave = 25.0 * std::sin(2.0 * std::numbers::pi * (1.3 * x + 0.8 * y) + phase) +
                          12.0 * std::sin(2.0 * std::numbers::pi * (5.1 * x - 3.7 * y) + 2.0 * phase);
      const double texture = 6.0 * (rng.next_unit() - 0.5);
      f.y[r * f.width + c] = clamp_byte(base + wave + texture);
    }
  }
  const std::size_t cw = f.chroma_width();
  for (std::size_t r = 0; r < f.chroma_height(); ++r) {
    for (std::size_t c = 0; c < cw; ++c) {
      const double x = (static_cast<double>(c) + drift / 2.0) / static_cast<double>(cw);
      const double y = static_cast<double>(r) / static_cast<double>(f.chroma_height());
      f.u[r * cw + c] = clamp_byte(128.0 + 30.0 * std::sin(2.0 * std::numbers::pi * x + phase) + 4.0 * (rng.next_unit() - 0.5));
      f.v[r * cw + c] = clamp_byte(128.0 + 30.0 * std::cos(2.0 * std::numbers::pi * y + phase) + 4.0 * (rng.next_unit() - 0.5));
    }
  }
}

void noise_frame(FrameYuv420& f, std::size_t t, std::uint64_t seed) {
  SplitMixSource rng(derive_seed(seed, 0x4E4F495300000000ULL, t));
  for (auto* plane : {&f.y, &f.u, &f.v}) {
    for (auto& s : *plane) s = static_cast<std::uint8_t>(rng.below(256));
  }
}

void moving_block_frame(FrameYuv420& f, std::size_t t, std::uint64_t seed) {
  const std::uint8_t background = static_cast<std::uint8_t>(48 + seed % 32);
  std::fill(f.y.begin(), f.y.end(), background);
  std::fill(f.u.begin(), f.u.end(), 110);
  std::fill(f.v.begin(), f.v.end(), 150);
  const std::size_t side = std::max<std::size_t>(2, std::min(f.width, f.height) / 4);
  const std::size_t span_x = f.width - side + 1;
  const std::size_t span_y = f.height - side + 1;
  const std::size_t x0 = (t * 3 + seed) % span_x;
  const std::size_t y0 = (t * 2 + seed / 7) % span_y;
  for (std::size_t r = y0; r < y0 + side; ++r) {
    for (std::size_t c = x0; c < x0 + side; ++c) f.y[r * f.width + c] = 220;
  }
  for (std::size_t r = y0 / 2; r < (y0 + side) / 2; ++r) {
    for (std::size_t c = x0 / 2; c < (x0 + side) / 2; ++c) f.u[r * f.chroma_width() + c] = 90;
  }
}

void draw_finder(std::vector<std::uint8_t>& grid, std::size_t n, std::size_t top, std::size_t left) {
  for (std::size_t r = 0; r < 7; ++r) {
    for (std::size_t c = 0; c < 7; ++c) {
      const bool ring = r == 0 || r == 6 || c == 0 || c == 6;
      const bool core = r >= 2 && r <= 4 && c >= 2 && c <= 4;
      grid[(top + r) * n + left + c] = (ring || core) ? 1 : 0;
    }
  }
  // Separator around the finder stays light.
  for (std::size_t i = 0; i < 8; ++i) {
    const std::size_t sep_r = top == 0 ? 7 : top - 1;
    const std::size_t sep_c = left == 0 ? 7 : left - 1;
    const std::size_t along_c = left == 0 ? i : left - 1 + i;
    const std::size_t along_r = top == 0 ? i : top - 1 + i;
    if (along_c < n) grid[sep_r * n + along_c] = 0;
    if (along_r < n) grid[along_r * n + sep_c] = 0;
  }
}

}  // namespace

SynthPattern parse_synth_pattern(std::string_view name) {
  if (name == "gradient") return SynthPattern::gradient;
  if (name == "noise") return SynthPattern::noise;
  if (name == "moving-block" || name == "moving_block") return SynthPattern::moving_block;
  throw Error(Errc::usage, "unknown synthetic pattern '" + std::string(name) + "'");
}

FrameYuv420 synth_frame(SynthPattern pattern, std::size_t width, std::size_t height, std::size_t frame_index,
                        std::uint64_t seed) {
  FrameYuv420 f(width, height);
  f.check();
  switch (pattern) {
    case SynthPattern::gradient: gradient_frame(f, frame_index, seed); break;
    case SynthPattern::noise: noise_frame(f, frame_index, seed); break;
    case SynthPattern::moving_block: moving_block_frame(f, frame_index, seed); break;
  }
  return f;
}

std::vector<FrameYuv420> synth_video(SynthPattern pattern, std::size_t width, std::size_t height,
                                     std::size_t frames, std::uint64_t seed) {
  std::vector<FrameYuv420> out;
  out.reserve(frames);
  for (std::size_t t = 0; t < frames; ++t) out.push_back(synth_frame(pattern, width, height, t, seed));
  return out;
}

QrPlane synth_qr(std::size_t width, std::size_t height, std::uint64_t seed, std::size_t modules) {
  if (width == 0 || height == 0) throw Error(Errc::shape, "QR plane needs positive dimensions");
  const std::size_t n = std::max<std::size_t>(modules, 21);
  SplitMixSource rng(derive_seed(seed, 0x5152000000000000ULL, n));

  std::vector<std::uint8_t> grid(n * n);
  for (auto& m : grid) m = static_cast<std::uint8_t>(rng.below(2));
  for (std::size_t i = 8; i + 8 < n; ++i) {
    grid[6 * n + i] = (i % 2 == 0) ? 1 : 0;
    grid[i * n + 6] = (i % 2 == 0) ? 1 : 0;
  }
  draw_finder(grid, n, 0, 0);
  draw_finder(grid, n, 0, n - 7);
  draw_finder(grid, n, n - 7, 0);

  // Four-module quiet zone on every side.
  const std::size_t total = n + 8;
  const std::size_t scale = std::max<std::size_t>(1, std::min(width, height) / total);
  const std::size_t off_x = (width - std::min(width, total * scale)) / 2;
  const std::size_t off_y = (height - std::min(height, total * scale)) / 2;

  QrPlane plane{width, height, BitVector(width * height, 0)};
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      if (r < off_y || c < off_x) continue;
      const std::size_t mr = (r - off_y) / scale;
      const std::size_t mc = (c - off_x) / scale;
      if (mr < 4 || mc < 4 || mr >= n + 4 || mc >= n + 4) continue;
      plane.bits[r * width + c] = grid[(mr - 4) * n + (mc - 4)];
    }
  }
  return plane;
}

QrSet synth_qr_set(std::size_t width, std::size_t height, std::uint64_t seed) {
  // Versions 4, 3, 2, 1: higher grades carry less data in the same symbol area.
  constexpr std::array<std::size_t, kLevelCount> modules{33, 29, 25, 21};
  QrSet set;
  for (Level level : kLevels) {
    set[index_of(level)] = synth_qr(width, height, seed * kLevelCount + index_of(level), modules[index_of(level)]);
  }
  return set;
}

}  // namespace qrsteg
