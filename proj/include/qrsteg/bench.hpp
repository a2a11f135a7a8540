#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "qrsteg/attacks.hpp"
#include "qrsteg/stego.hpp"

namespace qrsteg {

/// The attack list of the robustness table, in row order.
std::vector<AttackSpec> default_attack_suite();

struct BenchConfig {
  StegoConfig stego;                  // needs the private key for the attack table
  std::vector<AttackSpec> attacks = default_attack_suite();
  std::size_t max_frames = 0;         // 0: every frame
  std::size_t attack_frames = 4;      // stego frames kept for the attack table
  std::size_t attack_seeds = 5;
  std::uint64_t attack_seed = 1;
  unsigned threads = 1;
};

struct VideoBenchRow {
  std::string name;
  std::size_t frames = 0;
  std::uint64_t embedded_bits = 0;
  std::uint64_t luma_pixels = 0;
  double bpp = 0.0;
  std::optional<double> psnr;       // all planes
  std::optional<double> psnr_luma;
  double min_mse = 0.0;
  double max_mse = 0.0;
  double mean_clip_mse = 0.0;
  std::uint64_t payload_bytes = 0;  // ciphertext bytes carried
  std::uint64_t bp_bytes = 0;       // sender values needed to decrypt them
};

struct AttackRow {
  std::string video;
  std::string attack;
  std::array<double, kLevelCount> ssim{};  // mean over kept frames and seeds
  std::array<double, kLevelCount> bit_error_rate{};
};

struct BenchReport {
  std::vector<VideoBenchRow> videos;
  std::vector<AttackRow> attacks;
};

/// Embeds `set` into every frame of the source, then attacks, extracts and
/// scores the first `attack_frames` stego frames.
void bench_video(const std::string& name, const VideoMeta& meta, const FrameSource& source, const QrSet& set,
                 const BenchConfig& config, BenchReport& report);

/// Per-video capacity, PSNR, MSE and keystream overhead,
/// followed by an average row when at least one video was run.
void write_capacity_csv(std::ostream& out, const BenchReport& report);

/// One row per (video, attack) with SSIM per grade, followed
/// by per-attack averages over videos.
void write_robustness_csv(std::ostream& out, const BenchReport& report);

}  // namespace qrsteg
