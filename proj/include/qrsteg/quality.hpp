#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "qrsteg/image.hpp"
#include "qrsteg/videoio.hpp"

namespace qrsteg {

inline constexpr double kMaxSample = 255.0;

/// Mean squared error over all samples of two equally sized planes.
double mse(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

/// Total squared error over the Y, U and V planes divided by the total
/// sample count.
double mse(const FrameYuv420& a, const FrameYuv420& b);
double mse_luma(const FrameYuv420& a, const FrameYuv420& b);
double mse(const GrayImage& a, const GrayImage& b);

/// 10 log10(255^2 / mse); nullopt when mse == 0 (identical inputs).
std::optional<double> psnr_from_mse(double mse_value);
std::optional<double> psnr(const FrameYuv420& a, const FrameYuv420& b);

struct SsimConstants {
  double c1 = (0.01 * kMaxSample) * (0.01 * kMaxSample);
  double c2 = (0.03 * kMaxSample) * (0.03 * kMaxSample);
};

/// Single-window SSIM over the whole image. Variances and covariance divide
/// by N.
double ssim(const GrayImage& original, const GrayImage& estimate, SsimConstants k = {});

/// Embedded bits per cover pixel; pixels are counted on the luma plane only.
double capacity(std::uint64_t embedded_bits, std::uint64_t video_pixels);

struct FrameQuality {
  std::size_t frame_index = 0;
  double mse = 0.0;       // all planes
  double mse_luma = 0.0;
  double mse_clip = 0.0;  // distortion introduced by luma pre-clipping alone
};

struct QualityReport {
  std::vector<FrameQuality> frames;
  std::uint64_t embedded_bits = 0;
  std::uint64_t luma_pixels = 0;

  /// Mean of per-frame PSNR over non-identical frames; nullopt if every frame
  /// was identical. Frames are accumulated in index order.
  std::optional<double> average_psnr() const;
  std::optional<double> average_psnr_luma() const;
  double average_mse() const;
  double min_mse() const;
  double max_mse() const;
  double bpp() const { return capacity(embedded_bits, luma_pixels); }
};

/// CSV: frame_index,mse,psnr,mse_luma,psnr_luma,mse_clip then a summary row.
/// Identical frames print "identical" in the psnr column.
void write_quality_csv(std::ostream& out, const QualityReport& report);

}  // namespace qrsteg
