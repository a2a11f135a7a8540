#include "qrsteg/quality.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "qrsteg/error.hpp"

namespace qrsteg {

namespace {

double squared_error(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) throw Error(Errc::shape, "sample counts differ");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    acc += d * d;
  }
  return acc;
}

void require_same_shape(const FrameYuv420& a, const FrameYuv420& b) {
  a.check();
  b.check();
  if (a.width != b.width || a.height != b.height) throw Error(Errc::shape, "frame dimensions differ");
}

template <typename Fn>
std::optional<double> mean_psnr(const std::vector<FrameQuality>& frames, Fn pick) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& f : frames) {
    if (auto p = psnr_from_mse(pick(f))) {
      sum += *p;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

void put_psnr(std::ostream& out, std::optional<double> p) {
  if (p) {
    out << *p;
  } else {
    out << "identical";
  }
}

}  // namespace

double mse(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.empty()) throw Error(Errc::shape, "empty plane");
  return squared_error(a, b) / static_cast<double>(a.size());
}

double mse(const FrameYuv420& a, const FrameYuv420& b) {
  require_same_shape(a, b);
  const double total = squared_error(a.y, b.y) + squared_error(a.u, b.u) + squared_error(a.v, b.v);
  return total / static_cast<double>(a.sample_count());
}

double mse_luma(const FrameYuv420& a, const FrameYuv420& b) {
  require_same_shape(a, b);
  return mse(a.y, b.y);
}

double mse(const GrayImage& a, const GrayImage& b) {
  if (a.width != b.width || a.height != b.height) throw Error(Errc::shape, "image dimensions differ");
  return mse(a.pixels, b.pixels);
}

std::optional<double> psnr_from_mse(double mse_value) {
  if (mse_value <= 0.0) return std::nullopt;
  return 10.0 * std::log10(kMaxSample * kMaxSample / mse_value);
}

std::optional<double> psnr(const FrameYuv420& a, const FrameYuv420& b) { return psnr_from_mse(mse(a, b)); }

double ssim(const GrayImage& original, const GrayImage& estimate, SsimConstants k) {
  if (original.width != estimate.width || original.height != estimate.height ||
      original.pixels.size() != estimate.pixels.size()) {
    throw Error(Errc::shape, "image dimensions differ");
  }
  const std::size_t n = original.pixels.size();
  if (n < 2) throw Error(Errc::shape, "SSIM needs at least two pixels");

  double sum_o = 0.0;
  double sum_e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum_o += original.pixels[i];
    sum_e += estimate.pixels[i];
  }
  const double mu_o = sum_o / static_cast<double>(n);
  const double mu_e = sum_e / static_cast<double>(n);

  double var_o = 0.0;
  double var_e = 0.0;
  double cov = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = original.pixels[i] - mu_o;
    const double b = estimate.pixels[i] - mu_e;
    var_o += a * a;
    var_e += b * b;
    cov += a * b;
  }
  var_o /= static_cast<double>(n);
  var_e /= static_cast<double>(n);
  cov /= static_cast<double>(n);

  return ((2.0 * mu_o * mu_e + k.c1) * (2.0 * cov + k.c2)) /
         ((mu_o * mu_o + mu_e * mu_e + k.c1) * (var_o + var_e + k.c2));
}

double capacity(std::uint64_t embedded_bits, std::uint64_t video_pixels) {
  if (video_pixels == 0) throw Error(Errc::invalid_input, "capacity needs a non-empty cover");
  return static_cast<double>(embedded_bits) / static_cast<double>(video_pixels);
}

std::optional<double> QualityReport::average_psnr() const {
  return mean_psnr(frames, [](const FrameQuality& f) { return f.mse; });
}

std::optional<double> QualityReport::average_psnr_luma() const {
  return mean_psnr(frames, [](const FrameQuality& f) { return f.mse_luma; });
}

double QualityReport::average_mse() const {
  if (frames.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& f : frames) sum += f.mse;
  return sum / static_cast<double>(frames.size());
}

double QualityReport::min_mse() const {
  if (frames.empty()) return 0.0;
  return std::min_element(frames.begin(), frames.end(), [](auto& a, auto& b) { return a.mse < b.mse; })->mse;
}

double QualityReport::max_mse() const {
  if (frames.empty()) return 0.0;
  return std::max_element(frames.begin(), frames.end(), [](auto& a, auto& b) { return a.mse < b.mse; })->mse;
}

void write_quality_csv(std::ostream& out, const QualityReport& report) {
  const auto old_flags = out.flags();
  const auto old_precision = out.precision();
  out << std::fixed << std::setprecision(6);
  out << "frame_index,mse,psnr,mse_luma,psnr_luma,mse_clip\n";
  for (const auto& f : report.frames) {
    out << f.frame_index << ',' << f.mse << ',';
    put_psnr(out, psnr_from_mse(f.mse));
    out << ',' << f.mse_luma << ',';
    put_psnr(out, psnr_from_mse(f.mse_luma));
    out << ',' << f.mse_clip << '\n';
  }
  if (report.frames.empty()) {
    out.flags(old_flags);
    out.precision(old_precision);
    return;
  }
  out << "average," << report.average_mse() << ',';
  put_psnr(out, report.average_psnr());
  out << ",,";
  put_psnr(out, report.average_psnr_luma());
  out << ",\n";
  out.flags(old_flags);
  out.precision(old_precision);
}

}  // namespace qrsteg
