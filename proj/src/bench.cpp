#include "qrsteg/bench.hpp"

#include <iomanip>
#include <map>
#include <ostream>

#include "qrsteg/error.hpp"

namespace qrsteg {

namespace {

std::uint64_t group_element_bytes(const BigInt& v) { return (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8; }

void put_optional(std::ostream& out, const std::optional<double>& v) {
  if (v) {
    out << *v;
  } else {
    out << "identical";
  }
}

}  // namespace

std::vector<AttackSpec> default_attack_suite() {
  std::vector<AttackSpec> suite;
  for (const char* text : {"none", "sp:0.01", "sp:0.1", "gauss:0:0.01", "gauss:0:0.1", "poisson", "speckle:0.05"}) {
    suite.push_back(AttackSpec::parse(text));
  }
  return suite;
}

void bench_video(const std::string& name, const VideoMeta& meta, const FrameSource& source, const QrSet& set,
                 const BenchConfig& config, BenchReport& report) {
  std::size_t pulled = 0;
  const FrameSource limited = [&]() -> std::optional<FrameYuv420> {
    if (config.max_frames != 0 && pulled >= config.max_frames) return std::nullopt;
    auto f = source();
    if (f) ++pulled;
    return f;
  };
  std::vector<FrameYuv420> kept;
  const FrameSink keep = [&](const FrameYuv420& f) {
    if (kept.size() < config.attack_frames) kept.push_back(f);
  };

  const EmbedResult embedded = embed_stream(meta, limited, keep, {set}, config.stego, config.threads);

  VideoBenchRow row;
  row.name = name;
  row.frames = embedded.quality.frames.size();
  row.embedded_bits = embedded.quality.embedded_bits;
  row.luma_pixels = embedded.quality.luma_pixels;
  row.bpp = row.luma_pixels ? embedded.quality.bpp() : 0.0;
  row.psnr = embedded.quality.average_psnr();
  row.psnr_luma = embedded.quality.average_psnr_luma();
  row.min_mse = embedded.quality.min_mse();
  row.max_mse = embedded.quality.max_mse();
  for (const auto& f : embedded.quality.frames) row.mean_clip_mse += f.mse_clip;
  if (row.frames) row.mean_clip_mse /= static_cast<double>(row.frames);
  row.payload_bytes = static_cast<std::uint64_t>(row.frames) * kLevelCount * embedded.sidecar.plain_len;
  for (const auto& rec : embedded.sidecar.frames) {
    for (const auto& bp : rec.bp) {
      for (const BigInt& d : bp) row.bp_bytes += group_element_bytes(d);
    }
  }
  report.videos.push_back(row);

  if (kept.empty() || !config.stego.priv) return;
  const StegoLayout layout(config.stego.key, meta.width, meta.height);
  std::array<GrayImage, kLevelCount> originals;
  for (Level level : kLevels) originals[index_of(level)] = render_qr(set[index_of(level)]);

  for (std::size_t a = 0; a < config.attacks.size(); ++a) {
    AttackRow arow;
    arow.video = name;
    arow.attack = config.attacks[a].to_string();
    std::size_t samples = 0;
    for (std::size_t s = 0; s < std::max<std::size_t>(1, config.attack_seeds); ++s) {
      const std::uint64_t seed = derive_seed(config.attack_seed, a, s);
      for (std::size_t i = 0; i < kept.size(); ++i) {
        const FrameYuv420 noisy = attack_frame(kept[i], {config.attacks[a]}, seed, i);
        const LevelBits bits = extract_frame(noisy, layout);
        const QrSet recovered =
            decrypt_qr_set(bits, embedded.sidecar.frames[i].bp, config.stego, meta.width / 2, meta.height / 2);
        for (Level level : kLevels) {
          const auto li = index_of(level);
          arow.ssim[li] += ssim(originals[li], render_qr(recovered[li]));
          std::size_t errors = 0;
          for (std::size_t b = 0; b < recovered[li].bits.size(); ++b) errors += recovered[li].bits[b] != set[li].bits[b];
          arow.bit_error_rate[li] += static_cast<double>(errors) / static_cast<double>(recovered[li].bits.size());
        }
        ++samples;
      }
    }
    for (Level level : kLevels) {
      arow.ssim[index_of(level)] /= static_cast<double>(samples);
      arow.bit_error_rate[index_of(level)] /= static_cast<double>(samples);
    }
    report.attacks.push_back(arow);
  }
}

void write_capacity_csv(std::ostream& out, const BenchReport& report) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::fixed << std::setprecision(4);
  out << "video,frames,embedded_bits,cover_pixels,capacity_bpp,psnr_db,psnr_luma_db,min_mse,max_mse,clip_mse,"
         "payload_bytes,bp_bytes,bp_overhead\n";
  double psnr_sum = 0.0;
  double psnr_luma_sum = 0.0;
  double bpp_sum = 0.0;
  std::size_t psnr_n = 0;
  std::size_t luma_n = 0;
  for (const auto& r : report.videos) {
    out << r.name << ',' << r.frames << ',' << r.embedded_bits << ',' << r.luma_pixels << ',' << r.bpp << ',';
    put_optional(out, r.psnr);
    out << ',';
    put_optional(out, r.psnr_luma);
    const double overhead = r.payload_bytes ? static_cast<double>(r.bp_bytes) / static_cast<double>(r.payload_bytes) : 0.0;
    out << ',' << r.min_mse << ',' << r.max_mse << ',' << r.mean_clip_mse << ',' << r.payload_bytes << ','
        << r.bp_bytes << ',' << overhead << '\n';
    bpp_sum += r.bpp;
    if (r.psnr) {
      psnr_sum += *r.psnr;
      ++psnr_n;
    }
    if (r.psnr_luma) {
      psnr_luma_sum += *r.psnr_luma;
      ++luma_n;
    }
  }
  if (!report.videos.empty()) {
    out << "average,,,," << bpp_sum / static_cast<double>(report.videos.size()) << ',';
    put_optional(out, psnr_n ? std::optional(psnr_sum / static_cast<double>(psnr_n)) : std::nullopt);
    out << ',';
    put_optional(out, luma_n ? std::optional(psnr_luma_sum / static_cast<double>(luma_n)) : std::nullopt);
    out << ",,,,,,\n";
  }
  out.flags(flags);
  out.precision(precision);
}

void write_robustness_csv(std::ostream& out, const BenchReport& report) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::fixed << std::setprecision(4);
  out << "video,attack,ssim_L,ssim_M,ssim_Q,ssim_H,ber_L,ber_M,ber_Q,ber_H\n";
  std::vector<std::string> order;
  std::map<std::string, std::pair<std::array<double, kLevelCount>, std::size_t>> sums;
  for (const auto& r : report.attacks) {
    out << r.video << ',' << r.attack;
    for (double v : r.ssim) out << ',' << v;
    for (double v : r.bit_error_rate) out << ',' << v;
    out << '\n';
    auto [it, inserted] = sums.try_emplace(r.attack);
    if (inserted) order.push_back(r.attack);
    for (std::size_t i = 0; i < kLevelCount; ++i) it->second.first[i] += r.ssim[i];
    ++it->second.second;
  }
  for (const auto& attack : order) {
    const auto& [acc, n] = sums[attack];
    out << "average," << attack;
    for (double v : acc) out << ',' << v / static_cast<double>(n);
    out << ",,,,\n";
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace qrsteg
