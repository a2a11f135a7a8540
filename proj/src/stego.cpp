#include "qrsteg/stego.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "qrsteg/error.hpp"

namespace qrsteg {

namespace {

// Runs fn(i) for i in [0, n) on up to `threads` threads. Each index writes
// only its own output slot, so results are independent of scheduling.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, n);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void check_frame_geometry(const FrameYuv420& frame, const StegoLayout& layout) {
  frame.check();
  if (frame.width != layout.width() || frame.height != layout.height()) {
    throw Error(Errc::shape, "frame is " + std::to_string(frame.width) + "x" + std::to_string(frame.height) +
                                 ", expected " + std::to_string(layout.width()) + "x" +
                                 std::to_string(layout.height()));
  }
}

IntMatrix& band_for(SubBands& bands, Level level) { return level == Level::L ? bands.hl : bands.hh; }

std::vector<std::uint8_t>& chroma_for(FrameYuv420& frame, Level level) {
  return level == Level::Q ? frame.u : frame.v;
}

const std::vector<std::uint8_t>& chroma_for(const FrameYuv420& frame, Level level) {
  return level == Level::Q ? frame.u : frame.v;
}

}  // namespace

std::string_view level_name(Level level) noexcept {
  switch (level) {
    case Level::L: return "L";
    case Level::M: return "M";
    case Level::Q: return "Q";
    case Level::H: return "H";
  }
  return "?";
}

std::string_view carrier_name(Level level) noexcept {
  switch (level) {
    case Level::L: return "HL";
    case Level::M: return "HH";
    case Level::Q: return "U";
    case Level::H: return "V";
  }
  return "?";
}

std::uint64_t carrier_tag(Level level) noexcept {
  constexpr std::array<std::uint64_t, kLevelCount> t{tags::kHL, tags::kHH, tags::kU, tags::kV};
  return t[index_of(level)];
}

std::uint64_t payload_tag(Level level) noexcept {
  constexpr std::array<std::uint64_t, kLevelCount> t{tags::kPayloadL, tags::kPayloadM, tags::kPayloadQ,
                                                     tags::kPayloadH};
  return t[index_of(level)];
}

StegoLayout::StegoLayout(const StegoKey& key, std::size_t width, std::size_t height)
    : width_(width), height_(height), capacity_((width / 2) * (height / 2)) {
  if (width == 0 || height == 0 || width % 2 || height % 2) {
    throw Error(Errc::shape, "cover dimensions must be positive and even");
  }
  for (Level level : kLevels) {
    carrier_[index_of(level)] = keyed_permutation(key, carrier_tag(level), capacity_);
    payload_[index_of(level)] = keyed_permutation(key, payload_tag(level), capacity_);
  }
}

FrameYuv420 clip_luma(const FrameYuv420& frame) {
  FrameYuv420 out = frame;
  for (auto& s : out.y) s = std::clamp(s, kLumaClipLow, kLumaClipHigh);
  return out;
}

FrameYuv420 embed_bits(const FrameYuv420& cover, const LevelBits& channel_bits, const StegoLayout& layout) {
  check_frame_geometry(cover, layout);
  for (Level level : kLevels) {
    if (channel_bits[index_of(level)].size() != layout.capacity()) {
      throw Error(Errc::capacity, std::string("payload for ") + std::string(carrier_name(level)) + " has " +
                                      std::to_string(channel_bits[index_of(level)].size()) + " bits, carrier holds " +
                                      std::to_string(layout.capacity()));
    }
  }

  FrameYuv420 stego = clip_luma(cover);
  SubBands bands = fwd_haar_int(to_int_matrix(stego.luma()));
  for (Level level : {Level::L, Level::M}) {
    IntMatrix& band = band_for(bands, level);
    const auto& order = layout.carrier_order(level).forward;
    const auto& bits = channel_bits[index_of(level)];
    for (std::size_t i = 0; i < order.size(); ++i) {
      std::int32_t& c = band.data[order[i]];
      c = set_lsb(c, bits[i]);
    }
  }
  const IntMatrix luma = inv_haar_int(bands);
  for (std::size_t i = 0; i < luma.data.size(); ++i) {
    const std::int32_t s = luma.data[i];
    if (s < 0 || s > 255) throw Error(Errc::capacity, "reconstructed luma left [0, 255]");
    stego.y[i] = static_cast<std::uint8_t>(s);
  }

  for (Level level : {Level::Q, Level::H}) {
    auto& plane = chroma_for(stego, level);
    const auto& order = layout.carrier_order(level).forward;
    const auto& bits = channel_bits[index_of(level)];
    for (std::size_t i = 0; i < order.size(); ++i) {
      std::uint8_t& s = plane[order[i]];
      s = static_cast<std::uint8_t>((s & 0xFEu) | (bits[i] & 1u));
    }
  }
  return stego;
}

LevelBits extract_bits(const FrameYuv420& stego, const StegoLayout& layout) {
  check_frame_geometry(stego, layout);
  LevelBits out;
  SubBands bands = fwd_haar_int(to_int_matrix(stego.luma()));
  for (Level level : {Level::L, Level::M}) {
    const IntMatrix& band = band_for(bands, level);
    const auto& order = layout.carrier_order(level).forward;
    auto& bits = out[index_of(level)];
    bits.resize(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) bits[i] = static_cast<std::uint8_t>(get_lsb(band.data[order[i]]));
  }
  for (Level level : {Level::Q, Level::H}) {
    const auto& plane = chroma_for(stego, level);
    const auto& order = layout.carrier_order(level).forward;
    auto& bits = out[index_of(level)];
    bits.resize(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) bits[i] = plane[order[i]] & 1u;
  }
  return out;
}

FrameYuv420 embed_frame(const FrameYuv420& frame, const FramePayload& payload, const StegoLayout& layout) {
  LevelBits channel;
  const std::size_t expected_bytes = (layout.capacity() + 7) / 8;
  for (Level level : kLevels) {
    const CipherBundle& bundle = payload.bundles[index_of(level)];
    if (bundle.z.size() != expected_bytes) {
      throw Error(Errc::capacity, "ciphertext of " + std::to_string(bundle.z.size()) + " bytes does not fill a " +
                                      std::to_string(layout.capacity()) + "-bit carrier");
    }
    const BitVector bits = unpack_bits(bundle.z, layout.capacity());
    channel[index_of(level)] = apply(layout.payload_order(level), std::span<const std::uint8_t>(bits));
  }
  return embed_bits(frame, channel, layout);
}

LevelBits extract_frame(const FrameYuv420& stego, const StegoLayout& layout) {
  LevelBits channel = extract_bits(stego, layout);
  LevelBits out;
  for (Level level : kLevels) {
    out[index_of(level)] =
        apply_inverse(layout.payload_order(level), std::span<const std::uint8_t>(channel[index_of(level)]));
  }
  return out;
}

std::uint64_t keystream_seed(const StegoKey& key, std::size_t frame_index, Level level,
                             std::span<const std::uint8_t> plaintext) noexcept {
  const std::uint64_t base = key.seed ^ fnv1a64(plaintext);
  return derive_seed(base, tags::kKeystream, frame_index * kLevelCount + index_of(level));
}

void check_qr_set(const QrSet& set, std::size_t width, std::size_t height) {
  for (Level level : kLevels) {
    const QrPlane& plane = set[index_of(level)];
    if (plane.width != width / 2 || plane.height != height / 2 || plane.bits.size() != plane.width * plane.height) {
      throw Error(Errc::capacity, std::string(level_name(level)) + " QR is " + std::to_string(plane.width) + "x" +
                                      std::to_string(plane.height) + ", carrier needs " + std::to_string(width / 2) +
                                      "x" + std::to_string(height / 2));
    }
  }
}

FramePayload encrypt_qr_set(const QrSet& set, const StegoConfig& cfg, std::size_t frame_index) {
  FramePayload payload;
  for (Level level : kLevels) {
    const PackedPayload packed = pack(set[index_of(level)]);
    SplitMixSource rng(keystream_seed(cfg.key, frame_index, level, packed.bytes));
    payload.bundles[index_of(level)] = mec_encrypt(packed.bytes, cfg.pub, rng);
  }
  return payload;
}

QrSet decrypt_qr_set(const LevelBits& cipher_bits, const std::array<std::vector<BigInt>, kLevelCount>& bp,
                     const StegoConfig& cfg, std::size_t qr_width, std::size_t qr_height) {
  if (!cfg.priv) throw Error(Errc::key_parameter, "extraction needs the private key");
  QrSet set;
  for (Level level : kLevels) {
    const auto i = index_of(level);
    if (cipher_bits[i].size() != qr_width * qr_height) throw Error(Errc::shape, "bit stream does not match QR size");
    CipherBundle bundle;
    bundle.z = pack_bits(cipher_bits[i]);
    bundle.plain_len = bundle.z.size();
    bundle.bp = bp[i];
    const Bytes plain = mec_decrypt(bundle, cfg.pub.p, *cfg.priv);
    set[i] = QrPlane{qr_width, qr_height, unpack_bits(plain, qr_width * qr_height)};
  }
  return set;
}

EmbedResult embed_stream(const VideoMeta& meta, const FrameSource& source, const FrameSink& sink,
                         const std::vector<QrSet>& sets, const StegoConfig& cfg, unsigned threads) {
  if (sets.empty()) throw Error(Errc::capacity, "no QR sets to embed");
  const StegoLayout layout(cfg.key, meta.width, meta.height);
  for (const QrSet& set : sets) check_qr_set(set, meta.width, meta.height);

  EmbedResult result;
  Sidecar& sc = result.sidecar;
  sc.meta = meta;
  sc.key_fingerprint = cfg.key.fingerprint();
  sc.qr_width = meta.width / 2;
  sc.qr_height = meta.height / 2;
  sc.plain_len = (layout.capacity() + 7) / 8;

  const std::size_t batch_size = std::max(1u, threads);
  std::size_t next_index = 0;
  for (;;) {
    std::vector<FrameYuv420> covers;
    while (covers.size() < batch_size) {
      auto f = source();
      if (!f) break;
      covers.push_back(std::move(*f));
    }
    if (covers.empty()) break;

    std::vector<FrameYuv420> stegos(covers.size());
    std::vector<FrameRecord> records(covers.size());
    std::vector<FrameQuality> quality(covers.size());
    parallel_for(covers.size(), threads, [&](std::size_t i) {
      const std::size_t idx = next_index + i;
      check_frame_geometry(covers[i], layout);
      const FramePayload payload = encrypt_qr_set(sets[idx % sets.size()], cfg, idx);
      stegos[i] = embed_frame(covers[i], payload, layout);
      for (Level level : kLevels) records[i].bp[index_of(level)] = payload.bundles[index_of(level)].bp;
      const FrameYuv420 reference = clip_luma(covers[i]);
      quality[i] = FrameQuality{idx, mse(reference, stegos[i]), mse_luma(reference, stegos[i]),
                                mse_luma(covers[i], reference)};
    });

    for (std::size_t i = 0; i < covers.size(); ++i) {
      sink(stegos[i]);
      sc.frames.push_back(std::move(records[i]));
      result.quality.frames.push_back(quality[i]);
      result.quality.embedded_bits += layout.bits_per_frame();
      result.quality.luma_pixels += meta.width * meta.height;
    }
    next_index += covers.size();
  }
  sc.meta.frame_count = next_index;
  return result;
}

std::size_t extract_stream(const VideoMeta& meta, const FrameSource& source, const Sidecar& sidecar,
                           const StegoConfig& cfg, const QrSink& sink, unsigned threads) {
  if (meta.width != sidecar.meta.width || meta.height != sidecar.meta.height) {
    throw Error(Errc::shape, "video geometry differs from the sidecar");
  }
  if (sidecar.qr_width != meta.width / 2 || sidecar.qr_height != meta.height / 2) {
    throw Error(Errc::shape, "sidecar QR size does not match the video");
  }
  if (!cfg.priv) throw Error(Errc::key_parameter, "extraction needs the private key");
  const StegoLayout layout(cfg.key, meta.width, meta.height);

  const std::size_t batch_size = std::max(1u, threads);
  std::size_t next_index = 0;
  for (;;) {
    std::vector<FrameYuv420> frames;
    while (frames.size() < batch_size) {
      auto f = source();
      if (!f) break;
      frames.push_back(std::move(*f));
    }
    if (frames.empty()) break;
    if (next_index + frames.size() > sidecar.frames.size()) {
      throw Error(Errc::shape, "video has more frames than the sidecar records");
    }

    std::vector<QrSet> sets(frames.size());
    parallel_for(frames.size(), threads, [&](std::size_t i) {
      const LevelBits bits = extract_frame(frames[i], layout);
      sets[i] = decrypt_qr_set(bits, sidecar.frames[next_index + i].bp, cfg, sidecar.qr_width, sidecar.qr_height);
    });
    for (std::size_t i = 0; i < frames.size(); ++i) sink(next_index + i, sets[i]);
    next_index += frames.size();
  }
  return next_index;
}

std::vector<FrameYuv420> embed_video(const std::vector<FrameYuv420>& frames, const std::vector<QrSet>& sets,
                                     const StegoConfig& cfg, Sidecar* sidecar_out, unsigned threads) {
  std::vector<FrameYuv420> out;
  if (frames.empty()) {
    if (sidecar_out) *sidecar_out = Sidecar{};
    return out;
  }
  VideoMeta meta;
  meta.width = frames.front().width;
  meta.height = frames.front().height;
  std::size_t next = 0;
  EmbedResult result = embed_stream(
      meta, [&]() -> std::optional<FrameYuv420> { return next < frames.size() ? std::optional(frames[next++]) : std::nullopt; },
      [&](const FrameYuv420& f) { out.push_back(f); }, sets, cfg, threads);
  if (sidecar_out) *sidecar_out = std::move(result.sidecar);
  return out;
}

std::vector<QrSet> extract_video(const std::vector<FrameYuv420>& frames, const Sidecar& sidecar,
                                 const StegoConfig& cfg, unsigned threads) {
  std::vector<QrSet> out;
  if (frames.size() != sidecar.frames.size()) {
    throw Error(Errc::shape, "video has " + std::to_string(frames.size()) + " frames, sidecar has " +
                                 std::to_string(sidecar.frames.size()));
  }
  if (frames.empty()) return out;
  VideoMeta meta;
  meta.width = frames.front().width;
  meta.height = frames.front().height;
  std::size_t next = 0;
  extract_stream(
      meta, [&]() -> std::optional<FrameYuv420> { return next < frames.size() ? std::optional(frames[next++]) : std::nullopt; },
      sidecar, cfg, [&](std::size_t, const QrSet& set) { out.push_back(set); }, threads);
  return out;
}

}  // namespace qrsteg
