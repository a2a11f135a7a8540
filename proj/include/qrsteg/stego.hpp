#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "qrsteg/bitplane.hpp"
#include "qrsteg/elgamal.hpp"
#include "qrsteg/permute.hpp"
#include "qrsteg/quality.hpp"
#include "qrsteg/videoio.hpp"
#include "qrsteg/wavelet.hpp"

namespace qrsteg {

/// QR error-correction grade. Each grade rides in its own carrier:
/// L -> HL band, M -> HH band, Q -> U plane, H -> V plane.
enum class Level : std::size_t { L = 0, M = 1, Q = 2, H = 3 };

inline constexpr std::array<Level, 4> kLevels{Level::L, Level::M, Level::Q, Level::H};
inline constexpr std::size_t kLevelCount = kLevels.size();

constexpr std::size_t index_of(Level level) noexcept { return static_cast<std::size_t>(level); }
std::string_view level_name(Level level) noexcept;
std::string_view carrier_name(Level level) noexcept;

/// Coordinate-permutation tag of the carrier for `level`.
std::uint64_t carrier_tag(Level level) noexcept;
std::uint64_t payload_tag(Level level) noexcept;

/// Luma values are clipped to this range before embedding so that the
/// inverse transform of edited detail bands stays inside [0, 255].
inline constexpr std::uint8_t kLumaClipLow = 2;
inline constexpr std::uint8_t kLumaClipHigh = 253;

/// 2 * floor(v / 2) + bit.
constexpr std::int32_t set_lsb(std::int32_t value, unsigned bit) noexcept {
  return 2 * floor_half(value) + static_cast<std::int32_t>(bit & 1u);
}

/// v - 2 * floor(v / 2), always 0 or 1.
constexpr unsigned get_lsb(std::int32_t value) noexcept {
  return static_cast<unsigned>(value - 2 * floor_half(value));
}

struct StegoConfig {
  StegoKey key;
  ElGamalPublic pub;
  std::optional<ElGamalPrivate> priv;  // extraction side only
};

/// One secret image per grade, each (width/2) x (height/2) of the cover.
using QrSet = std::array<QrPlane, kLevelCount>;

/// A bit stream per carrier.
using LevelBits = std::array<BitVector, kLevelCount>;

struct FramePayload {
  std::array<CipherBundle, kLevelCount> bundles;
};

/// Permutations for one key and frame geometry, built once per video.
class StegoLayout {
 public:
  StegoLayout(const StegoKey& key, std::size_t width, std::size_t height);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }

  /// Bits per carrier per frame: (width/2) * (height/2).
  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t bits_per_frame() const noexcept { return capacity_ * kLevelCount; }

  const Permutation& carrier_order(Level level) const { return carrier_[index_of(level)]; }
  const Permutation& payload_order(Level level) const { return payload_[index_of(level)]; }

 private:
  std::size_t width_;
  std::size_t height_;
  std::size_t capacity_;
  std::array<Permutation, kLevelCount> carrier_;
  std::array<Permutation, kLevelCount> payload_;
};

FrameYuv420 clip_luma(const FrameYuv420& frame);

/// Writes already payload-permuted bit streams into the carriers: clip Y,
/// forward Haar, HL/HH LSBs in keyed order, inverse Haar, then U/V LSBs in
/// keyed order.
FrameYuv420 embed_bits(const FrameYuv420& cover, const LevelBits& channel_bits, const StegoLayout& layout);

/// Reads carrier LSBs in keyed order (still payload-permuted).
LevelBits extract_bits(const FrameYuv420& stego, const StegoLayout& layout);

/// Ciphertext bits of each bundle are payload-permuted and embedded.
FrameYuv420 embed_frame(const FrameYuv420& frame, const FramePayload& payload, const StegoLayout& layout);

/// Ciphertext bit streams in their original order.
LevelBits extract_frame(const FrameYuv420& stego, const StegoLayout& layout);

/// Seed of the keystream draws for one (frame, level). Mixes the stego key
/// with a digest of the plaintext so runs are reproducible under a fixed key
/// while the exponents stay unknown to anyone holding only the stego key.
std::uint64_t keystream_seed(const StegoKey& key, std::size_t frame_index, Level level,
                             std::span<const std::uint8_t> plaintext) noexcept;

/// Packs and encrypts each plane with a fresh keystream.
FramePayload encrypt_qr_set(const QrSet& set, const StegoConfig& cfg, std::size_t frame_index);

/// Decrypts extracted ciphertext bits back into planes.
QrSet decrypt_qr_set(const LevelBits& cipher_bits, const std::array<std::vector<BigInt>, kLevelCount>& bp,
                     const StegoConfig& cfg, std::size_t qr_width, std::size_t qr_height);

/// Throws Errc::capacity unless every plane is (width/2) x (height/2).
void check_qr_set(const QrSet& set, std::size_t width, std::size_t height);

struct FrameRecord {
  std::array<std::vector<BigInt>, kLevelCount> bp;
};

/// Everything extraction needs besides the keys. Never contains secret bits.
struct Sidecar {
  int version = 1;
  VideoMeta meta;
  std::uint64_t key_fingerprint = 0;
  std::size_t qr_width = 0;
  std::size_t qr_height = 0;
  std::uint64_t plain_len = 0;
  std::vector<FrameRecord> frames;
};

void write_sidecar(std::ostream& out, const Sidecar& sidecar);
Sidecar read_sidecar(std::istream& in);
void save_sidecar(const std::filesystem::path& path, const Sidecar& sidecar);
Sidecar load_sidecar(const std::filesystem::path& path);

struct EmbedResult {
  Sidecar sidecar;
  QualityReport quality;
};

/// Frame source/sink used by the streaming drivers.
using FrameSource = std::function<std::optional<FrameYuv420>()>;
using FrameSink = std::function<void(const FrameYuv420&)>;

/// Embeds one QR set per frame, cycling through `sets`. Frames are processed
/// in batches of `threads`; the output does not depend on the thread count.
EmbedResult embed_stream(const VideoMeta& meta, const FrameSource& source, const FrameSink& sink,
                         const std::vector<QrSet>& sets, const StegoConfig& cfg, unsigned threads = 1);

/// Receives the planes recovered from each frame.
using QrSink = std::function<void(std::size_t frame_index, const QrSet&)>;

/// Returns the number of frames processed. Throws Errc::shape if the video
/// does not match the sidecar.
std::size_t extract_stream(const VideoMeta& meta, const FrameSource& source, const Sidecar& sidecar,
                           const StegoConfig& cfg, const QrSink& sink, unsigned threads = 1);

// In-memory conveniences.
std::vector<FrameYuv420> embed_video(const std::vector<FrameYuv420>& frames, const std::vector<QrSet>& sets,
                                     const StegoConfig& cfg, Sidecar* sidecar_out = nullptr, unsigned threads = 1);
std::vector<QrSet> extract_video(const std::vector<FrameYuv420>& frames, const Sidecar& sidecar,
                                 const StegoConfig& cfg, unsigned threads = 1);

}  // namespace qrsteg
