#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qrsteg/image.hpp"

namespace qrsteg {

using BitVector = std::vector<std::uint8_t>;  // one {0,1} value per element

/// Bilevel secret image. bit 1 marks a dark module.
struct QrPlane {
  std::size_t width = 0;
  std::size_t height = 0;
  BitVector bits;

  bool operator==(const QrPlane&) const = default;
};

/// Bits packed MSB-first; unused bits of the last byte are zero.
struct PackedPayload {
  std::size_t bit_count = 0;
  std::vector<std::uint8_t> bytes;

  bool operator==(const PackedPayload&) const = default;
};

/// Thresholds at 128: darker pixels become 1.
QrPlane load_qr(const GrayImage& raster);

/// Dark modules as 0, light as 255.
GrayImage render_qr(const QrPlane& plane);

PackedPayload pack(const QrPlane& plane);
QrPlane unpack(const PackedPayload& payload, std::size_t width, std::size_t height);

/// Packs an arbitrary bit sequence (MSB-first).
std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits);

/// First `bit_count` bits of `bytes`, MSB-first.
BitVector unpack_bits(std::span<const std::uint8_t> bytes, std::size_t bit_count);

}  // namespace qrsteg
