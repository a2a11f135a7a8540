#include "qrsteg/bitplane.hpp"

#include <string>

#include "qrsteg/error.hpp"

namespace qrsteg {

QrPlane load_qr(const GrayImage& raster) {
  if (raster.width == 0 || raster.height == 0 || raster.pixels.size() != raster.width * raster.height) {
    throw Error(Errc::format, "QR raster is empty or malformed");
  }
  QrPlane plane{raster.width, raster.height, BitVector(raster.pixels.size())};
  for (std::size_t i = 0; i < raster.pixels.size(); ++i) plane.bits[i] = raster.pixels[i] < 128 ? 1 : 0;
  return plane;
}

GrayImage render_qr(const QrPlane& plane) {
  GrayImage img(plane.width, plane.height);
  for (std::size_t i = 0; i < plane.bits.size(); ++i) img.pixels[i] = plane.bits[i] ? 0 : 255;
  return img;
}

std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits) {
  std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
  for (std::size_t b = 0; b < bits.size(); ++b) {
    if (bits[b] & 1) bytes[b / 8] |= static_cast<std::uint8_t>(0x80u >> (b % 8));
  }
  return bytes;
}

BitVector unpack_bits(std::span<const std::uint8_t> bytes, std::size_t bit_count) {
  if (bit_count > bytes.size() * 8) throw Error(Errc::shape, "bit count exceeds packed length");
  BitVector bits(bit_count);
  for (std::size_t b = 0; b < bit_count; ++b) bits[b] = (bytes[b / 8] >> (7 - b % 8)) & 1;
  return bits;
}

PackedPayload pack(const QrPlane& plane) {
  if (plane.width == 0 || plane.height == 0 || plane.bits.size() != plane.width * plane.height) {
    throw Error(Errc::shape, "QR plane dimensions do not match its bit count");
  }
  return PackedPayload{plane.bits.size(), pack_bits(plane.bits)};
}

QrPlane unpack(const PackedPayload& payload, std::size_t width, std::size_t height) {
  if (width == 0 || height == 0 || payload.bit_count != width * height ||
      payload.bytes.size() != (payload.bit_count + 7) / 8) {
    throw Error(Errc::shape, "payload of " + std::to_string(payload.bit_count) + " bits cannot form a " +
                                 std::to_string(width) + "x" + std::to_string(height) + " plane");
  }
  return QrPlane{width, height, unpack_bits(payload.bytes, payload.bit_count)};
}

}  // namespace qrsteg
