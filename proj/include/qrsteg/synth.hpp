#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "qrsteg/stego.hpp"
#include "qrsteg/videoio.hpp"

namespace qrsteg {

/// Synthetic test content, so nothing in the test suite depends on downloads.
enum class SynthPattern {
  gradient,      // drifting smooth gradients with mild texture, natural-image stand-in
  noise,         // i.i.d. uniform samples
  moving_block,  // flat background with a bright square sliding across
};

SynthPattern parse_synth_pattern(std::string_view name);

FrameYuv420 synth_frame(SynthPattern pattern, std::size_t width, std::size_t height, std::size_t frame_index,
                        std::uint64_t seed);

std::vector<FrameYuv420> synth_video(SynthPattern pattern, std::size_t width, std::size_t height,
                                     std::size_t frames, std::uint64_t seed);

/// QR-lookalike bilevel plane: quiet zone, three finder patterns, timing rows
/// and random data modules, scaled to fit.
QrPlane synth_qr(std::size_t width, std::size_t height, std::uint64_t seed, std::size_t modules = 33);

/// Four distinct QR-lookalikes, one per grade.
QrSet synth_qr_set(std::size_t width, std::size_t height, std::uint64_t seed);

}  // namespace qrsteg
