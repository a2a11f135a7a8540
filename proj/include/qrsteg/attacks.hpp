#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qrsteg/random.hpp"
#include "qrsteg/videoio.hpp"

namespace qrsteg {

enum class AttackKind { none, salt_pepper, gaussian, poisson, speckle };

/// Noise model. Gaussian and speckle work on intensities normalised to [0, 1]
/// and round back to 8 bits; Poisson draws with rate equal to the sample.
struct AttackSpec {
  AttackKind kind = AttackKind::none;
  double density = 0.0;   // salt & pepper
  double mean = 0.0;      // gaussian
  double variance = 0.0;  // gaussian, speckle

  /// "none", "sp:D", "gauss:M:V", "poisson", "speckle:V".
  static AttackSpec parse(const std::string& text);
  std::string to_string() const;

  /// Throws Errc::invalid_input if a parameter is out of range.
  void validate() const;
};

void salt_pepper(std::span<std::uint8_t> samples, double density, SplitMixSource& rng);
void gaussian(std::span<std::uint8_t> samples, double mean, double variance, SplitMixSource& rng);
void poisson(std::span<std::uint8_t> samples, SplitMixSource& rng);
void speckle(std::span<std::uint8_t> samples, double variance, SplitMixSource& rng);

/// Applies the spec to the Y, U and V planes in that order.
FrameYuv420 apply_attack(const FrameYuv420& frame, const AttackSpec& spec, SplitMixSource& rng);

/// Per-frame substream seed so frames can be attacked independently.
std::uint64_t attack_seed(std::uint64_t seed, std::size_t frame_index, std::size_t spec_index) noexcept;

/// Applies each spec in turn to one frame of a video.
FrameYuv420 attack_frame(const FrameYuv420& frame, const std::vector<AttackSpec>& specs, std::uint64_t seed,
                         std::size_t frame_index);

/// One draw from N(0, 1) via Box-Muller.
double standard_normal(SplitMixSource& rng);

/// One Poisson draw with rate lambda >= 0 by CDF inversion, capped at `cap`.
std::uint32_t poisson_draw(double lambda, SplitMixSource& rng, std::uint32_t cap = 255);

}  // namespace qrsteg
