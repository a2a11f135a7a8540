#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace qrsteg {

using BigInt = mpz_class;

/// One SplitMix64 step. Advances `state` and returns the mixed output.
std::uint64_t prng_next(std::uint64_t& state) noexcept;

/// Seed for an independent substream, e.g. one per (frame, payload level).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag, std::uint64_t index) noexcept;

/// Source of the random integers consumed by key generation and the
/// keystream. Injected everywhere so that test vectors are reproducible.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  /// Uniform integer in the closed range [lo, hi].
  virtual BigInt uniform_between(const BigInt& lo, const BigInt& hi) = 0;
};

/// Deterministic SplitMix64 stream. Big integers are drawn by rejection over
/// the minimal bit width of the range, so the output is platform independent.
class SplitMixSource final : public RandomSource {
 public:
  explicit SplitMixSource(std::uint64_t seed) noexcept : state_(seed) {}

  /// Seeded from std::random_device.
  static SplitMixSource from_entropy();

  std::uint64_t next_u64() noexcept { return prng_next(state_); }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double next_unit() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Unbiased integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) noexcept;

  BigInt uniform_between(const BigInt& lo, const BigInt& hi) override;

 private:
  std::uint64_t state_;
};

/// Replays a fixed list of values, e.g. hand-picked ephemeral exponents for a
/// known-answer test. Each value must fall inside the requested range.
class ScriptedSource final : public RandomSource {
 public:
  explicit ScriptedSource(std::vector<BigInt> values) : values_(std::move(values)) {}

  BigInt uniform_between(const BigInt& lo, const BigInt& hi) override;

  std::size_t consumed() const noexcept { return next_; }

 private:
  std::vector<BigInt> values_;
  std::size_t next_ = 0;
};

}  // namespace qrsteg
