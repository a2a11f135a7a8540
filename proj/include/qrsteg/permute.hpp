#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qrsteg/random.hpp"

namespace qrsteg {

/// FNV-1a 64 over raw bytes.
std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept;
std::uint64_t fnv1a64(std::string_view text) noexcept;

/// The stego key seeding every coordinate and payload-bit permutation.
struct StegoKey {
  std::uint64_t seed = 0;

  static StegoKey from_passphrase(std::string_view passphrase) noexcept { return {fnv1a64(passphrase)}; }

  /// FNV-1a of the seed's 8 little-endian bytes; safe to publish.
  std::uint64_t fingerprint() const noexcept;

  bool operator==(const StegoKey&) const = default;
};

/// Domain separation tags. The key seed is XORed with one of these before
/// shuffling so that no two streams share a permutation.
namespace tags {
inline constexpr std::uint64_t kHL = 0x484C000000000001ULL;
inline constexpr std::uint64_t kHH = 0x4848000000000002ULL;
inline constexpr std::uint64_t kU = 0x5500000000000003ULL;
inline constexpr std::uint64_t kV = 0x5600000000000004ULL;
inline constexpr std::uint64_t kPayloadL = 0x5000000000000005ULL;
inline constexpr std::uint64_t kPayloadM = 0x5000000000000006ULL;
inline constexpr std::uint64_t kPayloadQ = 0x5000000000000007ULL;
inline constexpr std::uint64_t kPayloadH = 0x5000000000000008ULL;
// Not a shuffle tag: seeds the per-frame keystream exponents.
inline constexpr std::uint64_t kKeystream = 0x4D45430000000009ULL;
}  // namespace tags

struct Permutation {
  std::vector<std::uint32_t> forward;

  std::size_t size() const noexcept { return forward.size(); }
  bool operator==(const Permutation&) const = default;
};

/// Unbiased index in [0, bound): rejects draws >= floor(2^64 / bound) * bound.
std::uint64_t bounded_draw(std::uint64_t& state, std::uint64_t bound) noexcept;

/// Fisher-Yates from the top index down, driven by SplitMix64 seeded with
/// key.seed ^ domain_tag.
Permutation keyed_permutation(const StegoKey& key, std::uint64_t domain_tag, std::size_t n);

/// Throws Errc::corrupt_permutation unless `perm` is a bijection on [0, n).
Permutation invert(const Permutation& perm);

bool is_bijection(const Permutation& perm);

/// out[i] = in[perm[i]].
template <typename T>
std::vector<T> apply(const Permutation& perm, std::span<const T> in) {
  std::vector<T> out(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out[i] = in[perm.forward[i]];
  return out;
}

/// Undoes `apply` without materialising the inverse: out[perm[i]] = in[i].
template <typename T>
std::vector<T> apply_inverse(const Permutation& perm, std::span<const T> in) {
  std::vector<T> out(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out[perm.forward[i]] = in[i];
  return out;
}

}  // namespace qrsteg
