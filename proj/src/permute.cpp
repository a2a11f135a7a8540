#include "qrsteg/permute.hpp"

#include <array>
#include <numeric>
#include <utility>

#include "qrsteg/error.hpp"

namespace qrsteg {

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t fnv1a64(std::string_view text) noexcept {
  return fnv1a64(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::uint64_t StegoKey::fingerprint() const noexcept {
  std::array<std::uint8_t, 8> le{};
  for (int i = 0; i < 8; ++i) le[i] = static_cast<std::uint8_t>(seed >> (8 * i));
  return fnv1a64(le);
}

std::uint64_t bounded_draw(std::uint64_t& state, std::uint64_t bound) noexcept {
  if (bound <= 1) return 0;
  const unsigned __int128 two64 = static_cast<unsigned __int128>(1) << 64;
  const unsigned __int128 limit = (two64 / bound) * bound;
  std::uint64_t v;
  do {
    v = prng_next(state);
  } while (static_cast<unsigned __int128>(v) >= limit);
  return v % bound;
}

Permutation keyed_permutation(const StegoKey& key, std::uint64_t domain_tag, std::size_t n) {
  Permutation perm;
  perm.forward.resize(n);
  std::iota(perm.forward.begin(), perm.forward.end(), 0u);
  std::uint64_t state = key.seed ^ domain_tag;
  for (std::size_t i = n; i-- > 1;) {
    const std::size_t j = static_cast<std::size_t>(bounded_draw(state, i + 1));
    std::swap(perm.forward[i], perm.forward[j]);
  }
  return perm;
}

bool is_bijection(const Permutation& perm) {
  std::vector<bool> seen(perm.size(), false);
  for (std::uint32_t v : perm.forward) {
    if (v >= perm.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Permutation invert(const Permutation& perm) {
  if (!is_bijection(perm)) throw Error(Errc::corrupt_permutation, "permutation is not a bijection");
  Permutation inv;
  inv.forward.resize(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv.forward[perm.forward[i]] = static_cast<std::uint32_t>(i);
  return inv;
}

}  // namespace qrsteg
