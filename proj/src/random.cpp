#include "qrsteg/random.hpp"

#include <random>
#include <string>

#include "qrsteg/error.hpp"
#include "qrsteg/permute.hpp"

namespace qrsteg {

std::uint64_t prng_next(std::uint64_t& state) noexcept {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t v = state;
  v = (v ^ (v >> 30)) * 0xBF58476D1CE4E5B9ULL;
  v = (v ^ (v >> 27)) * 0x94D049BB133111EBULL;
  return v ^ (v >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag, std::uint64_t index) noexcept {
  std::uint64_t state = base ^ tag;
  std::uint64_t mixed = prng_next(state);
  state = mixed ^ index;
  return prng_next(state);
}

SplitMixSource SplitMixSource::from_entropy() {
  std::random_device device;
  const std::uint64_t hi = device();
  const std::uint64_t lo = device();
  return SplitMixSource((hi << 32) ^ lo);
}

std::uint64_t SplitMixSource::below(std::uint64_t bound) noexcept {
  return bounded_draw(state_, bound);
}

BigInt SplitMixSource::uniform_between(const BigInt& lo, const BigInt& hi) {
  if (hi < lo) throw Error(Errc::key_parameter, "empty random range");
  const BigInt span = hi - lo + 1;
  const std::size_t bits = mpz_sizeinbase(span.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  const unsigned top_bits = static_cast<unsigned>(bits - (words - 1) * 64);
  const std::uint64_t top_mask = top_bits == 64 ? ~0ULL : ((1ULL << top_bits) - 1);

  std::vector<std::uint64_t> limbs(words);
  BigInt candidate;
  do {
    // Least-significant word first; the last word carries the top bits.
    for (std::size_t i = 0; i < words; ++i) limbs[i] = next_u64();
    limbs.back() &= top_mask;
    mpz_import(candidate.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, limbs.data());
  } while (candidate >= span);
  return lo + candidate;
}

BigInt ScriptedSource::uniform_between(const BigInt& lo, const BigInt& hi) {
  if (next_ >= values_.size()) throw Error(Errc::key_parameter, "scripted random source exhausted");
  const BigInt& v = values_[next_++];
  if (v < lo || v > hi) {
    throw Error(Errc::key_parameter, "scripted value " + v.get_str() + " outside [" + lo.get_str() +
                                         ", " + hi.get_str() + "]");
  }
  return v;
}

}  // namespace qrsteg
