#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "qrsteg/random.hpp"

namespace qrsteg {

using Bytes = std::vector<std::uint8_t>;

struct ElGamalPublic {
  BigInt p;
  BigInt alpha;
  BigInt y;  // alpha^x mod p
};

struct ElGamalPrivate {
  BigInt x;
};

struct KeyPair {
  ElGamalPublic pub;
  ElGamalPrivate priv;
};

/// A prime modulus with a primitive root. `order_factors` lists the distinct
/// prime factors of p - 1 when known; the primitive-root check needs them.
struct GroupParams {
  BigInt p;
  BigInt alpha;
  std::vector<BigInt> order_factors;
};

/// p = 997, alpha = 809. Small enough to check by hand.
GroupParams toy_group();

/// Built-in 256-bit safe prime p = 2q + 1 with generator 5.
GroupParams default_group();

/// Searches for a fresh safe prime of exactly `bits` bits and the smallest
/// generator. Slow beyond a few hundred bits.
GroupParams generate_safe_prime_group(unsigned bits, RandomSource& rng);

/// base^exp mod modulus by left-to-right square-and-multiply. Result in
/// [0, modulus).
BigInt modpow(const BigInt& base, const BigInt& exp, const BigInt& modulus);

bool is_probable_prime(const BigInt& n, int rounds = 40);

/// alpha generates (Z/pZ)* iff alpha^((p-1)/f) != 1 for every prime f | p-1.
bool is_primitive_root(const BigInt& alpha, const BigInt& p, std::span<const BigInt> order_factors);

/// Throws Errc::key_parameter unless p is prime and 1 < alpha < p - 1. The
/// primitive-root property is checked only when `order_factors` is non-empty;
/// returns false when it could not be verified.
bool validate_group(const BigInt& p, const BigInt& alpha, std::span<const BigInt> order_factors = {});

/// Private exponent drawn uniformly from the open interval (1, p - 2).
KeyPair keygen(const GroupParams& group, RandomSource& rng);

/// Distinct prime factors of p - 1 when cheap to find: safe primes and
/// p below 2^62 (trial division). Empty otherwise.
std::vector<BigInt> easy_order_factors(const BigInt& p);

/// Throws Errc::key_parameter if the public triple is inconsistent with itself
/// (range checks only; y = alpha^x is checked by `check_key_pair`).
void validate_public(const ElGamalPublic& pub);
bool check_key_pair(const ElGamalPublic& pub, const ElGamalPrivate& priv);

// Classical scheme: one group element per message unit.

struct OecCiphertext {
  BigInt d;  // alpha^k mod p
  BigInt z;  // y^k * m mod p
};

OecCiphertext oec_encrypt(const BigInt& m, const ElGamalPublic& pub, const BigInt& k);
BigInt oec_decrypt(const BigInt& d, const BigInt& z, const ElGamalPublic& pub, const ElGamalPrivate& priv);

// Modified scheme: shared secrets expanded into an XOR keystream.

/// Minimal little-endian byte expansion (least-significant byte first).
Bytes int_to_bytes_le(const BigInt& v);

struct Keystream {
  std::vector<BigInt> bp;      // sender public values alpha^k, one per draw
  Bytes fsk;                   // truncated to the requested length
  std::vector<BigInt> k_list;  // filled only when exponents are retained
};

Keystream mec_keystream(const ElGamalPublic& pub, std::size_t n, RandomSource& rng,
                        bool retain_exponents = false);

/// Regenerates the receiver-side keystream from the sender values.
Bytes mec_regenerate(std::span<const BigInt> bp, const BigInt& p, const ElGamalPrivate& priv, std::size_t n);

struct CipherBundle {
  std::vector<BigInt> bp;
  Bytes z;
  std::uint64_t plain_len = 0;
};

CipherBundle mec_encrypt(std::span<const std::uint8_t> plain, const ElGamalPublic& pub, RandomSource& rng);
Bytes mec_decrypt(const CipherBundle& bundle, const BigInt& p, const ElGamalPrivate& priv);

// Files.

void write_bundle(std::ostream& out, const CipherBundle& bundle);
CipherBundle read_bundle(std::istream& in);

void save_public_key(const std::filesystem::path& path, const ElGamalPublic& pub);
void save_private_key(const std::filesystem::path& path, const ElGamalPrivate& priv);
ElGamalPublic load_public_key(const std::filesystem::path& path);
ElGamalPrivate load_private_key(const std::filesystem::path& path);

}  // namespace qrsteg
