#include "qrsteg/elgamal.hpp"

#include <algorithm>

#include "qrsteg/error.hpp"

namespace qrsteg {

namespace {

constexpr const char* kSafePrime256 =
    "57896044618658097711785492504343953926634992332820282019728792003956565016447";

}  // namespace

GroupParams toy_group() {
  // 996 = 2^2 * 3 * 83
  return GroupParams{BigInt(997), BigInt(809), {BigInt(2), BigInt(3), BigInt(83)}};
}

GroupParams default_group() {
  const BigInt p(kSafePrime256);
  const BigInt q = (p - 1) / 2;
  return GroupParams{p, BigInt(5), {BigInt(2), q}};
}

GroupParams generate_safe_prime_group(unsigned bits, RandomSource& rng) {
  if (bits < 4) throw Error(Errc::key_parameter, "safe prime needs at least 4 bits");
  const BigInt lo = BigInt(1) << (bits - 2);
  const BigInt hi = (BigInt(1) << (bits - 1)) - 1;
  for (;;) {
    BigInt q = rng.uniform_between(lo, hi);
    mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
    for (; q <= hi; mpz_nextprime(q.get_mpz_t(), q.get_mpz_t())) {
      const BigInt p = 2 * q + 1;
      if (!is_probable_prime(p)) continue;
      GroupParams group{p, BigInt(2), {BigInt(2), q}};
      while (!is_primitive_root(group.alpha, p, group.order_factors)) ++group.alpha;
      return group;
    }
  }
}

BigInt modpow(const BigInt& base, const BigInt& exp, const BigInt& modulus) {
  if (modulus < 2) throw Error(Errc::invalid_modulus, "modulus must be at least 2");
  if (exp < 0) throw Error(Errc::invalid_value, "exponent must be non-negative");

  BigInt b = base % modulus;
  if (b < 0) b += modulus;
  BigInt result = 1;
  const std::size_t bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = result * result % modulus;
    if (mpz_tstbit(exp.get_mpz_t(), i)) result = result * b % modulus;
  }
  return result % modulus;
}

bool is_probable_prime(const BigInt& n, int rounds) {
  return mpz_probab_prime_p(n.get_mpz_t(), rounds) > 0;
}

bool is_primitive_root(const BigInt& alpha, const BigInt& p, std::span<const BigInt> order_factors) {
  const BigInt order = p - 1;
  for (const BigInt& f : order_factors) {
    if (f < 2 || order % f != 0) return false;
    if (modpow(alpha, order / f, p) == 1) return false;
  }
  return true;
}

bool validate_group(const BigInt& p, const BigInt& alpha, std::span<const BigInt> order_factors) {
  if (p < 5 || !is_probable_prime(p)) throw Error(Errc::key_parameter, "p is not prime");
  if (alpha <= 1 || alpha >= p - 1) throw Error(Errc::key_parameter, "alpha must satisfy 1 < alpha < p - 1");
  if (order_factors.empty()) return false;

  // The factor list must be complete: dividing them out of p - 1 leaves 1.
  BigInt rest = p - 1;
  for (const BigInt& f : order_factors) {
    if (!is_probable_prime(f)) throw Error(Errc::key_parameter, "order factor " + f.get_str() + " is not prime");
    while (rest % f == 0) rest /= f;
  }
  if (rest != 1) throw Error(Errc::key_parameter, "order factors do not cover p - 1");
  if (!is_primitive_root(alpha, p, order_factors)) {
    throw Error(Errc::key_parameter, "alpha is not a primitive root of p");
  }
  return true;
}

KeyPair keygen(const GroupParams& group, RandomSource& rng) {
  validate_group(group.p, group.alpha, group.order_factors);
  ElGamalPrivate priv{rng.uniform_between(2, group.p - 3)};
  ElGamalPublic pub{group.p, group.alpha, modpow(group.alpha, priv.x, group.p)};
  return KeyPair{std::move(pub), std::move(priv)};
}

std::vector<BigInt> easy_order_factors(const BigInt& p) {
  if (p < 5) return {};
  const BigInt n = p - 1;
  const BigInt q = n / 2;
  if (n % 2 == 0 && is_probable_prime(q)) return {BigInt(2), q};
  if (mpz_sizeinbase(p.get_mpz_t(), 2) > 62) return {};
  std::uint64_t rest = n.get_ui();
  std::vector<BigInt> factors;
  for (std::uint64_t f = 2; f * f <= rest; ++f) {
    if (rest % f) continue;
    factors.emplace_back(static_cast<unsigned long>(f));
    while (rest % f == 0) rest /= f;
  }
  if (rest > 1) factors.emplace_back(static_cast<unsigned long>(rest));
  return factors;
}

void validate_public(const ElGamalPublic& pub) {
  if (pub.p < 5 || !is_probable_prime(pub.p)) throw Error(Errc::key_parameter, "p is not prime");
  if (pub.alpha <= 1 || pub.alpha >= pub.p - 1) {
    throw Error(Errc::key_parameter, "alpha must satisfy 1 < alpha < p - 1");
  }
  if (pub.y <= 0 || pub.y >= pub.p) throw Error(Errc::key_parameter, "y must satisfy 0 < y < p");
}

bool check_key_pair(const ElGamalPublic& pub, const ElGamalPrivate& priv) {
  return priv.x > 1 && priv.x < pub.p - 2 && modpow(pub.alpha, priv.x, pub.p) == pub.y;
}

OecCiphertext oec_encrypt(const BigInt& m, const ElGamalPublic& pub, const BigInt& k) {
  if (m < 0 || m >= pub.p) throw Error(Errc::message_range, "message unit must lie in [0, p - 1]");
  if (k <= 1 || k >= pub.p - 2) throw Error(Errc::key_parameter, "ephemeral exponent must satisfy 1 < k < p - 2");
  return OecCiphertext{modpow(pub.alpha, k, pub.p), modpow(pub.y, k, pub.p) * m % pub.p};
}

BigInt oec_decrypt(const BigInt& d, const BigInt& z, const ElGamalPublic& pub, const ElGamalPrivate& priv) {
  if (d <= 0 || d >= pub.p) throw Error(Errc::invalid_ciphertext, "d must satisfy 0 < d < p");
  if (z < 0 || z >= pub.p) throw Error(Errc::invalid_ciphertext, "z must satisfy 0 <= z < p");
  // d^(p-1-x) is the inverse of d^x by Fermat.
  const BigInt r = modpow(d, pub.p - 1 - priv.x, pub.p);
  return r * z % pub.p;
}

Bytes int_to_bytes_le(const BigInt& v) {
  if (v <= 0) throw Error(Errc::invalid_value, "byte expansion needs a positive integer");
  Bytes out((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8);
  std::size_t written = 0;
  mpz_export(out.data(), &written, -1, 1, 0, 0, v.get_mpz_t());
  out.resize(written);
  return out;
}

Keystream mec_keystream(const ElGamalPublic& pub, std::size_t n, RandomSource& rng, bool retain_exponents) {
  Keystream ks;
  ks.fsk.reserve(n + 64);
  const BigInt k_lo = 2;
  const BigInt k_hi = pub.p - 3;
  while (ks.fsk.size() < n) {
    BigInt k = rng.uniform_between(k_lo, k_hi);
    ks.bp.push_back(modpow(pub.alpha, k, pub.p));
    const Bytes sk = int_to_bytes_le(modpow(pub.y, k, pub.p));
    ks.fsk.insert(ks.fsk.end(), sk.begin(), sk.end());
    if (retain_exponents) ks.k_list.push_back(std::move(k));
  }
  ks.fsk.resize(n);
  return ks;
}

Bytes mec_regenerate(std::span<const BigInt> bp, const BigInt& p, const ElGamalPrivate& priv, std::size_t n) {
  Bytes fsk;
  fsk.reserve(n + 64);
  for (const BigInt& d : bp) {
    if (fsk.size() >= n) break;
    if (d <= 0 || d >= p) throw Error(Errc::corrupt_bundle, "sender value outside (0, p)");
    const Bytes sk = int_to_bytes_le(modpow(d, priv.x, p));
    fsk.insert(fsk.end(), sk.begin(), sk.end());
  }
  if (fsk.size() < n) throw Error(Errc::corrupt_bundle, "sender values yield a keystream shorter than the payload");
  fsk.resize(n);
  return fsk;
}

CipherBundle mec_encrypt(std::span<const std::uint8_t> plain, const ElGamalPublic& pub, RandomSource& rng) {
  Keystream ks = mec_keystream(pub, plain.size(), rng);
  CipherBundle bundle;
  bundle.plain_len = plain.size();
  bundle.z.resize(plain.size());
  std::transform(plain.begin(), plain.end(), ks.fsk.begin(), bundle.z.begin(),
                 [](std::uint8_t a, std::uint8_t b) { return static_cast<std::uint8_t>(a ^ b); });
  bundle.bp = std::move(ks.bp);
  return bundle;
}

Bytes mec_decrypt(const CipherBundle& bundle, const BigInt& p, const ElGamalPrivate& priv) {
  if (bundle.z.size() != bundle.plain_len) throw Error(Errc::corrupt_bundle, "ciphertext length differs from plain_len");
  const Bytes fsk = mec_regenerate(bundle.bp, p, priv, bundle.z.size());
  Bytes plain(bundle.z.size());
  std::transform(bundle.z.begin(), bundle.z.end(), fsk.begin(), plain.begin(),
                 [](std::uint8_t a, std::uint8_t b) { return static_cast<std::uint8_t>(a ^ b); });
  return plain;
}

}  // namespace qrsteg
