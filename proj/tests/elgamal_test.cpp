#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qrsteg/elgamal.hpp"
#include "qrsteg/error.hpp"

namespace qrsteg {
namespace {

using testing::naive_modpow;

const std::vector<std::uint8_t> kSamplePlain{12, 66, 23, 204, 138, 76, 0, 94, 51};
const std::vector<std::uint8_t> kSampleCipher{16, 65, 252, 205, 148, 190, 2, 15, 75};
const std::vector<BigInt> kSampleK{87, 578, 734, 55, 376, 622};

ElGamalPublic small_public() { return {997, 809, 12}; }
ElGamalPublic toy_public() { return {23, 5, 8}; }

std::vector<BigInt> big_list(std::initializer_list<long> values) {
  std::vector<BigInt> out;
  for (long v : values) out.emplace_back(v);
  return out;
}

TEST(ModPow, KnownValues) {
  EXPECT_EQ(modpow(809, 420, 997), 12);
  EXPECT_EQ(modpow(809, 0, 997), 1);
  EXPECT_EQ(modpow(10, 16, 23), 4);
}

TEST(ModPow, RejectsTinyModulus) {
  try {
    modpow(3, 4, 1);
    FAIL() << "expected invalid-modulus";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_modulus);
  }
}

TEST(ModPow, NegativeBaseReduces) { EXPECT_EQ(modpow(-1, 3, 7), 6); }

TEST(ModPow, MatchesNaiveMultiplicationBelow256) {
  for (std::uint64_t m = 2; m < 256; m += 3) {
    for (std::uint64_t b = 0; b < 256; b += 7) {
      for (std::uint64_t e = 0; e < 256; e += 5) {
        ASSERT_EQ(modpow(BigInt(b), BigInt(e), BigInt(m)), naive_modpow(b, e, m)) << b << "^" << e << " mod " << m;
      }
    }
  }
}

TEST(KeyGen, ForcedExponent997) {
  ScriptedSource forced({BigInt(420)});
  const KeyPair keys = keygen(toy_group(), forced);
  EXPECT_EQ(keys.pub.p, 997);
  EXPECT_EQ(keys.pub.alpha, 809);
  EXPECT_EQ(keys.pub.y, 12);
  EXPECT_EQ(keys.priv.x, 420);
}

TEST(KeyGen, ToyGroup) {
  ScriptedSource forced({BigInt(6)});
  const KeyPair keys = keygen(GroupParams{23, 5, big_list({2, 11})}, forced);
  EXPECT_EQ(keys.pub.y, 8);
}

TEST(KeyGen, RandomOutputsSatisfyDefinition) {
  SplitMixSource rng(7);
  for (int i = 0; i < 200; ++i) {
    const KeyPair keys = keygen(toy_group(), rng);
    EXPECT_GT(keys.priv.x, 1);
    EXPECT_LT(keys.priv.x, keys.pub.p - 2);
    EXPECT_EQ(keys.pub.y, modpow(keys.pub.alpha, keys.priv.x, keys.pub.p));
    EXPECT_TRUE(check_key_pair(keys.pub, keys.priv));
  }
}

TEST(KeyGen, RejectsBadGroups) {
  SplitMixSource rng(1);
  EXPECT_THROW(keygen(GroupParams{996, 5, {}}, rng), Error);                // composite
  EXPECT_THROW(keygen(GroupParams{23, 22, {}}, rng), Error);                // alpha = p - 1
  EXPECT_THROW(keygen(GroupParams{23, 2, big_list({2, 11})}, rng), Error);  // 2 has order 11
  EXPECT_THROW(keygen(GroupParams{23, 5, big_list({2})}, rng), Error);      // incomplete factors
}

TEST(KeyGen, DefaultGroupIsSafePrimeWithGenerator) {
  const GroupParams g = default_group();
  EXPECT_EQ(mpz_sizeinbase(g.p.get_mpz_t(), 2), 256u);
  EXPECT_TRUE(is_probable_prime(g.p));
  EXPECT_TRUE(is_probable_prime((g.p - 1) / 2));
  EXPECT_TRUE(validate_group(g.p, g.alpha, g.order_factors));
}

TEST(KeyGen, GeneratedSafePrimeGroup) {
  SplitMixSource rng(99);
  const GroupParams g = generate_safe_prime_group(64, rng);
  EXPECT_EQ(mpz_sizeinbase(g.p.get_mpz_t(), 2), 64u);
  EXPECT_TRUE(validate_group(g.p, g.alpha, g.order_factors));
}

TEST(PrimitiveRoot, ExhaustiveOn23) {
  // Brute-force order computation as the oracle.
  const std::vector<BigInt> factors = big_list({2, 11});
  for (std::uint64_t a = 2; a < 22; ++a) {
    std::uint64_t order = 1;
    while (naive_modpow(a, order, 23) != 1) ++order;
    EXPECT_EQ(is_primitive_root(BigInt(a), 23, factors), order == 22) << a;
  }
  EXPECT_TRUE(is_primitive_root(809, 997, toy_group().order_factors));
}

TEST(PrimitiveRoot, EasyOrderFactors) {
  EXPECT_EQ(easy_order_factors(997), big_list({2, 3, 83}));
  EXPECT_EQ(easy_order_factors(23), big_list({2, 11}));
  const GroupParams g = default_group();
  EXPECT_EQ(easy_order_factors(g.p), (std::vector<BigInt>{2, (g.p - 1) / 2}));
  // 2^89 - 1 is prime but neither safe nor small.
  EXPECT_TRUE(easy_order_factors(BigInt("618970019642690137449562111")).empty());
  EXPECT_TRUE(validate_group(997, 809, easy_order_factors(997)));
  EXPECT_THROW(validate_group(997, 2, easy_order_factors(997)), Error);
}

TEST(Oec, EncryptKnownVector) {
  const auto c = oec_encrypt(10, toy_public(), 3);
  EXPECT_EQ(c.d, 10);
  EXPECT_EQ(c.z, 14);
  EXPECT_EQ(oec_encrypt(0, toy_public(), 3).z, 0);
  EXPECT_EQ(oec_encrypt(1, toy_public(), 3).z, 6);
}

TEST(Oec, DecryptKnownVector) {
  EXPECT_EQ(oec_decrypt(10, 14, toy_public(), {6}), 10);
  EXPECT_EQ(oec_decrypt(10, 0, toy_public(), {6}), 0);
}

TEST(Oec, ExhaustiveRoundTripOn23) {
  for (long k = 2; k < 21; ++k) {
    for (long m = 0; m < 23; ++m) {
      const auto c = oec_encrypt(m, toy_public(), k);
      // Oracle: the ciphertext pair recomputed with naive arithmetic.
      ASSERT_EQ(c.d, naive_modpow(5, k, 23));
      ASSERT_EQ(c.z, naive_modpow(8, k, 23) * m % 23);
      ASSERT_EQ(oec_decrypt(c.d, c.z, toy_public(), {6}), m);
    }
  }
}

TEST(Oec, ErrorPaths) {
  try {
    oec_encrypt(23, toy_public(), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::message_range);
  }
  try {
    oec_decrypt(0, 5, toy_public(), {6});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_ciphertext);
  }
  EXPECT_THROW(oec_encrypt(5, toy_public(), 1), Error);
}

TEST(IntToBytes, LittleEndianMinimal) {
  EXPECT_EQ(int_to_bytes_le(796), (Bytes{28, 3}));
  EXPECT_EQ(int_to_bytes_le(30), (Bytes{30}));
  EXPECT_EQ(int_to_bytes_le(255), (Bytes{255}));
  EXPECT_EQ(int_to_bytes_le(256), (Bytes{0, 1}));
  EXPECT_EQ(int_to_bytes_le(BigInt("18446744073709551616")), (Bytes{0, 0, 0, 0, 0, 0, 0, 0, 1}));
  try {
    int_to_bytes_le(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_value);
  }
}

TEST(Mec, KnownKeystream) {
  ScriptedSource ks_rng(kSampleK);
  const Keystream ks = mec_keystream(small_public(), 9, ks_rng, true);
  EXPECT_EQ(ks.bp, big_list({320, 619, 122, 273, 171, 918}));
  EXPECT_EQ(ks.fsk, (Bytes{28, 3, 235, 1, 30, 242, 2, 81, 120}));
  EXPECT_EQ(ks.k_list, kSampleK);
}

TEST(Mec, EmptyKeystream) {
  ScriptedSource none({});
  const Keystream ks = mec_keystream(small_public(), 0, none);
  EXPECT_TRUE(ks.bp.empty());
  EXPECT_TRUE(ks.fsk.empty());
}

TEST(Mec, KnownEncryptDecrypt) {
  ScriptedSource rng(kSampleK);
  const CipherBundle bundle = mec_encrypt(kSamplePlain, small_public(), rng);
  EXPECT_EQ(bundle.z, kSampleCipher);
  EXPECT_EQ(bundle.plain_len, 9u);
  EXPECT_EQ(bundle.bp, big_list({320, 619, 122, 273, 171, 918}));
  EXPECT_EQ(mec_decrypt(bundle, 997, {420}), kSamplePlain);
}

TEST(Mec, ZeroPlaintextRevealsKeystream) {
  ScriptedSource rng(kSampleK);
  const CipherBundle bundle = mec_encrypt(Bytes(9, 0), small_public(), rng);
  EXPECT_EQ(bundle.z, (Bytes{28, 3, 235, 1, 30, 242, 2, 81, 120}));
}

TEST(Mec, EqualBytesEncryptDifferently) {
  ScriptedSource rng(kSampleK);
  const CipherBundle bundle = mec_encrypt(Bytes{12, 12}, small_public(), rng);
  EXPECT_EQ(bundle.z, (Bytes{16, 15}));
}

TEST(Mec, EmptyBundle) {
  SplitMixSource rng(3);
  const CipherBundle bundle = mec_encrypt({}, small_public(), rng);
  EXPECT_TRUE(bundle.z.empty());
  EXPECT_TRUE(bundle.bp.empty());
  EXPECT_TRUE(mec_decrypt(bundle, 997, {420}).empty());
}

TEST(Mec, KeystreamConsistencyWithReceiver) {
  SplitMixSource rng(11);
  const Keystream ks = mec_keystream(small_public(), 500, rng, true);
  ASSERT_EQ(ks.fsk.size(), 500u);
  Bytes rebuilt;
  for (std::size_t i = 0; i < ks.bp.size(); ++i) {
    EXPECT_EQ(ks.bp[i], modpow(809, ks.k_list[i], 997));
    const Bytes sk = int_to_bytes_le(modpow(ks.bp[i], 420, 997));
    rebuilt.insert(rebuilt.end(), sk.begin(), sk.end());
  }
  rebuilt.resize(500);
  EXPECT_EQ(rebuilt, ks.fsk);
}

TEST(Mec, RandomRoundTripProperty) {
  SplitMixSource gen(2024);
  for (int trial = 0; trial < 10000; ++trial) {
    const KeyPair keys = keygen(toy_group(), gen);
    Bytes plain(gen.below(513));
    for (auto& b : plain) b = static_cast<std::uint8_t>(gen.below(256));
    const CipherBundle bundle = mec_encrypt(plain, keys.pub, gen);
    ASSERT_EQ(bundle.z.size(), plain.size());
    // XOR involution: plain ^ z is the keystream, identical to what the
    // receiver regenerates.
    const Bytes fsk = mec_regenerate(bundle.bp, keys.pub.p, keys.priv, plain.size());
    for (std::size_t i = 0; i < plain.size(); ++i) ASSERT_EQ(plain[i] ^ bundle.z[i], fsk[i]);
    ASSERT_EQ(mec_decrypt(bundle, keys.pub.p, keys.priv), plain);
  }
}

TEST(Mec, ProductionGroupRoundTrip) {
  SplitMixSource rng(5);
  const KeyPair keys = keygen(default_group(), rng);
  Bytes plain(3168);
  for (auto& b : plain) b = static_cast<std::uint8_t>(rng.below(256));
  const CipherBundle bundle = mec_encrypt(plain, keys.pub, rng);
  EXPECT_EQ(mec_decrypt(bundle, keys.pub.p, keys.priv), plain);
  EXPECT_LT(bundle.bp.size(), 120u);
}

TEST(Mec, ShortBundleIsCorrupt) {
  ScriptedSource rng(kSampleK);
  CipherBundle bundle = mec_encrypt(kSamplePlain, small_public(), rng);
  bundle.bp.resize(2);
  try {
    mec_decrypt(bundle, 997, {420});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::corrupt_bundle);
  }
}

TEST(BundleFile, RoundTripAndLayout) {
  ScriptedSource rng(kSampleK);
  const CipherBundle bundle = mec_encrypt(kSamplePlain, small_public(), rng);
  std::stringstream buf;
  write_bundle(buf, bundle);
  const std::string bytes = buf.str();
  ASSERT_GE(bytes.size(), 21u);
  EXPECT_EQ(bytes.substr(0, 4), "MECB");
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(static_cast<unsigned char>(bytes[5]), 9);  // plain_len LE
  EXPECT_EQ(static_cast<unsigned char>(bytes[13]), 6);  // bp count LE
  EXPECT_EQ(bytes.substr(21, 4), std::string("\x03\x00\x00\x00", 4));
  EXPECT_EQ(bytes.substr(25, 3), "320");
  EXPECT_EQ(bytes.substr(bytes.size() - 9), std::string(kSampleCipher.begin(), kSampleCipher.end()));

  const CipherBundle back = read_bundle(buf);
  EXPECT_EQ(back.bp, bundle.bp);
  EXPECT_EQ(back.z, bundle.z);
  EXPECT_EQ(back.plain_len, bundle.plain_len);
}

TEST(BundleFile, RejectsGarbage) {
  std::stringstream bad("NOPE");
  EXPECT_THROW(read_bundle(bad), Error);
  ScriptedSource rng(kSampleK);
  std::stringstream buf;
  write_bundle(buf, mec_encrypt(kSamplePlain, small_public(), rng));
  std::string truncated = buf.str();
  truncated.pop_back();
  std::stringstream cut(truncated);
  try {
    read_bundle(cut);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::corrupt_bundle);
  }
}

TEST(KeyFile, RoundTrip) {
  const auto dir = testing::scratch_dir("keyfile");
  save_public_key(dir / "pub.json", small_public());
  save_private_key(dir / "priv.json", {420});
  const ElGamalPublic pub = load_public_key(dir / "pub.json");
  EXPECT_EQ(pub.p, 997);
  EXPECT_EQ(pub.alpha, 809);
  EXPECT_EQ(pub.y, 12);
  EXPECT_EQ(load_private_key(dir / "priv.json").x, 420);
  EXPECT_THROW(load_public_key(dir / "missing.json"), Error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace qrsteg
