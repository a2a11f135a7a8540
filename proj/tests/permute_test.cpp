#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "qrsteg/error.hpp"
#include "qrsteg/permute.hpp"

namespace qrsteg {
namespace {

TEST(SplitMix, ReferenceOutputs) {
  std::uint64_t s = 0;
  EXPECT_EQ(prng_next(s), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(prng_next(s), 0x6E789E6AA1B965F4ULL);
}

TEST(Fnv, ReferenceValues) {
  EXPECT_EQ(fnv1a64(std::string_view("")), 0xCBF29CE484222325ULL);
  EXPECT_EQ(fnv1a64(std::string_view("a")), 0xAF63DC4C8601EC8CULL);
}

TEST(Permutation, ReferenceShuffles) {
  EXPECT_EQ(keyed_permutation({42}, tags::kHL, 10).forward,
            (std::vector<std::uint32_t>{3, 8, 9, 1, 5, 0, 4, 7, 6, 2}));
  EXPECT_EQ(keyed_permutation({0}, 0, 8).forward, (std::vector<std::uint32_t>{2, 5, 0, 3, 4, 6, 1, 7}));
}

TEST(Permutation, TrivialSizes) {
  EXPECT_TRUE(keyed_permutation({1}, tags::kU, 0).forward.empty());
  EXPECT_EQ(keyed_permutation({1}, tags::kU, 1).forward, (std::vector<std::uint32_t>{0}));
}

TEST(Permutation, BijectionAcrossSizes) {
  for (std::size_t n : {2u, 3u, 17u, 1000u, 25344u}) {
    const Permutation p = keyed_permutation({7}, tags::kHH, n);
    EXPECT_TRUE(is_bijection(p));
    std::vector<std::uint32_t> sorted = p.forward;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(sorted[i], i);
  }
}

TEST(Permutation, TagsGiveDistinctOrders) {
  const std::uint64_t all[] = {tags::kHL, tags::kHH, tags::kU, tags::kV,
                               tags::kPayloadL, tags::kPayloadM, tags::kPayloadQ, tags::kPayloadH};
  std::set<std::vector<std::uint32_t>> seen;
  for (auto t : all) seen.insert(keyed_permutation({123}, t, 64).forward);
  EXPECT_EQ(seen.size(), 8u);
  EXPECT_NE(keyed_permutation({1}, tags::kHL, 64), keyed_permutation({2}, tags::kHL, 64));
}

TEST(Permutation, InvertAndApply) {
  const Permutation p{{2, 0, 1}};
  EXPECT_EQ(invert(p).forward, (std::vector<std::uint32_t>{1, 2, 0}));
  const std::vector<char> in{'a', 'b', 'c'};
  const auto out = apply<char>(p, in);
  EXPECT_EQ(out, (std::vector<char>{'c', 'a', 'b'}));
  EXPECT_EQ(apply_inverse<char>(p, out), in);
  const auto big = keyed_permutation({9}, tags::kV, 5000);
  const auto inv = invert(big);
  for (std::size_t i = 0; i < 5000; ++i) ASSERT_EQ(inv.forward[big.forward[i]], i);
}

TEST(Permutation, CorruptRejected) {
  try {
    invert(Permutation{{0, 0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::corrupt_permutation);
  }
  EXPECT_FALSE(is_bijection(Permutation{{0, 3, 1}}));
}

TEST(BoundedDraw, StaysInRangeAndCoversIt) {
  std::uint64_t s = 77;
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto v = bounded_draw(s, 7);
    ASSERT_LT(v, 7u);
    ++hist[v];
  }
  for (int h : hist) EXPECT_NEAR(h, 10000, 500);
}

TEST(StegoKey, Fingerprint) {
  const StegoKey k{0};
  std::uint8_t zeros[8] = {};
  EXPECT_EQ(k.fingerprint(), fnv1a64(std::span<const std::uint8_t>(zeros, 8)));
  EXPECT_EQ(StegoKey::from_passphrase("a").seed, 0xAF63DC4C8601EC8CULL);
}

}  // namespace
}  // namespace qrsteg
