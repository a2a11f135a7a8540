#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qrsteg/error.hpp"
#include "qrsteg/random.hpp"
#include "qrsteg/wavelet.hpp"

namespace qrsteg {
namespace {

IntMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  IntMatrix m(rows.size(), rows.begin()->size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (int v : row) m.at(r, c++) = v;
    ++r;
  }
  return m;
}

TEST(HaarPair, FloorHalfMatchesFloatingFloor) {
  for (int v = -1024; v <= 1024; ++v) ASSERT_EQ(floor_half(v), testing::floor_div2(v)) << v;
  EXPECT_EQ(floor_half(-1), -1);
  EXPECT_EQ(floor_half(-3), -2);
}

TEST(HaarPair, CornerValues) {
  const int corners[] = {0, 1, 127, 128, 254, 255};
  for (int a : corners) {
    for (int b : corners) {
      int s = 0, d = 0, ra = 0, rb = 0;
      haar_pair_forward(a, b, s, d);
      EXPECT_EQ(s, testing::floor_div2(a + b));
      EXPECT_EQ(d, a - b);
      haar_pair_inverse(s, d, ra, rb);
      EXPECT_EQ(ra, a);
      EXPECT_EQ(rb, b);
    }
  }
}

TEST(HaarPair, NegativeDetailCases) {
  int a = 0, b = 0;
  haar_pair_inverse(0, -1, a, b);  // (a,b) = (0,1)
  EXPECT_EQ(a, 0);
  EXPECT_EQ(b, 1);
  int s = 0, d = 0;
  haar_pair_forward(0, 255, s, d);
  EXPECT_EQ(s, 127);
  EXPECT_EQ(d, -255);
}

TEST(Haar2d, PaddedExampleBands) {
  const IntMatrix img = from_rows({{12, 66, 23, 0}, {204, 138, 76, 0}, {0, 94, 51, 0}, {0, 0, 0, 0}});
  const SubBands b = fwd_haar_int(img);
  EXPECT_EQ(b.ll, from_rows({{105, 24}, {23, 12}}));
  EXPECT_EQ(b.lh, from_rows({{-132, -27}, {47, 25}}));
  EXPECT_EQ(b.hl, from_rows({{6, 49}, {-47, 25}}));
  EXPECT_EQ(b.hh, from_rows({{-120, -53}, {-94, 51}}));
  EXPECT_EQ(inv_haar_int(b), img);
}

TEST(Haar2d, RandomRoundTrip) {
  SplitMixSource rng(5);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t rows = 2 * (1 + rng.below(6)), cols = 2 * (1 + rng.below(6));
    IntMatrix m(rows, cols);
    for (auto& v : m.data) v = static_cast<std::int32_t>(rng.below(256));
    const SubBands b = fwd_haar_int(m);
    ASSERT_EQ(b.hl.rows, rows / 2);
    ASSERT_EQ(b.hl.cols, cols / 2);
    ASSERT_EQ(inv_haar_int(b), m);
  }
}

TEST(Haar2d, LsbEditsPersistAndStayBounded) {
  SplitMixSource rng(8);
  for (int i = 0; i < 2000; ++i) {
    IntMatrix m(8, 8);
    for (auto& v : m.data) v = 2 + static_cast<std::int32_t>(rng.below(252));
    SubBands b = fwd_haar_int(m);
    for (auto& v : b.hl.data) v = 2 * floor_half(v) + static_cast<std::int32_t>(rng.below(2));
    for (auto& v : b.hh.data) v = 2 * floor_half(v) + static_cast<std::int32_t>(rng.below(2));
    const IntMatrix out = inv_haar_int(b);
    for (std::size_t k = 0; k < out.data.size(); ++k) {
      ASSERT_LE(std::abs(out.data[k] - m.data[k]), 1);
      ASSERT_GE(out.data[k], 0);
      ASSERT_LE(out.data[k], 255);
    }
    const SubBands again = fwd_haar_int(out);
    ASSERT_EQ(again.hl, b.hl);
    ASSERT_EQ(again.hh, b.hh);
  }
}

TEST(Haar2d, ShapeErrors) {
  EXPECT_THROW(fwd_haar_int(IntMatrix(3, 4)), Error);
  EXPECT_THROW(fwd_haar_int(IntMatrix(4, 5)), Error);
  EXPECT_THROW(fwd_haar_int(IntMatrix(0, 0)), Error);
  SubBands b = fwd_haar_int(IntMatrix(4, 4));
  b.hh = IntMatrix(1, 2);
  EXPECT_THROW(inv_haar_int(b), Error);
}

}  // namespace
}  // namespace qrsteg
