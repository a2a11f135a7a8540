#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qrsteg/image.hpp"

namespace qrsteg {

struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int32_t> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c, std::int32_t fill = 0) : rows(r), cols(c), data(r * c, fill) {}

  std::int32_t& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  std::int32_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  bool operator==(const IntMatrix&) const = default;
};

/// One level of the 2D integer Haar (S-transform). Each band is
/// (rows/2) x (cols/2). HL/HH come from the horizontal detail half.
struct SubBands {
  IntMatrix ll;
  IntMatrix lh;
  IntMatrix hl;
  IntMatrix hh;
};

/// floor(v / 2), rounding toward negative infinity.
constexpr std::int32_t floor_half(std::int32_t v) noexcept { return v >> 1; }

/// Forward pair rule: s = floor((a + b) / 2), d = a - b.
constexpr void haar_pair_forward(std::int32_t a, std::int32_t b, std::int32_t& s, std::int32_t& d) noexcept {
  s = floor_half(a + b);
  d = a - b;
}

/// Inverse pair rule: b = s - floor(d / 2), a = d + b.
constexpr void haar_pair_inverse(std::int32_t s, std::int32_t d, std::int32_t& a, std::int32_t& b) noexcept {
  b = s - floor_half(d);
  a = d + b;
}

IntMatrix to_int_matrix(const GrayImage& img);

SubBands fwd_haar_int(const IntMatrix& plane);
IntMatrix inv_haar_int(const SubBands& bands);

}  // namespace qrsteg
