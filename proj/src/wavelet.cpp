#include "qrsteg/wavelet.hpp"

#include <string>

#include "qrsteg/error.hpp"

namespace qrsteg {

static_assert((-5 >> 1) == -3, "arithmetic right shift required for floor semantics");

IntMatrix to_int_matrix(const GrayImage& img) {
  IntMatrix m(img.height, img.width);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) m.data[i] = img.pixels[i];
  return m;
}

SubBands fwd_haar_int(const IntMatrix& plane) {
  if (plane.rows == 0 || plane.cols == 0 || plane.rows % 2 != 0 || plane.cols % 2 != 0) {
    throw Error(Errc::shape, "wavelet input must have positive even dimensions, got " +
                                 std::to_string(plane.rows) + "x" + std::to_string(plane.cols));
  }
  const std::size_t hr = plane.rows / 2;
  const std::size_t hc = plane.cols / 2;

  // Row pass: approximations to the left half, details to the right half.
  IntMatrix low(plane.rows, hc);
  IntMatrix high(plane.rows, hc);
  for (std::size_t r = 0; r < plane.rows; ++r) {
    for (std::size_t j = 0; j < hc; ++j) {
      haar_pair_forward(plane.at(r, 2 * j), plane.at(r, 2 * j + 1), low.at(r, j), high.at(r, j));
    }
  }

  SubBands bands{IntMatrix(hr, hc), IntMatrix(hr, hc), IntMatrix(hr, hc), IntMatrix(hr, hc)};
  for (std::size_t i = 0; i < hr; ++i) {
    for (std::size_t j = 0; j < hc; ++j) {
      haar_pair_forward(low.at(2 * i, j), low.at(2 * i + 1, j), bands.ll.at(i, j), bands.lh.at(i, j));
      haar_pair_forward(high.at(2 * i, j), high.at(2 * i + 1, j), bands.hl.at(i, j), bands.hh.at(i, j));
    }
  }
  return bands;
}

IntMatrix inv_haar_int(const SubBands& bands) {
  const std::size_t hr = bands.ll.rows;
  const std::size_t hc = bands.ll.cols;
  for (const IntMatrix* m : {&bands.ll, &bands.lh, &bands.hl, &bands.hh}) {
    if (m->rows != hr || m->cols != hc || m->data.size() != hr * hc) {
      throw Error(Errc::shape, "sub-band dimensions disagree");
    }
  }

  IntMatrix low(2 * hr, hc);
  IntMatrix high(2 * hr, hc);
  for (std::size_t i = 0; i < hr; ++i) {
    for (std::size_t j = 0; j < hc; ++j) {
      haar_pair_inverse(bands.ll.at(i, j), bands.lh.at(i, j), low.at(2 * i, j), low.at(2 * i + 1, j));
      haar_pair_inverse(bands.hl.at(i, j), bands.hh.at(i, j), high.at(2 * i, j), high.at(2 * i + 1, j));
    }
  }

  IntMatrix plane(2 * hr, 2 * hc);
  for (std::size_t r = 0; r < plane.rows; ++r) {
    for (std::size_t j = 0; j < hc; ++j) {
      haar_pair_inverse(low.at(r, j), high.at(r, j), plane.at(r, 2 * j), plane.at(r, 2 * j + 1));
    }
  }
  return plane;
}

}  // namespace qrsteg
