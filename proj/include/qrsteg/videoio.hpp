#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qrsteg/image.hpp"

namespace qrsteg {

/// Planar 4:2:0 frame; chroma planes are (width/2) x (height/2).
struct FrameYuv420 {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> y;
  std::vector<std::uint8_t> u;
  std::vector<std::uint8_t> v;

  FrameYuv420() = default;
  FrameYuv420(std::size_t w, std::size_t h, std::uint8_t luma = 0, std::uint8_t chroma = 128);

  std::size_t chroma_width() const noexcept { return width / 2; }
  std::size_t chroma_height() const noexcept { return height / 2; }
  std::size_t sample_count() const noexcept { return y.size() + u.size() + v.size(); }

  GrayImage luma() const {
    GrayImage img;
    img.width = width;
    img.height = height;
    img.pixels = y;
    return img;
  }

  /// Throws Errc::shape if plane sizes disagree with the dimensions.
  void check() const;

  bool operator==(const FrameYuv420&) const = default;
};

struct VideoMeta {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t frame_count = 0;  // 0 when unknown while streaming
  std::string frame_rate = "30:1";
  std::string interlace = "p";
  std::string aspect = "1:1";
  std::string colorspace = "420jpeg";
  std::string header;  // verbatim header line when read from Y4M; reused on write


  std::size_t frame_bytes() const noexcept { return width * height * 3 / 2; }
};

/// Streaming YUV4MPEG2 reader. Holds at most one frame in memory.
class Y4mReader {
 public:
  explicit Y4mReader(std::istream& in);

  const VideoMeta& meta() const noexcept { return meta_; }

  /// Next frame, or nullopt at a clean end of stream.
  std::optional<FrameYuv420> next();

 private:
  std::istream& in_;
  VideoMeta meta_;
};

class Y4mWriter {
 public:
  Y4mWriter(std::ostream& out, const VideoMeta& meta);

  void write(const FrameYuv420& frame);

  std::size_t frames_written() const noexcept { return count_; }

 private:
  std::ostream& out_;
  VideoMeta meta_;
  std::size_t count_ = 0;
};

/// Headerless planar 4:2:0 stream of fixed dimensions.
class RawYuvReader {
 public:
  RawYuvReader(std::istream& in, std::size_t width, std::size_t height);

  std::optional<FrameYuv420> next();

 private:
  std::istream& in_;
  std::size_t width_;
  std::size_t height_;
};

/// Checks a raw file's size against the frame geometry; returns the frame count.
std::size_t raw_frame_count(const std::filesystem::path& path, std::size_t width, std::size_t height);

// Whole-video helpers for small inputs.
std::pair<VideoMeta, std::vector<FrameYuv420>> read_y4m(std::istream& in);
void write_y4m(std::ostream& out, const VideoMeta& meta, const std::vector<FrameYuv420>& frames);
std::pair<VideoMeta, std::vector<FrameYuv420>> read_y4m_file(const std::filesystem::path& path);
void write_y4m_file(const std::filesystem::path& path, const VideoMeta& meta, const std::vector<FrameYuv420>& frames);

/// Binary PGM, maxval 255 only.
GrayImage read_pgm(std::istream& in);
void write_pgm(std::ostream& out, const GrayImage& img);
GrayImage read_pgm_file(const std::filesystem::path& path);
void write_pgm_file(const std::filesystem::path& path, const GrayImage& img);

}  // namespace qrsteg
