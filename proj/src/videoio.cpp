#include "qrsteg/videoio.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qrsteg/error.hpp"

namespace qrsteg {

namespace {

constexpr std::string_view kY4mMagic = "YUV4MPEG2";
constexpr std::string_view kFrameMarker = "FRAME";

std::size_t parse_dimension(const std::string& token, char axis) {
  try {
    std::size_t used = 0;
    const long v = std::stol(token, &used);
    if (used != token.size() || v <= 0) throw std::invalid_argument(token);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw Error(Errc::format, std::string("bad Y4M ") + axis + " parameter '" + token + "'");
  }
}

void read_planes(std::istream& in, FrameYuv420& frame, const char* what) {
  for (auto* plane : {&frame.y, &frame.u, &frame.v}) {
    in.read(reinterpret_cast<char*>(plane->data()), static_cast<std::streamsize>(plane->size()));
    if (static_cast<std::size_t>(in.gcount()) != plane->size()) {
      throw Error(Errc::io, std::string("truncated ") + what + " frame");
    }
  }
}

// PGM header tokens may be separated by whitespace and '#' comments.
std::string pgm_token(std::istream& in) {
  std::string token;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(static_cast<char>(c));
  }
  return token;
}

}  // namespace

FrameYuv420::FrameYuv420(std::size_t w, std::size_t h, std::uint8_t luma, std::uint8_t chroma)
    : width(w), height(h), y(w * h, luma), u((w / 2) * (h / 2), chroma), v((w / 2) * (h / 2), chroma) {}

void FrameYuv420::check() const {
  if (width == 0 || height == 0 || width % 2 != 0 || height % 2 != 0) {
    throw Error(Errc::shape, "frame dimensions must be positive and even");
  }
  const std::size_t c = chroma_width() * chroma_height();
  if (y.size() != width * height || u.size() != c || v.size() != c) {
    throw Error(Errc::shape, "frame plane sizes do not match its dimensions");
  }
}

Y4mReader::Y4mReader(std::istream& in) : in_(in) {
  std::string header;
  if (!std::getline(in_, header)) throw Error(Errc::format, "empty Y4M stream");
  std::istringstream tokens(header);
  std::string magic;
  tokens >> magic;
  if (magic != kY4mMagic) throw Error(Errc::format, "bad Y4M magic");

  bool have_w = false;
  bool have_h = false;
  for (std::string tok; tokens >> tok;) {
    const std::string value = tok.substr(1);
    switch (tok[0]) {
      case 'W': meta_.width = parse_dimension(value, 'W'); have_w = true; break;
      case 'H': meta_.height = parse_dimension(value, 'H'); have_h = true; break;
      case 'F': meta_.frame_rate = value; break;
      case 'I': meta_.interlace = value; break;
      case 'A': meta_.aspect = value; break;
      case 'C':
        if (value != "420" && value != "420jpeg" && value != "420paldv" && value != "420mpeg2") {
          throw Error(Errc::unsupported_format, "unsupported Y4M colorspace C" + value);
        }
        meta_.colorspace = value;
        break;
      default: break;  // X extensions and unknown tags are ignored
    }
  }
  if (!have_w || !have_h) throw Error(Errc::format, "Y4M header lacks W or H");
  meta_.header = header;
  if (meta_.width % 2 != 0 || meta_.height % 2 != 0) throw Error(Errc::shape, "Y4M 4:2:0 needs even dimensions");
}

std::optional<FrameYuv420> Y4mReader::next() {
  std::string line;
  if (!std::getline(in_, line)) {
    if (line.empty()) return std::nullopt;
    throw Error(Errc::io, "truncated Y4M frame header");
  }
  if (line.compare(0, kFrameMarker.size(), kFrameMarker) != 0) throw Error(Errc::format, "missing FRAME marker");
  FrameYuv420 frame(meta_.width, meta_.height);
  read_planes(in_, frame, "Y4M");
  return frame;
}

Y4mWriter::Y4mWriter(std::ostream& out, const VideoMeta& meta) : out_(out), meta_(meta) {
  if (meta_.width == 0 || meta_.height == 0 || meta_.width % 2 || meta_.height % 2) {
    throw Error(Errc::shape, "Y4M 4:2:0 needs positive even dimensions");
  }
  if (!meta_.header.empty()) {
    out_ << meta_.header << '\n';
  } else {
    out_ << kY4mMagic << " W" << meta_.width << " H" << meta_.height << " F" << meta_.frame_rate << " I"
         << meta_.interlace << " A" << meta_.aspect << " C" << meta_.colorspace << '\n';
  }
  if (!out_) throw Error(Errc::io, "failed to write Y4M header");
}

void Y4mWriter::write(const FrameYuv420& frame) {
  frame.check();
  if (frame.width != meta_.width || frame.height != meta_.height) {
    throw Error(Errc::shape, "frame dimensions differ from the stream header");
  }
  out_ << kFrameMarker << '\n';
  for (const auto* plane : {&frame.y, &frame.u, &frame.v}) {
    out_.write(reinterpret_cast<const char*>(plane->data()), static_cast<std::streamsize>(plane->size()));
  }
  if (!out_) throw Error(Errc::io, "failed to write Y4M frame");
  ++count_;
}

RawYuvReader::RawYuvReader(std::istream& in, std::size_t width, std::size_t height)
    : in_(in), width_(width), height_(height) {
  if (width == 0 || height == 0 || width % 2 || height % 2) {
    throw Error(Errc::shape, "raw 4:2:0 needs positive even dimensions");
  }
}

std::optional<FrameYuv420> RawYuvReader::next() {
  if (in_.peek() == std::char_traits<char>::eof()) return std::nullopt;
  FrameYuv420 frame(width_, height_);
  read_planes(in_, frame, "raw");
  return frame;
}

std::size_t raw_frame_count(const std::filesystem::path& path, std::size_t width, std::size_t height) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) throw Error(Errc::io, "cannot stat " + path.string());
  const std::size_t frame = width * height * 3 / 2;
  if (frame == 0 || size % frame != 0) {
    throw Error(Errc::format, path.string() + ": size " + std::to_string(size) + " is not a multiple of " +
                                  std::to_string(frame) + "-byte frames");
  }
  return static_cast<std::size_t>(size / frame);
}

std::pair<VideoMeta, std::vector<FrameYuv420>> read_y4m(std::istream& in) {
  Y4mReader reader(in);
  std::vector<FrameYuv420> frames;
  while (auto f = reader.next()) frames.push_back(std::move(*f));
  VideoMeta meta = reader.meta();
  meta.frame_count = frames.size();
  return {meta, std::move(frames)};
}

void write_y4m(std::ostream& out, const VideoMeta& meta, const std::vector<FrameYuv420>& frames) {
  Y4mWriter writer(out, meta);
  for (const auto& f : frames) writer.write(f);
}

std::pair<VideoMeta, std::vector<FrameYuv420>> read_y4m_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  return read_y4m(in);
}

void write_y4m_file(const std::filesystem::path& path, const VideoMeta& meta,
                    const std::vector<FrameYuv420>& frames) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  write_y4m(out, meta, frames);
}

GrayImage read_pgm(std::istream& in) {
  if (pgm_token(in) != "P5") throw Error(Errc::format, "not a binary PGM (P5)");
  std::size_t dims[3];
  for (auto& d : dims) {
    const std::string tok = pgm_token(in);
    try {
      std::size_t used = 0;
      d = std::stoul(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(Errc::format, "bad PGM header field '" + tok + "'");
    }
  }
  if (dims[2] != 255) throw Error(Errc::unsupported_format, "only maxval 255 PGM is supported");
  GrayImage img(dims[0], dims[1]);
  if (img.pixels.empty()) throw Error(Errc::format, "empty PGM raster");
  in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  if (static_cast<std::size_t>(in.gcount()) != img.pixels.size()) throw Error(Errc::io, "truncated PGM raster");
  return img;
}

void write_pgm(std::ostream& out, const GrayImage& img) {
  out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  if (!out) throw Error(Errc::io, "failed to write PGM");
}

GrayImage read_pgm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  return read_pgm(in);
}

void write_pgm_file(const std::filesystem::path& path, const GrayImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  write_pgm(out, img);
}

}  // namespace qrsteg
