#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "qrsteg/error.hpp"
#include "qrsteg/stego.hpp"

namespace qrsteg {

namespace {

constexpr const char* kSidecarFormat = "qrsteg-sidecar";

std::string hex64(std::uint64_t v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s = "0x0000000000000000";
  for (int i = 17; i >= 2; --i, v >>= 4) s[i] = digits[v & 0xF];
  return s;
}

}  // namespace

void write_sidecar(std::ostream& out, const Sidecar& sc) {
  nlohmann::ordered_json doc;
  doc["format"] = kSidecarFormat;
  doc["version"] = sc.version;
  doc["meta"] = {{"width", sc.meta.width},
                 {"height", sc.meta.height},
                 {"frame_count", sc.meta.frame_count},
                 {"frame_rate", sc.meta.frame_rate}};
  doc["key_fingerprint"] = hex64(sc.key_fingerprint);
  doc["qr_width"] = sc.qr_width;
  doc["qr_height"] = sc.qr_height;
  doc["plain_len"] = sc.plain_len;
  auto frames = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < sc.frames.size(); ++i) {
    nlohmann::ordered_json bp;
    for (Level level : kLevels) {
      auto values = nlohmann::ordered_json::array();
      for (const BigInt& d : sc.frames[i].bp[index_of(level)]) values.push_back(d.get_str());
      bp[std::string(level_name(level))] = std::move(values);
    }
    frames.push_back({{"index", i}, {"bp", std::move(bp)}});
  }
  doc["frames"] = std::move(frames);
  out << doc.dump() << '\n';
  if (!out) throw Error(Errc::io, "failed to write sidecar");
}

Sidecar read_sidecar(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::format, std::string("sidecar is not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != kSidecarFormat) throw Error(Errc::format, "not a qrsteg sidecar");
    Sidecar sc;
    sc.version = doc.at("version").get<int>();
    if (sc.version != 1) throw Error(Errc::unsupported_format, "unsupported sidecar version");
    const auto& meta = doc.at("meta");
    sc.meta.width = meta.at("width").get<std::size_t>();
    sc.meta.height = meta.at("height").get<std::size_t>();
    sc.meta.frame_count = meta.at("frame_count").get<std::size_t>();
    sc.meta.frame_rate = meta.at("frame_rate").get<std::string>();
    sc.key_fingerprint = std::stoull(doc.at("key_fingerprint").get<std::string>(), nullptr, 16);
    sc.qr_width = doc.at("qr_width").get<std::size_t>();
    sc.qr_height = doc.at("qr_height").get<std::size_t>();
    sc.plain_len = doc.at("plain_len").get<std::uint64_t>();
    for (const auto& f : doc.at("frames")) {
      FrameRecord rec;
      for (Level level : kLevels) {
        for (const auto& d : f.at("bp").at(std::string(level_name(level)))) {
          const auto text = d.get<std::string>();
          if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
            throw Error(Errc::format, "malformed sender value in sidecar");
          }
          rec.bp[index_of(level)].emplace_back(text, 10);
        }
      }
      sc.frames.push_back(std::move(rec));
    }
    if (sc.frames.size() != sc.meta.frame_count) throw Error(Errc::format, "sidecar frame count mismatch");
    return sc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::format, std::string("malformed sidecar: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw Error(Errc::format, "malformed sidecar key fingerprint");
  }
}

void save_sidecar(const std::filesystem::path& path, const Sidecar& sidecar) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  write_sidecar(out, sidecar);
}

Sidecar load_sidecar(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  return read_sidecar(in);
}

}  // namespace qrsteg
