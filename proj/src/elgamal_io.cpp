#include <array>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "qrsteg/elgamal.hpp"
#include "qrsteg/error.hpp"

namespace qrsteg {

namespace {

constexpr std::array<char, 4> kBundleMagic{'M', 'E', 'C', 'B'};
constexpr std::uint8_t kBundleVersion = 1;

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> buf{};
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(buf.data(), buf.size());
}

void put_u32(std::ostream& out, std::uint32_t v) {
  std::array<char, 4> buf{};
  for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(buf.data(), buf.size());
}

template <std::size_t N>
std::uint64_t get_le(std::istream& in) {
  std::array<unsigned char, N> buf{};
  if (!in.read(reinterpret_cast<char*>(buf.data()), N)) throw Error(Errc::corrupt_bundle, "truncated bundle header");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < N; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

BigInt parse_decimal(const std::string& text, Errc code, const char* what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(code, std::string("malformed decimal ") + what + ": '" + text + "'");
  }
  return BigInt(text, 10);
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::format, path.string() + ": " + e.what());
  }
}

std::string field(const nlohmann::json& doc, const char* name, const std::filesystem::path& path) {
  if (!doc.is_object() || !doc.contains(name) || !doc[name].is_string()) {
    throw Error(Errc::format, path.string() + ": missing string field '" + name + "'");
  }
  return doc[name].get<std::string>();
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace

void write_bundle(std::ostream& out, const CipherBundle& bundle) {
  out.write(kBundleMagic.data(), kBundleMagic.size());
  out.put(static_cast<char>(kBundleVersion));
  put_u64(out, bundle.plain_len);
  put_u64(out, bundle.bp.size());
  for (const BigInt& d : bundle.bp) {
    const std::string digits = d.get_str(10);
    put_u32(out, static_cast<std::uint32_t>(digits.size()));
    out.write(digits.data(), static_cast<std::streamsize>(digits.size()));
  }
  out.write(reinterpret_cast<const char*>(bundle.z.data()), static_cast<std::streamsize>(bundle.z.size()));
  if (!out) throw Error(Errc::io, "failed to write cipher bundle");
}

CipherBundle read_bundle(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kBundleMagic) {
    throw Error(Errc::format, "not a cipher bundle (bad magic)");
  }
  const int version = in.get();
  if (version != kBundleVersion) throw Error(Errc::unsupported_format, "unsupported bundle version");

  CipherBundle bundle;
  bundle.plain_len = get_le<8>(in);
  const std::uint64_t count = get_le<8>(in);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto len = static_cast<std::size_t>(get_le<4>(in));
    std::string digits(len, '\0');
    if (!in.read(digits.data(), static_cast<std::streamsize>(len))) {
      throw Error(Errc::corrupt_bundle, "truncated sender value");
    }
    bundle.bp.push_back(parse_decimal(digits, Errc::corrupt_bundle, "sender value"));
  }
  bundle.z.resize(bundle.plain_len);
  if (!in.read(reinterpret_cast<char*>(bundle.z.data()), static_cast<std::streamsize>(bundle.plain_len))) {
    throw Error(Errc::corrupt_bundle, "truncated ciphertext");
  }
  if (in.peek() != std::char_traits<char>::eof()) throw Error(Errc::corrupt_bundle, "trailing bytes after ciphertext");
  return bundle;
}

void save_public_key(const std::filesystem::path& path, const ElGamalPublic& pub) {
  write_json(path, {{"kind", "elgamal-public"}, {"p", pub.p.get_str()}, {"alpha", pub.alpha.get_str()},
                    {"y", pub.y.get_str()}});
}

void save_private_key(const std::filesystem::path& path, const ElGamalPrivate& priv) {
  write_json(path, {{"kind", "elgamal-private"}, {"x", priv.x.get_str()}});
}

ElGamalPublic load_public_key(const std::filesystem::path& path) {
  const auto doc = read_json(path);
  ElGamalPublic pub{parse_decimal(field(doc, "p", path), Errc::format, "p"),
                    parse_decimal(field(doc, "alpha", path), Errc::format, "alpha"),
                    parse_decimal(field(doc, "y", path), Errc::format, "y")};
  validate_public(pub);
  return pub;
}

ElGamalPrivate load_private_key(const std::filesystem::path& path) {
  const auto doc = read_json(path);
  return ElGamalPrivate{parse_decimal(field(doc, "x", path), Errc::format, "x")};
}

}  // namespace qrsteg
