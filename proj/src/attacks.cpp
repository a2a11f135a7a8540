#include "qrsteg/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qrsteg/error.hpp"

namespace qrsteg {

namespace {

constexpr std::uint64_t kAttackTag = 0x4154544B00000000ULL;  // "ATTK"

std::uint8_t to_byte(double normalized) {
  const double clamped = std::clamp(normalized, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::lround(clamped * 255.0));
}

double parse_number(const std::string& text, const std::string& spec) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::usage, "bad number '" + text + "' in attack spec '" + spec + "'");
  }
}

}  // namespace

AttackSpec AttackSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.empty()) throw Error(Errc::usage, "empty attack spec");

  AttackSpec spec;
  const std::string& kind = parts[0];
  const auto expect = [&](std::size_t n) {
    if (parts.size() != n) throw Error(Errc::usage, "attack spec '" + text + "' has the wrong number of fields");
  };
  if (kind == "none") {
    expect(1);
  } else if (kind == "sp") {
    expect(2);
    spec.kind = AttackKind::salt_pepper;
    spec.density = parse_number(parts[1], text);
  } else if (kind == "gauss") {
    expect(3);
    spec.kind = AttackKind::gaussian;
    spec.mean = parse_number(parts[1], text);
    spec.variance = parse_number(parts[2], text);
  } else if (kind == "poisson") {
    expect(1);
    spec.kind = AttackKind::poisson;
  } else if (kind == "speckle") {
    expect(2);
    spec.kind = AttackKind::speckle;
    spec.variance = parse_number(parts[1], text);
  } else {
    throw Error(Errc::usage, "unknown attack '" + kind + "'");
  }
  spec.validate();
  return spec;
}

std::string AttackSpec::to_string() const {
  std::ostringstream out;
  switch (kind) {
    case AttackKind::none: out << "none"; break;
    case AttackKind::salt_pepper: out << "sp:" << density; break;
    case AttackKind::gaussian: out << "gauss:" << mean << ':' << variance; break;
    case AttackKind::poisson: out << "poisson"; break;
    case AttackKind::speckle: out << "speckle:" << variance; break;
  }
  return out.str();
}

void AttackSpec::validate() const {
  if (density < 0.0 || density > 1.0) throw Error(Errc::invalid_input, "salt & pepper density must lie in [0, 1]");
  if (variance < 0.0) throw Error(Errc::invalid_input, "noise variance must be non-negative");
}

double standard_normal(SplitMixSource& rng) {
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - rng.next_unit();
  const double u2 = rng.next_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint32_t poisson_draw(double lambda, SplitMixSource& rng, std::uint32_t cap) {
  if (lambda <= 0.0) return 0;
  const double u = rng.next_unit();
  double p = std::exp(-lambda);
  double cdf = p;
  std::uint32_t k = 0;
  while (u >= cdf && k < cap) {
    ++k;
    p *= lambda / k;
    cdf += p;
  }
  return k;
}

void salt_pepper(std::span<std::uint8_t> samples, double density, SplitMixSource& rng) {
  const double half = density / 2.0;
  for (auto& s : samples) {
    const double r = rng.next_unit();
    if (r < half) {
      s = 0;
    } else if (r < density) {
      s = 255;
    }
  }
}

void gaussian(std::span<std::uint8_t> samples, double mean, double variance, SplitMixSource& rng) {
  const double sigma = std::sqrt(variance);
  for (auto& s : samples) s = to_byte(s / 255.0 + mean + sigma * standard_normal(rng));
}

void poisson(std::span<std::uint8_t> samples, SplitMixSource& rng) {
  for (auto& s : samples) s = static_cast<std::uint8_t>(poisson_draw(s, rng, 255));
}

void speckle(std::span<std::uint8_t> samples, double variance, SplitMixSource& rng) {
  // Zero-mean uniform noise with the requested variance: width sqrt(12 V).
  const double width = std::sqrt(12.0 * variance);
  for (auto& s : samples) {
    const double x = s / 255.0;
    s = to_byte(x + x * width * (rng.next_unit() - 0.5));
  }
}

FrameYuv420 apply_attack(const FrameYuv420& frame, const AttackSpec& spec, SplitMixSource& rng) {
  spec.validate();
  FrameYuv420 out = frame;
  for (auto* plane : {&out.y, &out.u, &out.v}) {
    switch (spec.kind) {
      case AttackKind::none: break;
      case AttackKind::salt_pepper: salt_pepper(*plane, spec.density, rng); break;
      case AttackKind::gaussian: gaussian(*plane, spec.mean, spec.variance, rng); break;
      case AttackKind::poisson: poisson(*plane, rng); break;
      case AttackKind::speckle: speckle(*plane, spec.variance, rng); break;
    }
  }
  return out;
}

std::uint64_t attack_seed(std::uint64_t seed, std::size_t frame_index, std::size_t spec_index) noexcept {
  return derive_seed(seed, kAttackTag ^ spec_index, frame_index);
}

FrameYuv420 attack_frame(const FrameYuv420& frame, const std::vector<AttackSpec>& specs, std::uint64_t seed,
                         std::size_t frame_index) {
  FrameYuv420 out = frame;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    SplitMixSource rng(attack_seed(seed, frame_index, i));
    out = apply_attack(out, specs[i], rng);
  }
  return out;
}

}  // namespace qrsteg
