// qrsteg: hide ElGamal-encrypted QR payloads in 4:2:0 video and measure the
// result. Run `qrsteg --help` for the command list.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qrsteg/attacks.hpp"
#include "qrsteg/bench.hpp"
#include "qrsteg/elgamal.hpp"
#include "qrsteg/error.hpp"
#include "qrsteg/stego.hpp"
#include "qrsteg/synth.hpp"
#include "qrsteg/videoio.hpp"

namespace fs = std::filesystem;
using namespace qrsteg;

namespace {

struct RunConfig {
  std::string input;
  std::string output;
  std::string sidecar;
  std::array<std::string, kLevelCount> qr;
  std::string pub;
  std::string priv;
  std::string seed;
  std::vector<std::string> attacks;
  std::string report;
  std::size_t width = 0;
  std::size_t height = 0;
  bool paper_fidelity = false;
  bool force = false;
  unsigned threads = 1;
  // keygen
  unsigned bits = 256;
  std::string forced_x;
  // extract / bench
  std::size_t frames = 0;
  std::size_t attack_frames = 4;
  std::size_t attack_seeds = 5;
  // synth
  std::string pattern = "gradient";
};

/// Numeric seeds (decimal or 0x-hex) are used as-is; anything else is a
/// passphrase hashed with FNV-1a.
StegoKey parse_key(const std::string& text) {
  try {
    std::size_t used = 0;
    const bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
    const unsigned long long v = std::stoull(text, &used, hex ? 16 : 10);
    if (used == text.size() && text[0] != '-' && text[0] != '+') return StegoKey{v};
  } catch (const std::exception&) {
  }
  return StegoKey::from_passphrase(text);
}

std::optional<StegoKey> resolve_key(const RunConfig& rc) {
  if (!rc.seed.empty()) return parse_key(rc.seed);
  if (const char* env = std::getenv("QRSTEG_SEED"); env && *env) return parse_key(env);
  return std::nullopt;
}

StegoKey require_key(const RunConfig& rc) {
  auto key = resolve_key(rc);
  if (!key) throw Error(Errc::usage, "--seed (or QRSTEG_SEED) is required");
  return *key;
}

void refuse_overwrite(const fs::path& path, bool force) {
  if (!force && fs::exists(path)) {
    throw Error(Errc::usage, path.string() + " exists; pass --force to overwrite");
  }
}

/// Opens the cover/stego input: raw planar when --width/--height are given,
/// Y4M otherwise.
class VideoInput {
 public:
  VideoInput(const RunConfig& rc) : file_(rc.input, std::ios::binary) {
    if (!file_) throw Error(Errc::io, "cannot open " + rc.input);
    if (rc.width || rc.height) {
      if (!rc.width || !rc.height) throw Error(Errc::usage, "--width and --height go together");
      const std::size_t count = raw_frame_count(rc.input, rc.width, rc.height);
      raw_ = std::make_unique<RawYuvReader>(file_, rc.width, rc.height);
      meta_.width = rc.width;
      meta_.height = rc.height;
      meta_.frame_count = count;
    } else {
      y4m_ = std::make_unique<Y4mReader>(file_);
      meta_ = y4m_->meta();
    }
  }

  const VideoMeta& meta() const { return meta_; }

  FrameSource source() {
    return [this]() { return raw_ ? raw_->next() : y4m_->next(); };
  }

 private:
  std::ifstream file_;
  std::unique_ptr<RawYuvReader> raw_;
  std::unique_ptr<Y4mReader> y4m_;
  VideoMeta meta_;
};

/// Loads a public key and checks alpha generates the group when p - 1 can be
/// factored; otherwise warns and carries on.
ElGamalPublic load_checked_public(const std::string& path) {
  ElGamalPublic pub = load_public_key(path);
  const auto factors = easy_order_factors(pub.p);
  if (!validate_group(pub.p, pub.alpha, factors)) {
    std::cerr << "warning: cannot factor p - 1; alpha is not verified as a primitive root\n";
  }
  return pub;
}

QrSet load_qr_set(const RunConfig& rc) {
  QrSet set;
  for (Level level : kLevels) {
    const auto& path = rc.qr[index_of(level)];
    if (path.empty()) throw Error(Errc::usage, "--qr-" + std::string(1, std::tolower(level_name(level)[0])) + " is required");
    set[index_of(level)] = load_qr(read_pgm_file(path));
  }
  return set;
}

bool have_qr_set(const RunConfig& rc) {
  return std::all_of(rc.qr.begin(), rc.qr.end(), [](const std::string& p) { return !p.empty(); });
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

std::string psnr_text(const std::optional<double>& v) { return v ? fixed(*v) + " dB" : "identical"; }

int cmd_keygen(const RunConfig& rc) {
  if (rc.pub.empty() || rc.priv.empty()) throw Error(Errc::usage, "keygen needs --pub and --priv");
  refuse_overwrite(rc.pub, rc.force);
  refuse_overwrite(rc.priv, rc.force);

  SplitMixSource rng = resolve_key(rc) ? SplitMixSource(resolve_key(rc)->seed) : SplitMixSource::from_entropy();
  GroupParams group;
  if (rc.paper_fidelity) {
    group = toy_group();
  } else if (rc.bits == 256) {
    group = default_group();
  } else {
    group = generate_safe_prime_group(rc.bits, rng);
  }

  KeyPair keys;
  if (!rc.forced_x.empty()) {
    ScriptedSource forced({BigInt(rc.forced_x, 10)});
    keys = keygen(group, forced);
  } else {
    keys = keygen(group, rng);
  }
  save_public_key(rc.pub, keys.pub);
  save_private_key(rc.priv, keys.priv);
  std::cout << "p bits: " << mpz_sizeinbase(keys.pub.p.get_mpz_t(), 2) << "\n"
            << "public: " << rc.pub << " (y = " << keys.pub.y.get_str() << ")\n"
            << "private: " << rc.priv << "\n";
  return 0;
}

int cmd_embed(const RunConfig& rc) {
  if (rc.input.empty() || rc.output.empty()) throw Error(Errc::usage, "embed needs --input and --output");
  if (rc.pub.empty()) throw Error(Errc::usage, "embed needs --pub");
  const StegoKey key = require_key(rc);
  const fs::path sidecar_path = rc.sidecar.empty() ? rc.output + ".sidecar.json" : rc.sidecar;
  refuse_overwrite(rc.output, rc.force);
  refuse_overwrite(sidecar_path, rc.force);

  const QrSet set = load_qr_set(rc);
  StegoConfig cfg{key, load_checked_public(rc.pub), std::nullopt};
  VideoInput input(rc);
  check_qr_set(set, input.meta().width, input.meta().height);

  std::ofstream out(rc.output, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write " + rc.output);
  Y4mWriter writer(out, input.meta());
  const EmbedResult result = embed_stream(
      input.meta(), input.source(), [&](const FrameYuv420& f) { writer.write(f); }, {set}, cfg, rc.threads);
  if (result.quality.frames.empty()) {
    out.close();
    fs::remove(rc.output);
    throw Error(Errc::format, "cover video has no frames");
  }
  save_sidecar(sidecar_path, result.sidecar);

  if (!rc.report.empty()) {
    std::ofstream csv(rc.report);
    if (!csv) throw Error(Errc::io, "cannot write " + rc.report);
    write_quality_csv(csv, result.quality);
  }
  const auto& q = result.quality;
  std::cout << "frames: " << q.frames.size() << "\n"
            << "embedded bits: " << q.embedded_bits << "\n"
            << "capacity: " << fixed(q.bpp()) << " bpp\n"
            << "psnr (Y+U+V): " << psnr_text(q.average_psnr()) << "\n"
            << "psnr (Y): " << psnr_text(q.average_psnr_luma()) << "\n"
            << "mse range: " << fixed(q.min_mse()) << " .. " << fixed(q.max_mse()) << "\n"
            << "sidecar: " << sidecar_path.string() << "\n";
  return 0;
}

int cmd_extract(const RunConfig& rc) {
  if (rc.input.empty() || rc.output.empty()) throw Error(Errc::usage, "extract needs --input and --output");
  if (rc.pub.empty() || rc.priv.empty()) throw Error(Errc::usage, "extract needs --pub and --priv");
  const StegoKey key = require_key(rc);
  const fs::path sidecar_path = rc.sidecar.empty() ? rc.input + ".sidecar.json" : rc.sidecar;
  if (!fs::exists(sidecar_path)) throw Error(Errc::io, "sidecar " + sidecar_path.string() + " not found");
  const Sidecar sidecar = load_sidecar(sidecar_path);
  if (sidecar.key_fingerprint != key.fingerprint()) {
    std::cerr << "warning: stego key does not match the sidecar fingerprint; recovered planes will be noise\n";
  }

  StegoConfig cfg{key, load_checked_public(rc.pub), load_private_key(rc.priv)};
  if (!check_key_pair(cfg.pub, *cfg.priv)) {
    std::cerr << "warning: private key does not match the public key; recovered planes will be noise\n";
  }
  std::optional<QrSet> originals;
  if (have_qr_set(rc)) originals = load_qr_set(rc);

  fs::create_directories(rc.output);
  VideoInput input(rc);
  std::array<double, kLevelCount> ssim_sum{};
  std::size_t scored = 0;
  std::ofstream csv;
  if (!rc.report.empty()) {
    csv.open(rc.report);
    if (!csv) throw Error(Errc::io, "cannot write " + rc.report);
    csv << "frame_index,ssim_L,ssim_M,ssim_Q,ssim_H\n" << std::fixed << std::setprecision(6);
  }

  std::size_t pulled = 0;
  auto source = input.source();
  const FrameSource limited = [&]() -> std::optional<FrameYuv420> {
    if (rc.frames != 0 && pulled >= rc.frames) return std::nullopt;
    auto f = source();
    if (f) ++pulled;
    return f;
  };
  const std::size_t count = extract_stream(
      input.meta(), limited, sidecar, cfg,
      [&](std::size_t index, const QrSet& set) {
        std::ostringstream stem;
        stem << "frame_" << std::setw(5) << std::setfill('0') << index << '_';
        for (Level level : kLevels) {
          write_pgm_file(fs::path(rc.output) / (stem.str() + std::string(level_name(level)) + ".pgm"),
                         render_qr(set[index_of(level)]));
        }
        if (originals) {
          if (csv.is_open()) csv << index;
          for (Level level : kLevels) {
            const auto li = index_of(level);
            const double s = ssim(render_qr((*originals)[li]), render_qr(set[li]));
            ssim_sum[li] += s;
            if (csv.is_open()) csv << ',' << s;
          }
          if (csv.is_open()) csv << '\n';
          ++scored;
        }
      },
      rc.threads);

  std::cout << "frames extracted: " << count << "\n";
  if (scored) {
    for (Level level : kLevels) {
      std::cout << "ssim " << level_name(level) << ": " << fixed(ssim_sum[index_of(level)] / scored) << "\n";
    }
  }
  return 0;
}

int cmd_attack(const RunConfig& rc) {
  if (rc.input.empty() || rc.output.empty()) throw Error(Errc::usage, "attack needs --input and --output");
  refuse_overwrite(rc.output, rc.force);
  std::vector<AttackSpec> specs;
  for (const auto& text : rc.attacks) specs.push_back(AttackSpec::parse(text));
  const std::uint64_t seed = resolve_key(rc) ? resolve_key(rc)->seed : SplitMixSource::from_entropy().next_u64();

  VideoInput input(rc);
  std::ofstream out(rc.output, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write " + rc.output);
  Y4mWriter writer(out, input.meta());
  auto source = input.source();
  std::size_t index = 0;
  while (auto frame = source()) writer.write(attack_frame(*frame, specs, seed, index++));
  std::cout << "frames: " << index << "\n";
  return 0;
}

int cmd_bench(const RunConfig& rc) {
  if (rc.input.empty() || rc.output.empty()) throw Error(Errc::usage, "bench needs --input and --output");
  const StegoKey key = resolve_key(rc).value_or(StegoKey{1});

  BenchConfig config;
  config.stego.key = key;
  if (!rc.pub.empty() || !rc.priv.empty()) {
    if (rc.pub.empty() || rc.priv.empty()) throw Error(Errc::usage, "bench needs both --pub and --priv, or neither");
    config.stego.pub = load_checked_public(rc.pub);
    config.stego.priv = load_private_key(rc.priv);
  } else {
    SplitMixSource rng(derive_seed(key.seed, tags::kKeystream, 0));
    KeyPair keys = keygen(rc.paper_fidelity ? toy_group() : default_group(), rng);
    config.stego.pub = keys.pub;
    config.stego.priv = keys.priv;
  }
  if (!rc.attacks.empty()) {
    config.attacks.clear();
    for (const auto& text : rc.attacks) config.attacks.push_back(AttackSpec::parse(text));
  }
  config.max_frames = rc.frames;
  config.attack_frames = rc.attack_frames;
  config.attack_seeds = rc.attack_seeds;
  config.attack_seed = key.seed;
  config.threads = rc.threads;

  std::vector<fs::path> videos;
  if (!fs::is_directory(rc.input)) throw Error(Errc::io, rc.input + " is not a directory");
  for (const auto& entry : fs::directory_iterator(rc.input)) {
    if (entry.is_regular_file() && entry.path().extension() == ".y4m") videos.push_back(entry.path());
  }
  std::sort(videos.begin(), videos.end());

  std::optional<QrSet> qr;
  if (have_qr_set(rc)) qr = load_qr_set(rc);

  BenchReport report;
  for (const auto& path : videos) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io, "cannot open " + path.string());
    Y4mReader reader(in);
    const auto& meta = reader.meta();
    const QrSet set = qr ? *qr : synth_qr_set(meta.width / 2, meta.height / 2, key.seed);
    std::cerr << "bench: " << path.filename().string() << "\n";
    bench_video(path.stem().string(), meta, [&]() { return reader.next(); }, set, config, report);
  }

  fs::create_directories(rc.output);
  {
    std::ofstream csv(fs::path(rc.output) / "capacity.csv");
    if (!csv) throw Error(Errc::io, "cannot write capacity.csv");
    write_capacity_csv(csv, report);
  }
  {
    std::ofstream csv(fs::path(rc.output) / "robustness.csv");
    if (!csv) throw Error(Errc::io, "cannot write robustness.csv");
    write_robustness_csv(csv, report);
  }
  write_capacity_csv(std::cout, report);
  std::cout << "\n";
  write_robustness_csv(std::cout, report);
  return 0;
}

int cmd_synth_video(const RunConfig& rc) {
  if (rc.output.empty()) throw Error(Errc::usage, "synth-video needs --output");
  refuse_overwrite(rc.output, rc.force);
  const SynthPattern pattern = parse_synth_pattern(rc.pattern);
  const std::uint64_t seed = resolve_key(rc).value_or(StegoKey{0}).seed;
  VideoMeta meta;
  meta.width = rc.width ? rc.width : 352;
  meta.height = rc.height ? rc.height : 288;
  std::ofstream out(rc.output, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write " + rc.output);
  Y4mWriter writer(out, meta);
  const std::size_t frames = rc.frames ? rc.frames : 10;
  for (std::size_t t = 0; t < frames; ++t) writer.write(synth_frame(pattern, meta.width, meta.height, t, seed));
  std::cout << "frames: " << frames << "\n";
  return 0;
}

int cmd_synth_qr(const RunConfig& rc) {
  if (rc.output.empty()) throw Error(Errc::usage, "synth-qr needs --output (a directory)");
  const std::uint64_t seed = resolve_key(rc).value_or(StegoKey{0}).seed;
  const std::size_t w = rc.width ? rc.width : 176;
  const std::size_t h = rc.height ? rc.height : 144;
  fs::create_directories(rc.output);
  const QrSet set = synth_qr_set(w, h, seed);
  for (Level level : kLevels) {
    const fs::path path = fs::path(rc.output) / (std::string(level_name(level)) + ".pgm");
    refuse_overwrite(path, rc.force);
    write_pgm_file(path, render_qr(set[index_of(level)]));
    std::cout << path.string() << "\n";
  }
  return 0;
}

void add_qr_flags(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--qr-l", rc.qr[0], "L-grade QR image (PGM)");
  cmd->add_option("--qr-m", rc.qr[1], "M-grade QR image (PGM)");
  cmd->add_option("--qr-q", rc.qr[2], "Q-grade QR image (PGM)");
  cmd->add_option("--qr-h", rc.qr[3], "H-grade QR image (PGM)");
}

void add_seed_flag(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--seed", rc.seed, "stego key: integer or passphrase (falls back to QRSTEG_SEED)");
}

void add_raw_flags(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--width", rc.width, "raw 4:2:0 input width");
  cmd->add_option("--height", rc.height, "raw 4:2:0 input height");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QR-code video steganography with a modified ElGamal keystream"};
  app.require_subcommand(1);
  RunConfig rc;

  auto* keygen_cmd = app.add_subcommand("keygen", "generate an ElGamal key pair");
  keygen_cmd->add_option("--pub", rc.pub, "public key output file")->required();
  keygen_cmd->add_option("--priv", rc.priv, "private key output file")->required();
  keygen_cmd->add_flag("--paper-fidelity", rc.paper_fidelity, "use the toy group p=997, alpha=809");
  keygen_cmd->add_option("--bits", rc.bits, "safe-prime size; 256 uses the built-in group");
  keygen_cmd->add_option("--x", rc.forced_x, "force the private exponent (testing)");
  keygen_cmd->add_flag("--force", rc.force, "overwrite existing files");
  add_seed_flag(keygen_cmd, rc);

  auto* embed_cmd = app.add_subcommand("embed", "embed four encrypted QR codes into every frame");
  embed_cmd->add_option("--input", rc.input, "cover video (Y4M, or raw with --width/--height)")->required();
  embed_cmd->add_option("--output", rc.output, "stego video (Y4M)")->required();
  embed_cmd->add_option("--sidecar", rc.sidecar, "sidecar path (default: <output>.sidecar.json)");
  embed_cmd->add_option("--pub", rc.pub, "receiver public key");
  embed_cmd->add_option("--report", rc.report, "per-frame quality CSV");
  embed_cmd->add_option("--threads", rc.threads, "worker threads");
  embed_cmd->add_flag("--force", rc.force, "overwrite existing files");
  add_qr_flags(embed_cmd, rc);
  add_seed_flag(embed_cmd, rc);
  add_raw_flags(embed_cmd, rc);

  auto* extract_cmd = app.add_subcommand("extract", "recover and decrypt the QR codes");
  extract_cmd->add_option("--input", rc.input, "stego video")->required();
  extract_cmd->add_option("--output", rc.output, "directory for recovered PGM files")->required();
  extract_cmd->add_option("--sidecar", rc.sidecar, "sidecar path (default: <input>.sidecar.json)");
  extract_cmd->add_option("--pub", rc.pub, "receiver public key");
  extract_cmd->add_option("--priv", rc.priv, "receiver private key");
  extract_cmd->add_option("--report", rc.report, "per-frame SSIM CSV (needs the original QR images)");
  extract_cmd->add_option("--frames", rc.frames, "stop after this many frames (0: all)");
  extract_cmd->add_option("--threads", rc.threads, "worker threads");
  add_qr_flags(extract_cmd, rc);
  add_seed_flag(extract_cmd, rc);
  add_raw_flags(extract_cmd, rc);

  auto* attack_cmd = app.add_subcommand("attack", "apply noise to a video");
  attack_cmd->add_option("--input", rc.input, "input video")->required();
  attack_cmd->add_option("--output", rc.output, "noisy video (Y4M)")->required();
  attack_cmd->add_option("--attack", rc.attacks, "sp:D | gauss:M:V | poisson | speckle:V | none (repeatable)");
  attack_cmd->add_flag("--force", rc.force, "overwrite existing files");
  add_seed_flag(attack_cmd, rc);
  add_raw_flags(attack_cmd, rc);

  auto* bench_cmd = app.add_subcommand("bench", "capacity/PSNR and robustness tables over a Y4M directory");
  bench_cmd->add_option("--input", rc.input, "directory of .y4m files")->required();
  bench_cmd->add_option("--output", rc.output, "directory for capacity.csv and robustness.csv")->required();
  bench_cmd->add_option("--pub", rc.pub, "receiver public key (default: derived from --seed)");
  bench_cmd->add_option("--priv", rc.priv, "receiver private key");
  bench_cmd->add_option("--attack", rc.attacks, "override the attack list (repeatable)");
  bench_cmd->add_option("--frames", rc.frames, "frames per video (0: all)");
  bench_cmd->add_option("--attack-frames", rc.attack_frames, "stego frames scored per attack");
  bench_cmd->add_option("--attack-seeds", rc.attack_seeds, "noise seeds per attack");
  bench_cmd->add_option("--threads", rc.threads, "worker threads");
  bench_cmd->add_flag("--paper-fidelity", rc.paper_fidelity, "derive keys in the toy group p=997");
  add_qr_flags(bench_cmd, rc);
  add_seed_flag(bench_cmd, rc);

  auto* synth_video_cmd = app.add_subcommand("synth-video", "write a synthetic Y4M test video");
  synth_video_cmd->add_option("--output", rc.output, "Y4M output")->required();
  synth_video_cmd->add_option("--pattern", rc.pattern, "gradient | noise | moving-block");
  synth_video_cmd->add_option("--width", rc.width, "width (default 352)");
  synth_video_cmd->add_option("--height", rc.height, "height (default 288)");
  synth_video_cmd->add_option("--frames", rc.frames, "frame count (default 10)");
  synth_video_cmd->add_flag("--force", rc.force, "overwrite existing files");
  add_seed_flag(synth_video_cmd, rc);

  auto* synth_qr_cmd = app.add_subcommand("synth-qr", "write four QR-lookalike PGM images");
  synth_qr_cmd->add_option("--output", rc.output, "output directory (L.pgm, M.pgm, Q.pgm, H.pgm)")->required();
  synth_qr_cmd->add_option("--width", rc.width, "width (default 176)");
  synth_qr_cmd->add_option("--height", rc.height, "height (default 144)");
  synth_qr_cmd->add_flag("--force", rc.force, "overwrite existing files");
  add_seed_flag(synth_qr_cmd, rc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*keygen_cmd) return cmd_keygen(rc);
    if (*embed_cmd) return cmd_embed(rc);
    if (*extract_cmd) return cmd_extract(rc);
    if (*attack_cmd) return cmd_attack(rc);
    if (*bench_cmd) return cmd_bench(rc);
    if (*synth_video_cmd) return cmd_synth_video(rc);
    if (*synth_qr_cmd) return cmd_synth_qr(rc);
  } catch (const Error& e) {
    std::cerr << "error: kind=" << errc_name(e.code()) << " exit=" << exit_code_for(e.code())
              << " message=\"" << e.what() << "\"\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: kind=internal exit=1 message=\"" << e.what() << "\"\n";
    return 1;
  }
  return 2;
}
