#include <sys/wait.h>

#include <algorithm>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qrsteg/elgamal.hpp"
#include "qrsteg/stego.hpp"
#include "qrsteg/videoio.hpp"

namespace fs = std::filesystem;

namespace qrsteg {
namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = testing::scratch_dir(::testing::UnitTest::GetInstance()->current_test_info()->name()); }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path at(const std::string& name) const { return dir_ / name; }

  RunResult run(const std::string& args, const std::string& env = "") const {
    const fs::path log = dir_ / "log.txt";
    const std::string cmd = "cd '" + dir_.string() + "' && env -u QRSTEG_SEED " + env + " '" + QRSTEG_CLI_PATH +
                            "' " + args + " > '" + log.string() + "' 2>&1";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(log)};
  }

  // Synthetic 64x64x10 cover, toy keys and 32x32 QR-lookalikes.
  void make_inputs() {
    ASSERT_EQ(run("synth-video --output cover.y4m --width 64 --height 64 --frames 10 --seed 3").code, 0);
    ASSERT_EQ(run("synth-qr --output qr --width 32 --height 32 --seed 4").code, 0);
    ASSERT_EQ(run("keygen --paper-fidelity --pub pub.json --priv priv.json --seed 5").code, 0);
  }

  static std::string qr_flags() { return "--qr-l qr/L.pgm --qr-m qr/M.pgm --qr-q qr/Q.pgm --qr-h qr/H.pgm"; }

  fs::path dir_;
};

TEST_F(Cli, KeygenForcedExponent) {
  const auto r = run("keygen --paper-fidelity --x 420 --pub pub.json --priv priv.json");
  ASSERT_EQ(r.code, 0) << r.out;
  const ElGamalPublic pub = load_public_key(at("pub.json"));
  EXPECT_EQ(pub.p, 997);
  EXPECT_EQ(pub.alpha, 809);
  EXPECT_EQ(pub.y, 12);
  EXPECT_EQ(load_private_key(at("priv.json")).x, 420);
}

TEST_F(Cli, KeygenRefusesOverwriteAndVaries) {
  ASSERT_EQ(run("keygen --pub a.json --priv b.json").code, 0);
  const auto again = run("keygen --pub a.json --priv b.json");
  EXPECT_EQ(again.code, 2);
  EXPECT_NE(again.out.find("error: kind=usage"), std::string::npos);
  ASSERT_EQ(run("keygen --pub c.json --priv d.json").code, 0);
  EXPECT_NE(load_private_key(at("b.json")).x, load_private_key(at("d.json")).x);
  const ElGamalPublic pub = load_public_key(at("a.json"));
  EXPECT_TRUE(is_probable_prime(pub.p));
  EXPECT_EQ(mpz_sizeinbase(pub.p.get_mpz_t(), 2), 256u);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("embed --input x.y4m").code, 2);
}

TEST_F(Cli, EmbedExtractRoundTrip) {
  make_inputs();
  const auto e = run("embed --input cover.y4m --output stego.y4m --pub pub.json --seed 77 --report q.csv " + qr_flags());
  ASSERT_EQ(e.code, 0) << e.out;
  EXPECT_NE(e.out.find("capacity: 1.0000 bpp"), std::string::npos) << e.out;
  EXPECT_TRUE(fs::exists(at("stego.y4m.sidecar.json")));
  EXPECT_NE(slurp(at("q.csv")).find("average"), std::string::npos);

  const auto x = run("extract --input stego.y4m --output out --pub pub.json --priv priv.json --seed 77 " + qr_flags());
  ASSERT_EQ(x.code, 0) << x.out;
  for (const char* level : {"L", "M", "Q", "H"}) {
    EXPECT_NE(x.out.find(std::string("ssim ") + level + ": 1.0000"), std::string::npos) << x.out;
    EXPECT_EQ(read_pgm_file(at(std::string("out/frame_00009_") + level + ".pgm")),
              read_pgm_file(at(std::string("qr/") + level + ".pgm")));
  }
}

TEST_F(Cli, SeedFromEnvironment) {
  make_inputs();
  ASSERT_EQ(run("embed --input cover.y4m --output a.y4m --pub pub.json " + qr_flags(), "QRSTEG_SEED=77").code, 0);
  ASSERT_EQ(run("embed --input cover.y4m --output b.y4m --pub pub.json --seed 77 " + qr_flags()).code, 0);
  EXPECT_EQ(slurp(at("a.y4m")), slurp(at("b.y4m")));
  EXPECT_EQ(run("embed --input cover.y4m --output c.y4m --pub pub.json " + qr_flags()).code, 2);
}

TEST_F(Cli, WrongSeedWarnsAndGivesNoise) {
  make_inputs();
  ASSERT_EQ(run("embed --input cover.y4m --output stego.y4m --pub pub.json --seed 77 " + qr_flags()).code, 0);
  const auto x = run("extract --input stego.y4m --output out --pub pub.json --priv priv.json --seed 78 --frames 1 " +
                     qr_flags());
  ASSERT_EQ(x.code, 0) << x.out;
  EXPECT_NE(x.out.find("warning"), std::string::npos);
  EXPECT_EQ(x.out.find("ssim L: 1.0000"), std::string::npos);
}

TEST_F(Cli, ErrorExitCodes) {
  make_inputs();
  // QRs of the wrong size.
  ASSERT_EQ(run("synth-qr --output small --width 16 --height 16").code, 0);
  auto r = run("embed --input cover.y4m --output s.y4m --pub pub.json --seed 1 --qr-l small/L.pgm --qr-m small/M.pgm "
               "--qr-q small/Q.pgm --qr-h small/H.pgm");
  EXPECT_EQ(r.code, 5) << r.out;
  EXPECT_NE(r.out.find("kind=capacity"), std::string::npos);
  // Missing sidecar.
  r = run("extract --input cover.y4m --output out --pub pub.json --priv priv.json --seed 1");
  EXPECT_NE(r.code, 0);
  // Not a video.
  std::ofstream(at("junk.y4m")) << "hello";
  r = run("embed --input junk.y4m --output s2.y4m --pub pub.json --seed 1 " + qr_flags());
  EXPECT_EQ(r.code, 3) << r.out;
  // Zero frames.
  std::ofstream(at("empty.y4m")) << "YUV4MPEG2 W64 H64 F30:1\n";
  r = run("embed --input empty.y4m --output s3.y4m --pub pub.json --seed 1 " + qr_flags());
  EXPECT_EQ(r.code, 3) << r.out;
  EXPECT_FALSE(fs::exists(at("s3.y4m")));
  // Corrupt public key.
  std::ofstream(at("bad.json")) << R"({"kind":"elgamal-public","p":"996","alpha":"5","y":"3"})";
  r = run("embed --input cover.y4m --output s4.y4m --pub bad.json --seed 1 " + qr_flags());
  EXPECT_EQ(r.code, 4) << r.out;
}

TEST_F(Cli, AttackIdentityAndNoise) {
  make_inputs();
  ASSERT_EQ(run("attack --input cover.y4m --output same.y4m").code, 0);
  EXPECT_EQ(slurp(at("same.y4m")), slurp(at("cover.y4m")));
  ASSERT_EQ(run("attack --input cover.y4m --output n1.y4m --attack sp:0.1 --seed 9").code, 0);
  ASSERT_EQ(run("attack --input cover.y4m --output n2.y4m --attack sp:0.1 --seed 9").code, 0);
  EXPECT_EQ(slurp(at("n1.y4m")), slurp(at("n2.y4m")));
  EXPECT_NE(slurp(at("n1.y4m")), slurp(at("cover.y4m")));
  EXPECT_EQ(run("attack --input cover.y4m --output n3.y4m --attack blur:3").code, 2);
}

TEST_F(Cli, RawInput) {
  make_inputs();
  auto [meta, frames] = read_y4m_file(at("cover.y4m"));
  {
    std::ofstream raw(at("cover.yuv"), std::ios::binary);
    for (const auto& f : frames)
      for (const auto* p : {&f.y, &f.u, &f.v}) raw.write(reinterpret_cast<const char*>(p->data()), p->size());
  }
  const auto r = run("embed --input cover.yuv --width 64 --height 64 --output s.y4m --pub pub.json --seed 2 " +
                     qr_flags());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(read_y4m_file(at("s.y4m")).second.size(), 10u);
}

TEST_F(Cli, EmbedDeterministicAcrossThreads) {
  make_inputs();
  ASSERT_EQ(run("embed --input cover.y4m --output a.y4m --pub pub.json --seed 5 --threads 1 " + qr_flags()).code, 0);
  ASSERT_EQ(run("embed --input cover.y4m --output b.y4m --pub pub.json --seed 5 --threads 3 " + qr_flags()).code, 0);
  EXPECT_EQ(slurp(at("a.y4m")), slurp(at("b.y4m")));
  EXPECT_EQ(slurp(at("a.y4m.sidecar.json")), slurp(at("b.y4m.sidecar.json")));
}

TEST_F(Cli, BenchWritesTables) {
  fs::create_directories(at("videos"));
  ASSERT_EQ(run("synth-video --output videos/g.y4m --width 64 --height 64 --frames 3 --seed 1").code, 0);
  const auto r = run("bench --input videos --output results --seed 4 --paper-fidelity --attack none --attack sp:0.01 "
                     "--attack-frames 1 --attack-seeds 2");
  ASSERT_EQ(r.code, 0) << r.out;
  const std::string cap = slurp(at("results/capacity.csv"));
  const std::string rob = slurp(at("results/robustness.csv"));
  EXPECT_EQ(cap.rfind("video,frames,embedded_bits", 0), 0u);
  EXPECT_NE(cap.find("g,3,"), std::string::npos);
  EXPECT_NE(rob.find("g,none,1.0000,1.0000,1.0000,1.0000"), std::string::npos) << rob;

  fs::create_directories(at("nothing"));
  ASSERT_EQ(run("bench --input nothing --output r2 --seed 4 --paper-fidelity").code, 0);
  const std::string empty = slurp(at("r2/capacity.csv"));
  EXPECT_EQ(std::count(empty.begin(), empty.end(), '\n'), 1);
}

}  // namespace
}  // namespace qrsteg
