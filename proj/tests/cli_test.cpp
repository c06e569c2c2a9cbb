#include <gtest/gtest.h>
#include <sodium.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "ahibe/cli/app.hpp"
#include "ahibe/cli/hybrid.hpp"
#include "ahibe/core/serialize.hpp"
#include "ahibe/error.hpp"
#include "ahibe/pairing/random.hpp"
#include "mock_oracle.hpp"

namespace fs = std::filesystem;
using namespace ahibe;
using namespace ahibe::cli;
using pairing::GroupSuite;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result sh(std::vector<std::string> args) {
  args.insert(args.begin(), "ahibe");
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ahibe_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string at(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

// Independent reimplementation of the label hash for one counter value.
pairing::Scalar label_hash(const std::string& label, std::uint32_t level, std::uint8_t counter,
                           const pairing::ScalarField& F) {
  std::string in = "ahibe/identity/v1";
  for (std::uint32_t v : {level, static_cast<std::uint32_t>(label.size())}) {
    for (int s = 24; s >= 0; s -= 8) in.push_back(static_cast<char>(v >> s));
  }
  in += label;
  in.push_back(static_cast<char>(counter));
  std::array<std::uint8_t, 64> h{};
  crypto_generichash(h.data(), h.size(), reinterpret_cast<const unsigned char*>(in.data()), in.size(), nullptr, 0);
  return F.reduce(h);
}

}  // namespace

TEST(SplitPath, Labels) {
  EXPECT_EQ(split_path("corp/eng/alice"), (std::vector<std::string>{"corp", "eng", "alice"}));
  EXPECT_EQ(split_path("x"), (std::vector<std::string>{"x"}));
  EXPECT_THROW(split_path(""), Error);
  EXPECT_THROW(split_path("a//b"), Error);
  EXPECT_THROW(split_path("/a"), Error);
  EXPECT_THROW(split_path("a/"), Error);
}

TEST(HashIdentity, DeterministicAndSeparated) {
  auto s = GroupSuite::concrete();
  const auto& F = s.scalars();
  EXPECT_EQ(hash_identity({"a"}, F), hash_identity({"a"}, F));
  EXPECT_NE(hash_identity({"a", "b"}, F), hash_identity({"ab"}, F));
  EXPECT_NE(hash_identity({"a", "b"}, F)[1], hash_identity({"b"}, F)[0]);  // level is bound in
  EXPECT_TRUE(hash_identity({"a"}, F).is_prefix_of(hash_identity({"a", "b"}, F)));
  EXPECT_EQ(hash_identity({"corp"}, F)[0], label_hash("corp", 0, 0, F));
}

TEST(HashIdentity, NeverZeroAndResamples) {
  auto s = GroupSuite::mock(101, 1);
  const auto& F = s.scalars();
  std::mt19937_64 rng(11);
  int resampled = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string label = std::to_string(rng());
    auto c = hash_identity({label}, F)[0];
    ASSERT_FALSE(c.is_zero());
    std::uint8_t k = 0;
    while (label_hash(label, 0, k, F).is_zero()) ++k;
    if (k > 0) ++resampled;
    EXPECT_EQ(c, label_hash(label, 0, k, F));
  }
  // about 1% of labels hit the zero residue at p = 101
  EXPECT_GT(resampled, 30);
}

TEST(Hybrid, SealOpenAndContainer) {
  for (auto suite : {GroupSuite::mock(oracle::kBigPrime, 2), GroupSuite::concrete()}) {
    pairing::SeededRandom rng(5);
    auto sr = core::setup(suite, 3, rng);
    auto id = hash_identity({"a", "b"}, suite.scalars());
    auto sk = core::keygen(id, sr.mk, sr.pp, rng);
    std::string text = "attack at dawn";
    std::vector<std::uint8_t> msg(text.begin(), text.end());
    auto hc = seal(id, msg, sr.pp, rng);
    EXPECT_EQ(hc.body.size(), msg.size() + 16);
    auto bytes = hc.encode();
    EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "AHCT");
    auto back = HybridCiphertext::parse(bytes);
    EXPECT_EQ(open(back, sk, sr.pp), msg);

    auto other = core::keygen(hash_identity({"a", "c"}, suite.scalars()), sr.mk, sr.pp, rng);
    try {
      open(back, other, sr.pp);
      ADD_FAILURE() << "wrong identity opened";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::authentication);
    }

    auto flipped = bytes;
    flipped.back() ^= 1;
    EXPECT_THROW(open(HybridCiphertext::parse(flipped), sk, sr.pp), Error);
    // Swapping in another header for the same identity breaks the binding.
    auto other_hc = seal(id, msg, sr.pp, rng);
    auto mixed = back;
    mixed.header = other_hc.header;
    try {
      open(mixed, sk, sr.pp);
      ADD_FAILURE() << "header swap opened";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::authentication);
    }
    bytes.resize(20);
    EXPECT_THROW(HybridCiphertext::parse(bytes), Error);
  }
}

TEST(Hybrid, HeaderLengthConstantAcrossDepths) {
  auto suite = GroupSuite::concrete();
  pairing::SeededRandom rng(9);
  auto sr = core::setup(suite, 5, rng);
  std::set<std::size_t> sizes;
  std::vector<std::string> labels;
  std::vector<std::uint8_t> msg(100, 7);
  for (int d = 1; d <= 5; ++d) {
    labels.push_back("x" + std::to_string(d));
    sizes.insert(seal(hash_identity(labels, suite.scalars()), msg, sr.pp, rng).encode().size());
  }
  EXPECT_EQ(sizes.size(), 1U);
}

TEST_F(TempDir, RoundTripAllDepthsBothBackends) {
  for (bool mock : {true, false}) {
    std::vector<std::string> setup{"setup", "--depth", "4", "--out", dir_.string(), "--seed", "3"};
    if (mock) setup.insert(setup.end(), {"--mock", "1000003"});
    ASSERT_EQ(sh(setup).code, kOk);
    spit(at("msg"), std::string("payload\0with nul", 16));
    std::string path;
    for (int d = 1; d <= 4; ++d) {
      path += (d > 1 ? "/" : "") + std::string("L") + std::to_string(d);
      ASSERT_EQ(sh({"keygen", "--pp", at("pp.bin"), "--mk", at("mk.bin"), "--id", path, "--out", at("sk")}).code, kOk);
      ASSERT_EQ(sh({"encrypt", "--pp", at("pp.bin"), "--id", path, "--in", at("msg"), "--out", at("ct")}).code, kOk);
      auto r = sh({"decrypt", "--pp", at("pp.bin"), "--sk", at("sk"), "--in", at("ct")});
      ASSERT_EQ(r.code, kOk) << r.err;
      EXPECT_EQ(r.out, slurp(at("msg"))) << "depth " << d << (mock ? " mock" : " concrete");
    }
  }
}

TEST_F(TempDir, DelegationChainsMatchFreshKeys) {
  ASSERT_EQ(sh({"setup", "--depth", "3", "--out", dir_.string()}).code, kOk);
  spit(at("msg"), "m");
  ASSERT_EQ(sh({"keygen", "--pp", at("pp.bin"), "--mk", at("mk.bin"), "--id", "a", "--out", at("a")}).code, kOk);
  ASSERT_EQ(sh({"delegate", "--pp", at("pp.bin"), "--sk", at("a"), "--id", "a/b/c", "--out", at("abc")}).code, kOk);
  ASSERT_EQ(sh({"encrypt", "--pp", at("pp.bin"), "--id", "a/b/c", "--in", at("msg"), "--out", at("ct")}).code, kOk);
  EXPECT_EQ(sh({"decrypt", "--pp", at("pp.bin"), "--sk", at("abc"), "--in", at("ct")}).out, "m");
}

TEST_F(TempDir, WrongIdentityIsAuthenticationFailureWithoutOutput) {
  ASSERT_EQ(sh({"setup", "--depth", "3", "--out", dir_.string()}).code, kOk);
  spit(at("msg"), "secret");
  ASSERT_EQ(sh({"keygen", "--pp", at("pp.bin"), "--mk", at("mk.bin"), "--id", "a/c", "--out", at("ac")}).code, kOk);
  ASSERT_EQ(sh({"encrypt", "--pp", at("pp.bin"), "--id", "a/b", "--in", at("msg"), "--out", at("ct")}).code, kOk);
  auto r = sh({"decrypt", "--pp", at("pp.bin"), "--sk", at("ac"), "--in", at("ct"), "--out", at("plain")});
  EXPECT_EQ(r.code, kAuthentication);
  EXPECT_FALSE(fs::exists(at("plain")));
  EXPECT_FALSE(fs::exists(at("plain.tmp")));
  auto s = sh({"decrypt", "--pp", at("pp.bin"), "--sk", at("ac"), "--in", at("ct")});
  EXPECT_EQ(s.code, kAuthentication);
  EXPECT_TRUE(s.out.empty());
  EXPECT_EQ(std::count(s.err.begin(), s.err.end(), '\n'), 1);
}

TEST_F(TempDir, DistinctExitCodes) {
  ASSERT_EQ(sh({"setup", "--depth", "2", "--out", dir_.string()}).code, kOk);
  spit(at("junk"), "not a key");
  EXPECT_EQ(sh({}).code, kUsage);
  EXPECT_EQ(sh({"keygen", "--pp", at("pp.bin")}).code, kUsage);
  EXPECT_EQ(sh({"keygen", "--pp", at("pp.bin"), "--mk", at("mk.bin"), "--id", "a//b", "--out", at("x")}).code,
            kUsage);
  EXPECT_EQ(sh({"keygen", "--pp", at("nope"), "--mk", at("mk.bin"), "--id", "a", "--out", at("x")}).code, kIo);
  EXPECT_EQ(sh({"keygen", "--pp", at("pp.bin"), "--mk", at("junk"), "--id", "a", "--out", at("x")}).code,
            kStructural);
  EXPECT_EQ(sh({"keygen", "--pp", at("mk.bin"), "--mk", at("mk.bin"), "--id", "a", "--out", at("x")}).code,
            kStructural);
  EXPECT_EQ(sh({"keygen", "--pp", at("pp.bin"), "--mk", at("mk.bin"), "--id", "a/b/c", "--out", at("x")}).code,
            kDepth);
  ASSERT_EQ(sh({"keygen", "--pp", at("pp.bin"), "--mk", at("mk.bin"), "--id", "a", "--out", at("a")}).code, kOk);
  EXPECT_EQ(sh({"delegate", "--pp", at("pp.bin"), "--sk", at("a"), "--id", "b/c", "--out", at("x")}).code,
            kNotPrefix);
  EXPECT_EQ(sh({"delegate", "--pp", at("pp.bin"), "--sk", at("a"), "--id", "a", "--out", at("x")}).code, kNotPrefix);
  EXPECT_EQ(sh({"decrypt", "--pp", at("pp.bin"), "--sk", at("a"), "--in", at("junk")}).code, kStructural);
  EXPECT_EQ(sh({"setup", "--depth", "0", "--out", dir_.string()}).code, kDepth);
  EXPECT_EQ(sh({"keygen", "--pp", at("pp.bin"), "--mk", at("mk.bin"), "--id", "a", "--out",
                (dir_ / "no" / "such" / "dir").string()})
                .code,
            kIo);
}

TEST(Cli, GgmCheckBuiltinFive) {
  auto r = sh({"ggm-check", "--builtin", "5", "--q", "0", "--p", "1000003"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("generic-secure: yes, bound 3(q+12)^2*4/p"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("{A*B*C, A^2*B*C, A*B^2*C}"), std::string::npos);
  EXPECT_NE(r.out.find("1728/1000003"), std::string::npos);
  EXPECT_EQ(sh({"ggm-check"}).code, kUsage);
  EXPECT_EQ(sh({"ggm-check", "--builtin", "9"}).code, kUsage);
}

TEST_F(TempDir, GgmCheckInstanceFile) {
  spit(at("inst"), "name: mutated\nP: 1\nP: A\nP: B\nP: A*B\nQ: 1\nT0: A*B\nT1: D\n");
  auto r = sh({"ggm-check", "--instance", at("inst")});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("T0 dependent on P: yes"), std::string::npos);
  EXPECT_NE(r.out.find("generic-secure: no"), std::string::npos);
  spit(at("bad"), "P: (\n");
  EXPECT_EQ(sh({"ggm-check", "--instance", at("bad")}).code, kStructural);
}

TEST(Cli, BenchCsvAndMockRejection) {
  auto r = sh({"bench", "decrypt", "--depth", "2", "--reps", "1", "--csv"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out.rfind("alg,l,d,mean_ns,stddev_ns,reps\ndecrypt,2,0,", 0), 0U) << r.out;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
  EXPECT_EQ(sh({"bench", "--mock", "101"}).code, kUsage);
  EXPECT_EQ(sh({"bench", "sign", "--depth", "2"}).code, kUsage);
}
