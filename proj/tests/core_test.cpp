#include <gtest/gtest.h>

#include <optional>
#include <vector>

#include "ahibe/core/scheme.hpp"
#include "ahibe/core/serialize.hpp"
#include "ahibe/error.hpp"
#include "mock_oracle.hpp"

using namespace ahibe::core;
using ahibe::pairing::RecordingRandom;
using ahibe::pairing::ScriptedRandom;
using ahibe::pairing::SeededRandom;
using oracle::ModP;
using oracle::u64;
using oracle::v;

namespace {

Scalar s(u64 x) { return Scalar::from_u64(x); }

HierarchicalIdentity ident(std::initializer_list<u64> xs) {
  std::vector<Scalar> c;
  for (auto x : xs) c.push_back(s(x));
  return HierarchicalIdentity(std::move(c));
}

HierarchicalIdentity random_identity(const GroupSuite& suite, RandomSource& rng, std::size_t depth) {
  std::vector<Scalar> c;
  for (std::size_t i = 0; i < depth; ++i) c.push_back(rng.nonzero_scalar(suite.scalars()));
  return HierarchicalIdentity(std::move(c));
}

GTElem random_message(const GroupSuite& suite, RandomSource& rng) {
  return suite.exp(suite.gt_generator(), rng.scalar(suite.scalars()));
}

// Recovers (r, c) from a mock key block (X^r W1^c ĝ^extra, W2^c, W3^c) and
// reports whether the three components agree on c.
struct Block {
  u64 r, c;
  bool consistent;
};

struct Solver {
  const PublicParams& pp;
  const TrapdoorTranscript& tr;
  ModP F{pp.suite.order().low()};

  u64 x_log(const HierarchicalIdentity& id) const {
    u64 x = v(tr.y_h);
    for (std::size_t i = 0; i < id.depth(); ++i) x = F.add(x, F.mul(v(tr.y_u[i]), v(id[i])));
    return x;
  }

  Block solve(const G2Triple& b, u64 base_log, u64 extra) const {
    const auto& S = pp.suite;
    u64 yw = v(tr.y_w);
    u64 c = F.div(oracle::log(S, b[2]), yw);
    bool ok = oracle::log(S, b[1]) == F.mul(F.mul(yw, v(tr.phi2)), c);
    u64 rest = F.sub(oracle::log(S, b[0]), F.add(extra, F.mul(F.mul(yw, v(tr.phi1)), c)));
    return {F.div(rest, base_log), c, ok};
  }

  // Solves every block of the key and checks that the decryption side shares
  // one r1 and the randomization side one r2. Returns (r1, r2).
  std::pair<u64, u64> check_key(const PrivateKey& sk) const {
    const std::size_t m = sk.id.depth();
    u64 x = x_log(sk.id);
    std::vector<Block> dec{solve(sk.k1, x, v(tr.alpha)), solve(sk.k2, 1, 0)};
    std::vector<Block> ran{solve(sk.r1, x, 0), solve(sk.r2, 1, 0)};
    for (std::size_t j = 0; j < sk.l3.size(); ++j) {
      dec.push_back(solve(sk.l3[j], v(tr.y_u[m + j]), 0));
      ran.push_back(solve(sk.r3[j], v(tr.y_u[m + j]), 0));
    }
    for (const auto* side : {&dec, &ran}) {
      for (const auto& b : *side) {
        EXPECT_TRUE(b.consistent);
        EXPECT_EQ(b.r, side->front().r);
      }
    }
    return {dec.front().r, ran.front().r};
  }
};

struct MockScheme {
  GroupSuite suite;
  SeededRandom rng;
  SetupResult sr;

  MockScheme(u64 p, u64 seed, unsigned l)
      : suite(GroupSuite::mock(p, seed)), rng(seed), sr(setup(suite, l, rng, true)) {}
  const PublicParams& pp() const { return sr.pp; }
  const MasterKey& mk() const { return sr.mk; }
  const TrapdoorTranscript& tr() const { return *sr.transcript; }
  Solver solver() const { return {sr.pp, *sr.transcript}; }
};

}  // namespace

TEST(Setup, TranscriptSatisfiesDefiningEquation) {
  MockScheme m(101, 7, 2);
  ModP F{101};
  const auto& t = m.tr();
  EXPECT_EQ(v(t.tau), F.add(v(t.phi1), F.mul(v(t.nu), v(t.phi2))));
}

TEST(Setup, OmegaIsPairingOfMasterSecret) {
  for (auto suite : {GroupSuite::mock(101, 7), GroupSuite::concrete()}) {
    SeededRandom rng(7);
    auto r = setup(suite, 2, rng);
    EXPECT_EQ(suite.pair(suite.g1(), r.mk.g_hat_alpha), r.pp.omega);
    EXPECT_FALSE(r.transcript.has_value());
  }
}

TEST(Setup, PublicExponentsMatchTranscript) {
  MockScheme m(101, 7, 2);
  ModP F{101};
  const auto& t = m.tr();
  const auto& S = m.suite;
  u64 tau = v(t.tau);
  EXPECT_EQ(oracle::log(S, m.pp().u[0][2]), F.neg(F.mul(v(t.y_u[0]), tau)));
  EXPECT_EQ(oracle::log(S, m.pp().g[1]), v(t.nu));
  EXPECT_EQ(oracle::log(S, m.pp().g[2]), F.neg(tau));
  EXPECT_EQ(oracle::log(S, m.pp().h[1]), F.mul(v(t.y_h), v(t.nu)));
  EXPECT_EQ(oracle::log(S, m.pp().w_phi1), F.mul(v(t.y_w), v(t.phi1)));
  EXPECT_EQ(oracle::log(S, m.pp().omega), v(t.alpha));
  for (unsigned i = 0; i < 2; ++i) {
    EXPECT_EQ(oracle::log(S, m.mk().u_hat[i]), oracle::log(S, m.pp().u[i][0]));
  }
  EXPECT_EQ(oracle::log(S, m.mk().h_hat), oracle::log(S, m.pp().h[0]));
}

TEST(Setup, OrthogonalityHoldsAcrossSeeds) {
  for (u64 p : {101ULL, 1009ULL}) {
    ModP F{p};
    for (u64 seed = 0; seed < 200; ++seed) {
      MockScheme m(p, seed, 1);
      const auto& t = m.tr();
      u64 dot = F.add(F.add(v(t.phi1), F.mul(v(t.nu), v(t.phi2))), F.neg(v(t.tau)));
      ASSERT_EQ(dot, 0U) << "p=" << p << " seed=" << seed;
    }
  }
}

TEST(Setup, RejectsZeroDepth) {
  SeededRandom rng(1);
  EXPECT_THROW(setup(GroupSuite::mock(101, 1), 0, rng), ahibe::Error);
}

TEST(KeyGen, FirstBlockSharesItsRandomness) {
  MockScheme m(101, 7, 3);
  ModP F{101};
  RecordingRandom rec(m.rng);
  auto sk = keygen(ident({3, 7}), m.mk(), m.pp(), rec);
  u64 c1 = v(rec.draws()[1]);
  u64 yw = v(m.tr().y_w);
  EXPECT_EQ(oracle::log(m.suite, sk.k1[2]), F.mul(yw, c1));
  EXPECT_EQ(oracle::log(m.suite, sk.k1[1]), F.mul(F.mul(yw, v(m.tr().phi2)), c1));
}

TEST(KeyGen, RandomizationBlockR2MatchesRecordedDraws) {
  MockScheme m(101, 7, 3);
  ModP F{101};
  RecordingRandom rec(m.rng);
  auto sk = keygen(ident({3, 7}), m.mk(), m.pp(), rec);
  // Draw order at m=2, l=3: r1 c1 c2 c3_3 r2 c4 c5 c6_3
  ASSERT_EQ(rec.draws().size(), 8U);
  auto r2 = rec.draws()[4], c5 = rec.draws()[6];
  const auto& S = m.suite;
  EXPECT_EQ(S.div(sk.r2[0], S.exp(m.pp().w_phi1, c5)), S.exp(S.g2(), r2));
  EXPECT_EQ(oracle::log(S, sk.r2[0]), F.add(v(r2), F.mul(F.mul(v(m.tr().y_w), v(m.tr().phi1)), v(c5))));
}

TEST(KeyGen, KeysSolveTheKeyGenEquations) {
  MockScheme m(oracle::kBigPrime, 3, 5);
  auto solver = m.solver();
  for (std::size_t depth = 1; depth <= 5; ++depth) {
    RecordingRandom rec(m.rng);
    auto sk = keygen(random_identity(m.suite, m.rng, depth), m.mk(), m.pp(), rec);
    EXPECT_EQ(sk.element_count(), 6 * (2 + 5 - depth));
    auto [r1, r2] = solver.check_key(sk);
    EXPECT_EQ(r1, v(rec.draws()[0]));
    EXPECT_EQ(r2, v(rec.draws()[3 + (5 - depth)]));
  }
}

TEST(KeyGen, RandomizationBlocksOmitMasterSecret) {
  MockScheme m(oracle::kBigPrime, 4, 3);
  auto solver = m.solver();
  RecordingRandom rec(m.rng);
  auto sk = keygen(ident({5}), m.mk(), m.pp(), rec);
  u64 x = solver.x_log(sk.id);
  u64 r2 = v(rec.draws()[3 + 2]);
  // R_{1,1} solved without ĝ^α reproduces r2 exactly; K_{1,1} needs α.
  EXPECT_EQ(solver.solve(sk.r1, x, 0).r, r2);
  EXPECT_NE(solver.solve(sk.k1, x, 0).r, v(rec.draws()[0]));
  EXPECT_EQ(solver.solve(sk.k1, x, v(m.tr().alpha)).r, v(rec.draws()[0]));
}

TEST(KeyGen, RejectsBadIdentities) {
  MockScheme m(101, 7, 2);
  EXPECT_THROW(keygen(ident({1, 2, 3}), m.mk(), m.pp(), m.rng), ahibe::Error);
  EXPECT_THROW(keygen(HierarchicalIdentity::root(), m.mk(), m.pp(), m.rng), ahibe::Error);
  EXPECT_THROW(keygen(ident({101}), m.mk(), m.pp(), m.rng), ahibe::Error);
  EXPECT_THROW(ident({3, 0}), ahibe::Error);
}

TEST(KeyGen, TablesGiveTheSameKey) {
  for (auto suite : {GroupSuite::mock(1009, 2), GroupSuite::concrete()}) {
    SeededRandom rng(2);
    auto r = setup(suite, 4, rng);
    auto tables = prepare_keygen(r.mk, r.pp);
    auto id = random_identity(suite, rng, 2);
    SeededRandom a(9), b(9);
    auto plain = keygen(id, r.mk, r.pp, a);
    auto fast = keygen(id, r.mk, r.pp, b, &tables);
    EXPECT_EQ(serialize(plain, r.pp), serialize(fast, r.pp));
  }
}

TEST(Delegate, ChainToFullDepthDecrypts) {
  for (auto suite : {GroupSuite::mock(oracle::kBigPrime, 5), GroupSuite::concrete()}) {
    SeededRandom rng(5);
    const unsigned l = 4;
    auto r = setup(suite, l, rng);
    auto path = random_identity(suite, rng, l);
    auto sk = keygen(path.prefix(1), r.mk, r.pp, rng);
    for (unsigned d = 2; d <= l; ++d) sk = delegate(path.prefix(d), sk, r.pp, rng);
    EXPECT_EQ(sk.element_count(), 12U);
    auto msg = random_message(suite, rng);
    EXPECT_EQ(decrypt(encrypt(path, msg, r.pp, rng), sk, r.pp), msg);
  }
}

TEST(Delegate, DegenerateRandomnessMultipliesInTheNextLevel) {
  MockScheme m(101, 7, 3);
  const auto& S = m.suite;
  auto parent = keygen(ident({3}), m.mk(), m.pp(), m.rng);
  // γ1 δ1 δ2 δ3_3 γ2 δ4 δ5 δ6_3
  std::vector<std::optional<Scalar>> script{s(0), s(0), s(0), s(0), s(1), s(0), s(0), s(0)};
  ScriptedRandom scripted(script, m.rng);
  auto child = delegate(ident({3, 7}), parent, m.pp(), scripted);
  EXPECT_EQ(scripted.consumed(), script.size());
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(child.k1[k], S.mul(parent.k1[k], S.exp(parent.l3[0][k], s(7))));
    EXPECT_EQ(child.k2[k], parent.k2[k]);
    EXPECT_EQ(child.l3[0][k], parent.l3[1][k]);
    EXPECT_EQ(child.r1[k], S.mul(parent.r1[k], S.exp(parent.r3[0][k], s(7))));
    EXPECT_EQ(child.r2[k], parent.r2[k]);
    EXPECT_EQ(child.r3[0][k], parent.r3[1][k]);
  }
}

TEST(Delegate, ExponentsFollowTheRerandomization) {
  MockScheme m(101, 7, 3);
  ModP F{101};
  RecordingRandom kg(m.rng);
  auto parent = keygen(ident({3}), m.mk(), m.pp(), kg);
  RecordingRandom dg(m.rng);
  auto child = delegate(ident({3, 7}), parent, m.pp(), dg);
  // keygen at m=1, l=3: r1 c1 c2 c3_2 c3_3 r2 c4 c5 c6_2 c6_3
  u64 r1 = v(kg.draws()[0]), c2 = v(kg.draws()[2]);
  u64 r2 = v(kg.draws()[5]), c5 = v(kg.draws()[7]);
  // delegate to m=2: γ1 δ1 δ2 δ3_3 γ2 δ4 δ5 δ6_3
  u64 g1 = v(dg.draws()[0]), d2 = v(dg.draws()[2]);
  u64 w1 = F.mul(v(m.tr().y_w), v(m.tr().phi1));
  u64 share = F.add(F.add(c2, F.mul(c5, g1)), d2);
  EXPECT_EQ(oracle::log(m.suite, child.k2[0]), F.add(F.add(r1, F.mul(r2, g1)), F.mul(w1, share)));
}

TEST(Delegate, DelegatedKeysSolveTheKeyGenEquations) {
  MockScheme m(oracle::kBigPrime, 8, 5);
  auto solver = m.solver();
  ModP F{oracle::kBigPrime};
  auto path = random_identity(m.suite, m.rng, 5);
  auto sk = keygen(path.prefix(1), m.mk(), m.pp(), m.rng);
  auto [r1, r2] = solver.check_key(sk);
  for (unsigned d = 2; d <= 5; ++d) {
    RecordingRandom rec(m.rng);
    sk = delegate(path.prefix(d), sk, m.pp(), rec);
    std::size_t rest = 5 - d;
    u64 g1 = v(rec.draws()[0]), g2 = v(rec.draws()[3 + rest]);
    auto [n1, n2] = solver.check_key(sk);
    EXPECT_EQ(n1, F.add(r1, F.mul(r2, g1)));
    EXPECT_EQ(n2, F.mul(r2, g2));
    r1 = n1;
    r2 = n2;
  }
}

TEST(Delegate, RejectsInvalidTargets) {
  MockScheme m(101, 7, 3);
  auto sk = keygen(ident({3}), m.mk(), m.pp(), m.rng);
  EXPECT_THROW(delegate(ident({3, 7, 9}), sk, m.pp(), m.rng), ahibe::Error);  // skips a level
  EXPECT_THROW(delegate(ident({4, 7}), sk, m.pp(), m.rng), ahibe::Error);     // not a prefix
  EXPECT_THROW(delegate(ident({3}), sk, m.pp(), m.rng), ahibe::Error);
  auto full = keygen(ident({3, 7, 9}), m.mk(), m.pp(), m.rng);
  EXPECT_THROW(delegate(ident({3, 7, 9, 1}), full, m.pp(), m.rng), ahibe::Error);
}

TEST(Delegate, RootKeyDelegatesThroughInternalPath) {
  MockScheme m(1009, 7, 2);
  auto root = detail::keygen_any_depth(HierarchicalIdentity::root(), m.mk(), m.pp(), m.rng);
  EXPECT_EQ(root.element_count(), 6U * 4);
  EXPECT_THROW(delegate(ident({5}), root, m.pp(), m.rng), ahibe::Error);
  auto sk = detail::delegate_any_depth(ident({5}), root, m.pp(), m.rng);
  auto msg = random_message(m.suite, m.rng);
  EXPECT_EQ(decrypt(encrypt(ident({5}), msg, m.pp(), m.rng), sk, m.pp()), msg);
  auto rct = detail::encrypt_any_depth(HierarchicalIdentity::root(), msg, m.pp(), m.rng);
  EXPECT_EQ(decrypt(rct, root, m.pp()), msg);
}

TEST(Encrypt, CiphertextSizeIgnoresDepth) {
  for (auto suite : {GroupSuite::mock(101, 7), GroupSuite::concrete()}) {
    SeededRandom rng(7);
    auto r = setup(suite, 6, rng);
    auto msg = random_message(suite, rng);
    auto shallow = serialize(encrypt(random_identity(suite, rng, 1), msg, r.pp, rng), r.pp);
    auto deep = serialize(encrypt(random_identity(suite, rng, 6), msg, r.pp, rng), r.pp);
    EXPECT_EQ(shallow.size(), deep.size());
  }
}

TEST(Encrypt, ZeroExponentLeavesMessageInTheClear) {
  MockScheme m(101, 7, 2);
  const auto& S = m.suite;
  auto msg = S.exp(S.gt_generator(), s(5));
  std::vector<std::optional<Scalar>> script{s(0)};
  ScriptedRandom zero(script, m.rng);
  auto ct = encrypt(ident({3, 7}), msg, m.pp(), zero);
  EXPECT_EQ(ct.c, msg);
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(ct.c1[k], S.identity_g1());
    EXPECT_EQ(ct.c2[k], S.identity_g1());
  }
  auto other = keygen(ident({9}), m.mk(), m.pp(), m.rng);
  EXPECT_EQ(decrypt(ct, other, m.pp()), msg);
}

TEST(Encrypt, SecondComponentExponent) {
  MockScheme m(101, 7, 2);
  ModP F{101};
  const auto& t = m.tr();
  auto msg = m.suite.exp(m.suite.gt_generator(), s(5));
  RecordingRandom rec(m.rng);
  auto ct = encrypt(ident({3, 7}), msg, m.pp(), rec);
  u64 tt = v(rec.draws()[0]);
  u64 x = F.add(F.add(v(t.y_h), F.mul(v(t.y_u[0]), 3)), F.mul(v(t.y_u[1]), 7));
  EXPECT_EQ(oracle::log(m.suite, ct.c2[1]), F.mul(F.mul(x, v(t.nu)), tt));
  EXPECT_EQ(oracle::log(m.suite, ct.c), F.add(F.mul(v(t.alpha), tt), 5));
}

TEST(Decrypt, WrongIdentityLeavesPredictedResidual) {
  MockScheme m(101, 7, 2);
  ModP F{101};
  auto msg = m.suite.exp(m.suite.gt_generator(), s(5));
  RecordingRandom er(m.rng);
  auto ct = encrypt(ident({3, 7}), msg, m.pp(), er);
  RecordingRandom kr(m.rng);
  auto sk = keygen(ident({3, 8}), m.mk(), m.pp(), kr);
  auto out = decrypt(ct, sk, m.pp());
  // Residual exponent t·r1·(X_ct − X_key) with X_ct − X_key = y_{u_2}·(7 − 8).
  u64 expected = F.mul(F.mul(v(er.draws()[0]), v(kr.draws()[0])), F.neg(v(m.tr().y_u[1])));
  EXPECT_NE(expected, 0U);
  EXPECT_EQ(F.sub(oracle::log(m.suite, out), 5), expected);
  EXPECT_NE(out, msg);
}

TEST(Decrypt, RoundTripAtEveryDepthOnMock) {
  for (unsigned l : {1U, 3U, 10U}) {
    MockScheme m(oracle::kBigPrime, l, l);
    for (unsigned d = 1; d <= l; ++d) {
      for (int trial = 0; trial < 5; ++trial) {
        auto id = random_identity(m.suite, m.rng, d);
        auto msg = random_message(m.suite, m.rng);
        auto sk = keygen(id, m.mk(), m.pp(), m.rng);
        ASSERT_EQ(decrypt(encrypt(id, msg, m.pp(), m.rng), sk, m.pp()), msg) << "l=" << l << " d=" << d;
      }
    }
  }
}

TEST(Decrypt, RoundTripOnConcrete) {
  auto suite = GroupSuite::concrete();
  SeededRandom rng(21);
  auto r = setup(suite, 3, rng);
  for (unsigned d = 1; d <= 3; ++d) {
    auto id = random_identity(suite, rng, d);
    auto msg = random_message(suite, rng);
    auto sk = keygen(id, r.mk, r.pp, rng);
    EXPECT_EQ(decrypt(encrypt(id, msg, r.pp, rng), sk, r.pp), msg);
    auto wrong = keygen(random_identity(suite, rng, d), r.mk, r.pp, rng);
    EXPECT_NE(decrypt(encrypt(id, msg, r.pp, rng), wrong, r.pp), msg);
  }
}

TEST(Decrypt, DelegatedAndFreshKeysAgree) {
  MockScheme m(oracle::kBigPrime, 9, 4);
  auto path = random_identity(m.suite, m.rng, 4);
  auto fresh = keygen(path, m.mk(), m.pp(), m.rng);
  for (unsigned start = 1; start <= 4; ++start) {
    auto sk = keygen(path.prefix(start), m.mk(), m.pp(), m.rng);
    for (unsigned d = start + 1; d <= 4; ++d) sk = delegate(path.prefix(d), sk, m.pp(), m.rng);
    for (int i = 0; i < 3; ++i) {
      auto ct = encrypt(path, random_message(m.suite, m.rng), m.pp(), m.rng);
      EXPECT_EQ(decrypt(ct, sk, m.pp()), decrypt(ct, fresh, m.pp()));
    }
  }
}

TEST(Decrypt, RejectsMisshapenKeys) {
  MockScheme m(101, 7, 3);
  auto sk = keygen(ident({3}), m.mk(), m.pp(), m.rng);
  auto ct = encrypt(ident({3}), m.suite.gt_generator(), m.pp(), m.rng);
  sk.l3.pop_back();
  EXPECT_THROW(decrypt(ct, sk, m.pp()), ahibe::Error);
}

class Serialization : public ::testing::TestWithParam<bool> {
 protected:
  GroupSuite suite = GetParam() ? GroupSuite::concrete() : GroupSuite::mock(1009, 4);
  SeededRandom rng{4};
  SetupResult r = setup(suite, 3, rng);
};

TEST_P(Serialization, RoundTripsEveryObject) {
  auto pp_bytes = serialize(r.pp);
  auto pp = deserialize_public_params(pp_bytes);
  EXPECT_EQ(serialize(pp), pp_bytes);
  EXPECT_EQ(peek_kind(pp_bytes), ObjectKind::public_params);

  auto mk_bytes = serialize(r.mk, r.pp);
  EXPECT_EQ(serialize(deserialize_master_key(mk_bytes, pp), pp), mk_bytes);

  auto id = random_identity(suite, rng, 2);
  auto sk = keygen(id, r.mk, r.pp, rng);
  auto sk_bytes = serialize(sk, r.pp);
  auto sk2 = deserialize_private_key(sk_bytes, pp);
  EXPECT_EQ(sk2.id, id);
  EXPECT_EQ(serialize(sk2, pp), sk_bytes);

  auto msg = random_message(suite, rng);
  auto ct = encrypt(id, msg, r.pp, rng);
  auto ct_bytes = serialize(ct, r.pp);
  auto ct2 = deserialize_ciphertext(ct_bytes, pp);
  EXPECT_EQ(ct2, ct);
  EXPECT_EQ(decrypt(ct2, sk2, pp), msg);
}

TEST_P(Serialization, KeySizeTracksFreeLevels) {
  auto a = serialize(keygen(random_identity(suite, rng, 1), r.mk, r.pp, rng), r.pp);
  auto b = serialize(keygen(random_identity(suite, rng, 2), r.mk, r.pp, rng), r.pp);
  std::size_t elem = suite.encode(suite.g2()).size() + 2;
  std::size_t comp = suite.scalars().byte_width() + 2;
  EXPECT_EQ(a.size() - b.size(), 6 * elem - comp);
}

TEST_P(Serialization, RejectsCorruptInput) {
  auto ct = serialize(encrypt(random_identity(suite, rng, 1), suite.gt_generator(), r.pp, rng), r.pp);
  auto bad = ct;
  bad[0] = 'X';
  EXPECT_THROW(deserialize_ciphertext(bad, r.pp), ahibe::Error);
  EXPECT_THROW(deserialize_ciphertext(std::span(ct).first(ct.size() - 1), r.pp), ahibe::Error);
  bad = ct;
  bad.push_back(0);
  EXPECT_THROW(deserialize_ciphertext(bad, r.pp), ahibe::Error);
  EXPECT_THROW(deserialize_private_key(ct, r.pp), ahibe::Error);

  SeededRandom other_rng(5);
  auto other = setup(suite, 4, other_rng);
  EXPECT_THROW(deserialize_ciphertext(ct, other.pp), ahibe::Error);
  try {
    deserialize_ciphertext(ct, other.pp);
  } catch (const ahibe::Error& e) {
    EXPECT_EQ(e.kind(), ahibe::ErrorKind::malformed);
  }
}

INSTANTIATE_TEST_SUITE_P(Backends, Serialization, ::testing::Values(false, true),
                         [](const auto& info) { return info.param ? "Concrete" : "Mock"; });
