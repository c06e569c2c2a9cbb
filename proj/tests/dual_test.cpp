#include <gtest/gtest.h>

#include <optional>
#include <vector>

#include "ahibe/core/serialize.hpp"
#include "ahibe/dual/semi_functional.hpp"
#include "ahibe/error.hpp"
#include "mock_oracle.hpp"

using namespace ahibe::dual;
using ahibe::core::serialize;
using ahibe::core::SetupResult;
using ahibe::pairing::RecordingRandom;
using ahibe::pairing::ScriptedRandom;
using ahibe::pairing::SeededRandom;
using oracle::ModP;
using oracle::u64;
using oracle::v;

namespace {

using Script = std::vector<std::optional<Scalar>>;

Scalar s(u64 x) { return Scalar::from_u64(x); }

HierarchicalIdentity ident(std::initializer_list<u64> xs) {
  std::vector<Scalar> c;
  for (auto x : xs) c.push_back(s(x));
  return HierarchicalIdentity(std::move(c));
}

struct Lab {
  GroupSuite suite;
  SeededRandom rng;
  SetupResult sr;
  SemiFunctionalParams sfp;
  ModP F;

  Lab(u64 p, u64 seed, unsigned l)
      : suite(GroupSuite::mock(p, seed)),
        rng(seed),
        sr(ahibe::core::setup(suite, l, rng, true)),
        sfp(sf_params(sr.transcript, suite, rng)),
        F{p} {}

  const PublicParams& pp() const { return sr.pp; }
  const MasterKey& mk() const { return sr.mk; }
  const TrapdoorTranscript& tr() const { return *sr.transcript; }
  GTElem message(u64 e) const { return suite.exp(suite.gt_generator(), s(e)); }
  template <class E>
  u64 log(const E& e) const {
    return oracle::log(suite, e);
  }
  template <class E>
  u64 diff(const E& a, const E& b) const {
    return F.sub(log(a), log(b));
  }
  // Exponent of e(f, f̂)^x relative to e(g, ĝ): y_f^2 x.
  u64 ff(u64 x) const { return F.mul(F.mul(v(sfp.y_f), v(sfp.y_f)), x); }
};

// Number of scalars a normal keygen draws at depth m under depth l.
std::size_t keygen_draws(unsigned l, std::size_t m) { return 6 + 2 * (l - m); }

Script skip(std::size_t n) { return Script(n, std::nullopt); }

}  // namespace

TEST(SfParams, GeneratorsCarryYf) {
  Lab lab(101, 7, 2);
  EXPECT_EQ(lab.log(lab.sfp.f_hat), v(lab.sfp.y_f));
  EXPECT_EQ(lab.log(lab.sfp.f), v(lab.sfp.y_f));
  EXPECT_EQ(lab.log(lab.sfp.f_neg_phi2), lab.F.neg(lab.F.mul(v(lab.sfp.y_f), v(lab.tr().phi2))));
  EXPECT_EQ(lab.log(lab.sfp.f_hat_neg_nu), lab.F.neg(lab.F.mul(v(lab.sfp.y_f), v(lab.tr().nu))));
  ASSERT_TRUE(lab.tr().y_f.has_value());
  EXPECT_EQ(*lab.tr().y_f, lab.sfp.y_f);
}

TEST(SfParams, UnitYfGivesGenerator) {
  auto suite = GroupSuite::mock(101, 7);
  SeededRandom rng(7);
  auto sr = ahibe::core::setup(suite, 2, rng, true);
  ScriptedRandom one(Script{s(1)}, rng);
  auto sfp = sf_params(sr.transcript, suite, one);
  EXPECT_EQ(sfp.f, suite.g1());
  EXPECT_EQ(sfp.f_hat, suite.g2());
}

TEST(SfParams, RequiresTranscript) {
  auto suite = GroupSuite::mock(101, 7);
  SeededRandom rng(7);
  auto sr = ahibe::core::setup(suite, 2, rng, false);
  EXPECT_THROW(sf_params(sr.transcript, suite, rng), ahibe::Error);
}

TEST(KeyGenSf1, DecryptsNormalCiphertexts) {
  Lab lab(oracle::kBigPrime, 3, 3);
  auto id = ident({11, 12});
  auto key = keygen_sf1(id, lab.mk(), lab.pp(), lab.sfp, lab.rng);
  auto ct = ahibe::core::encrypt(id, lab.message(42), lab.pp(), lab.rng);
  EXPECT_EQ(ahibe::core::decrypt(ct, key.key, lab.pp()), lab.message(42));
}

TEST(KeyGenSf1, ZeroMassReproducesNormalKey) {
  Lab lab(101, 7, 3);
  auto id = ident({3, 7});
  SeededRandom a(99), b(99);
  auto normal = ahibe::core::keygen(id, lab.mk(), lab.pp(), a);
  auto script = skip(keygen_draws(3, 2));
  // s_k1 z_k1 z_k2_3 s_k2
  for (auto x : {0, 5, 6, 0}) script.push_back(s(x));
  ScriptedRandom zero(script, b);
  auto sf = keygen_sf1(id, lab.mk(), lab.pp(), lab.sfp, zero);
  EXPECT_EQ(serialize(sf.key, lab.pp()), serialize(normal, lab.pp()));
}

TEST(KeyGenSf1, SecondComponentShift) {
  Lab lab(101, 7, 3);
  auto id = ident({3, 7});
  SeededRandom a(5), b(5);
  auto normal = ahibe::core::keygen(id, lab.mk(), lab.pp(), a);
  auto sf = keygen_sf1(id, lab.mk(), lab.pp(), lab.sfp, b);
  const auto& r = sf.randomness;
  EXPECT_EQ(lab.diff(sf.key.k1[1], normal.k1[1]), lab.F.mul(v(lab.sfp.y_f), lab.F.mul(v(r.s_k1), v(r.z_k1))));
  EXPECT_EQ(sf.key.k1[2], normal.k1[2]);
  EXPECT_EQ(sf.key.k2[2], normal.k2[2]);
  EXPECT_EQ(sf.key.r1[2], normal.r1[2]);
  EXPECT_FALSE(r.z_k3.has_value());
}

TEST(KeyGenSf2, DecryptsNormalCiphertexts) {
  Lab lab(oracle::kBigPrime, 4, 3);
  auto id = ident({11});
  auto key = keygen_sf2(id, lab.mk(), lab.pp(), lab.sfp, lab.rng);
  auto ct = ahibe::core::encrypt(id, lab.message(17), lab.pp(), lab.rng);
  EXPECT_EQ(ahibe::core::decrypt(ct, key.key, lab.pp()), lab.message(17));
}

TEST(KeyGenSf2, MatchedExponentsDegenerateToTypeOne) {
  Lab lab(101, 7, 3);
  auto id = ident({3});
  SeededRandom a(8), b(8);
  // l=3, m=1: s_k1 z_k1 z_k2_2 z_k2_3 s_k2 [z_k3 z_k4_2 z_k4_3]
  auto one = skip(keygen_draws(3, 1));
  for (auto x : {4, 9, 10, 11, 13}) one.push_back(s(x));
  auto two = one;
  for (auto x : {9, 10, 11}) two.push_back(s(x));
  ScriptedRandom ra(one, a), rb(two, b);
  auto k1 = keygen_sf1(id, lab.mk(), lab.pp(), lab.sfp, ra);
  auto k2 = keygen_sf2(id, lab.mk(), lab.pp(), lab.sfp, rb);
  EXPECT_EQ(serialize(k1.key, lab.pp()), serialize(k2.key, lab.pp()));
}

TEST(KeyGenSf2, RandomizationShiftUsesFreshExponent) {
  Lab lab(101, 7, 3);
  auto id = ident({3, 7});
  SeededRandom a(6), b(6);
  auto normal = ahibe::core::keygen(id, lab.mk(), lab.pp(), a);
  auto sf = keygen_sf2(id, lab.mk(), lab.pp(), lab.sfp, b);
  const auto& r = sf.randomness;
  ASSERT_TRUE(r.z_k3.has_value());
  EXPECT_EQ(lab.diff(sf.key.r1[1], normal.r1[1]), lab.F.mul(v(lab.sfp.y_f), lab.F.mul(v(r.s_k2), v(*r.z_k3))));
}

TEST(KeyExponents, TypeOneSharesAndTypeTwoRefreshes) {
  Lab lab(oracle::kBigPrime, 12, 4);
  const auto& F = lab.F;
  auto id = ident({2});
  for (bool type2 : {false, true}) {
    SeededRandom a(31), b(31);
    auto normal = ahibe::core::keygen(id, lab.mk(), lab.pp(), a);
    auto sf = type2 ? keygen_sf2(id, lab.mk(), lab.pp(), lab.sfp, b) : keygen_sf1(id, lab.mk(), lab.pp(), lab.sfp, b);
    // z = (shift of a z-weighted block) / (shift of the matching unit block)
    auto dk = [&](const auto& x, const auto& y) { return lab.diff(x[1], y[1]); };
    u64 z_dec = F.div(dk(sf.key.k1, normal.k1), dk(sf.key.k2, normal.k2));
    u64 z_ran = F.div(dk(sf.key.r1, normal.r1), dk(sf.key.r2, normal.r2));
    EXPECT_EQ(z_dec, v(sf.randomness.z_k1));
    for (std::size_t i = 0; i < sf.key.l3.size(); ++i) {
      u64 zi_dec = F.div(dk(sf.key.l3[i], normal.l3[i]), dk(sf.key.k2, normal.k2));
      u64 zi_ran = F.div(dk(sf.key.r3[i], normal.r3[i]), dk(sf.key.r2, normal.r2));
      EXPECT_EQ(zi_dec == zi_ran, !type2) << "level " << i;
    }
    EXPECT_EQ(z_dec == z_ran, !type2);
  }
}

TEST(EncryptSf, NormalKeysDecrypt) {
  Lab lab(oracle::kBigPrime, 5, 3);
  auto id = ident({1, 2, 3});
  auto key = ahibe::core::keygen(id, lab.mk(), lab.pp(), lab.rng);
  auto ct = encrypt_sf(id, lab.message(9), lab.pp(), lab.sfp, lab.rng);
  EXPECT_EQ(ahibe::core::decrypt(ct.ct, key, lab.pp()), lab.message(9));
}

TEST(EncryptSf, ZeroMassReproducesNormalCiphertext) {
  Lab lab(101, 7, 2);
  auto id = ident({3, 7});
  SeededRandom a(3), b(3);
  auto normal = ahibe::core::encrypt(id, lab.message(5), lab.pp(), a);
  ScriptedRandom zero(Script{std::nullopt, s(0), s(44)}, b);
  auto sf = encrypt_sf(id, lab.message(5), lab.pp(), lab.sfp, zero);
  EXPECT_EQ(sf.ct, normal);
}

TEST(EncryptSf, ShiftsOnlySecondAndThirdComponents) {
  Lab lab(101, 7, 2);
  auto id = ident({3, 7});
  SeededRandom a(4), b(4);
  auto normal = ahibe::core::encrypt(id, lab.message(5), lab.pp(), a);
  auto sf = encrypt_sf(id, lab.message(5), lab.pp(), lab.sfp, b);
  u64 yf = v(lab.sfp.y_f), sc = v(sf.randomness.s_c);
  EXPECT_EQ(lab.diff(sf.ct.c1[2], normal.c1[2]), lab.F.neg(lab.F.mul(lab.F.mul(yf, v(lab.tr().phi2)), sc)));
  EXPECT_EQ(lab.diff(sf.ct.c1[1], normal.c1[1]), lab.F.mul(yf, sc));
  EXPECT_EQ(sf.ct.c, normal.c);
  EXPECT_EQ(sf.ct.c1[0], normal.c1[0]);
  EXPECT_EQ(sf.ct.c2[0], normal.c2[0]);
}

TEST(Nominal, MatchingZcDecrypts) {
  Lab lab(101, 7, 2);
  auto id = ident({3, 7});
  auto ct = encrypt_sf(id, lab.message(5), lab.pp(), lab.sfp, lab.rng);
  auto key = nominal_sf1_keygen(id, lab.mk(), lab.pp(), lab.sfp, ct.randomness.z_c, lab.rng);
  EXPECT_EQ(key.randomness.z_k1, ct.randomness.z_c);
  EXPECT_EQ(ahibe::core::decrypt(ct.ct, key.key, lab.pp()), lab.message(5));
  EXPECT_EQ(decrypt_residual(ct.ct, key.key, lab.pp(), lab.message(5)), lab.suite.identity_gt());
}

TEST(Nominal, MismatchedZcLeavesResidual) {
  Lab lab(101, 7, 2);
  auto id = ident({3, 7});
  auto ct = encrypt_sf(id, lab.message(5), lab.pp(), lab.sfp, lab.rng);
  Scalar other = lab.suite.scalars().add(ct.randomness.z_c, s(1));
  auto key = nominal_sf1_keygen(id, lab.mk(), lab.pp(), lab.sfp, other, lab.rng);
  const auto& F = lab.F;
  u64 expected = lab.ff(F.mul(F.mul(v(key.randomness.s_k1), v(ct.randomness.s_c)),
                              F.sub(v(key.randomness.z_k1), v(ct.randomness.z_c))));
  auto residual = decrypt_residual(ct.ct, key.key, lab.pp(), lab.message(5));
  EXPECT_EQ(lab.log(residual), expected);
  EXPECT_NE(expected, 0U) << "degenerate draw";
  EXPECT_NE(ahibe::core::decrypt(ct.ct, key.key, lab.pp()), lab.message(5));
}

TEST(Residual, SfCiphertextWithTypeTwoKey) {
  Lab lab(101, 7, 2);
  auto id = ident({3, 7});
  auto ct = encrypt_sf(id, lab.message(5), lab.pp(), lab.sfp, lab.rng);
  auto key = keygen_sf2(id, lab.mk(), lab.pp(), lab.sfp, lab.rng);
  const auto& F = lab.F;
  const auto& kr = key.randomness;
  const auto& cr = ct.randomness;
  u64 expected = lab.ff(F.mul(F.mul(v(cr.s_c), v(kr.s_k1)), F.sub(v(kr.z_k1), v(cr.z_c))));
  auto residual = decrypt_residual(ct.ct, key.key, lab.pp(), lab.message(5));
  EXPECT_EQ(lab.log(residual), expected);
  // decrypt / M is the inverse factor.
  auto raw = lab.suite.div(ahibe::core::decrypt(ct.ct, key.key, lab.pp()), lab.message(5));
  EXPECT_EQ(lab.suite.mul(raw, residual), lab.suite.identity_gt());
}

TEST(Residual, CancellationLattice) {
  for (u64 seed = 0; seed < 30; ++seed) {
    Lab lab(1009, seed, 3);
    auto id = ident({5, 6});
    auto m = lab.message(seed + 2);
    auto normal_ct = ahibe::core::encrypt(id, m, lab.pp(), lab.rng);
    auto sf_ct = encrypt_sf(id, m, lab.pp(), lab.sfp, lab.rng);
    auto normal_key = ahibe::core::keygen(id, lab.mk(), lab.pp(), lab.rng);
    auto k1 = keygen_sf1(id, lab.mk(), lab.pp(), lab.sfp, lab.rng);
    auto k2 = keygen_sf2(id, lab.mk(), lab.pp(), lab.sfp, lab.rng);
    auto nominal = nominal_sf1_keygen(id, lab.mk(), lab.pp(), lab.sfp, sf_ct.randomness.z_c, lab.rng);
    const auto one = lab.suite.identity_gt();
    auto res = [&](const Ciphertext& c, const PrivateKey& k) { return decrypt_residual(c, k, lab.pp(), m); };
    EXPECT_EQ(res(normal_ct, normal_key), one);
    EXPECT_EQ(res(sf_ct.ct, normal_key), one);
    EXPECT_EQ(res(normal_ct, k1.key), one);
    EXPECT_EQ(res(normal_ct, k2.key), one);
    EXPECT_EQ(res(sf_ct.ct, nominal.key), one);
    // Identity only on a 1/p coincidence; the oracle says exactly when.
    const auto& F = lab.F;
    u64 e = lab.ff(F.mul(F.mul(v(sf_ct.randomness.s_c), v(k2.randomness.s_k1)),
                         F.sub(v(k2.randomness.z_k1), v(sf_ct.randomness.z_c))));
    EXPECT_EQ(lab.log(res(sf_ct.ct, k2.key)), e);
    EXPECT_EQ(res(sf_ct.ct, k2.key) == one, e == 0);
  }
}

TEST(Residual, RerandomizedTypeTwoKey) {
  Lab lab(oracle::kBigPrime, 21, 3);
  const auto& F = lab.F;
  auto id = ident({8, 9});
  auto m = lab.message(77);
  auto ct = encrypt_sf(id, m, lab.pp(), lab.sfp, lab.rng);
  auto key = keygen_sf2(id, lab.mk(), lab.pp(), lab.sfp, lab.rng);
  Scalar gamma = lab.rng.scalar(lab.suite.scalars());
  auto mixed = rerandomize(key.key, lab.pp(), gamma, lab.rng);
  const auto& kr = key.randomness;
  u64 s1 = v(kr.s_k1), s2 = v(kr.s_k2), z1 = v(kr.z_k1), z3 = v(*kr.z_k3), g = v(gamma);
  u64 zc = v(ct.randomness.z_c), sc = v(ct.randomness.s_c);
  u64 lhs = F.add(F.mul(s1, z1), F.mul(F.mul(s2, z3), g));
  u64 rhs = F.mul(F.add(s1, F.mul(s2, g)), zc);
  EXPECT_EQ(lab.log(decrypt_residual(ct.ct, mixed, lab.pp(), m)), lab.ff(F.mul(sc, F.sub(lhs, rhs))));
  // Re-randomized normal keys still decrypt.
  auto plain = ahibe::core::keygen(id, lab.mk(), lab.pp(), lab.rng);
  auto plain_ct = ahibe::core::encrypt(id, m, lab.pp(), lab.rng);
  EXPECT_EQ(ahibe::core::decrypt(plain_ct, rerandomize(plain, lab.pp(), gamma, lab.rng), lab.pp()), m);
}

TEST(Residual, RerandomizedTypeOneKey) {
  Lab lab(oracle::kBigPrime, 22, 2);
  const auto& F = lab.F;
  auto id = ident({8});
  auto m = lab.message(1);
  auto ct = encrypt_sf(id, m, lab.pp(), lab.sfp, lab.rng);
  auto key = keygen_sf1(id, lab.mk(), lab.pp(), lab.sfp, lab.rng);
  Scalar gamma = lab.rng.scalar(lab.suite.scalars());
  auto mixed = rerandomize(key.key, lab.pp(), gamma, lab.rng);
  const auto& kr = key.randomness;
  u64 weight = F.add(v(kr.s_k1), F.mul(v(kr.s_k2), v(gamma)));
  u64 expected = lab.ff(F.mul(F.mul(weight, v(ct.randomness.s_c)), F.sub(v(kr.z_k1), v(ct.randomness.z_c))));
  EXPECT_EQ(lab.log(decrypt_residual(ct.ct, mixed, lab.pp(), m)), expected);
}
