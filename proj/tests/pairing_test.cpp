#include <gtest/gtest.h>

#include <vector>

#include "ahibe/error.hpp"
#include "ahibe/pairing/counter.hpp"
#include "ahibe/pairing/group.hpp"
#include "ahibe/pairing/random.hpp"

using namespace ahibe::pairing;

namespace {

Scalar s(std::uint64_t v) { return Scalar::from_u64(v); }

template <class E>
E from_log(const GroupSuite& suite, std::uint64_t log) {
  return mock::from_log<E>(suite, s(log));
}

std::uint64_t gt_log(const GroupSuite& suite, const GTElem& e) { return mock::log_of(suite, e).low(); }

}  // namespace

TEST(MockSuite, BilinearitySmallExponents) {
  auto suite = GroupSuite::mock(101, 7);
  auto lhs = suite.pair(suite.exp(suite.g1(), s(3)), suite.exp(suite.g2(), s(5)));
  EXPECT_EQ(lhs, suite.exp(suite.gt_generator(), s(15)));
  EXPECT_EQ(gt_log(suite, lhs), 15U);
}

TEST(MockSuite, ZeroExponentPairsToIdentity) {
  auto suite = GroupSuite::mock(101, 7);
  for (std::uint64_t b = 0; b < 101; ++b) {
    EXPECT_EQ(suite.pair(suite.exp(suite.g1(), s(0)), suite.exp(suite.g2(), s(b))), suite.identity_gt());
  }
}

TEST(MockSuite, PairingProductMatchesIntegerOracle) {
  auto suite = GroupSuite::mock(1009, 42);
  SeededRandom rng(42);
  const auto& F = suite.scalars();
  auto a = rng.scalar(F), b = rng.scalar(F), c = rng.scalar(F), d = rng.scalar(F);
  auto product = suite.mul(suite.pair(suite.exp(suite.g1(), a), suite.exp(suite.g2(), b)),
                           suite.pair(suite.exp(suite.g1(), c), suite.exp(suite.g2(), d)));
  // Oracle: plain 64-bit integer arithmetic, independent of the field code.
  std::uint64_t expected = (a.low() * b.low() + c.low() * d.low()) % 1009;
  EXPECT_EQ(gt_log(suite, product), expected);
  EXPECT_EQ(product, suite.exp(suite.gt_generator(), s(expected)));
}

TEST(MockSuite, ExponentiationReducesModP) {
  auto suite = GroupSuite::mock(101, 7);
  EXPECT_EQ(suite.exp(suite.g1(), s(0)), suite.identity_g1());
  EXPECT_EQ(suite.exp(suite.g1(), s(1)), suite.g1());
  // 7 * 15 = 105 = 4 (mod 101)
  EXPECT_EQ(suite.exp(from_log<G1Elem>(suite, 7), s(15)), from_log<G1Elem>(suite, 4));
}

TEST(MockSuite, MultiExpMatchesHandComputedLog) {
  auto suite = GroupSuite::mock(101, 7);
  std::vector<G1Elem> bases{from_log<G1Elem>(suite, 2), from_log<G1Elem>(suite, 3), from_log<G1Elem>(suite, 5)};
  std::vector<Scalar> exps{s(1), s(2), s(3)};
  // 2*1 + 3*2 + 5*3 = 23
  EXPECT_EQ(suite.multi_exp(bases, exps), from_log<G1Elem>(suite, 23));
}

TEST(MockSuite, MultiPairMatchesHandComputedLog) {
  auto suite = GroupSuite::mock(101, 7);
  std::vector<G1Elem> xs{from_log<G1Elem>(suite, 2), from_log<G1Elem>(suite, 3)};
  std::vector<G2Elem> ys{from_log<G2Elem>(suite, 5), from_log<G2Elem>(suite, 7)};
  // 2*5 + 3*7 = 31
  EXPECT_EQ(gt_log(suite, suite.multi_pair(xs, ys)), 31U);
}

TEST(MockSuite, RejectsBadOrders) {
  EXPECT_THROW(GroupSuite::mock(100, 1), ahibe::Error);
  EXPECT_THROW(GroupSuite::mock(97, 1), ahibe::Error);  // below 101
  EXPECT_THROW(GroupSuite::mock(1001, 1), ahibe::Error);
  EXPECT_NO_THROW(GroupSuite::mock(1009, 1));
}

TEST(MockSuite, DeterministicUnderSeed) {
  auto run = [] {
    auto suite = GroupSuite::mock(1009, 3);
    SeededRandom rng(3);
    std::vector<G2Elem> out;
    for (int i = 0; i < 20; ++i) out.push_back(suite.exp(suite.g2(), rng.scalar(suite.scalars())));
    return out;
  };
  EXPECT_EQ(run(), run());
}

TEST(MockSuite, ExhaustiveBilinearity) {
  auto suite = GroupSuite::mock(101, 7);
  for (std::uint64_t a = 0; a < 101; ++a) {
    for (std::uint64_t b = 0; b < 101; b += 7) {
      auto e = suite.pair(from_log<G1Elem>(suite, a), from_log<G2Elem>(suite, b));
      ASSERT_EQ(gt_log(suite, e), (a * b) % 101);
    }
  }
}

TEST(Suite, LengthMismatchAndEmptyListsRejected) {
  auto suite = GroupSuite::mock(101, 7);
  std::vector<G1Elem> two{suite.g1(), suite.g1()};
  std::vector<Scalar> one{s(1)};
  EXPECT_THROW(suite.multi_exp(std::span<const G1Elem>(two), one), ahibe::Error);
  EXPECT_THROW(suite.multi_exp(std::span<const G1Elem>{}, std::span<const Scalar>{}), ahibe::Error);
  std::vector<G2Elem> ys{suite.g2()};
  EXPECT_THROW(suite.multi_pair(two, ys), ahibe::Error);
}

TEST(Suite, UnknownCurveRejected) {
  EXPECT_THROW(GroupSuite::concrete("mnt175"), ahibe::Error);
  EXPECT_NO_THROW(GroupSuite::concrete("BLS12-381"));
  EXPECT_NO_THROW(GroupSuite::concrete("default"));
}

TEST(Suite, SerializationRoundTrip) {
  for (auto suite : {GroupSuite::mock(1009, 42), GroupSuite::concrete()}) {
    auto bytes = suite.serialize();
    std::size_t used = 0;
    auto back = GroupSuite::deserialize(bytes, &used);
    EXPECT_EQ(used, bytes.size());
    EXPECT_EQ(back, suite);
    EXPECT_EQ(bytes[0], static_cast<std::uint8_t>(suite.backend()));
  }
  EXPECT_NE(GroupSuite::mock(1009, 42), GroupSuite::mock(1009, 43));
}

TEST(Counter, RecordsExactlyTheIssuedOperations) {
  auto suite = GroupSuite::mock(101, 7);
  OperationCounter counter;
  {
    CountingScope scope(counter);
    auto x = suite.exp(suite.g1(), s(5));
    (void)suite.pair(x, suite.g2());
    (void)suite.mul(x, x);  // group law is free
  }
  OpCounts expected;
  expected.add({OpKind::exp_g1});
  expected.add({OpKind::pair});
  EXPECT_EQ(counter.snapshot(), expected);
  // Outside the scope nothing is recorded.
  (void)suite.exp(suite.g2(), s(3));
  EXPECT_EQ(counter.snapshot(), expected);
}

TEST(Counter, MultiTermClassesCarryArity) {
  auto suite = GroupSuite::mock(101, 7);
  OperationCounter counter;
  CountingScope scope(counter);
  std::vector<G2Elem> b(3, suite.g2());
  std::vector<Scalar> e{s(1), s(2), s(3)};
  (void)suite.multi_exp(b, e);
  std::vector<G1Elem> xs(3, suite.g1());
  (void)suite.multi_pair(xs, b);
  (void)suite.multi_pair(xs, b);
  EXPECT_EQ(counter.snapshot()[(OpClass{OpKind::mexp_g2, 3})], 1U);
  EXPECT_EQ(counter.snapshot()[(OpClass{OpKind::mpair, 3})], 2U);
  EXPECT_EQ(counter.snapshot().total(), 3U);
}

TEST(Counter, NestedScopesRouteToInnermost) {
  auto suite = GroupSuite::mock(101, 7);
  OperationCounter outer, inner;
  CountingScope a(outer);
  (void)suite.exp(suite.g1(), s(2));
  {
    CountingScope b(inner);
    (void)suite.exp(suite.g1(), s(2));
    (void)suite.exp(suite.g1(), s(2));
  }
  (void)suite.exp(suite.g1(), s(2));
  EXPECT_EQ(outer.snapshot()[OpClass{OpKind::exp_g1}], 2U);
  EXPECT_EQ(inner.snapshot()[OpClass{OpKind::exp_g1}], 2U);
}

class BothBackends : public ::testing::TestWithParam<bool> {
 protected:
  GroupSuite suite = GetParam() ? GroupSuite::concrete() : GroupSuite::mock(1009, 5);
  SeededRandom rng{11};
  Scalar rand() { return rng.scalar(suite.scalars()); }
};

TEST_P(BothBackends, MultiExpAgreesWithFoldForAllArities) {
  for (std::size_t m = 1; m <= 8; ++m) {
    std::vector<G1Elem> b1;
    std::vector<G2Elem> b2;
    std::vector<GTElem> bt;
    std::vector<Scalar> e;
    for (std::size_t i = 0; i < m; ++i) {
      b1.push_back(suite.exp(suite.g1(), rand()));
      b2.push_back(suite.exp(suite.g2(), rand()));
      bt.push_back(suite.exp(suite.gt_generator(), rand()));
      e.push_back(rand());
    }
    G1Elem f1 = suite.identity_g1();
    G2Elem f2 = suite.identity_g2();
    GTElem ft = suite.identity_gt();
    for (std::size_t i = 0; i < m; ++i) {
      f1 = suite.mul(f1, suite.exp(b1[i], e[i]));
      f2 = suite.mul(f2, suite.exp(b2[i], e[i]));
      ft = suite.mul(ft, suite.exp(bt[i], e[i]));
    }
    EXPECT_EQ(suite.multi_exp(b1, e), f1) << "m=" << m;
    EXPECT_EQ(suite.multi_exp(b2, e), f2) << "m=" << m;
    EXPECT_EQ(suite.multi_exp(bt, e), ft) << "m=" << m;
  }
}

TEST_P(BothBackends, MultiPairAgreesWithFoldForAllArities) {
  for (std::size_t m = 1; m <= 8; ++m) {
    std::vector<G1Elem> xs;
    std::vector<G2Elem> ys;
    GTElem fold = suite.identity_gt();
    for (std::size_t i = 0; i < m; ++i) {
      xs.push_back(suite.exp(suite.g1(), rand()));
      ys.push_back(suite.exp(suite.g2(), rand()));
      fold = suite.mul(fold, suite.pair(xs.back(), ys.back()));
    }
    EXPECT_EQ(suite.multi_pair(xs, ys), fold) << "m=" << m;
  }
}

TEST_P(BothBackends, IdentitiesAndDegenerateCases) {
  auto a = rand();
  EXPECT_EQ(suite.exp(suite.g1(), Scalar{}), suite.identity_g1());
  EXPECT_EQ(suite.exp(suite.g2(), Scalar{}), suite.identity_g2());
  EXPECT_EQ(suite.exp(suite.gt_generator(), Scalar{}), suite.identity_gt());
  EXPECT_EQ(suite.exp(suite.g1(), s(1)), suite.g1());
  EXPECT_EQ(suite.exp(suite.identity_g2(), a), suite.identity_g2());
  EXPECT_EQ(suite.pair(suite.identity_g1(), suite.g2()), suite.identity_gt());
  EXPECT_EQ(suite.pair(suite.g1(), suite.identity_g2()), suite.identity_gt());
  std::vector<G1Elem> one{suite.g1()};
  std::vector<G2Elem> one2{suite.g2()};
  std::vector<Scalar> ea{a};
  EXPECT_EQ(suite.multi_pair(one, one2), suite.pair(suite.g1(), suite.g2()));
  EXPECT_EQ(suite.multi_exp(one, ea), suite.exp(suite.g1(), a));
  std::vector<G1Elem> same{suite.g1(), suite.g1()};
  auto b = rand();
  std::vector<Scalar> ab{a, b};
  EXPECT_EQ(suite.multi_exp(same, ab), suite.exp(suite.g1(), suite.scalars().add(a, b)));
  EXPECT_NE(suite.gt_generator(), suite.identity_gt());
  EXPECT_EQ(suite.mul(suite.g2(), suite.inverse(suite.g2())), suite.identity_g2());
  auto t = suite.exp(suite.gt_generator(), a);
  EXPECT_EQ(suite.mul(t, suite.inverse(t)), suite.identity_gt());
  // Group order annihilates the generator: g^(p-1) * g = 1.
  auto pm1 = suite.scalars().sub(Scalar{}, s(1));
  EXPECT_EQ(suite.mul(suite.exp(suite.g1(), pm1), suite.g1()), suite.identity_g1());
}

TEST_P(BothBackends, BilinearityRandomTrials) {
  const auto& F = suite.scalars();
  auto base = suite.gt_generator();
  for (int i = 0; i < 100; ++i) {
    auto a = rand(), b = rand();
    ASSERT_EQ(suite.pair(suite.exp(suite.g1(), a), suite.exp(suite.g2(), b)), suite.exp(base, F.mul(a, b)));
  }
}

TEST_P(BothBackends, ElementEncodingRoundTrips) {
  for (int i = 0; i < 10; ++i) {
    auto x = suite.exp(suite.g1(), rand());
    auto y = suite.exp(suite.g2(), rand());
    auto z = suite.exp(suite.gt_generator(), rand());
    EXPECT_EQ(suite.decode<G1Elem>(suite.encode(x)), x);
    EXPECT_EQ(suite.decode<G2Elem>(suite.encode(y)), y);
    EXPECT_EQ(suite.decode<GTElem>(suite.encode(z)), z);
    EXPECT_EQ(suite.encode(suite.decode<G1Elem>(suite.encode(x))), suite.encode(x));
  }
  for (auto id : {suite.encode(suite.identity_g1())}) EXPECT_EQ(suite.decode<G1Elem>(id), suite.identity_g1());
  EXPECT_EQ(suite.decode<GTElem>(suite.encode(suite.identity_gt())), suite.identity_gt());
}

TEST_P(BothBackends, DecodingRejectsGarbage) {
  auto enc = suite.encode(suite.g1());
  enc.push_back(0);
  EXPECT_THROW(suite.decode<G1Elem>(enc), ahibe::Error);
  auto gt = suite.encode(suite.gt_generator());
  std::vector<std::uint8_t> bad(gt.size(), 0xFF);
  EXPECT_THROW(suite.decode<GTElem>(bad), ahibe::Error);
}

TEST_P(BothBackends, FixedBaseTablesMatchPlainExponentiation) {
  auto b1 = suite.exp(suite.g1(), rand());
  auto b2 = suite.exp(suite.g2(), rand());
  auto t1 = suite.prepare(b1);
  auto t2 = suite.prepare(b2);
  for (int i = 0; i < 10; ++i) {
    auto e = rand();
    EXPECT_EQ(suite.exp(t1, e), suite.exp(b1, e));
    EXPECT_EQ(suite.exp(t2, e), suite.exp(b2, e));
  }
  EXPECT_EQ(suite.exp(t2, Scalar{}), suite.identity_g2());
  auto other = suite.exp(suite.g2(), rand());
  auto e1 = rand(), e2 = rand();
  std::vector<ExpTerm<G2Elem>> terms{{nullptr, &t2, e1}, {&other, nullptr, e2}};
  EXPECT_EQ(suite.multi_exp(std::span<const ExpTerm<G2Elem>>(terms)),
            suite.mul(suite.exp(b2, e1), suite.exp(other, e2)));
}

TEST_P(BothBackends, ScalarFieldLaws) {
  const auto& F = suite.scalars();
  for (int i = 0; i < 50; ++i) {
    auto a = rand();
    if (a.is_zero()) continue;
    EXPECT_EQ(F.mul(a, F.inverse(a)), F.one());
    EXPECT_EQ(F.add(a, F.neg(a)), Scalar{});
    EXPECT_TRUE(F.contains(a));
  }
  EXPECT_THROW(F.inverse(Scalar{}), ahibe::Error);
  EXPECT_EQ(F.from_i64(-1), F.sub(Scalar{}, F.one()));
}

INSTANTIATE_TEST_SUITE_P(Backends, BothBackends, ::testing::Values(false, true),
                         [](const auto& info) { return info.param ? "Concrete" : "Mock"; });

TEST(ConcreteSuite, OrderIsBls12381ScalarField) {
  auto suite = GroupSuite::concrete();
  EXPECT_EQ(suite.order().bit_length(), 255U);
  EXPECT_EQ(suite.order().to_hex(), "73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001");
  EXPECT_EQ(suite.encode(suite.g1()).size(), 48U);
  EXPECT_EQ(suite.encode(suite.g2()).size(), 96U);
  EXPECT_EQ(suite.encode(suite.gt_generator()).size(), 576U);
}
