#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <random>

#include "ahibe/error.hpp"
#include "ahibe/ggm/checker.hpp"

using namespace ahibe::ggm;

namespace {

FormalPoly P(const char* s) { return FormalPoly::parse(s); }

PolyList L(std::initializer_list<const char*> xs) {
  PolyList out;
  for (auto x : xs) out.push_back(P(x));
  return out;
}

bool same_set(PolyList a, PolyList b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

const PolyList kA5P = L({"1", "A", "B", "C", "A*B", "A^2*B"});

}  // namespace

TEST(FormalPoly, ParsesAndPrintsCanonically) {
  EXPECT_EQ(P("A*B + 2*C").to_string(), "A*B + 2*C");
  EXPECT_EQ(P("B*A^2 - 1/3").to_string(), "A^2*B - 1/3");
  EXPECT_EQ(P("(A + B)^2").to_string(), "A^2 + 2*A*B + B^2");
  EXPECT_EQ(P("A - A").to_string(), "0");
  EXPECT_TRUE(P("A - A").is_zero());
  EXPECT_EQ(P("1"), FormalPoly::constant(1));
  EXPECT_EQ(P("A^2*B*C").degree(), 4U);
  EXPECT_EQ(P("2/4*A"), P("1/2*A"));
  EXPECT_THROW(P("A +"), ahibe::Error);
  EXPECT_THROW(P("A ** B"), ahibe::Error);
  EXPECT_THROW(P("1/0"), ahibe::Error);
  EXPECT_THROW(P("A$"), ahibe::Error);
}

TEST(FormalPoly, ArithmeticMatchesHandExpansion) {
  EXPECT_EQ(P("A + 1") * P("A - 1"), P("A^2 - 1"));
  EXPECT_EQ(P("A*B") * P("C"), P("A*B*C"));
  EXPECT_EQ(P("A") + P("-A"), FormalPoly{});
}

TEST(DependentOn, Membership) { EXPECT_TRUE(dependent_on(P("A*B"), kA5P)); }

TEST(DependentOn, DegreeThreeTermsDiffer) { EXPECT_FALSE(dependent_on(P("A*B*C"), kA5P)); }

TEST(DependentOn, LinearCombination) {
  EXPECT_TRUE(dependent_on(P("2*A + 3*B"), L({"A", "B"})));
  EXPECT_FALSE(dependent_on(P("2*A + 3*B"), L({"A", "A + C"})));
  EXPECT_TRUE(dependent_on(P("B - C"), L({"A + B", "A + C"})));
}

TEST(DependentOn, ScalingInvariant) {
  std::mt19937 rng(3);
  const char* pool[] = {"1", "A", "B", "A*B", "B^2", "A + B", "A*B - C", "C^2", "A*C"};
  for (int trial = 0; trial < 200; ++trial) {
    PolyList ps;
    for (int i = 0; i < 3; ++i) ps.push_back(P(pool[rng() % 9]));
    auto t = P(pool[rng() % 9]) + P(pool[rng() % 9]);
    if (t.is_zero()) continue;
    mpq_class c(static_cast<int>(rng() % 7) + 1, static_cast<unsigned>(rng() % 5) + 1);
    if (rng() % 2) c = -c;
    EXPECT_EQ(dependent_on(t * c, ps), dependent_on(t, ps));
    for (const auto& p : ps) EXPECT_TRUE(dependent_on(p, ps));
  }
}

TEST(PairingDependent, AssumptionFiveProductsAreIndependent) {
  auto Q = L({"1", "A", "B"});
  auto R = L({"1"});
  EXPECT_TRUE(same_set(products({P("A*B*C")}, Q), L({"A*B*C", "A^2*B*C", "A*B^2*C"})));
  auto pq = products(kA5P, Q);
  // Thirteen distinct {e(P_i, Q_j)}, enumerated by hand.
  EXPECT_TRUE(same_set(pq, L({"1", "A", "B", "C", "A*B", "A^2*B", "A^2", "A*C", "A^3*B", "B^2", "B*C", "A*B^2",
                              "A^2*B^2"})));
  EXPECT_FALSE(pairing_dependent(P("A*B*C"), kA5P, Q, R));
}

TEST(PairingDependent, FreshVariableIsIndependent) {
  EXPECT_FALSE(pairing_dependent(P("D"), kA5P, L({"1", "A", "B"}), L({"1"})));
  EXPECT_FALSE(pairing_dependent(P("D"), L({"1"}), L({"1"}), L({"1", "A"})));
}

TEST(PairingDependent, DirectMatch) {
  EXPECT_TRUE(pairing_dependent(P("A"), L({"1"}), L({"A"}), L({"A^2"})));
  EXPECT_FALSE(pairing_dependent(P("A"), L({"1"}), L({"A"}), L({"A^3"})));
}

TEST(PairingDependent, CombinationAcrossQ) {
  // T·(Q1 + Q2) = A*B + A*C lies in span(S) though neither product alone does.
  EXPECT_TRUE(pairing_dependent(P("A"), L({"1"}), L({"B", "C"}), L({"A*B + A*C"})));
  // Parallel Q entries give a nonzero α with zero sum.
  EXPECT_TRUE(pairing_dependent(P("D"), L({"1"}), L({"A", "2*A"}), L({"1"})));
}

TEST(PairingDependent, MonotoneInR) {
  std::mt19937 rng(5);
  const char* pool[] = {"1", "A", "B", "C", "A*B", "A^2", "A*B*C", "B*C", "A^2*B"};
  for (int trial = 0; trial < 200; ++trial) {
    PolyList ps{P(pool[rng() % 9]), P(pool[rng() % 9])};
    PolyList qs{P(pool[rng() % 9]), P(pool[rng() % 9])};
    PolyList rs{P(pool[rng() % 9])};
    auto t = P(pool[rng() % 9]);
    bool before = pairing_dependent(t, ps, qs, rs);
    rs.push_back(P(pool[rng() % 9]));
    if (before) EXPECT_TRUE(pairing_dependent(t, ps, qs, rs));
  }
}

TEST(Builtins, AssumptionFiveTranscription) {
  auto a = builtin_assumption(5);
  EXPECT_EQ(a.P, kA5P);
  EXPECT_EQ(a.Q, L({"1", "A", "B"}));
  EXPECT_EQ(a.R, L({"1"}));
  EXPECT_EQ(a.T0, P("A*B*C"));
  EXPECT_EQ(a.T1, P("D"));
}

TEST(Builtins, AssumptionThreeChallengeLivesInGhat) {
  auto a = builtin_assumption(3);
  EXPECT_EQ(a.P, L({"1"}));
  EXPECT_EQ(a.Q, L({"1", "A", "B"}));
  EXPECT_EQ(a.T0, P("A*B"));
  EXPECT_EQ(a.challenge, ChallengeGroup::g2);
  // Swapped roles: A*B is tested against Ĝ's own elements {1, A, B}.
  auto v = check_assumption(a);
  EXPECT_TRUE(same_set(v.challenge_products[0], L({"A*B"})));
}

TEST(Builtins, AllFiveAreGenericSecure) {
  for (int n = 1; n <= 5; ++n) {
    auto v = check_assumption(builtin_assumption(n));
    EXPECT_TRUE(v.generic_secure) << "assumption " << n;
    EXPECT_FALSE(v.t_dependent_on_P[0]);
    EXPECT_FALSE(v.t_dependent_on_P[1]);
  }
  EXPECT_THROW(builtin_assumption(0), ahibe::Error);
  EXPECT_THROW(builtin_assumption(6), ahibe::Error);
}

TEST(Check, AssumptionFiveVerdictAndBound) {
  auto start = std::chrono::steady_clock::now();
  auto v = check_assumption(builtin_assumption(5));
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(1));
  EXPECT_TRUE(v.generic_secure);
  EXPECT_TRUE(same_set(v.challenge_products[0], L({"A*B*C", "A^2*B*C", "A*B^2*C"})));
  EXPECT_EQ(v.bound.l, 6U);
  EXPECT_EQ(v.bound.t, 4U);
  EXPECT_EQ(v.bound.symbolic(), "3(q+12)^2*4/p");
  // 3 * (0 + 2*6)^2 * 4 = 1728
  EXPECT_EQ(v.bound.evaluate(0, 1000003), mpq_class(1728, 1000003));
  EXPECT_EQ(v.bound.evaluate(8, 100), mpq_class(48));
}

TEST(Check, MutatedChallengeIsDependent) {
  auto a = builtin_assumption(5);
  a.T0 = P("A*B");
  auto v = check_assumption(a);
  EXPECT_FALSE(v.generic_secure);
  EXPECT_TRUE(v.t_dependent_on_P[0]);
  EXPECT_FALSE(v.t_dependent_on_P[1]);
}

TEST(Check, PairingOnlyDependence) {
  // A*B*C is not in P, but e(T0, 1) = A*B*C matches e(C, A*B).
  AssumptionInstance a{"x", L({"1", "C"}), L({"1", "A*B"}), L({"1"}), P("A*B*C"), P("D")};
  auto v = check_assumption(a);
  EXPECT_FALSE(v.t_dependent_on_P[0]);
  EXPECT_TRUE(v.pairing_dependent[0]);
  EXPECT_FALSE(v.generic_secure);
}

TEST(Check, TargetGroupChallenge) {
  auto a = builtin_assumption(4);
  a.T0 = P("A*B");
  EXPECT_FALSE(check_assumption(a).generic_secure);
  EXPECT_TRUE(check_assumption(builtin_assumption(4)).generic_secure);
}

TEST(Check, RejectsEqualChallenges) {
  auto a = builtin_assumption(5);
  a.T1 = a.T0;
  EXPECT_THROW(check_assumption(a), ahibe::Error);
}

TEST(Instance, ParsesTextFormat) {
  auto a = parse_instance(R"(# three-party DH variant
name: A3DH
P: 1
P: A
P: B
P: C
P: A*B
P: A^2*B
Q: 1
Q: A
Q: B
T0: A*B*C
T1: D
)");
  EXPECT_EQ(a.name, "A3DH");
  EXPECT_EQ(a.P, kA5P);
  EXPECT_EQ(a.R, L({"1"}));
  EXPECT_EQ(a.challenge, ChallengeGroup::g1);
  auto v = check_assumption(a);
  EXPECT_TRUE(v.generic_secure);
  EXPECT_EQ(v.bound.symbolic(), "3(q+12)^2*4/p");
}

TEST(Instance, ReportsBadInput) {
  EXPECT_THROW(parse_instance("P: 1\nQ: 1\nT0: A\n"), ahibe::Error);
  EXPECT_THROW(parse_instance("P: 1\nQ: 1\nT0: A\nT1: A\n"), ahibe::Error);
  EXPECT_THROW(parse_instance("P 1\n"), ahibe::Error);
  EXPECT_THROW(parse_instance("Z: 1\n"), ahibe::Error);
  try {
    parse_instance("P: 1\nQ: A +\nT0: A\nT1: B\n");
    FAIL();
  } catch (const ahibe::Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  auto g2 = parse_instance("challenge: G2\nP: 1\nQ: 1\nQ: A\nQ: B\nT0: A*B\nT1: C\n");
  EXPECT_EQ(g2.challenge, ChallengeGroup::g2);
  EXPECT_TRUE(check_assumption(g2).generic_secure);
}
