#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "ahibe/bench/cost.hpp"
#include "ahibe/core/scheme.hpp"
#include "ahibe/error.hpp"
#include "mock_oracle.hpp"

using namespace ahibe;
using namespace ahibe::bench;
using pairing::GroupSuite;
using pairing::OpClass;
using pairing::OpKind;

namespace {

const OpClass kExpG1{OpKind::exp_g1}, kExpG2{OpKind::exp_g2}, kExpGT{OpKind::exp_gt}, kPair{OpKind::pair};
OpClass mexp_g1(unsigned m) { return {OpKind::mexp_g1, m}; }
OpClass mexp_g2(unsigned m) { return {OpKind::mexp_g2, m}; }
const OpClass kMpair3{OpKind::mpair, 3};

// Counts rebuilt from object sizes: every G2 key element is one block
// component, every block is (X^r W1^c, W2^c, W3^c).
CostVector size_oracle(Algorithm alg, unsigned l, unsigned d) {
  CostVector c;
  const std::uint64_t key_elems = 12 + 6ULL * (l - d);
  switch (alg) {
    case Algorithm::setup:
      // pp: g^ν, g^-τ, 3 per h and u_i; ŵ-triple, ĝ^α, ĥ, û_i; Ω
      c.add(kExpG1, 2 + 3 * (1 + l));
      c.add(kExpG2, 3 + 1 + 1 + l);
      c.add(kPair);
      break;
    case Algorithm::keygen: {
      std::uint64_t blocks = key_elems / 3;
      c.add(kExpG2, 2 * blocks);
      c.add(mexp_g2(2), blocks);
      if (d > 0) c.add(mexp_g2(d + 1));
      break;
    }
    case Algorithm::delegate: {
      std::uint64_t child_elems = 12 + 6ULL * (l - d - 1);
      c.add(mexp_g2(2), child_elems);
      c.add(kExpG2, 3 + 3);  // L^I and R3^I per coordinate
      break;
    }
    case Algorithm::encrypt:
      c.add(kExpGT);
      c.add(kExpG1, 3 + 3);
      if (d > 0) c.add(mexp_g1(d + 1), 3);
      break;
    case Algorithm::decrypt: c.add(kMpair3, 2); break;
  }
  return c;
}

const Algorithm kAll[] = {Algorithm::setup, Algorithm::keygen, Algorithm::delegate, Algorithm::encrypt,
                          Algorithm::decrypt};

}  // namespace

TEST(PredictedCounts, MatchesSizeDerivedOracle) {
  for (unsigned l : {1U, 2U, 5U, 10U, 30U}) {
    for (unsigned d = 0; d <= l; ++d) {
      for (auto alg : kAll) {
        if (alg == Algorithm::delegate && d == l) continue;
        EXPECT_EQ(predicted_counts(alg, l, d), size_oracle(alg, l, d)) << to_string(alg) << " l=" << l << " d=" << d;
      }
    }
  }
}

TEST(PredictedCounts, DecryptIsTwoThreeTermMultiPairings) {
  for (unsigned d = 0; d <= 7; ++d) {
    auto c = predicted_counts(Algorithm::decrypt, 7, d);
    EXPECT_EQ(c[kMpair3], 2U);
    EXPECT_EQ(c.total(), 2U);
  }
}

TEST(PredictedCounts, PublishedFormulaKeygenThirtyZero) {
  auto c = published_cost_formula(Algorithm::keygen, 30, 0);
  EXPECT_EQ(c[kExpG2], 124U);
  EXPECT_EQ(c[mexp_g2(2)], 62U);
  EXPECT_EQ(c.entries().size(), 2U);  // no identity-product term
  auto ours = predicted_counts(Algorithm::keygen, 30, 0);
  EXPECT_EQ(ours[kExpG2], 128U);
  EXPECT_EQ(ours[mexp_g2(2)], 64U);
}

TEST(PredictedCounts, EncryptDepthTwo) {
  auto c = predicted_counts(Algorithm::encrypt, 10, 2);
  EXPECT_EQ(c[kExpG1], 6U);
  EXPECT_EQ(c[kExpGT], 1U);
  EXPECT_EQ(c[mexp_g1(3)], 3U);
  EXPECT_EQ(c.total(), 10U);
  EXPECT_EQ(c, published_cost_formula(Algorithm::encrypt, 10, 2));
}

TEST(PredictedCounts, DelegateTenThree) {
  EXPECT_EQ(predicted_counts(Algorithm::delegate, 10, 3)[mexp_g2(2)], 48U);
  EXPECT_EQ(published_cost_formula(Algorithm::delegate, 10, 3)[mexp_g2(2)], 48U);
}

TEST(PredictedCounts, KeygenFullDepthHasSixTermProduct) {
  EXPECT_EQ(predicted_counts(Algorithm::keygen, 5, 5)[mexp_g2(6)], 1U);
}

TEST(PredictedCounts, AffineSlopesAndIndependence) {
  for (unsigned l : {5U, 10U, 30U}) {
    for (unsigned d = 0; d + 1 < l; ++d) {
      auto k0 = predicted_counts(Algorithm::keygen, l, d), k1 = predicted_counts(Algorithm::keygen, l, d + 1);
      EXPECT_EQ(k0[kExpG2] - k1[kExpG2], 4U);
      // at depths 0 and 1 the two-term identity product shares the class
      if (d >= 2) EXPECT_EQ(k0[mexp_g2(2)] - k1[mexp_g2(2)], 2U);
      if (d + 2 < l) {
        auto g0 = predicted_counts(Algorithm::delegate, l, d), g1 = predicted_counts(Algorithm::delegate, l, d + 1);
        EXPECT_EQ(g0[mexp_g2(2)] - g1[mexp_g2(2)], 6U);
      }
      EXPECT_EQ(predicted_counts(Algorithm::encrypt, l, d), predicted_counts(Algorithm::encrypt, 30, d));
      EXPECT_EQ(predicted_counts(Algorithm::decrypt, l, d), predicted_counts(Algorithm::decrypt, 5, 0));
    }
  }
}

TEST(PredictedCounts, RejectsBadDepths) {
  EXPECT_THROW(predicted_counts(Algorithm::keygen, 5, 6), Error);
  EXPECT_THROW(predicted_counts(Algorithm::delegate, 5, 5), Error);
  EXPECT_THROW(predicted_counts(Algorithm::setup, 0, 0), Error);
  EXPECT_THROW(parse_algorithm("sign"), Error);
  EXPECT_EQ(parse_algorithm("delegate"), Algorithm::delegate);
}

TEST(VerifyCounts, MockGridExact) {
  auto suite = GroupSuite::mock(oracle::kBigPrime, 3);
  for (unsigned l : {5U, 10U, 30U}) {
    for (unsigned d = 0; d <= l; ++d) {
      for (auto alg : kAll) {
        if (alg == Algorithm::delegate && d == l) continue;
        CostVector seen;
        EXPECT_TRUE(verify_counts(alg, l, d, suite, &seen))
            << to_string(alg) << " l=" << l << " d=" << d << ": " << seen.to_string();
      }
    }
  }
}

TEST(VerifyCounts, ConcreteSpotChecks) {
  auto suite = GroupSuite::concrete();
  CostVector seen;
  EXPECT_TRUE(verify_counts(Algorithm::decrypt, 4, 2, suite, &seen));
  EXPECT_EQ(seen[kMpair3], 2U);
  EXPECT_TRUE(verify_counts(Algorithm::keygen, 5, 5, suite, &seen));
  EXPECT_EQ(seen[mexp_g2(6)], 1U);
  EXPECT_TRUE(verify_counts(Algorithm::delegate, 4, 0, suite));
  EXPECT_TRUE(verify_counts(Algorithm::encrypt, 4, 4, suite));
  EXPECT_TRUE(verify_counts(Algorithm::setup, 3, 0, suite));
}

TEST(FitLinear, RecoversExactLine) {
  auto r = fit_linear({0, 1, 2, 3}, {5, 8, 11, 14});
  EXPECT_DOUBLE_EQ(r.slope_ns, 3);
  EXPECT_DOUBLE_EQ(r.intercept_ns, 5);
  EXPECT_DOUBLE_EQ(r.r_squared, 1);
  // Residuals (1, -1, -1, 1) around y = 2x: SSres = 4, SStot = 20 + 4.
  auto n = fit_linear({0, 1, 2, 3}, {1, 1, 3, 7});
  EXPECT_NEAR(n.r_squared, 1 - 4.0 / 24.0, 1e-12);
  EXPECT_THROW(fit_linear({1, 1}, {2, 3}), Error);
}

TEST(RunBench, RejectsMock) {
  EXPECT_THROW(run_bench(Algorithm::keygen, GroupSuite::mock(101, 7), 3, {0, 1}), Error);
  EXPECT_THROW(preprocessing_speedup(GroupSuite::mock(101, 7), 3, 1, 1), Error);
}

TEST(RunBench, ReportShapeAndFormats) {
  BenchOptions opts;
  opts.reps = 2;
  auto rep = run_bench(Algorithm::keygen, GroupSuite::concrete(), 3, {0, 1, 2, 3}, opts);
  ASSERT_EQ(rep.cells.size(), 4U);
  for (const auto& c : rep.cells) {
    EXPECT_GE(c.reps, opts.reps);
    EXPECT_GT(c.mean_ns, 0);
  }
  ASSERT_TRUE(rep.regression.has_value());
  EXPECT_GT(rep.regression->slope_ns, 0);

  std::ostringstream csv;
  rep.write_csv(csv);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "alg,l,d,mean_ns,stddev_ns,reps");
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("keygen,3,0,", 0), 0U);

  std::ostringstream nd;
  rep.write_ndjson(nd);
  std::istringstream recs(nd.str());
  int n = 0;
  while (std::getline(recs, line)) {
    auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j["alg"], "keygen");
    ++n;
  }
  EXPECT_EQ(n, 5);  // four cells and a summary

  std::ostringstream sum;
  rep.write_summary(sum);
  EXPECT_NE(sum.str().find("R^2"), std::string::npos);
}

TEST(RunBench, ParallelCellsMatchGrid) {
  BenchOptions opts;
  opts.reps = 1;
  opts.parallel = true;
  auto rep = run_bench(Algorithm::decrypt, GroupSuite::concrete(), 2, {0, 1, 2}, opts);
  ASSERT_EQ(rep.cells.size(), 3U);
  for (unsigned d = 0; d < 3; ++d) EXPECT_EQ(rep.cells[d].d, d);
  EXPECT_FALSE(rep.regression.has_value());
}
