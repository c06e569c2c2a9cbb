#include "ahibe/bench/cost.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ahibe/core/scheme.hpp"
#include "ahibe/error.hpp"
#include "ahibe/pairing/random.hpp"

namespace ahibe::bench {

using pairing::GroupSuite;
using pairing::OpClass;
using pairing::OpKind;
using pairing::Scalar;
using pairing::SeededRandom;

namespace {

void check_depths(Algorithm alg, unsigned l, unsigned d) {
  require(l >= 1, "maximum depth must be at least 1");
  require(d <= l, "identity depth exceeds the maximum depth");
  if (alg == Algorithm::delegate) require(d < l, "delegation needs a parent depth below the maximum");
}

core::HierarchicalIdentity random_identity(const GroupSuite& s, unsigned depth, pairing::RandomSource& rng) {
  std::vector<Scalar> c;
  for (unsigned i = 0; i < depth; ++i) c.push_back(rng.nonzero_scalar(s.scalars()));
  return core::HierarchicalIdentity(std::move(c));
}

// Everything an algorithm needs at (l, d), built outside any timing or counting.
struct Fixture {
  core::SetupResult sr;
  core::HierarchicalIdentity id, child;
  core::PrivateKey sk;
  core::Ciphertext ct;
  pairing::GTElem m;
  std::optional<core::KeyGenTables> tables;

  Fixture(Algorithm alg, const GroupSuite& s, unsigned l, unsigned d, SeededRandom& rng, bool preprocess)
      : sr(core::setup(s, l, rng)) {
    id = random_identity(s, d, rng);
    m = s.exp(s.gt_generator(), rng.scalar(s.scalars()));
    if (preprocess) tables = core::prepare_keygen(sr.mk, sr.pp);
    if (alg == Algorithm::delegate) {
      child = id.extend(rng.nonzero_scalar(s.scalars()));
      sk = core::detail::keygen_any_depth(id, sr.mk, sr.pp, rng);
    }
    if (alg == Algorithm::decrypt) {
      sk = core::detail::keygen_any_depth(id, sr.mk, sr.pp, rng);
      ct = core::detail::encrypt_any_depth(id, m, sr.pp, rng);
    }
  }

  void run(Algorithm alg, const GroupSuite& s, unsigned l, SeededRandom& rng) {
    switch (alg) {
      case Algorithm::setup: core::setup(s, l, rng); break;
      case Algorithm::keygen:
        core::detail::keygen_any_depth(id, sr.mk, sr.pp, rng, tables ? &*tables : nullptr);
        break;
      case Algorithm::delegate: core::detail::delegate_any_depth(child, sk, sr.pp, rng); break;
      case Algorithm::encrypt: core::detail::encrypt_any_depth(id, m, sr.pp, rng); break;
      case Algorithm::decrypt: core::decrypt(ct, sk, sr.pp); break;
    }
  }
};

// One (l, d) cell: its fixture, its own random stream and the samples so far.
struct Probe {
  Algorithm alg;
  const GroupSuite& suite;
  unsigned l, d;
  SeededRandom rng;
  Fixture fx;
  std::vector<double> ns;

  Probe(Algorithm a, const GroupSuite& s, unsigned l_, unsigned d_, bool preprocess, std::uint64_t seed)
      : alg(a), suite(s), l(l_), d(d_), rng(seed ^ (std::uint64_t{l_} << 32) ^ d_), fx(a, s, l_, d_, rng, preprocess) {}

  double once() {
    auto t0 = std::chrono::steady_clock::now();
    fx.run(alg, suite, l, rng);
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::nano>(t1 - t0).count();
  }
  void sample() { ns.push_back(once()); }

  BenchCell stats() const {
    BenchCell c{l, d, 0, 0, ns.size()};
    for (double x : ns) c.mean_ns += x;
    c.mean_ns /= static_cast<double>(ns.size());
    if (ns.size() > 1) {
      double ss = 0;
      for (double x : ns) ss += (x - c.mean_ns) * (x - c.mean_ns);
      c.stddev_ns = std::sqrt(ss / static_cast<double>(ns.size() - 1));
    }
    return c;
  }
};

BenchCell measure(Algorithm alg, const GroupSuite& s, unsigned l, unsigned d, std::size_t reps, bool preprocess,
                  std::uint64_t seed) {
  Probe p(alg, s, l, d, preprocess, seed);
  p.once();  // warm-up
  for (std::size_t r = 0; r < reps; ++r) p.sample();
  return p.stats();
}

std::string environment_note(const GroupSuite& s, const BenchOptions& opts) {
  std::ostringstream o;
  o << s.description() << "; " << std::thread::hardware_concurrency() << " hardware threads; "
    << (opts.parallel ? "cells in parallel" : "single-threaded");
#if defined(__clang__)
  o << "; clang " << __clang_major__ << "." << __clang_minor__;
#elif defined(__GNUC__)
  o << "; gcc " << __GNUC__ << "." << __GNUC_MINOR__;
#endif
  return o.str();
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::setup: return "setup";
    case Algorithm::keygen: return "keygen";
    case Algorithm::delegate: return "delegate";
    case Algorithm::encrypt: return "encrypt";
    case Algorithm::decrypt: return "decrypt";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (auto a : {Algorithm::setup, Algorithm::keygen, Algorithm::delegate, Algorithm::encrypt, Algorithm::decrypt}) {
    if (to_string(a) == name) return a;
  }
  fail(ErrorKind::invalid_argument, "unknown algorithm '" + std::string(name) + "'");
}

CostVector predicted_counts(Algorithm alg, unsigned l, unsigned d) {
  check_depths(alg, l, d);
  const std::uint64_t f = l - d;
  CostVector c;
  switch (alg) {
    case Algorithm::setup:
      c.add({OpKind::exp_g1}, 3ULL * l + 5);
      c.add({OpKind::exp_g2}, l + 5ULL);
      c.add({OpKind::pair}, 1);
      break;
    case Algorithm::keygen:
      // 2f+4 blocks, each one two-term mexp and two exps
      c.add({OpKind::exp_g2}, 4 * f + 8);
      c.add({OpKind::mexp_g2, 2}, 2 * f + 4);
      if (d >= 1) c.add({OpKind::mexp_g2, d + 1}, 1);
      break;
    case Algorithm::delegate:
      c.add({OpKind::exp_g2}, 6);
      c.add({OpKind::mexp_g2, 2}, 6 * f + 6);
      break;
    case Algorithm::encrypt:
      c.add({OpKind::exp_gt}, 1);
      c.add({OpKind::exp_g1}, 6);
      if (d >= 1) c.add({OpKind::mexp_g1, d + 1}, 3);
      break;
    case Algorithm::decrypt: c.add({OpKind::mpair, 3}, 2); break;
  }
  return c;
}

CostVector published_cost_formula(Algorithm alg, unsigned l, unsigned d) {
  check_depths(alg, l, d);
  const std::uint64_t f = l - d;
  CostVector c;
  switch (alg) {
    case Algorithm::setup:
      c.add({OpKind::exp_g1}, 2ULL * l + 4);
      c.add({OpKind::exp_g2}, 2);
      c.add({OpKind::pair}, 1);
      break;
    case Algorithm::keygen:
      c.add({OpKind::exp_g2}, 4 * f + 4);
      c.add({OpKind::mexp_g2, 2}, 2 * f + 2);
      if (d >= 1) c.add({OpKind::mexp_g2, d + 1}, 1);
      break;
    case Algorithm::delegate:
      c.add({OpKind::exp_g2}, 9);
      c.add({OpKind::mexp_g2, 2}, 6 * f + 6);
      break;
    case Algorithm::encrypt:
      c.add({OpKind::exp_gt}, 1);
      c.add({OpKind::exp_g1}, 6);
      if (d >= 1) c.add({OpKind::mexp_g1, d + 1}, 3);
      break;
    case Algorithm::decrypt: c.add({OpKind::mpair, 3}, 2); break;
  }
  return c;
}

bool verify_counts(Algorithm alg, unsigned l, unsigned d, const GroupSuite& suite, CostVector* observed,
                   std::uint64_t seed) {
  CostVector expected = predicted_counts(alg, l, d);
  SeededRandom rng(seed);
  Fixture fx(alg, suite, l, d, rng, false);
  pairing::OperationCounter counter;
  {
    pairing::CountingScope scope(counter);
    fx.run(alg, suite, l, rng);
  }
  if (observed != nullptr) *observed = counter.snapshot();
  return counter.snapshot() == expected;
}

Regression fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "regression needs at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  require(sxx > 0, "regression needs at least two distinct x values");
  Regression r;
  r.slope_ns = sxy / sxx;
  r.intercept_ns = my - r.slope_ns * mx;
  r.r_squared = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return r;
}

BenchReport run_bench(Algorithm alg, const GroupSuite& suite, unsigned l, const std::vector<unsigned>& d_grid,
                      const BenchOptions& opts) {
  require(!suite.is_mock(), "benchmarks need the concrete backend; mock timings are meaningless");
  require(opts.reps >= 1, "at least one repetition per cell");
  require(!d_grid.empty(), "empty depth grid");
  for (unsigned d : d_grid) check_depths(alg, l, d);

  BenchReport rep;
  rep.alg = alg;
  rep.preprocessed = opts.preprocess && alg == Algorithm::keygen;
  rep.environment = environment_note(suite, opts);
  rep.cells.resize(d_grid.size());

  if (opts.parallel && d_grid.size() > 1) {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    unsigned n = std::max(1U, std::min<unsigned>(std::thread::hardware_concurrency(), d_grid.size()));
    for (unsigned t = 0; t < n; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < d_grid.size();) {
          rep.cells[i] = measure(alg, suite, l, d_grid[i], opts.reps, rep.preprocessed, opts.seed);
        }
      });
    }
    for (auto& t : pool) t.join();
  } else {
    // Reps go round-robin over the cells so a burst of machine noise is
    // spread across the grid instead of landing on one cell.
    std::vector<std::unique_ptr<Probe>> probes;
    for (unsigned d : d_grid) probes.push_back(std::make_unique<Probe>(alg, suite, l, d, rep.preprocessed, opts.seed));
    for (auto& p : probes) p->once();
    for (std::size_t r = 0; r < opts.reps; ++r) {
      for (auto& p : probes) p->sample();
    }
    for (std::size_t i = 0; i < probes.size(); ++i) rep.cells[i] = probes[i]->stats();
  }

  if ((alg == Algorithm::keygen || alg == Algorithm::delegate) && d_grid.size() >= 2) {
    std::vector<double> x, y;
    for (const auto& c : rep.cells) {
      x.push_back(static_cast<double>(c.l - c.d));
      y.push_back(c.mean_ns);
    }
    if (std::adjacent_find(x.begin(), x.end(), std::not_equal_to<>()) != x.end()) rep.regression = fit_linear(x, y);
  }
  return rep;
}

double preprocessing_speedup(const GroupSuite& suite, unsigned l, unsigned d, std::size_t reps, std::uint64_t seed) {
  require(!suite.is_mock(), "benchmarks need the concrete backend; mock timings are meaningless");
  auto plain = measure(Algorithm::keygen, suite, l, d, reps, false, seed);
  auto fast = measure(Algorithm::keygen, suite, l, d, reps, true, seed);
  return plain.mean_ns / fast.mean_ns;
}

double BenchReport::spread_of_means() const {
  if (cells.empty()) return 0;
  double mean = 0;
  for (const auto& c : cells) mean += c.mean_ns;
  mean /= static_cast<double>(cells.size());
  if (cells.size() < 2 || mean == 0) return 0;
  double ss = 0;
  for (const auto& c : cells) ss += (c.mean_ns - mean) * (c.mean_ns - mean);
  return std::sqrt(ss / static_cast<double>(cells.size() - 1)) / mean;
}

void BenchReport::write_ndjson(std::ostream& out) const {
  for (const auto& c : cells) {
    nlohmann::json j{{"alg", to_string(alg)}, {"l", c.l},           {"d", c.d}, {"mean_ns", c.mean_ns},
                     {"stddev_ns", c.stddev_ns}, {"reps", c.reps}, {"preprocessed", preprocessed}};
    out << j.dump() << '\n';
  }
  nlohmann::json s{{"alg", to_string(alg)}, {"summary", true}, {"environment", environment},
                   {"spread_of_means", spread_of_means()}};
  if (regression) {
    s["regression"] = {{"slope_ns", regression->slope_ns},
                       {"intercept_ns", regression->intercept_ns},
                       {"r_squared", regression->r_squared}};
  }
  out << s.dump() << '\n';
}

void BenchReport::write_csv(std::ostream& out, bool header) const {
  if (header) out << "alg,l,d,mean_ns,stddev_ns,reps\n";
  for (const auto& c : cells) {
    out << to_string(alg) << ',' << c.l << ',' << c.d << ',' << std::fixed << std::setprecision(0) << c.mean_ns
        << ',' << c.stddev_ns << ',' << c.reps << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

void BenchReport::write_summary(std::ostream& out) const {
  out << to_string(alg) << (preprocessed ? " (fixed-base tables)" : "") << "  [" << environment << "]\n";
  out << std::setw(5) << "l" << std::setw(5) << "d" << std::setw(14) << "mean ms" << std::setw(14) << "stddev ms"
      << std::setw(7) << "reps" << '\n';
  out << std::fixed << std::setprecision(3);
  for (const auto& c : cells) {
    out << std::setw(5) << c.l << std::setw(5) << c.d << std::setw(14) << c.mean_ns / 1e6 << std::setw(14)
        << c.stddev_ns / 1e6 << std::setw(7) << c.reps << '\n';
  }
  if (regression) {
    out << "fit vs (l - d): " << regression->slope_ns / 1e6 << " ms/level + " << regression->intercept_ns / 1e6
        << " ms, R^2 = " << std::setprecision(4) << regression->r_squared << '\n';
  }
  out << "spread of means (stddev/mean): " << std::setprecision(4) << spread_of_means() << '\n';
  out.unsetf(std::ios::floatfield);
}

void PublishedTimings::write(std::ostream& out) {
  out << "reference timings, 175-bit MNT curve (not comparable, not asserted):\n"
      << "  exp G " << exp_g1_ms << " ms, exp G^ " << exp_g2_ms << " ms, pairing " << pairing_ms << " ms\n"
      << "  l = 30: setup " << setup_s << " s, keygen at depth 1 " << keygen_depth1_s << " s, delegate at depth 1 "
      << delegate_depth1_s << " s, keygen preprocessing about 1/" << preprocessing_factor << '\n';
}

}  // namespace ahibe::bench
