#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ahibe/pairing/counter.hpp"
#include "ahibe/pairing/group.hpp"

namespace ahibe::bench {

using CostVector = pairing::OpCounts;

enum class Algorithm { setup, keygen, delegate, encrypt, decrypt };

std::string to_string(Algorithm a);
/// Throws Error(invalid_argument) for unknown names.
Algorithm parse_algorithm(std::string_view name);

/// Exact counts of our implementation at max depth l and identity depth d.
/// For delegate, d is the parent's depth and must be below l.
CostVector predicted_counts(Algorithm alg, unsigned l, unsigned d);

/// The published abstract-cost lines read as equalities, with each identity
/// product taken as one (d+1)-term multi-exponentiation.
CostVector published_cost_formula(Algorithm alg, unsigned l, unsigned d);

/// Runs `alg` once under an OperationCounter and compares class by class.
/// `observed`, if given, receives the instrumented counts.
bool verify_counts(Algorithm alg, unsigned l, unsigned d, const pairing::GroupSuite& suite,
                   CostVector* observed = nullptr, std::uint64_t seed = 1);

struct BenchCell {
  unsigned l = 0, d = 0;
  double mean_ns = 0, stddev_ns = 0;
  std::size_t reps = 0;
};

/// Least-squares fit of mean time against (l - d).
struct Regression {
  double slope_ns = 0, intercept_ns = 0, r_squared = 0;
};

struct BenchOptions {
  std::size_t reps = 5;
  bool preprocess = false;  // fixed-base tables for keygen
  bool parallel = false;    // cells on separate threads
  std::uint64_t seed = 1;
};

struct BenchReport {
  Algorithm alg{};
  bool preprocessed = false;
  std::vector<BenchCell> cells;
  std::optional<Regression> regression;  // keygen and delegate only
  std::string environment;

  /// stddev/mean of the per-cell means.
  double spread_of_means() const;
  void write_ndjson(std::ostream& out) const;
  void write_csv(std::ostream& out, bool header = true) const;
  void write_summary(std::ostream& out) const;
};

/// Wall-clock statistics per (l, d). Rejects the mock backend.
BenchReport run_bench(Algorithm alg, const pairing::GroupSuite& suite, unsigned l, const std::vector<unsigned>& d_grid,
                      const BenchOptions& opts = {});

/// Mean keygen time without tables over mean time with them.
double preprocessing_speedup(const pairing::GroupSuite& suite, unsigned l, unsigned d, std::size_t reps,
                             std::uint64_t seed = 1);

Regression fit_linear(const std::vector<double>& x, const std::vector<double>& y);

/// Published timings on a 175-bit MNT curve. Reference only.
struct PublishedTimings {
  static constexpr double exp_g1_ms = 1.6;
  static constexpr double exp_g2_ms = 20.3;
  static constexpr double pairing_ms = 15.6;
  static constexpr double setup_s = 0.936;
  static constexpr double keygen_depth1_s = 4.259;
  static constexpr double delegate_depth1_s = 5.257;
  static constexpr double preprocessing_factor = 5.0;
  static void write(std::ostream& out);
};

}  // namespace ahibe::bench
