#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>

namespace ahibe::pairing {

enum class OpKind : std::uint8_t { exp_g1, exp_g2, exp_gt, mexp_g1, mexp_g2, mexp_gt, pair, mpair };

/// An abstract-cost operation class. `terms` is the arity m of the m-term
/// classes and 1 for single exponentiations and pairings.
struct OpClass {
  OpKind kind;
  unsigned terms = 1;

  friend auto operator<=>(const OpClass&, const OpClass&) = default;
  std::string name() const;  // e.g. "exp_G2", "mexp_G2(2)", "mpair(3)"
};

/// Per-class operation counts. Zero entries are never stored, so two equal
/// cost profiles compare equal regardless of how they were built.
class OpCounts {
 public:
  void add(OpClass op, std::uint64_t n = 1);
  std::uint64_t operator[](OpClass op) const;
  const std::map<OpClass, std::uint64_t>& entries() const { return counts_; }
  bool empty() const { return counts_.empty(); }
  std::uint64_t total() const;
  std::string to_string() const;

  friend bool operator==(const OpCounts&, const OpCounts&) = default;

 private:
  std::map<OpClass, std::uint64_t> counts_;
};

/// Accumulates operations recorded while a CountingScope is active.
class OperationCounter {
 public:
  void record(OpClass op) { counts_.add(op); }
  const OpCounts& snapshot() const { return counts_; }
  void reset() { counts_ = {}; }

 private:
  OpCounts counts_;
};

/// Routes group operations on the current thread into `counter` for the
/// lifetime of the scope. Scopes nest; the innermost one receives the counts.
class CountingScope {
 public:
  explicit CountingScope(OperationCounter& counter);
  ~CountingScope();
  CountingScope(const CountingScope&) = delete;
  CountingScope& operator=(const CountingScope&) = delete;

 private:
  OperationCounter* previous_;
};

namespace detail {
OperationCounter* active_counter();
inline void count(OpClass op) {
  if (auto* c = active_counter()) c->record(op);
}
}  // namespace detail

}  // namespace ahibe::pairing
