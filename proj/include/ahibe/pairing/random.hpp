#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "ahibe/pairing/scalar.hpp"

namespace ahibe::pairing {

/// Source of exponents and random bytes. Every randomized algorithm takes one
/// by reference, so tests can substitute deterministic or scripted sources.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;
  /// Uniform element of the field (wide reduction of 64 random bytes).
  virtual Scalar scalar(const ScalarField& field);
  /// Uniform nonzero element.
  Scalar nonzero_scalar(const ScalarField& field);
};

/// Operating-system CSPRNG.
class SystemRandom final : public RandomSource {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

/// Deterministic stream for reproducible tests and mock suites. Not for keys.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}
  void fill(std::span<std::uint8_t> out) override;

 private:
  std::mt19937_64 engine_;
};

/// Replays a fixed script of scalars; `std::nullopt` entries (and everything
/// past the end of the script) are drawn from the fallback source.
class ScriptedRandom final : public RandomSource {
 public:
  ScriptedRandom(std::vector<std::optional<Scalar>> script, RandomSource& fallback)
      : script_(std::move(script)), fallback_(fallback) {}
  void fill(std::span<std::uint8_t> out) override { fallback_.fill(out); }
  Scalar scalar(const ScalarField& field) override;
  std::size_t consumed() const { return next_; }

 private:
  std::vector<std::optional<Scalar>> script_;
  std::size_t next_ = 0;
  RandomSource& fallback_;
};

/// Records every scalar handed out by the wrapped source, in draw order.
class RecordingRandom final : public RandomSource {
 public:
  explicit RecordingRandom(RandomSource& inner) : inner_(inner) {}
  void fill(std::span<std::uint8_t> out) override { inner_.fill(out); }
  Scalar scalar(const ScalarField& field) override;
  const std::vector<Scalar>& draws() const { return draws_; }
  void clear() { draws_.clear(); }

 private:
  RandomSource& inner_;
  std::vector<Scalar> draws_;
};

}  // namespace ahibe::pairing
