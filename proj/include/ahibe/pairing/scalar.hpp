#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ahibe::pairing {

/// Integer in [0, p) for the group order p of some ScalarField. Stored as four
/// little-endian 64-bit limbs; a Scalar carries no reference to its field, so
/// arithmetic goes through ScalarField.
class Scalar {
 public:
  static constexpr std::size_t kLimbs = 4;
  static constexpr std::size_t kBytes = 32;

  constexpr Scalar() = default;
  constexpr explicit Scalar(const std::array<std::uint64_t, kLimbs>& limbs) : limbs_(limbs) {}
  static constexpr Scalar from_u64(std::uint64_t v) { return Scalar({v, 0, 0, 0}); }

  const std::array<std::uint64_t, kLimbs>& limbs() const { return limbs_; }
  std::uint64_t low() const { return limbs_[0]; }
  bool is_zero() const { return (limbs_[0] | limbs_[1] | limbs_[2] | limbs_[3]) == 0; }
  std::size_t bit_length() const;
  bool bit(std::size_t i) const { return i < 256 && ((limbs_[i / 64] >> (i % 64)) & 1U) != 0; }

  std::array<std::uint8_t, kBytes> to_le_bytes() const;
  std::array<std::uint8_t, kBytes> to_be_bytes() const;
  static Scalar from_be_bytes(std::span<const std::uint8_t> bytes);  // at most 32 bytes
  std::string to_hex() const;

  friend bool operator==(const Scalar&, const Scalar&) = default;
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

 private:
  std::array<std::uint64_t, kLimbs> limbs_{};
};

/// Arithmetic modulo a prime group order.
class ScalarField {
 public:
  virtual ~ScalarField() = default;

  virtual const Scalar& modulus() const = 0;
  virtual Scalar add(const Scalar& a, const Scalar& b) const = 0;
  virtual Scalar sub(const Scalar& a, const Scalar& b) const = 0;
  virtual Scalar mul(const Scalar& a, const Scalar& b) const = 0;
  /// Throws ahibe::Error(invalid_argument) on zero.
  virtual Scalar inverse(const Scalar& a) const = 0;
  /// Reduces an arbitrary-length little-endian byte string modulo p.
  virtual Scalar reduce(std::span<const std::uint8_t> le_bytes) const = 0;

  Scalar neg(const Scalar& a) const { return sub(Scalar{}, a); }
  Scalar from_u64(std::uint64_t v) const;
  Scalar from_i64(std::int64_t v) const;
  Scalar one() const { return from_u64(1); }
  bool contains(const Scalar& a) const { return a < modulus(); }
  std::size_t bits() const { return modulus().bit_length(); }
  /// Minimal big-endian width able to hold any element.
  std::size_t byte_width() const { return (bits() + 7) / 8; }
  Scalar sum(std::span<const Scalar> terms) const;
};

}  // namespace ahibe::pairing
