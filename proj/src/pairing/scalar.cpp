#include "ahibe/pairing/scalar.hpp"

#include <bit>

#include "ahibe/error.hpp"

namespace ahibe::pairing {

std::size_t Scalar::bit_length() const {
  for (std::size_t i = kLimbs; i-- > 0;) {
    if (limbs_[i] != 0) return 64 * i + (64 - static_cast<std::size_t>(std::countl_zero(limbs_[i])));
  }
  return 0;
}

std::array<std::uint8_t, Scalar::kBytes> Scalar::to_le_bytes() const {
  std::array<std::uint8_t, kBytes> out{};
  for (std::size_t i = 0; i < kBytes; ++i) out[i] = static_cast<std::uint8_t>(limbs_[i / 8] >> (8 * (i % 8)));
  return out;
}

std::array<std::uint8_t, Scalar::kBytes> Scalar::to_be_bytes() const {
  auto le = to_le_bytes();
  std::array<std::uint8_t, kBytes> out{};
  for (std::size_t i = 0; i < kBytes; ++i) out[i] = le[kBytes - 1 - i];
  return out;
}

Scalar Scalar::from_be_bytes(std::span<const std::uint8_t> bytes) {
  require(bytes.size() <= kBytes, "scalar encoding longer than 32 bytes");
  std::array<std::uint64_t, kLimbs> limbs{};
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    std::size_t pos = bytes.size() - 1 - i;  // little-endian byte index
    limbs[pos / 8] |= static_cast<std::uint64_t>(bytes[i]) << (8 * (pos % 8));
  }
  return Scalar(limbs);
}

std::string Scalar::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (auto b : to_be_bytes()) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 15]);
  }
  auto first = out.find_first_not_of('0');
  return first == std::string::npos ? "0" : out.substr(first);
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  for (std::size_t i = Scalar::kLimbs; i-- > 0;) {
    if (auto c = a.limbs_[i] <=> b.limbs_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Scalar ScalarField::from_u64(std::uint64_t v) const {
  std::array<std::uint8_t, 8> le{};
  for (std::size_t i = 0; i < 8; ++i) le[i] = static_cast<std::uint8_t>(v >> (8 * i));
  return reduce(le);
}

Scalar ScalarField::from_i64(std::int64_t v) const {
  if (v >= 0) return from_u64(static_cast<std::uint64_t>(v));
  return neg(from_u64(static_cast<std::uint64_t>(-(v + 1)) + 1));
}

Scalar ScalarField::sum(std::span<const Scalar> terms) const {
  Scalar acc;
  for (const auto& t : terms) acc = add(acc, t);
  return acc;
}

}  // namespace ahibe::pairing
