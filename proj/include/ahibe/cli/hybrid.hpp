#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ahibe/core/scheme.hpp"

namespace ahibe::cli {

/// "corp/eng/alice" -> {"corp", "eng", "alice"}. Throws Error(invalid_argument)
/// on an empty path or an empty label.
std::vector<std::string> split_path(std::string_view path);

/// Each label hashed with BLAKE2b-512 over (domain, level, length, label,
/// counter) and reduced mod p; the counter is bumped while the residue is 0.
core::HierarchicalIdentity hash_identity(const std::vector<std::string>& labels, const pairing::ScalarField& field);

/// Container: "AHCT" | version | header length (u32 BE) | header | nonce | body.
/// The header is a serialized HIBE ciphertext encapsulating a random G_T
/// element; the body is XChaCha20-Poly1305 under a BLAKE2b key derived from
/// that element, with everything before the nonce as associated data.
struct HybridCiphertext {
  static constexpr std::uint8_t kVersion = 1;
  static constexpr std::size_t kNonceBytes = 24;

  std::vector<std::uint8_t> header;
  std::array<std::uint8_t, kNonceBytes> nonce{};
  std::vector<std::uint8_t> body;

  std::vector<std::uint8_t> associated_data() const;
  std::vector<std::uint8_t> encode() const;
  /// Throws Error(malformed).
  static HybridCiphertext parse(std::span<const std::uint8_t> bytes);
};

std::array<std::uint8_t, 32> derive_key(const pairing::GTElem& m, const pairing::GroupSuite& suite);

HybridCiphertext seal(const core::HierarchicalIdentity& id, std::span<const std::uint8_t> message,
                      const core::PublicParams& pp, pairing::RandomSource& rng);

/// Throws Error(authentication) when the tag does not verify; nothing is
/// returned in that case.
std::vector<std::uint8_t> open(const HybridCiphertext& hc, const core::PrivateKey& sk, const core::PublicParams& pp);

}  // namespace ahibe::cli
