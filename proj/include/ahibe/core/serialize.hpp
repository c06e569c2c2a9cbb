#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ahibe/core/scheme.hpp"

namespace ahibe::core {

// Layout: "AHIB" | version | suite | l (u16 BE) | kind | kind header |
// element count (u32 BE) | elements, each prefixed with a u16 BE length.
// Elements appear in the field order of the corresponding struct.

enum class ObjectKind : std::uint8_t { public_params = 'P', master_key = 'M', private_key = 'S', ciphertext = 'C' };

std::vector<std::uint8_t> serialize(const PublicParams& pp);
std::vector<std::uint8_t> serialize(const MasterKey& mk, const PublicParams& pp);
std::vector<std::uint8_t> serialize(const PrivateKey& sk, const PublicParams& pp);
std::vector<std::uint8_t> serialize(const Ciphertext& ct, const PublicParams& pp);

/// Reads the kind byte without validating the rest.
ObjectKind peek_kind(std::span<const std::uint8_t> bytes);

// All of these throw Error(malformed) on any structural problem, including a
// suite or depth that differs from `pp`.
PublicParams deserialize_public_params(std::span<const std::uint8_t> bytes);
MasterKey deserialize_master_key(std::span<const std::uint8_t> bytes, const PublicParams& pp);
PrivateKey deserialize_private_key(std::span<const std::uint8_t> bytes, const PublicParams& pp);
Ciphertext deserialize_ciphertext(std::span<const std::uint8_t> bytes, const PublicParams& pp);

}  // namespace ahibe::core
