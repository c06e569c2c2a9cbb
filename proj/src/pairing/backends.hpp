#pragma once

#include <cstdint>
#include <memory>

#include "ahibe/pairing/group.hpp"

namespace ahibe::pairing::detail {

std::shared_ptr<const Backend> make_mock_backend(std::uint64_t p, std::uint64_t seed);
std::shared_ptr<const Backend> bls12_381_backend();

}  // namespace ahibe::pairing::detail
