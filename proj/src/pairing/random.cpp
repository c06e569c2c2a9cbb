#include "ahibe/pairing/random.hpp"

#include <sodium.h>

#include <array>
#include <cstring>
#include <stdexcept>

namespace ahibe::pairing {

Scalar RandomSource::scalar(const ScalarField& field) {
  std::array<std::uint8_t, 64> wide{};
  fill(wide);
  Scalar s = field.reduce(wide);
  sodium_memzero(wide.data(), wide.size());
  return s;
}

Scalar RandomSource::nonzero_scalar(const ScalarField& field) {
  for (;;) {
    Scalar s = scalar(field);
    if (!s.is_zero()) return s;
  }
}

void SystemRandom::fill(std::span<std::uint8_t> out) {
  if (sodium_init() < 0) throw std::runtime_error("libsodium initialisation failed");
  randombytes_buf(out.data(), out.size());
}

void SeededRandom::fill(std::span<std::uint8_t> out) {
  std::size_t i = 0;
  while (i < out.size()) {
    std::uint64_t word = engine_();
    for (std::size_t k = 0; k < 8 && i < out.size(); ++k, ++i) out[i] = static_cast<std::uint8_t>(word >> (8 * k));
  }
}

Scalar ScriptedRandom::scalar(const ScalarField& field) {
  if (next_ < script_.size()) {
    const auto& entry = script_[next_++];
    if (entry) return *entry;
  } else {
    ++next_;
  }
  return fallback_.scalar(field);
}

Scalar RecordingRandom::scalar(const ScalarField& field) {
  Scalar s = inner_.scalar(field);
  draws_.push_back(s);
  return s;
}

}  // namespace ahibe::pairing
