#pragma once

// Plain modular arithmetic over u64, kept separate from the library's field
// code so tests can check exponents against an independent computation.

#include <cstdint>

#include "ahibe/pairing/group.hpp"

namespace oracle {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct ModP {
  u64 p;

  u64 add(u64 a, u64 b) const { return static_cast<u64>((static_cast<u128>(a) + b) % p); }
  u64 sub(u64 a, u64 b) const { return add(a, p - b % p); }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % p); }
  u64 neg(u64 a) const { return a % p == 0 ? 0 : p - a % p; }
  u64 pow(u64 b, u64 e) const {
    u64 r = 1;
    for (b %= p; e != 0; e >>= 1, b = mul(b, b)) {
      if (e & 1U) r = mul(r, b);
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
  u64 div(u64 a, u64 b) const { return mul(a, inv(b)); }
};

template <class E>
u64 log(const ahibe::pairing::GroupSuite& suite, const E& e) {
  return ahibe::pairing::mock::log_of(suite, e).low();
}

inline u64 v(const ahibe::pairing::Scalar& s) { return s.low(); }

// Largest prime below 2^61; makes accidental zero exponents negligible.
constexpr u64 kBigPrime = 2305843009213693951ULL;

}  // namespace oracle
