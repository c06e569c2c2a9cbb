#pragma once

#include <algorithm>
#include <array>
#include <span>
#include <vector>

#include "ahibe/pairing/scalar.hpp"

namespace ahibe::pairing::detail {

/// Interleaved fixed-window (Straus) multi-exponentiation. `Ops` supplies
/// `Point`, `identity()`, `add(out, a, b)` and `dbl(out, a)` for some group
/// written additively.
template <class Ops>
typename Ops::Point straus(std::span<const typename Ops::Point> bases, std::span<const Scalar> scalars) {
  using Point = typename Ops::Point;
  constexpr std::size_t kWindow = 4;
  constexpr std::size_t kTable = (1U << kWindow) - 1;

  std::vector<std::array<Point, kTable>> tables(bases.size());
  std::size_t top_bits = 0;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    auto& t = tables[i];
    t[0] = bases[i];
    Ops::dbl(t[1], t[0]);
    for (std::size_t d = 2; d < kTable; ++d) Ops::add(t[d], t[d - 1], t[0]);
    top_bits = std::max(top_bits, scalars[i].bit_length());
  }

  Point acc = Ops::identity();
  bool started = false;
  std::size_t windows = (top_bits + kWindow - 1) / kWindow;
  for (std::size_t w = windows; w-- > 0;) {
    if (started) {
      for (std::size_t k = 0; k < kWindow; ++k) Ops::dbl(acc, acc);
    }
    for (std::size_t i = 0; i < bases.size(); ++i) {
      unsigned digit = 0;
      for (std::size_t k = kWindow; k-- > 0;) digit = digit << 1 | (scalars[i].bit(w * kWindow + k) ? 1U : 0U);
      if (digit == 0) continue;
      if (started) {
        Ops::add(acc, acc, tables[i][digit - 1]);
      } else {
        acc = tables[i][digit - 1];
        started = true;
      }
    }
  }
  return acc;
}

}  // namespace ahibe::pairing::detail
