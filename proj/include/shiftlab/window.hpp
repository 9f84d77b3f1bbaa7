#pragma once

#include <algorithm>
#include <cstdint>
#include <string>

#include "shiftlab/errors.hpp"

namespace shiftlab {

using Index = std::int64_t;

/// Inclusive integer range [lo, hi]; finite truncation of Z or Z_+.
struct Window {
  Index lo = 0;
  Index hi = 0;

  constexpr Window() = default;
  Window(Index lo_, Index hi_) : lo(lo_), hi(hi_) {
    if (lo > hi) {
      throw ArgumentError("window [" + std::to_string(lo) + "," + std::to_string(hi) +
                          "] is empty");
    }
  }

  Index size() const { return hi - lo + 1; }
  bool contains(Index x) const { return lo <= x && x <= hi; }
  bool contains(const Window& w) const { return lo <= w.lo && w.hi <= hi; }
  bool bilateral() const { return lo < 0; }

  /// Largest n such that the prefix A(n) lies inside the window.
  Index max_prefix() const { return bilateral() ? std::min(-lo, hi) : hi; }

  bool operator==(const Window&) const = default;
};

inline std::string to_string(const Window& w) {
  return "[" + std::to_string(w.lo) + "," + std::to_string(w.hi) + "]";
}

}  // namespace shiftlab
