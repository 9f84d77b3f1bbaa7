#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "shiftlab/window.hpp"

namespace shiftlab {

struct Checkpoint {
  Index n = 0;
  Index count = 0;
  Index denom = 1;  // 2n+1 (bilateral) or n+1 (unilateral)
  double ratio() const { return static_cast<double>(count) / static_cast<double>(denom); }
};

/// Windowed surrogate for lower/upper density: min/max ratio over the last
/// quartile of checkpoints, with the full table kept for other rules.
struct DensityEstimate {
  std::vector<Checkpoint> checkpoints;
  double lower_est = 0.0;
  double upper_est = 0.0;
};

/// Works for any set type exposing count_prefix(n) and bilateral().
template <class Set>
DensityEstimate density_profile(const Set& a, std::span<const Index> checkpoints) {
  if (checkpoints.empty()) throw ArgumentError("density profile needs at least one checkpoint");
  DensityEstimate est;
  Index prev = -1;
  for (Index n : checkpoints) {
    if (n <= prev) throw ArgumentError("checkpoints must be strictly increasing");
    prev = n;
    const Index denom = a.bilateral() ? 2 * n + 1 : n + 1;
    est.checkpoints.push_back({n, a.count_prefix(n), denom});
  }
  const std::size_t start = (3 * est.checkpoints.size()) / 4;
  est.lower_est = 1.0;
  est.upper_est = 0.0;
  for (std::size_t i = start; i < est.checkpoints.size(); ++i) {
    est.lower_est = std::min(est.lower_est, est.checkpoints[i].ratio());
    est.upper_est = std::max(est.upper_est, est.checkpoints[i].ratio());
  }
  return est;
}

/// `count` evenly spaced checkpoints ending at `last`.
std::vector<Index> linear_checkpoints(Index last, Index count);

/// Roughly geometric checkpoints from `first` to `last` (both included).
std::vector<Index> geometric_checkpoints(Index first, Index last, Index count);

}  // namespace shiftlab
