#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "shiftlab/density.hpp"
#include "shiftlab/intset.hpp"

namespace shiftlab {

/// B_k = A ∩ (A - k): members x with x + k also in A.
IntSet correlation_set(const IntSet& a, Index k);

struct DiffSetOptions {
  /// Shared checkpoints for δ and every δ_k; empty picks 16 linear
  /// checkpoints up to the largest prefix unaffected by clipping.
  std::vector<Index> checkpoints;
  /// Replaces the windowed δ (e.g. by an exactly known density).
  std::optional<double> delta;
};

/// Windowed upper densities δ_k of the correlation sets over a range of k.
class CorrelationTable {
 public:
  CorrelationTable(const IntSet& a, Index max_shift, const DiffSetOptions& opts = {});

  double delta() const { return delta_; }
  Index max_shift() const { return max_shift_; }
  const std::vector<Index>& checkpoints() const { return checkpoints_; }
  double delta_k(Index k) const;

 private:
  Index max_shift_;
  std::vector<Index> checkpoints_;
  double delta_ = 0.0;
  std::vector<double> table_;  // index k + max_shift
};

struct DiffSetReport {
  double delta = 0.0;
  double epsilon = 0.0;
  double threshold = 0.0;  // (1 - ε)δ²
  std::vector<Index> checkpoints;
  Window k_range;
  std::vector<std::pair<Index, double>> delta_k;
  IntSet F;
  std::optional<Index> max_gap;  // nullopt: F empty
  std::vector<Index> R;
  double bound = 0.0;  // (1 - δ(1 - ε)) / (δε)
  bool bound_holds = true;
  Window covered_range;  // where F + R ⊇ range was checked
  bool covers = true;
};

/// F = {k : δ_k > (1 - ε)δ²} over k_range, its largest gap, and the greedy
/// separated set over the half range (so every difference k - l stays inside
/// k_range and the covering F + R can be checked on it).
DiffSetReport syndetic_return_set(const IntSet& a, double epsilon, Window k_range, const DiffSetOptions& opts = {});

struct GreedyResult {
  std::vector<Index> R;
  double bound = 0.0;
  bool bound_holds = true;
  bool covers = true;
};

/// Maximal R built in the order 0, 1, -1, 2, -2, ... keeping δ_{k-l} below
/// the threshold for all earlier l.
GreedyResult greedy_separated_set(const IntSet& a, double epsilon, Window candidate_range,
                                  const DiffSetOptions& opts = {});
GreedyResult greedy_separated_set(const CorrelationTable& table, double epsilon, Window candidate_range);

/// α_n on offsets [lo, lo + values.size()), zero elsewhere.
struct AlphaProfile {
  Index lo = 0;
  std::vector<double> values;
  double operator()(Index d) const {
    const Index i = d - lo;
    return (i < 0 || i >= static_cast<Index>(values.size())) ? 0.0 : values[static_cast<std::size_t>(i)];
  }
  Index hi() const { return lo + static_cast<Index>(values.size()) - 1; }
};

struct ReturnAverage {
  std::vector<std::pair<Index, double>> beta;      // n in A ∩ [-H, H] -> Σ_{m∈A} α_{m-n}
  std::vector<std::pair<Index, double>> averages;  // checkpoint n -> mean over [-n, n]
  double ratio_constant = 0.0;                     // C of the one-sided ratio condition
  bool forward = true;                             // α_n >= C α_{n-1} (else α_{n-1} >= C α_n)
  double growth = 0.0;                             // last average / first average
};

/// averages(n) = (1/(2n+1)) Σ_{|m|<=n, m∈A} Σ_{|m'|<=n, m'∈A} α_{m'-m}; β uses
/// the full window [-H, H] with H the last checkpoint.
ReturnAverage weighted_return_average(const IntSet& a, const AlphaProfile& alpha, std::span<const Index> checkpoints);

}  // namespace shiftlab
