#pragma once

#include <vector>

#include "shiftlab/intset.hpp"
#include "shiftlab/progression_set.hpp"
#include "shiftlab/report.hpp"
#include "shiftlab/weights.hpp"

namespace shiftlab {

struct Rational {
  Index num = 0;
  Index den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Integer points of [(1-cε)a^u, (1+cε)a^u] for c = 1, 2, 4.
struct S6Interval {
  Index u = 0;
  int p = 0;          // u belongs to A_p: v2(u) = p - 1
  bool kept = false;  // I_u^ε + [-2p, 2p] fits in I_u^{2ε}
  Window inner{0, 0};
  Window mid{0, 0};
  Window outer{0, 0};
};

struct S6Config {
  Rational a{60, 1};
  Rational epsilon{1, 100};
  int pmax = 5;
  Index window = 10'000'000;
  std::vector<Index> b;               // b[p-1] = (4p+1) 2^{p+1}, every p with b_p - 2p <= window
  std::vector<S6Interval> intervals;  // u = 1, 2, ... while I_u^{4ε} starts inside the window

  Index b_at(int p) const { return b[static_cast<std::size_t>(p - 1)]; }
  int families() const { return static_cast<int>(b.size()); }
};

S6Config make_s6_config(Rational a, Rational epsilon, int pmax, Index window);

/// Interval inequalities, the density budget and the interval algebra.
/// Quantities carry the evaluated values.
std::vector<ConditionReport> check_s6_config(const S6Config& cfg);

/// E_p = ∪_{u in A_p, kept} I_u^ε ∩ b_pN on [0, window], p = 1..pmax.
std::vector<ProgressionSet> build_s6_sets(const S6Config& cfg);

/// Bilateral weight: w_k = 2 for k >= 1; on the negative side
/// w_{-k+1}⋯w_0 = 2^{-D(k)}, D the maximum of the family dips (2p at b_pN,
/// unit slopes over [-2p, 2p]) and the interval dips (2max(p,q) on
/// I_u^ε - I_v^ε, zero outside I_u^{4ε}). D is cached densely up to `dense_limit`.
WeightSeq build_s6_weight(const S6Config& cfg, Index dense_limit = 10'000'000);

/// Every log2 w_k in [-1, 1] over the densely cached part, plus unit slopes
/// of every dip profile.
ConditionReport check_s6_weight(const S6Config& cfg, const WeightSeq& w);

/// A = N \ (∪_p (b_pN + [-2p, 2p]) ∪ ∪_u I_u^{4ε}) on [0, window].
IntSet residual_set(const S6Config& cfg, Index window);

}  // namespace shiftlab
