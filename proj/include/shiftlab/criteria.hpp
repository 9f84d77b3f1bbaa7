#pragma once

#include <span>

#include "shiftlab/intset.hpp"
#include "shiftlab/report.hpp"
#include "shiftlab/sparse_vector.hpp"
#include "shiftlab/weights.hpp"

namespace shiftlab {

struct SeriesOptions {
  double hold_increment = 1e-6;          // last dyadic increment below this: holds
  double divergence_threshold = 1e3;     // partial sum above this with growing increments: violated
};

/// Partial sums of Σ_{n>=1} (w_1⋯w_n)^{-p} and, for bilateral weights,
/// Σ_{n<0} (w_{n+1}⋯w_0)^p at dyadic checkpoints up to N.
ConditionReport lp_series_test(const WeightSeq& w, double p, Index N, const SeriesOptions& opts = {});

/// For each n in A: Σ_{m in A, m>n} (w_1⋯w_{m-n})^{-p} <= 1 and, for
/// bilateral weights, Σ_{m in A, m<n} (w_{m-n+1}⋯w_0)^p <= 1, over the
/// part of A whose differences stay inside the weight window.
ConditionReport necessary_condition_witness(const WeightSeq& w, const IntSet& A, double p);

/// ||B^n x|| in log2 without materializing B^n x.
double log2_norm_after(const WeightSeq& w, const SparseVec& x, Index n);

/// For each threshold c, {0 <= n <= N : ||B^n x|| > c} with its density profile.
/// Holds when every threshold set keeps upper density within `near` of 1.
ConditionReport distributional_unbounded_scan(const WeightSeq& w, const SparseVec& x,
                                              std::span<const double> thresholds, Index N, Index checkpoints = 16,
                                              double near = 0.05);

}  // namespace shiftlab
