#pragma once

#include "shiftlab/report.hpp"
#include "shiftlab/s5.hpp"

namespace shiftlab {

/// #{1 <= n <= x : w_1⋯w_n > 2^p} for a weight built from `state`, counted
/// block by block (flat blocks via the b_qN + [-(q-p-1), q] families, gaps in
/// closed form).
Index count_large_products(const S5State& state, const WeightSeq& w, int p, Index x);

/// a_depth / b_depth + Σ_{q=p+1}^{depth+1} (2q+1)/b_q.
double obstruction_ceiling(const S5State& state, int p);

/// Checks #F_p(b_r) <= a_r + b_r Σ_{q>p} (2q+1)/b_q for r = 1..depth, where
/// F_p = {n : w_1⋯w_n > 2^p}; the structured count is cross-checked by an
/// exhaustive scan up to `scan_cap`.
ConditionReport lower_density_obstruction(const WeightSeq& w, const S5State& state, int p,
                                          Index scan_cap = Index{1} << 26);

}  // namespace shiftlab
