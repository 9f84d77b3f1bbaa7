#pragma once

#include <vector>

#include "shiftlab/progression_set.hpp"
#include "shiftlab/report.hpp"
#include "shiftlab/weights.hpp"

namespace shiftlab {

/// Block of E_p added at step r: multiples of b_p in [M_{p,r}, N_{p,r}].
struct S5Step {
  int p = 0;
  int r = 0;
  Index M = 0;
  Index N = 0;
};

/// Inductive state after `depth` steps. Vectors are 0-based: a[r-1] = a_r.
struct S5State {
  int depth = 0;
  double slack = 1.0;
  std::vector<Index> a, b;
  std::vector<S5Step> steps;
  std::vector<ProgressionSet> E;  // E[p-1] = E_p^depth
  Index a_next = 0;               // a_{depth+1}, b_{depth+1}: the next step's
  Index b_next = 0;               // choices, which fix the weight up to a_{depth+1}

  Index a_at(int r) const { return r == depth + 1 ? a_next : a[static_cast<std::size_t>(r - 1)]; }
  Index b_at(int r) const { return r == depth + 1 ? b_next : b[static_cast<std::size_t>(r - 1)]; }
  const ProgressionSet& E_at(int p) const { return E[static_cast<std::size_t>(p - 1)]; }
  /// Largest index the state's weight is defined on: a_{depth+1} - (depth+1) - 1.
  Index weight_limit() const { return a_next - (depth + 1) - 1; }
};

/// Runs the induction with minimal choices; `slack` >= 1 multiplies each
/// a_{r+1} (rounded up). Overflow raises ResourceError carrying the depth reached.
S5State build_s5(int depth, double slack = 1.0);

/// Growth of a_r and b_r, multiples of b_p, density checkpoints and block
/// separation, each checked on every block pair.
std::vector<ConditionReport> check_s5_invariants(const S5State& state);

/// Procedural weight C(n) = max(L⁰(n), max_q L^q(n)) in log2, on [0, hi].
/// hi defaults to state.weight_limit().
WeightSeq build_s5_weight(const S5State& state, Index hi = -1);

/// Block products, cross-family and same-family pair products on every block pair.
std::vector<ConditionReport> check_s5_weight(const S5State& state, const WeightSeq& w);

/// Smallness of the products on [0, b_r] ∩ [a_r, b_r]: C(n) > p forces
/// n into b_qN + [-q, q] for some q > p. Exhaustive up to `scan_cap` points.
ConditionReport check_s5_smallness(const S5State& state, const WeightSeq& w, int p, Index scan_cap = Index{1} << 24);

}  // namespace shiftlab
