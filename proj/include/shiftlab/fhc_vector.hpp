#pragma once

#include <vector>

#include "shiftlab/characterization.hpp"
#include "shiftlab/sparse_vector.hpp"

namespace shiftlab {

/// p-th member of the dense family: the diagonal enumeration (L, j) =
/// (1,0), (1,1), (2,0), (1,2), ... selects the j-th level-L vector, whose
/// support is [-L, L] ([0, L] unilateral), grid 2^{-L} and sup norm <= rho^L.
SparseVec dense_family_vector(int p, double rho, bool bilateral);

/// Thinned sets F_p and targets y(p) for p = 1..pmax.
struct FhcVectorPlan {
  int pmax = 0;
  double rho = 2.0;
  bool bilateral = true;
  std::vector<int> source;            // source[p-1]: family feeding level p, 0 if none
  std::vector<double> log2_M_needed;  // smallest admissible log2 M for level p
  std::vector<std::vector<Index>> F;  // F[p-1]
  std::vector<SparseVec> y;           // y[p-1]
};

/// Level p draws from the first unused family q >= p with M(q) >= rho^{4p}
/// (unilateral: also divided by min(1, inf_{1<=t<=p} w_t^{2p})). E'_p is
/// that family minus {n : w_1⋯w_n <= rho^{4p}}; F_p keeps every (2p+1)-th
/// element. Levels without a qualifying family stay empty.
FhcVectorPlan plan_fhc_vector(const WeightSeq& w, const FhcFamily& fam, int pmax, Index max_members = Index{1} << 26);

/// x_{n+s} = y_p(s) / (w_{s+1}⋯w_{n+s}) for n in F_p and s in the margin.
/// A coordinate defined twice raises InvariantFailure.
LogSparseVec build_fhc_vector(const WeightSeq& w, const FhcVectorPlan& plan);

/// Per p: max over n in F_p ∩ [0, N] of ||B^n x - y(p)||_∞. Bilateral plans
/// assert the bound rho^{-3p}; unilateral plans assert non-increasing errors.
ConditionReport verify_fhc_visits(const WeightSeq& w, const LogSparseVec& x, const FhcVectorPlan& plan, Index N);

}  // namespace shiftlab
