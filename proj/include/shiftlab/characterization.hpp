#pragma once

#include <vector>

#include "shiftlab/progression_set.hpp"
#include "shiftlab/report.hpp"
#include "shiftlab/weights.hpp"

namespace shiftlab {

/// Sets E_p with growth targets M(p) for the c0 frequent hypercyclicity conditions.
struct FhcFamily {
  std::vector<ProgressionSet> E;  // E[p-1]
  std::vector<double> log2_M;     // log2 M(p), same length as E
  double rho = 2.0;               // rho^-1 <= w_k <= rho

  int pmax() const { return static_cast<int>(E.size()); }
  const ProgressionSet& E_at(int p) const { return E[static_cast<std::size_t>(p - 1)]; }
  double log2_M_at(int p) const { return log2_M[static_cast<std::size_t>(p - 1)]; }
};

/// log2 M(p) = p * exponent (M(p) = 2^{p/2}: exponent 0.5; 2^p: 1).
std::vector<double> geometric_targets(int pmax, double exponent);

struct PairOutcome {
  Verdict verdict = Verdict::holds;
  Index n = 0;  // n in X
  Index m = 0;  // m in Y
  Index t = 0;
  double value = 0.0;  // C at the witness
};

/// For all n in X, m in Y, m != n:
///   m > n: C(m - n + t) >= target for t in [0, tmax];
///   m < n (only if `negative`): C(m - n) >= target.
/// Range/lattice lower bounds decide first, then budgeted enumeration.
PairOutcome check_pair_products(const WeightSeq& w, const ProgressionSet& X, const ProgressionSet& Y, Index tmax,
                                double target, bool negative, Index budget = Index{1} << 26);

struct VerifyOptions {
  bool lower_density = true;  // (a) with lower density (FHC) or upper (U-FHC)
  Index checkpoints = 16;
  Index budget = Index{1} << 26;
};

/// Conditions (a)-(d) for bilateral shifts, ids "a".."d".
std::vector<ConditionReport> verify_bilateral_conditions(const WeightSeq& w, const FhcFamily& fam, int pmax,
                                                         const VerifyOptions& opts = {});

/// Conditions (a)-(d) for unilateral shifts with one-sided margins.
std::vector<ConditionReport> verify_unilateral_conditions(const WeightSeq& w, const FhcFamily& fam, int pmax,
                                                          const VerifyOptions& opts = {});

}  // namespace shiftlab
