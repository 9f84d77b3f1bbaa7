#pragma once

#include <cmath>
#include <vector>

#include "shiftlab/intset.hpp"
#include "shiftlab/parallel.hpp"
#include "shiftlab/sparse_vector.hpp"
#include "shiftlab/weights.hpp"

namespace shiftlab {

/// B_w^n x in closed form: (B^n x)_s = 2^{C(s+n) - C(s)} x_{s+n}.
/// Unilateral: coordinates pushed below 0 vanish (B e_0 = 0).
/// Bilateral: a coordinate leaving the window raises TruncationError.
template <class Scalar>
SparseVector<Scalar> apply_power(const WeightSeq& w, const SparseVector<Scalar>& x, Index n) {
  if (n < 0) throw ArgumentError("shift power must be nonnegative");
  if (n == 0) return x;
  const Window c = w.cum_window();
  std::vector<std::pair<Index, Scalar>> out;
  out.reserve(x.size());
  for (const auto& [k, v] : x.entries()) {
    if (k > c.hi) throw WindowError("coordinate " + std::to_string(k) + " outside weight window " + to_string(c));
    const Index s = k - n;
    if (s < c.lo) {
      if (!w.bilateral()) continue;
      throw TruncationError("coordinate " + std::to_string(k) + " leaves the window after " + std::to_string(n) +
                                " steps",
                            k);
    }
    Scalar y = ScalarTraits<Scalar>::scale_log2(v, w.log2_cum(k) - w.log2_cum(s));
    if (!ScalarTraits<Scalar>::is_zero(y)) out.emplace_back(s, y);
  }
  return SparseVector<Scalar>::from_entries(std::move(out), x.space());
}

/// One step of B_w, entry by entry (reference implementation).
template <class Scalar>
SparseVector<Scalar> apply_once(const WeightSeq& w, const SparseVector<Scalar>& x) {
  std::vector<std::pair<Index, Scalar>> out;
  for (const auto& [k, v] : x.entries()) {
    if (!w.bilateral() && k == 0) continue;
    if (k - 1 < w.cum_window().lo) {
      throw TruncationError("coordinate " + std::to_string(k) + " leaves the window", k);
    }
    out.emplace_back(k - 1, Scalar(w.weight(k)) * v);
  }
  return SparseVector<Scalar>::from_entries(std::move(out), x.space());
}

/// {0 <= n <= N : ||B^n x - target|| < tol}, evaluated in parallel chunks.
template <class Scalar>
IntSet visit_set(const WeightSeq& w, const SparseVector<Scalar>& x, const SparseVector<Scalar>& target, double tol,
                 Index N) {
  if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");
  const double ltol = std::log2(tol);
  const Index chunks = std::max<Index>(1, std::min<Index>(N + 1, 64));
  std::vector<IntSetBuilder> parts(static_cast<std::size_t>(chunks), IntSetBuilder(Window{0, N}));
  parallel_for(0, chunks, [&](Index c) {
    const Index lo = (N + 1) * c / chunks;
    const Index hi = (N + 1) * (c + 1) / chunks;
    auto& part = parts[static_cast<std::size_t>(c)];
    for (Index n = lo; n < hi; ++n) {
      if (log2_norm(apply_power(w, x, n) - target) < ltol) part.insert(n);
    }
  });
  for (std::size_t i = 1; i < parts.size(); ++i) parts[0].merge(parts[i]);
  return std::move(parts[0]).build();
}

}  // namespace shiftlab
