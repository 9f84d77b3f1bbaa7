#include "shiftlab/criteria.hpp"

#include <cmath>
#include <limits>

#include "shiftlab/density.hpp"
#include "shiftlab/parallel.hpp"

namespace shiftlab {

namespace {

struct SeriesRun {
  nlohmann::ordered_json table = nlohmann::ordered_json::array();
  double sum = 0.0;
  double last_increment = 0.0;
  bool growing = true;
  Index reached = 0;
};

// Σ_{n=1..N} 2^{-p·f(n)} with dyadic checkpoints.
template <class F>
SeriesRun dyadic_sums(Index N, double p, F&& f) {
  SeriesRun run;
  double prev_increment = -1.0;
  Index next = 1;
  double increment = 0.0;
  for (Index n = 1; n <= N; ++n) {
    const double term = std::exp2(-p * f(n));
    run.sum += term;
    increment += term;
    if (n == next || n == N) {
      run.table.push_back({{"n", n}, {"partial_sum", run.sum}, {"increment", increment}});
      if (prev_increment >= 0.0 && increment < prev_increment) run.growing = false;
      prev_increment = increment;
      run.last_increment = increment;
      increment = 0.0;
      next *= 2;
    }
    run.reached = n;
  }
  return run;
}

Verdict series_verdict(const SeriesRun& run, const SeriesOptions& opts) {
  if (run.last_increment < opts.hold_increment) return Verdict::holds;
  if (run.sum > opts.divergence_threshold && run.growing) return Verdict::violated;
  return Verdict::inconclusive;
}

}  // namespace

ConditionReport lp_series_test(const WeightSeq& w, double p, Index N, const SeriesOptions& opts) {
  if (!(p >= 1.0)) throw ArgumentError("series exponent must be >= 1");
  if (N < 1) throw ArgumentError("series length must be >= 1");
  const Window c = w.cum_window();
  const Index Npos = std::min(N, c.hi);
  std::vector<std::pair<std::string, SeriesRun>> sides;
  sides.emplace_back("positive", dyadic_sums(Npos, p, [&](Index n) { return w.log2_cum(n); }));
  if (w.bilateral()) {
    const Index Nneg = std::min(N, -c.lo);
    sides.emplace_back("negative", dyadic_sums(Nneg, p, [&](Index n) { return w.log2_cum(-n); }));
  }
  std::vector<ConditionReport> parts;
  for (auto& [name, run] : sides) {
    const Verdict v = series_verdict(run, opts);
    ConditionReport r;
    if (v == Verdict::violated) {
      r = ConditionReport::violated(name, {{"n", run.reached}, {"partial_sum", run.sum}},
                                    "partial sum above the divergence threshold with growing increments");
    } else if (v == Verdict::holds) {
      r = ConditionReport::holds(name);
    } else {
      r = ConditionReport::inconclusive(name, "neither threshold reached");
    }
    r.quantities["N"] = run.reached;
    r.quantities["partial_sum"] = run.sum;
    r.quantities["last_increment"] = run.last_increment;
    r.quantities["checkpoints"] = std::move(run.table);
    parts.push_back(std::move(r));
  }
  ConditionReport out = merge("lp-series", parts);
  out.quantities["p"] = p;
  out.quantities["hold_increment"] = opts.hold_increment;
  out.quantities["divergence_threshold"] = opts.divergence_threshold;
  return out;
}

ConditionReport necessary_condition_witness(const WeightSeq& w, const IntSet& A, double p) {
  if (!(p >= 1.0)) throw ArgumentError("exponent must be >= 1");
  const Window c = w.cum_window();
  const std::vector<Index> members = A.members();
  const auto size = static_cast<Index>(members.size());
  std::vector<double> fwd(members.size(), 0.0), bwd(members.size(), 0.0);
  std::vector<Index> fwd_end(members.size(), 0), bwd_end(members.size(), 0);
  parallel_for(0, size, [&](Index i) {
    const Index n = members[static_cast<std::size_t>(i)];
    double s = 0.0;
    for (Index j = i + 1; j < size; ++j) {
      const Index d = members[static_cast<std::size_t>(j)] - n;
      if (d > c.hi) break;
      s += std::exp2(-p * w.log2_cum(d));
      fwd_end[static_cast<std::size_t>(i)] = members[static_cast<std::size_t>(j)];
      if (s > 1.0) break;
    }
    fwd[static_cast<std::size_t>(i)] = s;
    if (!w.bilateral()) return;
    s = 0.0;
    for (Index j = i - 1; j >= 0; --j) {
      const Index d = members[static_cast<std::size_t>(j)] - n;
      if (d < c.lo) break;
      s += std::exp2(-p * w.log2_cum(d));
      bwd_end[static_cast<std::size_t>(i)] = members[static_cast<std::size_t>(j)];
      if (s > 1.0) break;
    }
    bwd[static_cast<std::size_t>(i)] = s;
  });
  double max_fwd = 0.0, max_bwd = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    max_fwd = std::max(max_fwd, fwd[i]);
    max_bwd = std::max(max_bwd, bwd[i]);
    if (fwd[i] > 1.0 || bwd[i] > 1.0) {
      const bool forward = fwd[i] > 1.0;
      ConditionReport r = ConditionReport::violated(
          "necessary-condition",
          {{"n", members[i]},
           {"side", forward ? "forward" : "backward"},
           {"m_end", forward ? fwd_end[i] : bwd_end[i]},
           {"sum", forward ? fwd[i] : bwd[i]}},
          "constraint sum over A between n and m_end exceeds 1");
      r.quantities["p"] = p;
      return r;
    }
  }
  ConditionReport r = ConditionReport::holds("necessary-condition");
  r.quantities["p"] = p;
  r.quantities["members"] = size;
  r.quantities["max_forward_sum"] = max_fwd;
  if (w.bilateral()) r.quantities["max_backward_sum"] = max_bwd;
  return r;
}

double log2_norm_after(const WeightSeq& w, const SparseVec& x, Index n) {
  const Window c = w.cum_window();
  const Space& sp = x.space();
  double acc = -std::numeric_limits<double>::infinity();
  for (const auto& [k, v] : x.entries()) {
    const Index s = k - n;
    if (s < c.lo) {
      if (!w.bilateral()) continue;
      throw TruncationError("coordinate " + std::to_string(k) + " leaves the window after " + std::to_string(n) +
                                " steps",
                            k);
    }
    const double l = std::log2(std::abs(v)) + w.log2_cum(k) - w.log2_cum(s);
    if (sp.kind == Space::Kind::c0) {
      acc = std::max(acc, l);
    } else {
      const double lp = sp.p * l;
      const double hi = std::max(acc, lp), lo = std::min(acc, lp);
      acc = std::isinf(lo) ? hi : hi + std::log2(1.0 + std::exp2(lo - hi));
    }
  }
  if (sp.kind == Space::Kind::lp && !std::isinf(acc)) acc /= sp.p;
  return acc;
}

ConditionReport distributional_unbounded_scan(const WeightSeq& w, const SparseVec& x,
                                              std::span<const double> thresholds, Index N, Index checkpoints,
                                              double near) {
  if (N < 1) throw ArgumentError("scan length must be >= 1");
  for (double t : thresholds) {
    if (!(t > 0.0)) throw ArgumentError("thresholds must be positive");
  }
  std::vector<double> norms(static_cast<std::size_t>(N + 1));
  parallel_for(0, N + 1, [&](Index n) { norms[static_cast<std::size_t>(n)] = log2_norm_after(w, x, n); });
  const auto cps = linear_checkpoints(N, checkpoints);
  std::vector<ConditionReport> parts;
  for (double t : thresholds) {
    const double lt = std::log2(t);
    const IntSet big = IntSet::from_predicate(Window{0, N}, [&](Index n) {
      return norms[static_cast<std::size_t>(n)] > lt;
    });
    const DensityEstimate est = density_profile(big, cps);
    ConditionReport r = est.upper_est >= 1.0 - near
                            ? ConditionReport::holds("threshold")
                            : ConditionReport::inconclusive("threshold", "upper density away from 1");
    r.quantities["threshold"] = t;
    r.quantities["count"] = big.size();
    r.quantities["lower_est"] = est.lower_est;
    r.quantities["upper_est"] = est.upper_est;
    parts.push_back(std::move(r));
  }
  ConditionReport out = merge("distributional-unbounded", parts);
  out.quantities["N"] = N;
  out.quantities["near"] = near;
  return out;
}

}  // namespace shiftlab
