#include "shiftlab/diffset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shiftlab/parallel.hpp"

namespace shiftlab {

IntSet correlation_set(const IntSet& a, Index k) {
  if (k > a.window().size() || -k > a.window().size()) {
    throw WindowError("shift " + std::to_string(k) + " exceeds the span of " + to_string(a.window()));
  }
  return a & a.shifted(k);
}

CorrelationTable::CorrelationTable(const IntSet& a, Index max_shift, const DiffSetOptions& opts)
    : max_shift_(max_shift), checkpoints_(opts.checkpoints) {
  if (max_shift < 0) throw ArgumentError("shift range must be nonnegative");
  if (a.empty()) throw DegenerateInputError("set is empty; the return threshold (1-eps)*delta^2 is vacuous");
  const Index usable = a.window().max_prefix() - max_shift;
  if (usable < 1) {
    throw WindowError("window " + to_string(a.window()) + " too small for shifts up to " + std::to_string(max_shift));
  }
  if (checkpoints_.empty()) checkpoints_ = linear_checkpoints(usable, 16);
  if (checkpoints_.back() > usable) {
    throw WindowError("checkpoint " + std::to_string(checkpoints_.back()) + " exceeds clipping-free prefix " +
                      std::to_string(usable));
  }
  delta_ = opts.delta ? *opts.delta : density_profile(a, checkpoints_).upper_est;
  if (!(delta_ > 0.0)) throw DegenerateInputError("set has zero windowed density");
  table_.assign(static_cast<std::size_t>(2 * max_shift + 1), 0.0);
  parallel_for(-max_shift, max_shift + 1, [&](Index k) {
    table_[static_cast<std::size_t>(k + max_shift)] = density_profile(correlation_set(a, k), checkpoints_).upper_est;
  });
}

double CorrelationTable::delta_k(Index k) const {
  if (k < -max_shift_ || k > max_shift_) {
    throw ArgumentError("shift " + std::to_string(k) + " outside the scanned range ±" + std::to_string(max_shift_));
  }
  return table_[static_cast<std::size_t>(k + max_shift_)];
}

namespace {

double separation_bound(double delta, double epsilon) { return (1.0 - delta * (1.0 - epsilon)) / (delta * epsilon); }

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ArgumentError("epsilon must lie in (0,1)");
}

Index max_abs(const Window& w) { return std::max(-w.lo, w.hi); }

}  // namespace

GreedyResult greedy_separated_set(const CorrelationTable& table, double epsilon, Window candidate_range) {
  check_epsilon(epsilon);
  if (2 * max_abs(candidate_range) > table.max_shift()) {
    throw ArgumentError("candidate range " + to_string(candidate_range) + " needs shifts up to " +
                        std::to_string(2 * max_abs(candidate_range)));
  }
  const double delta = table.delta();
  const double thr = (1.0 - epsilon) * delta * delta;
  GreedyResult out;
  auto blocked = [&](Index k) {
    return std::any_of(out.R.begin(), out.R.end(), [&](Index l) { return table.delta_k(k - l) > thr; });
  };
  auto consider = [&](Index k) {
    if (candidate_range.contains(k) && !blocked(k)) out.R.push_back(k);
  };
  consider(0);
  for (Index m = 1; m <= max_abs(candidate_range); ++m) {
    consider(m);
    consider(-m);
  }
  out.bound = separation_bound(delta, epsilon);
  out.bound_holds = static_cast<double>(out.R.size()) <= out.bound * (1.0 + 1e-12);
  for (Index k = candidate_range.lo; k <= candidate_range.hi && out.covers; ++k) {
    out.covers = blocked(k);
  }
  return out;
}

GreedyResult greedy_separated_set(const IntSet& a, double epsilon, Window candidate_range, const DiffSetOptions& opts) {
  CorrelationTable table(a, 2 * max_abs(candidate_range), opts);
  return greedy_separated_set(table, epsilon, candidate_range);
}

DiffSetReport syndetic_return_set(const IntSet& a, double epsilon, Window k_range, const DiffSetOptions& opts) {
  check_epsilon(epsilon);
  const Index K = max_abs(k_range);
  CorrelationTable table(a, K, opts);
  DiffSetReport rep;
  rep.delta = table.delta();
  rep.epsilon = epsilon;
  rep.threshold = (1.0 - epsilon) * rep.delta * rep.delta;
  rep.checkpoints = table.checkpoints();
  rep.k_range = k_range;
  IntSetBuilder F(k_range);
  for (Index k = k_range.lo; k <= k_range.hi; ++k) {
    const double dk = table.delta_k(k);
    rep.delta_k.emplace_back(k, dk);
    if (dk > rep.threshold) F.insert(k);
  }
  rep.F = std::move(F).build();
  rep.max_gap = max_gap(rep.F, k_range);

  const Window half{-std::min(-k_range.lo, K / 2), std::min(k_range.hi, K / 2)};
  GreedyResult g = greedy_separated_set(table, epsilon, half);
  rep.R = g.R;
  rep.bound = g.bound;
  rep.bound_holds = g.bound_holds;
  rep.covered_range = half;
  // F + R ⊇ half, evaluated on the materialized F.
  for (Index k = half.lo; k <= half.hi && rep.covers; ++k) {
    rep.covers = std::any_of(rep.R.begin(), rep.R.end(), [&](Index l) { return rep.F.contains(k - l); });
  }
  return rep;
}

ReturnAverage weighted_return_average(const IntSet& a, const AlphaProfile& alpha, std::span<const Index> checkpoints) {
  if (checkpoints.empty()) throw ArgumentError("return average needs at least one checkpoint");
  for (std::size_t i = 1; i < checkpoints.size(); ++i) {
    if (checkpoints[i] <= checkpoints[i - 1]) throw ArgumentError("checkpoints must be strictly increasing");
  }
  if (std::any_of(alpha.values.begin(), alpha.values.end(), [](double v) { return !(v >= 0.0); })) {
    throw PreconditionError("alpha must be nonnegative");
  }
  ReturnAverage out;
  // One-sided ratio condition inside the profile range.
  double c_fwd = std::numeric_limits<double>::infinity();
  double c_bwd = std::numeric_limits<double>::infinity();
  for (Index n = alpha.lo + 1; n <= alpha.hi(); ++n) {
    const double cur = alpha(n), prev = alpha(n - 1);
    if (prev > 0.0) c_fwd = std::min(c_fwd, cur / prev);
    if (cur > 0.0) c_bwd = std::min(c_bwd, prev / cur);
  }
  if (c_fwd > 0.0 && (c_fwd >= c_bwd || !(c_bwd > 0.0))) {
    out.forward = true;
    out.ratio_constant = std::isinf(c_fwd) ? 1.0 : c_fwd;
  } else if (c_bwd > 0.0) {
    out.forward = false;
    out.ratio_constant = std::isinf(c_bwd) ? 1.0 : c_bwd;
  } else {
    throw PreconditionError("alpha satisfies neither alpha_n >= C alpha_{n-1} nor alpha_{n-1} >= C alpha_n");
  }

  const Index H = checkpoints.back();
  if (H > a.window().max_prefix()) {
    throw WindowError("checkpoint " + std::to_string(H) + " outside " + to_string(a.window()));
  }
  std::vector<Index> members;
  a.for_each([&](Index x) {
    if (x >= -H && x <= H) members.push_back(x);
  });
  out.beta.reserve(members.size());
  for (Index n : members) {
    double s = 0.0;
    for (Index m : members) s += alpha(m - n);
    out.beta.emplace_back(n, s);
  }

  // Grow [-n, n] one endpoint at a time; S is the truncated double sum.
  std::vector<Index> cur;
  double S = 0.0;
  auto add = [&](Index x) {
    if (!a.contains(x)) return;
    double s = alpha(0);
    for (Index m : cur) s += alpha(m - x) + alpha(x - m);
    S += s;
    cur.push_back(x);
  };
  std::size_t next = 0;
  add(0);
  for (Index n = 0; n <= H; ++n) {
    if (n > 0) {
      add(-n);
      add(n);
    }
    while (next < checkpoints.size() && checkpoints[next] == n) {
      out.averages.emplace_back(n, S / static_cast<double>(2 * n + 1));
      ++next;
    }
  }
  const double first = out.averages.front().second;
  const double last = out.averages.back().second;
  out.growth = first > 0.0 ? last / first : (last > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
  return out;
}

}  // namespace shiftlab
