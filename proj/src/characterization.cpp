#include "shiftlab/characterization.hpp"

#include <cmath>
#include <numeric>

#include "shiftlab/density.hpp"

namespace shiftlab {

namespace {

constexpr double kSlack = 1e-9;

Index lattice_step(const Block& X, const Block& Y) {
  const Index sx = X.count() > 1 ? X.step : 0;
  const Index sy = Y.count() > 1 ? Y.step : 0;
  return std::gcd(sx, sy);
}

Index floor_mod(Index a, Index m) { return ((a % m) + m) % m; }

// Restrict [lo, hi] to values ≡ offset (mod g); false if none remain.
bool snap(Index offset, Index g, Index& lo, Index& hi) {
  if (g == 0) {
    if (offset < lo || offset > hi) return false;
    lo = hi = offset;
    return true;
  }
  lo += floor_mod(offset - lo, g);
  hi -= floor_mod(hi - offset, g);
  return lo <= hi;
}

PairOutcome enumerate_block_pair(const WeightSeq& w, const Block& X, const Block& Y, Index tmax, double target,
                                 bool negative) {
  for (Index n = X.first; n <= X.last; n += X.step) {
    for (Index m = Y.first; m <= Y.last; m += Y.step) {
      const Index d = m - n;
      if (d > 0) {
        for (Index t = 0; t <= tmax; ++t) {
          const double c = w.log2_cum(d + t);
          if (c < target - kSlack) return {Verdict::violated, n, m, t, c};
        }
      } else if (d < 0 && negative) {
        const double c = w.log2_cum(d);
        if (c < target - kSlack) return {Verdict::violated, n, m, 0, c};
      }
      if (Y.count() == 1) break;
    }
    if (X.count() == 1) break;
  }
  return {};
}

PairOutcome check_block_pair(const WeightSeq& w, const Block& X, const Block& Y, Index tmax, double target,
                             bool negative, Index budget) {
  const Window cw = w.cum_window();
  const Index g = lattice_step(X, Y);
  const Index offset = Y.first - X.first;
  bool decided = true;

  Index lo = std::max<Index>(1, Y.first - X.last), hi = Y.last - X.first;
  if (lo <= hi && snap(offset, g, lo, hi)) {
    if (hi + tmax > cw.hi) return {Verdict::inconclusive};
    decided = w.model().min_log2_cum_lattice(offset, g, lo, hi, tmax) >= target - kSlack;
  }
  if (negative && decided) {
    lo = Y.first - X.last;
    hi = std::min<Index>(-1, Y.last - X.first);
    if (lo <= hi && snap(offset, g, lo, hi)) {
      if (lo < cw.lo) return {Verdict::inconclusive};
      decided = w.model().min_log2_cum_lattice(offset, g, lo, hi, 0) >= target - kSlack;
    }
  }
  if (decided) return {};
  const double work = double(X.count()) * double(Y.count()) * double(tmax + 1);
  if (work > double(budget)) return {Verdict::inconclusive};
  return enumerate_block_pair(w, X, Y, tmax, target, negative);
}

nlohmann::ordered_json pair_witness(int p, int q, const PairOutcome& o) {
  return {{"p", p}, {"q", q}, {"n", o.n}, {"m", o.m}, {"t", o.t}, {"log2_product", o.value}};
}

ConditionReport check_density(const FhcFamily& fam, int pmax, const VerifyOptions& opts) {
  std::vector<ConditionReport> parts;
  for (int p = 1; p <= pmax; ++p) {
    const std::string id = "a[p=" + std::to_string(p) + "]";
    const ProgressionSet& E = fam.E_at(p);
    if (E.empty()) {
      parts.push_back(ConditionReport::inconclusive(id, "E_p has no member in the window"));
      continue;
    }
    const Index first = std::max<Index>(1, E.front());
    const Index last = E.window().max_prefix();
    const auto cps = geometric_checkpoints(first, std::max(first, last), opts.checkpoints);
    const DensityEstimate est = density_profile(E, cps);
    const double v = opts.lower_density ? est.lower_est : est.upper_est;
    ConditionReport r = v > 0.0 ? ConditionReport::holds(id)
                                : ConditionReport::inconclusive(id, "zero density on the last checkpoint quartile");
    r.quantities["lower_est"] = est.lower_est;
    r.quantities["upper_est"] = est.upper_est;
    r.quantities["members"] = E.size();
    parts.push_back(r);
  }
  ConditionReport out = merge("a", parts);
  out.quantities["density"] = opts.lower_density ? "lower" : "upper";
  return out;
}

ConditionReport check_disjoint(const FhcFamily& fam, int pmax, bool bilateral, const VerifyOptions& opts) {
  std::vector<ConditionReport> parts;
  for (int p = 1; p <= pmax; ++p) {
    for (int q = p + 1; q <= pmax; ++q) {
      const std::string id = "b[p=" + std::to_string(p) + ",q=" + std::to_string(q) + "]";
      // (E_p + S_p) ∩ (E_q + S_q) ≠ ∅  <=>  m - n ∈ S_p - S_q
      const Index dlo = bilateral ? -(p + q) : -q;
      const Index dhi = p + q - (bilateral ? 0 : q);
      HitResult h = difference_hits(fam.E_at(p), fam.E_at(q), dlo, dhi, opts.budget);
      if (h.kind == HitResult::Kind::hit) {
        parts.push_back(ConditionReport::violated(id, {{"p", p}, {"q", q}, {"n", h.x}, {"m", h.y}},
                                                  "margins intersect"));
      } else if (h.kind == HitResult::Kind::unknown) {
        parts.push_back(ConditionReport::inconclusive(id, "difference search over budget"));
      } else {
        parts.push_back(ConditionReport::holds(id));
      }
    }
  }
  return merge("b", parts);
}

ConditionReport check_growth(const WeightSeq& w, const FhcFamily& fam, int pmax, Index margin_scale,
                             const VerifyOptions& opts) {
  std::vector<ConditionReport> parts;
  for (int p = 1; p <= pmax; ++p) {
    const std::string id = "c[p=" + std::to_string(p) + "]";
    const ProgressionSet& E = fam.E_at(p);
    if (E.size() < 2) {
      parts.push_back(ConditionReport::inconclusive(id, "fewer than two members; no growth evidence"));
      continue;
    }
    const Index margin = margin_scale * p;
    Index lo, hi;
    if (E.blocks().size() >= 2) {
      lo = E.blocks().back().first;
      hi = E.blocks().back().last;
    } else {
      lo = E.nth(E.size() / 2);
      hi = E.back();
    }
    const Index n0 = E.front();
    const double c0 = w.log2_cum(n0);
    if (hi + margin > w.cum_window().hi) {
      parts.push_back(ConditionReport::inconclusive(id, "tail margin outside the weight window"));
      continue;
    }
    const double lb = w.model().min_log2_cum(lo, hi + margin);
    ConditionReport r = ConditionReport::holds(id);
    if (!(lb > c0)) {
      // bound too weak: look for a concrete tail point
      const Index tail = E.count(lo, hi);
      if (double(tail) * double(margin + 1) > double(opts.budget)) {
        r = ConditionReport::inconclusive(id, "tail bound does not exceed the head value");
      } else {
        for (auto n = E.next_member(lo); n && *n <= hi && r.verdict == Verdict::holds; n = E.next_member(*n + 1)) {
          for (Index s = 0; s <= margin; ++s) {
            const double c = w.log2_cum(*n + s);
            if (c <= c0) {
              r = ConditionReport::violated(id, {{"p", p}, {"n", *n + s}, {"log2_product", c}, {"first", n0},
                                                 {"log2_product_first", c0}},
                                            "product along the tail does not exceed the first member's");
              break;
            }
          }
        }
      }
    }
    r.quantities["tail"] = {lo, hi};
    r.quantities["tail_lower_bound"] = lb;
    r.quantities["log2_product_first"] = c0;
    parts.push_back(r);
  }
  return merge("c", parts);
}

ConditionReport check_pairs(const WeightSeq& w, const FhcFamily& fam, int pmax, bool bilateral,
                            const VerifyOptions& opts) {
  std::vector<ConditionReport> parts;
  for (int p = 1; p <= pmax; ++p) {
    for (int q = 1; q <= pmax; ++q) {
      const std::string id = "d[p=" + std::to_string(p) + ",q=" + std::to_string(q) + "]";
      const double target = fam.log2_M_at(p) + fam.log2_M_at(q);
      PairOutcome o = check_pair_products(w, fam.E_at(p), fam.E_at(q), bilateral ? 0 : q, target, bilateral,
                                          opts.budget);
      ConditionReport r = o.verdict == Verdict::violated
                              ? ConditionReport::violated(id, pair_witness(p, q, o), "product below M(p)M(q)")
                          : o.verdict == Verdict::inconclusive
                              ? ConditionReport::inconclusive(id, "block pair not decided within budget")
                              : ConditionReport::holds(id);
      r.quantities["log2_target"] = target;
      parts.push_back(r);
    }
  }
  return merge("d", parts);
}

void check_family(const FhcFamily& fam, int pmax) {
  if (pmax < 1 || pmax > fam.pmax()) {
    throw ArgumentError("pmax " + std::to_string(pmax) + " outside the family's 1.." + std::to_string(fam.pmax()));
  }
  if (fam.log2_M.size() != fam.E.size()) throw ArgumentError("family needs one M(p) per E_p");
}

}  // namespace

std::vector<double> geometric_targets(int pmax, double exponent) {
  std::vector<double> out;
  for (int p = 1; p <= pmax; ++p) out.push_back(exponent * p);
  return out;
}

PairOutcome check_pair_products(const WeightSeq& w, const ProgressionSet& X, const ProgressionSet& Y, Index tmax,
                                double target, bool negative, Index budget) {
  PairOutcome acc;
  for (const Block& bx : X.blocks()) {
    for (const Block& by : Y.blocks()) {
      PairOutcome o = check_block_pair(w, bx, by, tmax, target, negative, budget);
      if (o.verdict == Verdict::violated) return o;
      if (o.verdict == Verdict::inconclusive) acc = o;
    }
  }
  return acc;
}

std::vector<ConditionReport> verify_bilateral_conditions(const WeightSeq& w, const FhcFamily& fam, int pmax,
                                                         const VerifyOptions& opts) {
  if (!w.bilateral()) throw PreconditionError("unilateral weight: use the unilateral verifier");
  check_family(fam, pmax);
  const auto [lo, hi] = w.model().log2_weight_bounds();
  if (!std::isfinite(lo)) throw PreconditionError("weight not bounded below: use the unilateral verifier");
  std::vector<ConditionReport> out{check_density(fam, pmax, opts), check_disjoint(fam, pmax, true, opts),
                                   check_growth(w, fam, pmax, 0, opts), check_pairs(w, fam, pmax, true, opts)};
  out.front().quantities["log2_weight_bounds"] = {lo, hi};
  return out;
}

std::vector<ConditionReport> verify_unilateral_conditions(const WeightSeq& w, const FhcFamily& fam, int pmax,
                                                          const VerifyOptions& opts) {
  if (w.bilateral()) throw PreconditionError("bilateral weight: use the bilateral verifier");
  check_family(fam, pmax);
  return {check_density(fam, pmax, opts), check_disjoint(fam, pmax, false, opts), check_growth(w, fam, pmax, 1, opts),
          check_pairs(w, fam, pmax, false, opts)};
}

}  // namespace shiftlab
