#include "shiftlab/s6.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shiftlab/parallel.hpp"

namespace shiftlab {

namespace {

using i128 = __int128;

constexpr i128 kLimit = i128{1} << 100;

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

Index floor_mod(Index a, Index m) { return ((a % m) + m) % m; }

int v2(Index u) {
  int r = 0;
  while ((u & 1) == 0) {
    u >>= 1;
    ++r;
  }
  return r;
}

// Integer points of [(1 - cε) a^u, (1 + cε) a^u] given a^u = pow_num / pow_den.
Window scaled_interval(const Rational& eps, Index c, i128 pow_num, i128 pow_den) {
  const i128 den = i128{eps.den} * pow_den;
  const i128 lo = ceil_div((i128{eps.den} - c * i128{eps.num}) * pow_num, den);
  const i128 hi = floor_div((i128{eps.den} + c * i128{eps.num}) * pow_num, den);
  return {static_cast<Index>(lo), static_cast<Index>(hi)};
}

// Dip of depth D rising on [lo, tlo], flat on [tlo, thi], falling on [thi, hi].
struct Dip {
  Index lo, tlo, thi, hi;
  int depth;

  int value(Index k) const {
    if (k <= lo || k >= hi) return 0;
    if (k < tlo) return static_cast<int>(i128{depth} * (k - lo) / (tlo - lo));
    if (k <= thi) return depth;
    return static_cast<int>(i128{depth} * (hi - k) / (hi - thi));
  }
};

struct DipGroup {
  Window outer;
  std::vector<Dip> dips;
};

Index family_distance(Index b, Index k) {
  if (k < b) return b - k;
  const Index r = k % b;
  return std::min(r, b - r);
}

int family_value(Index b, int p, Index k) {
  return static_cast<int>(std::max<Index>(0, 2 * p - family_distance(b, k)));
}

class S6WeightModel : public WeightModel {
 public:
  S6WeightModel(const S6Config& cfg, Index dense_limit) : window_(cfg.window), b_(cfg.b) {
    for (const S6Interval& iu : cfg.intervals) {
      if (!iu.kept) continue;
      DipGroup g{iu.outer, {}};
      for (const S6Interval& iv : cfg.intervals) {
        if (iv.u >= iu.u || !iv.kept) continue;
        const int depth = 2 * std::max(iu.p, iv.p);
        const Index tlo = iu.inner.lo - iv.inner.hi;
        const Index thi = iu.inner.hi - iv.inner.lo;
        if (tlo - iu.outer.lo < depth || iu.outer.hi - thi < depth) {
          throw ConstructionError("interval dip (u=" + std::to_string(iu.u) + ", v=" + std::to_string(iv.u) +
                                  ") needs " + std::to_string(depth) + " unit steps but the margin is [" +
                                  std::to_string(tlo - iu.outer.lo) + ", " + std::to_string(iu.outer.hi - thi) +
                                  "]");
        }
        g.dips.push_back({iu.outer.lo, tlo, thi, iu.outer.hi, depth});
      }
      if (!g.dips.empty()) groups_.push_back(std::move(g));
    }
    const Index K = std::min(window_, dense_limit);
    cache_.resize(K + 1);
    parallel_for(0, K + 1, [&](Index k) { cache_[k] = depth_at(k); });
  }

  Domain domain() const override { return Domain::bilateral; }
  Window cum_window() const override { return {-window_, window_}; }

  double log2_cum(Index n) const override {
    if (n >= 0) return static_cast<double>(n);
    const Index k = -n;
    return k < cache_.size() ? cache_[k] : depth_at(k);
  }

  double min_log2_cum(Index lo, Index hi) const override {
    double m = std::numeric_limits<double>::infinity();
    if (hi >= 0) m = static_cast<double>(std::max<Index>(lo, 0));
    if (lo < 0) {
      const Index klo = std::max<Index>(1, -hi);
      const Index khi = -lo;
      const double neg = khi < cache_.size() ? cache_.segment(klo, khi - klo + 1).minCoeff() : range_bound(klo, khi);
      m = std::min(m, neg);
    }
    return m;
  }

  double min_log2_cum_lattice(Index offset, Index step, Index dlo, Index dhi, Index tmax) const override {
    double bound = min_log2_cum(dlo, dhi + tmax);
    if (step > 0 && dhi + tmax < 0) {
      // every point is -k with k a positive multiple of b_p
      for (std::size_t i = 0; i < b_.size(); ++i) {
        if (step % b_[i] == 0 && floor_mod(offset, b_[i]) == 0) bound = std::max(bound, 2.0 * double(i + 1));
      }
    }
    return bound;
  }

  std::pair<double, double> log2_weight_bounds() const override {
    double lo = 1.0, hi = 1.0;
    for (Index k = 1; k < cache_.size(); ++k) {
      const double l = cache_[k - 1] - cache_[k];
      lo = std::min(lo, l);
      hi = std::max(hi, l);
    }
    return {lo, hi};
  }

  std::string generator() const override { return "s6"; }

  Index dense_limit() const { return cache_.size() - 1; }
  const std::vector<DipGroup>& groups() const { return groups_; }

 private:
  const DipGroup* group_of(Index k) const {
    auto it = std::upper_bound(groups_.begin(), groups_.end(), k,
                               [](Index x, const DipGroup& g) { return x < g.outer.lo; });
    if (it == groups_.begin()) return nullptr;
    --it;
    return it->outer.contains(k) ? &*it : nullptr;
  }

  int depth_at(Index k) const {
    int d = 0;
    for (std::size_t i = 0; i < b_.size(); ++i) {
      const int p = static_cast<int>(i + 1);
      if (k <= b_[i] - 2 * p) break;
      d = std::max(d, family_value(b_[i], p, k));
    }
    if (const DipGroup* g = group_of(k)) {
      for (const Dip& dip : g->dips) d = std::max(d, dip.value(k));
    }
    return d;
  }

  // Sound lower bound on min D over [klo, khi] from unimodal profiles.
  double range_bound(Index klo, Index khi) const {
    int best = 0;
    for (std::size_t i = 0; i < b_.size(); ++i) {
      const int p = static_cast<int>(i + 1);
      const Index b = b_[i];
      const Index j = std::max<Index>(1, (klo + b / 2) / b);
      if (klo > b * j - 2 * p && khi < b * j + 2 * p) {
        best = std::max(best, std::min(family_value(b, p, klo), family_value(b, p, khi)));
      }
    }
    const DipGroup* g = group_of(klo);
    if (g && khi <= g->outer.hi) {
      for (const Dip& dip : g->dips) best = std::max(best, std::min(dip.value(klo), dip.value(khi)));
    }
    return best;
  }

  Index window_;
  std::vector<Index> b_;
  std::vector<DipGroup> groups_;
  Eigen::VectorXd cache_;
};

}  // namespace

S6Config make_s6_config(Rational a, Rational epsilon, int pmax, Index window) {
  if (a.den <= 0 || a.num <= a.den) throw ArgumentError("a must be a rational > 1");
  if (epsilon.den <= 0 || epsilon.num <= 0 || 4 * epsilon.num >= epsilon.den) {
    throw ArgumentError("epsilon must lie in (0, 1/4)");
  }
  if (pmax < 1) throw ArgumentError("pmax must be >= 1");
  if (window < 1) throw ArgumentError("window must be >= 1");
  S6Config cfg;
  cfg.a = a;
  cfg.epsilon = epsilon;
  cfg.pmax = pmax;
  cfg.window = window;
  for (int p = 1; p <= 60; ++p) {
    const Index b = (4 * Index{p} + 1) * (Index{1} << (p + 1));
    if (p > pmax && b - 2 * p > window) break;
    cfg.b.push_back(b);
  }
  i128 num = 1, den = 1;
  for (Index u = 1;; ++u) {
    num *= a.num;
    den *= a.den;
    if (num > kLimit || den > kLimit) throw ResourceError("a^u overflows before leaving the window", u);
    S6Interval iv;
    iv.u = u;
    iv.p = v2(u) + 1;
    iv.outer = scaled_interval(epsilon, 4, num, den);
    if (iv.outer.lo > window) break;
    iv.inner = scaled_interval(epsilon, 1, num, den);
    iv.mid = scaled_interval(epsilon, 2, num, den);
    iv.kept = iv.inner.lo - 2 * iv.p >= iv.mid.lo && iv.inner.hi + 2 * iv.p <= iv.mid.hi;
    cfg.intervals.push_back(iv);
  }
  return cfg;
}

std::vector<ConditionReport> check_s6_config(const S6Config& cfg) {
  const double a = cfg.a.value();
  const double e = cfg.epsilon.value();
  std::vector<ConditionReport> out;
  auto inequality = [&](std::string id, double value, bool ok, const char* rule) {
    ConditionReport r = ok ? ConditionReport::holds(id)
                           : ConditionReport::violated(id, {{"value", value}}, rule);
    r.quantities["value"] = value;
    r.quantities["rule"] = rule;
    out.push_back(r);
  };
  const double separation = 2 * e * a / (1 + 2 * e);
  const double ratio = (1 + 4 * e) / (1 - 4 * e);
  const double interval_density = 8 * e * a / ((1 + 4 * e) * (a - 1));
  double family_density = 0.0;
  for (int p = 1; p <= 62; ++p) {
    const double b = p <= cfg.families() ? double(cfg.b_at(p)) : (4.0 * p + 1) * std::ldexp(1.0, p + 1);
    family_density += (4.0 * p + 1) / b;
  }
  inequality("separation", separation, separation >= 1.0, "2εa/(1+2ε) >= 1");
  inequality("interval-ratio", ratio, ratio < a, "(1+4ε)/(1-4ε) < a");
  inequality("interval-density", interval_density, interval_density < 1.0, "8εa/((1+4ε)(a-1)) < 1");
  inequality("density-budget", family_density + interval_density, family_density + interval_density < 1.0,
             "Σ(4p+1)/b_p + 8εa/((1+4ε)(a-1)) < 1");

  ConditionReport alg = ConditionReport::holds("interval-algebra");
  for (const S6Interval& iu : cfg.intervals) {
    for (const S6Interval& iv : cfg.intervals) {
      if (iv.u >= iu.u) continue;
      const bool disjoint = iv.mid.hi < iu.mid.lo;
      const bool inside = iu.mid.lo - iv.mid.hi >= iu.outer.lo && iu.mid.hi - iv.mid.lo <= iu.outer.hi;
      if (!disjoint || !inside) {
        alg = ConditionReport::violated("interval-algebra", {{"u", iu.u}, {"v", iv.u}},
                                        disjoint ? "difference leaves I_u^{4ε}" : "I^{2ε} intervals overlap");
        break;
      }
    }
    if (alg.verdict == Verdict::violated) break;
  }
  nlohmann::ordered_json dropped = nlohmann::ordered_json::array();
  for (const S6Interval& iv : cfg.intervals) {
    if (!iv.kept) dropped.push_back(iv.u);
  }
  alg.quantities["intervals"] = cfg.intervals.size();
  alg.quantities["dropped_u"] = dropped;
  out.push_back(alg);
  return out;
}

std::vector<ProgressionSet> build_s6_sets(const S6Config& cfg) {
  std::vector<ProgressionSet> out;
  const Window w{0, cfg.window};
  for (int p = 1; p <= cfg.pmax; ++p) {
    const Index b = cfg.b_at(p);
    std::vector<Block> blocks;
    for (const S6Interval& iv : cfg.intervals) {
      if (iv.p != p || !iv.kept) continue;
      const Index lo = std::max<Index>(iv.inner.lo, 1);
      const Index hi = std::min(iv.inner.hi, cfg.window);
      const Index first = (lo + b - 1) / b * b;
      const Index last = hi / b * b;
      if (first <= last) blocks.push_back({first, last, b});
    }
    out.emplace_back(w, std::move(blocks));
  }
  return out;
}

WeightSeq build_s6_weight(const S6Config& cfg, Index dense_limit) {
  return WeightSeq(std::make_shared<S6WeightModel>(cfg, dense_limit));
}

ConditionReport check_s6_weight(const S6Config& cfg, const WeightSeq& w) {
  const auto* m = dynamic_cast<const S6WeightModel*>(&w.model());
  if (!m) throw ArgumentError("weight was not generated from an s6 configuration");
  const auto [lo, hi] = m->log2_weight_bounds();
  ConditionReport r = ConditionReport::holds("weight-bounds");
  if (lo < -1.0 || hi > 1.0) {
    Index at = 0;
    const WeightSeq& ws = w;
    for (Index k = 1; k <= m->dense_limit(); ++k) {
      const double l = ws.log2_weight(-k + 1);
      if (l < -1.0 || l > 1.0) {
        at = -k + 1;
        break;
      }
    }
    r = ConditionReport::violated("weight-bounds", {{"index", at}, {"log2_weight", w.log2_weight(at)}},
                                  "weight outside [1/2, 2]");
  }
  r.quantities["scanned"] = {-m->dense_limit(), cfg.window};
  r.quantities["log2_weight_min"] = lo;
  r.quantities["log2_weight_max"] = hi;
  Index dips = 0;
  for (const auto& g : m->groups()) dips += static_cast<Index>(g.dips.size());
  r.quantities["interval_dips"] = dips;
  r.quantities["families"] = cfg.families();
  return r;
}

IntSet residual_set(const S6Config& cfg, Index window) {
  if (window > cfg.window) throw WindowError("residual window exceeds the configuration window");
  return IntSet::from_predicate(Window{0, window}, [&](Index k) {
    if (k < 1) return false;
    for (std::size_t i = 0; i < cfg.b.size(); ++i) {
      const Index p = static_cast<Index>(i + 1);
      if (k < cfg.b[i] - 2 * p) break;
      if (family_distance(cfg.b[i], k) <= 2 * p) return false;
    }
    for (const S6Interval& iv : cfg.intervals) {
      if (iv.outer.contains(k)) return false;
    }
    return true;
  });
}

}  // namespace shiftlab
