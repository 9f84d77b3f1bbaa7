#include "shiftlab/s5.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shiftlab/characterization.hpp"

namespace shiftlab {

namespace {

using Wide = __int128;

struct Overflow {};

Index checked(Wide v) {
  if (v > std::numeric_limits<Index>::max() / 4) throw Overflow{};
  return static_cast<Index>(v);
}

Index count_multiples(Index M, Index N, Index b) {
  const Index lo = std::max(M, b);
  if (N < lo) return 0;
  return N / b - (lo - 1) / b;
}

// Smallest N >= M with #([M, N] ∩ bN) * 2b >= N.
Index minimal_N(Index M, Index b) {
  const Index c0 = (std::max(M, b) - 1) / b;
  const Index k = std::max({(M + b - 1) / b, 2 * c0, Index{1}});
  Index N = checked(Wide(k) * b);
  while (Wide(count_multiples(M, N, b)) * 2 * b < N) N = checked(Wide(N) + b);
  return N;
}

Index next_a(const std::vector<Index>& b, const std::vector<std::vector<Block>>& blocks, int r, double slack) {
  Wide mx = 0;
  for (std::size_t p = 0; p < blocks.size(); ++p)
    for (const Block& bl : blocks[p]) mx = std::max<Wide>(mx, Wide(bl.last) + Wide(p + 1));
  Wide a = std::max<Wide>(Wide(b[static_cast<std::size_t>(r - 1)]) + 2 * r + 1, mx + (r + 2));
  if (slack > 1.0) {
    const long double scaled = std::ceil(static_cast<long double>(a) * slack);
    if (scaled > 1e18L) throw Overflow{};
    a = static_cast<Wide>(scaled);
  }
  return checked(a);
}

Index next_b(Index a, int r1) {
  return checked(std::max<Wide>(Wide(r1) * a, Wide(r1) * r1 * (2 * r1 + 1) + 1));
}

}  // namespace

S5State build_s5(int depth, double slack) {
  if (depth < 1) throw ArgumentError("depth must be at least 1");
  if (!(slack >= 1.0)) throw ArgumentError("slack must be >= 1");
  S5State st;
  st.slack = slack;
  st.a = {1};
  st.b = {4};
  std::vector<std::vector<Block>> blocks{{{8, 8, 4}}};
  st.steps.push_back({1, 1, 8, 8});
  int r = 1;
  try {
    for (; r < depth; ++r) {
      const Index a = next_a(st.b, blocks, r, slack);
      const Index b = next_b(a, r + 1);
      Index cur = 0;
      for (const auto& fam : blocks)
        for (const Block& bl : fam) cur = std::max(cur, bl.last);
      st.a.push_back(a);
      st.b.push_back(b);
      blocks.emplace_back();
      for (int p = 1; p <= r + 1; ++p) {
        const Index bp = st.b[static_cast<std::size_t>(p - 1)];
        const Index M = checked(Wide(b) + 3 * (r + 1) + cur);
        const Index N = minimal_N(M, bp);
        const Index first = checked((Wide(M) + bp - 1) / bp * bp);
        blocks[static_cast<std::size_t>(p - 1)].push_back({first, N, bp});
        st.steps.push_back({p, r + 1, M, N});
        cur = N;
      }
    }
    st.a_next = next_a(st.b, blocks, depth, slack);
    st.b_next = next_b(st.a_next, depth + 1);
  } catch (const Overflow&) {
    throw ResourceError("integer range exhausted while building step " + std::to_string(r + 1) + "; reached depth " +
                            std::to_string(r),
                        r);
  }
  st.depth = depth;
  const Window win{0, st.weight_limit()};
  for (auto& fam : blocks) st.E.emplace_back(win, std::move(fam));
  return st;
}

std::vector<ConditionReport> check_s5_invariants(const S5State& st) {
  std::vector<ConditionReport> out;
  const int R = st.depth;

  ConditionReport s1 = ConditionReport::holds("growth");
  for (int r = 1; r <= R + 1 && s1.verdict == Verdict::holds; ++r) {
    const Index a = st.a_at(r), b = st.b_at(r);
    if (r >= 2 && a < st.b_at(r - 1) + 2 * (r - 1) + 1) {
      s1 = ConditionReport::violated("growth", {{"r", r}, {"a_r", a}}, "a_r < b_{r-1} + 2(r-1) + 1");
    } else if (Wide(b) < Wide(r) * a) {
      s1 = ConditionReport::violated("growth", {{"r", r}, {"b_r", b}}, "b_r < r a_r");
    } else if (Wide(b) <= Wide(r) * r * (2 * r + 1)) {
      s1 = ConditionReport::violated("growth", {{"r", r}, {"b_r", b}}, "b_r <= r^2 (2r+1)");
    }
  }
  s1.quantities["steps_checked"] = R + 1;
  out.push_back(s1);

  ConditionReport s3 = ConditionReport::holds("multiples");
  for (int p = 1; p <= R && s3.verdict == Verdict::holds; ++p) {
    const Index bp = st.b_at(p);
    for (const Block& bl : st.E_at(p).blocks()) {
      if (bl.first % bp != 0 || (bl.count() > 1 && bl.step % bp != 0)) {
        s3 = ConditionReport::violated("multiples", {{"p", p}, {"n", bl.first}}, "member not a multiple of b_p");
        break;
      }
    }
  }
  out.push_back(s3);

  ConditionReport dens = ConditionReport::holds("density-checkpoints");
  auto table = nlohmann::ordered_json::array();
  for (const S5Step& s : st.steps) {
    const Index c = st.E_at(s.p).count(0, s.N);
    const Index bp = st.b_at(s.p);
    table.push_back({{"p", s.p}, {"r", s.r}, {"M", s.M}, {"N", s.N}, {"count", c}});
    if (Wide(c) * 2 * bp < s.N && dens.verdict == Verdict::holds) {
      dens = ConditionReport::violated("density-checkpoints", {{"p", s.p}, {"r", s.r}, {"N", s.N}, {"count", c}},
                                       "#E_p(N_{p,r}) < N_{p,r} / (2 b_p)");
    }
  }
  dens.quantities["checkpoints"] = table;
  out.push_back(dens);

  // Block separation; the third clause uses the left-open interval (a_ρ-(ρ+1)-p, b_ρ+2ρ].
  ConditionReport s4 = ConditionReport::holds("block-separation");
  Index pairs = 0;
  for (int p = 1; p <= R && s4.verdict != Verdict::violated; ++p) {
    for (int rho = 1; rho <= R + 1; ++rho) {
      const Index lo = st.a_at(rho) - (rho + 1) - p + 1, hi = st.b_at(rho) + 2 * rho;
      if (st.E_at(p).count(lo, hi) > 0) {
        const Index n = *st.E_at(p).next_member(lo);
        s4 = ConditionReport::violated("block-separation", {{"clause", 3}, {"p", p}, {"n", n}, {"rho", rho}},
                                       "n in (a_rho-(rho+1)-p, b_rho+2rho]");
        break;
      }
    }
    for (int q = 1; q <= R && s4.verdict != Verdict::violated; ++q) {
      if (q == p) continue;
      for (const Block& X : st.E_at(p).blocks()) {
        for (const Block& Y : st.E_at(q).blocks()) {
          ++pairs;
          auto record = [&](const HitResult& h, int clause, int rho) {
            if (h.kind == HitResult::Kind::hit) {
              nlohmann::ordered_json w{{"clause", clause}, {"p", p}, {"q", q}, {"n", h.x}, {"m", h.y}};
              if (rho) w["rho"] = rho;
              s4 = ConditionReport::violated("block-separation", w, "forbidden difference m - n");
              return true;
            }
            if (h.kind == HitResult::Kind::unknown && s4.verdict == Verdict::holds) {
              s4 = ConditionReport::inconclusive("block-separation", "difference search over budget");
            }
            return false;
          };
          if (record(block_difference_hits(X, Y, 1, p), 1, 0)) break;
          for (int rho = 1; rho <= R + 1; ++rho) {
            const Index lo = std::max<Index>(1, st.a_at(rho) - (rho + 1) - q);
            if (record(block_difference_hits(X, Y, lo, st.b_at(rho) + rho + p + q), 2, rho)) break;
          }
          if (s4.verdict == Verdict::violated) break;
        }
        if (s4.verdict == Verdict::violated) break;
      }
    }
  }
  s4.quantities["block_pairs"] = pairs;
  out.push_back(s4);
  return out;
}

namespace {

class S5WeightModel : public WeightModel {
 public:
  S5WeightModel(const S5State& st, Index hi) : hi_(hi) {
    for (int r = 1; r <= st.depth + 1; ++r) flat_.push_back({std::max<Index>(0, st.a_at(r) - r), st.b_at(r) + r});
    for (int q = 1; q <= st.depth + 1; ++q) bq_.push_back(st.b_at(q));
  }

  Domain domain() const override { return Domain::unilateral; }
  Window cum_window() const override { return {0, hi_}; }
  std::string generator() const override { return "s5"; }

  double log2_cum(Index n) const override {
    Index c = L0(n);
    for (int q = 1; q <= static_cast<int>(bq_.size()); ++q) c = std::max(c, Lq(q, n));
    return static_cast<double>(c);
  }

  double min_log2_cum(Index lo, Index hi) const override {
    if (hi - lo <= 256) return WeightModel::min_log2_cum(lo, hi);
    // max over the families of each family's exact minimum
    Index best = 0;
    bool meets_flat = false;
    for (const Window& f : flat_) meets_flat = meets_flat || (f.lo <= hi && lo <= f.hi);
    if (!meets_flat) best = L0(lo);
    for (int q = 1; q <= static_cast<int>(bq_.size()); ++q) {
      const Index b = bq_[static_cast<std::size_t>(q - 1)];
      const Index k = (lo + q - 1) / b;  // bump (bk - q, bk + q] holding lo
      if (k >= 1 && lo > b * k - q && hi <= b * k + q) best = std::max(best, Lq(q, lo));
    }
    return static_cast<double>(best);
  }

  double min_log2_cum_lattice(Index offset, Index step, Index dlo, Index dhi, Index tmax) const override {
    double best = min_log2_cum(dlo, dhi + tmax);
    if (step <= 0 || dlo < 1) return best;
    for (int q = 1; q <= static_cast<int>(bq_.size()); ++q) {
      const Index b = bq_[static_cast<std::size_t>(q - 1)];
      // d in bN, d >= 1, t in [0, q]: L^q(d + t) = q
      if (step % b == 0 && ((offset % b) + b) % b == 0 && tmax <= q) best = std::max(best, double(q));
    }
    return best;
  }

  std::pair<double, double> log2_weight_bounds() const override {
    double lo = 0.0;
    auto visit = [&](Index n) {
      if (n >= 1 && n <= hi_) lo = std::min(lo, log2_cum(n) - log2_cum(n - 1));
    };
    for (const Window& f : flat_) visit(f.lo);
    for (int q = 1; q <= static_cast<int>(bq_.size()); ++q) visit(bq_[static_cast<std::size_t>(q - 1)] + q + 1);
    return {lo, 1.0};
  }

  Index L0(Index n) const {
    auto it = std::upper_bound(flat_.begin(), flat_.end(), n, [](Index v, const Window& f) { return v < f.lo; });
    const Window& f = *std::prev(it);
    return n <= f.hi ? 0 : n - f.hi;
  }

  Index Lq(int q, Index n) const {
    const Index b = bq_[static_cast<std::size_t>(q - 1)];
    const Index k = (n + q) / b;
    if (k < 1 || n > b * k + q) return 0;
    return n <= b * k ? q - (b * k - n) : q;
  }

 private:
  Index hi_;
  std::vector<Window> flat_;  // [a_r - r, b_r + r]
  std::vector<Index> bq_;
};

}  // namespace

WeightSeq build_s5_weight(const S5State& st, Index hi) {
  if (hi < 0) hi = st.weight_limit();
  if (hi > st.weight_limit()) {
    throw WindowError("weight requested up to " + std::to_string(hi) + " but the state fixes it only up to " +
                      std::to_string(st.weight_limit()));
  }
  if (hi > (Index{1} << 53)) throw ResourceError("log-products beyond exact double range", st.depth);
  return WeightSeq(std::make_shared<S5WeightModel>(st, hi));
}

std::vector<ConditionReport> check_s5_weight(const S5State& st, const WeightSeq& w) {
  std::vector<ConditionReport> out;
  const int R = st.depth;

  ConditionReport e1 = ConditionReport::holds("block-product");
  for (const S5Step& s : st.steps) {
    const Index lo = st.b_at(s.r) + 2 * s.r + 1;
    const Index hi = st.a_at(s.r + 1) - (s.r + 2) - s.p;
    if (s.M < lo || s.N > hi) {
      e1 = ConditionReport::violated("block-product", {{"p", s.p}, {"r", s.r}, {"M", s.M}, {"N", s.N}},
                                     "block outside [b_r+2r+1, a_{r+1}-(r+2)-p]");
      break;
    }
    const Index first = st.E_at(s.p).next_member(s.M).value();
    const double lb = w.model().min_log2_cum(first, s.N + s.p);
    if (lb < s.r) {
      const double c = w.log2_cum(first);
      if (c < s.r) {
        e1 = ConditionReport::violated("block-product", {{"p", s.p}, {"r", s.r}, {"n", first}, {"log2_product", c}},
                                       "w_1...w_{n+s} < 2^r");
        break;
      }
      e1 = ConditionReport::inconclusive("block-product", "lower bound below 2^r on a block");
    }
  }
  out.push_back(e1);

  auto pair_check = [&](const std::string& id, bool same) {
    ConditionReport rep = ConditionReport::holds(id);
    for (int p = 1; p <= R; ++p) {
      for (int q = 1; q <= R; ++q) {
        if ((p == q) != same) continue;
        const double target = same ? p : p + q;
        PairOutcome o = check_pair_products(w, st.E_at(p), st.E_at(q), q, target, false);
        if (o.verdict == Verdict::violated) {
          return ConditionReport::violated(
              id, {{"p", p}, {"q", q}, {"n", o.n}, {"m", o.m}, {"t", o.t}, {"log2_product", o.value}},
              "w_1...w_{m-n+t} below target");
        }
        if (o.verdict == Verdict::inconclusive) rep = ConditionReport::inconclusive(id, "block pair not decided");
      }
    }
    return rep;
  };
  out.push_back(pair_check("cross-pair-product", false));
  out.push_back(pair_check("same-pair-product", true));
  return out;
}

ConditionReport check_s5_smallness(const S5State& st, const WeightSeq& w, int p, Index scan_cap) {
  ConditionReport rep = ConditionReport::holds("smallness");
  Index scanned = 0;
  bool complete = true;
  for (int r = 1; r <= st.depth; ++r) {
    const Index lo = st.a_at(r), hi = std::min(st.b_at(r), w.cum_window().hi);
    for (Index n = lo; n <= hi; ++n) {
      if (scanned++ >= scan_cap) {
        complete = false;
        break;
      }
      if (w.log2_cum(n) <= p) continue;
      bool near = false;
      for (int q = p + 1; q <= st.depth + 1 && !near; ++q) {
        const Index b = st.b_at(q);
        const Index k = (n + q) / b;
        near = k >= 1 && n >= b * k - q && n <= b * k + q;
      }
      if (!near) {
        rep = ConditionReport::violated("smallness", {{"p", p}, {"n", n}, {"log2_product", w.log2_cum(n)}},
                                        "product above 2^p away from every b_qN + [-q,q], q > p");
        rep.quantities["scanned"] = scanned;
        return rep;
      }
    }
    if (!complete) break;
  }
  if (!complete) rep = ConditionReport::inconclusive("smallness", "scan cap reached");
  rep.quantities["scanned"] = std::min(scanned, scan_cap);
  return rep;
}

}  // namespace shiftlab
