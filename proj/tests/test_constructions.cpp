#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "shiftlab/characterization.hpp"
#include "shiftlab/density.hpp"
#include "shiftlab/obstruction.hpp"
#include "shiftlab/s5.hpp"
#include "shiftlab/s6.hpp"

using namespace shiftlab;

namespace {

const ConditionReport& by_id(const std::vector<ConditionReport>& rs, const std::string& id) {
  for (const auto& r : rs) {
    if (r.id == id) return r;
  }
  FAIL("missing report " << id);
  return rs.front();
}

Index ceil_div(Index a, Index b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

}  // namespace

TEST_CASE("block induction matches the minimal-choice oracle") {
  const oracle::S5Oracle o = oracle::s5_construction(5);
  const S5State st = build_s5(5);
  CHECK(st.a == o.a);
  CHECK(st.b == o.b);
  REQUIRE(st.steps.size() == o.steps.size());
  for (std::size_t i = 0; i < o.steps.size(); ++i) {
    CHECK(st.steps[i].p == o.steps[i].p);
    CHECK(st.steps[i].r == o.steps[i].r);
    CHECK(st.steps[i].M == o.steps[i].M);
    CHECK(st.steps[i].N == o.steps[i].N);
  }
  CHECK(st.steps[1].M == 38);
  CHECK(st.steps[1].N == 72);
}

TEST_CASE("block induction at depth 6: frozen sequences") {
  const S5State st = build_s5(6);
  CHECK(st.a == std::vector<Index>{1, 12, 198, 9512, 1217546, 413965652});
  CHECK(st.b == std::vector<Index>{4, 24, 594, 38048, 6087730, 2483793912});
  CHECK(st.E_at(1).blocks().front() == Block{8, 8, 1});
  for (int p = 1; p < 6; ++p) CHECK(st.E_at(p).blocks().size() == std::size_t(7 - p));
}

TEST_CASE("block invariants and weight conditions hold on small depths") {
  for (int depth : {1, 2, 3, 4}) {
    const S5State st = build_s5(depth);
    for (const auto& r : check_s5_invariants(st)) CHECK_MESSAGE(r.verdict == Verdict::holds, r.id);
    const WeightSeq w = build_s5_weight(st);
    for (const auto& r : check_s5_weight(st, w)) CHECK_MESSAGE(r.verdict == Verdict::holds, r.id);
  }
  const S5State slack = build_s5(3, 1.5);
  CHECK(slack.a[1] >= 18);
  for (const auto& r : check_s5_invariants(slack)) CHECK_MESSAGE(r.verdict == Verdict::holds, r.id);
}

TEST_CASE("block weight equals the step-by-step product oracle") {
  for (int depth : {2, 3, 4}) {
    const S5State st = build_s5(depth);
    const WeightSeq w = build_s5_weight(st);
    const Index hi = st.weight_limit();
    CHECK(w.cum_window() == Window{0, hi});
    const std::vector<double> ref = oracle::s5_products(st, hi);
    for (Index n = 0; n <= hi; ++n) REQUIRE(w.log2_cum(n) == ref[std::size_t(n)]);
    const auto [lo, up] = w.model().log2_weight_bounds();
    CHECK(up == 1.0);
    double ref_lo = 0.0;
    for (Index n = 1; n <= hi; ++n) ref_lo = std::min(ref_lo, ref[std::size_t(n)] - ref[std::size_t(n - 1)]);
    CHECK(lo == ref_lo);
  }
}

TEST_CASE("block weight range bounds are sound") {
  const S5State st = build_s5(4);
  const WeightSeq w = build_s5_weight(st);
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<Index> start(1, w.cum_window().hi - 5000), len(0, 4000);
  for (int t = 0; t < 300; ++t) {
    const Index lo = start(rng), hi = lo + len(rng);
    REQUIRE(w.model().min_log2_cum(lo, hi) <= oracle::brute_min(w, lo, hi));
  }
  for (int q = 1; q <= 4; ++q) {
    const Index b = st.b_at(q);
    for (Index tmax = 0; tmax <= q; ++tmax) {
      const Index dhi = std::min(40 * b, w.cum_window().hi - q);
      const double lb = w.model().min_log2_cum_lattice(b, 3 * b, b, dhi, tmax);
      double m = 1e9;
      for (Index d = b; d <= dhi; d += 3 * b) m = std::min(m, oracle::brute_min(w, d, d + tmax));
      CHECK(lb <= m);
      CHECK(lb >= q);
    }
  }
}

TEST_CASE("smallness of the block weight") {
  const S5State st = build_s5(4);
  const WeightSeq w = build_s5_weight(st);
  for (int p = 1; p <= 3; ++p) CHECK(check_s5_smallness(st, w, p).verdict == Verdict::holds);
}

TEST_CASE("planted violations are caught with checkable witnesses") {
  S5State st = build_s5(3);
  const Index n = st.E_at(1).front();
  auto blocks = st.E_at(2).blocks();
  blocks.insert(blocks.begin(), Block{n + 1, n + 1, 1});
  st.E[1] = ProgressionSet(st.E[1].window(), blocks);
  const auto rs = check_s5_invariants(st);
  const ConditionReport& sep = by_id(rs, "block-separation");
  REQUIRE(sep.verdict == Verdict::violated);
  const Index wn = sep.witness["n"].get<Index>(), wm = sep.witness["m"].get<Index>();
  CHECK(st.E_at(sep.witness["p"].get<int>()).contains(wn));
  CHECK(st.E_at(sep.witness["q"].get<int>()).contains(wm));
  CHECK(std::abs(wm - wn) <= 2);
  CHECK(by_id(rs, "multiples").verdict == Verdict::violated);
}

TEST_CASE("obstruction counts agree with an exhaustive count") {
  const S5State st = build_s5(4);
  const WeightSeq w = build_s5_weight(st);
  const Index hi = w.cum_window().hi;
  for (int p = 1; p <= 4; ++p) {
    Index c = 0, next = 1;
    for (Index n = 1; n <= hi; ++n) {
      c += w.log2_cum(n) > p ? 1 : 0;
      if (n == next || n == hi) {
        REQUIRE(count_large_products(st, w, p, n) == c);
        next = next * 3 + 1;
      }
    }
    CHECK(lower_density_obstruction(w, st, p).verdict == Verdict::holds);
  }
  double prev = 1e9;
  for (int p = 1; p <= 4; ++p) {
    const double c = obstruction_ceiling(st, p);
    double ref = double(st.a_at(4)) / double(st.b_at(4));
    for (int q = p + 1; q <= 5; ++q) ref += double(2 * q + 1) / double(st.b_at(q));
    CHECK(c == doctest::Approx(ref));
    CHECK(c < prev);
    prev = c;
  }
}

TEST_CASE("block induction overflow is a resource error") { CHECK_THROWS_AS(build_s5(12), ResourceError); }

TEST_CASE("interval configuration: inequalities and interval endpoints") {
  const S6Config cfg = make_s6_config({60, 1}, {1, 100}, 5, 10'000'000);
  const double a = 60.0, e = 0.01;
  const auto rs = check_s6_config(cfg);
  CHECK(by_id(rs, "separation").quantities["value"].get<double>() == doctest::Approx(2 * e * a / (1 + 2 * e)));
  CHECK(by_id(rs, "interval-ratio").quantities["value"].get<double>() == doctest::Approx((1 + 4 * e) / (1 - 4 * e)));
  CHECK(by_id(rs, "interval-density").quantities["value"].get<double>() == doctest::Approx(0.0782).epsilon(1e-3));
  CHECK(by_id(rs, "density-budget").quantities["value"].get<double>() == doctest::Approx(0.578).epsilon(1e-3));
  for (const auto& r : rs) CHECK_MESSAGE(r.verdict == Verdict::holds, r.id);
  for (int p = 1; p <= 5; ++p) CHECK(cfg.b_at(p) == (4 * p + 1) * (Index{1} << (p + 1)));

  Index pw = 1;
  for (const S6Interval& iv : cfg.intervals) {
    pw *= 60;
    REQUIRE(pw == Index(std::llround(std::pow(60.0, double(iv.u)))));
    CHECK(iv.inner.lo == ceil_div(99 * pw, 100));
    CHECK(iv.inner.hi == 101 * pw / 100);
    CHECK(iv.mid.lo == ceil_div(98 * pw, 100));
    CHECK(iv.outer.hi == 104 * pw / 100);
    CHECK(iv.p == std::countr_zero(std::uint64_t(iv.u)) + 1);
    CHECK(iv.kept == (iv.inner.lo - 2 * iv.p >= iv.mid.lo && iv.inner.hi + 2 * iv.p <= iv.mid.hi));
  }
  CHECK_FALSE(cfg.intervals.front().kept);
  CHECK(cfg.intervals[1].kept);
  CHECK_THROWS_AS(make_s6_config({1, 1}, {1, 100}, 3, 1000), ArgumentError);
}

TEST_CASE("interval sets: members, separation and a brute-force rebuild") {
  const S6Config cfg = make_s6_config({60, 1}, {1, 100}, 4, 20'000'000);
  const auto E = build_s6_sets(cfg);
  REQUIRE(E.size() == 4);
  for (int p = 1; p <= 4; ++p) {
    std::vector<Index> ref;
    for (const S6Interval& iv : cfg.intervals) {
      if (iv.p != p || !iv.kept) continue;
      for (Index n = iv.inner.lo; n <= std::min(iv.inner.hi, cfg.window); ++n) {
        if (n % cfg.b_at(p) == 0) ref.push_back(n);
      }
    }
    CHECK(E[std::size_t(p - 1)].members() == ref);
  }
  CHECK(E[0].members().size() == 217);
  CHECK(E[1].members() == std::vector<Index>{3600});
  std::vector<std::pair<Index, int>> all;
  for (int p = 1; p <= 4; ++p) E[std::size_t(p - 1)].for_each([&](Index n) { all.emplace_back(n, p); });
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      REQUIRE(std::abs(all[i].first - all[j].first) > 2 * std::max(all[i].second, all[j].second));
    }
  }
}

TEST_CASE("interval weight: cache and procedural evaluation agree, steps stay in [1/2, 2]") {
  const S6Config cfg = make_s6_config({60, 1}, {1, 100}, 5, 2'000'000);
  const WeightSeq dense = build_s6_weight(cfg, 2'000'000);
  const WeightSeq lazy = build_s6_weight(cfg, 100);
  for (Index n = -2'000'000; n <= 2'000'000; ++n) REQUIRE(dense.log2_cum(n) == lazy.log2_cum(n));
  for (Index n = -2'000'000 + 1; n <= 2'000'000; ++n) REQUIRE(std::abs(dense.log2_weight(n)) <= 1.0);
  CHECK(check_s6_weight(cfg, dense).verdict == Verdict::holds);
  for (int p = 1; p <= 5; ++p) {
    for (Index k = cfg.b_at(p); k <= 2'000'000; k += cfg.b_at(p)) REQUIRE(dense.log2_cum(-k) >= 2 * p);
  }
  CHECK(dense.log2_cum(-5 * 20) == 2.0);
  CHECK(dense.log2_cum(-5 * 20 - 1) == 1.0);
  CHECK(dense.log2_cum(-5 * 20 - 2) == 0.0);
  CHECK(dense.log2_cum(7) == 7.0);
}

TEST_CASE("interval weight bounds over uncached ranges are sound") {
  const S6Config cfg = make_s6_config({60, 1}, {1, 100}, 3, 20'000'000);
  const WeightSeq lazy = build_s6_weight(cfg, 1000);
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<Index> start(1000, 20'000'000 - 6000), len(0, 5000);
  for (int t = 0; t < 400; ++t) {
    const Index k = start(rng), l = len(rng);
    REQUIRE(lazy.model().min_log2_cum(-k - l, -k) <= oracle::brute_min(lazy, -k - l, -k));
  }
  for (const S6Interval& iv : cfg.intervals) {
    if (iv.outer.hi > 20'000'000) break;
    const Index lo = -iv.outer.hi, hi = -iv.outer.lo;
    CHECK(lazy.model().min_log2_cum(lo, hi) <= oracle::brute_min(lazy, lo, hi));
  }
  for (int p = 1; p <= 3; ++p) {
    const Index b = cfg.b_at(p);
    const double lb = lazy.model().min_log2_cum_lattice(-400 * b, 7 * b, -400 * b, -b, 0);
    double m = 1e9;
    for (Index d = -400 * b; d <= -b; d += 7 * b) m = std::min(m, lazy.log2_cum(d));
    CHECK(lb <= m);
    CHECK(lb >= 2 * p);
  }
}

TEST_CASE("residual set: products are trivial there and the set is dense") {
  const S6Config cfg = make_s6_config({60, 1}, {1, 100}, 5, 10'000'000);
  const WeightSeq w = build_s6_weight(cfg);
  const IntSet A = residual_set(cfg, 10'000'000);
  A.for_each([&](Index k) { REQUIRE(w.log2_cum(-k) == 0.0); });
  A.for_each([&](Index k) { REQUIRE(k % 20 != 0); });
  for (const S6Interval& iv : cfg.intervals) {
    if (iv.outer.lo > 10'000'000) break;
    CHECK(A.count(iv.outer.lo, iv.outer.hi) == 0);
  }
  const auto cps = geometric_checkpoints(1000, 10'000'000, 16);
  CHECK(density_profile(A, cps).lower_est >= 0.35);
  CHECK_THROWS_AS(residual_set(cfg, 20'000'000), WindowError);
}
