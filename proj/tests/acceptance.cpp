// Acceptance gate: one PASS/FAIL line per criterion, exit 1 on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "shiftlab/characterization.hpp"
#include "shiftlab/criteria.hpp"
#include "shiftlab/diffset.hpp"
#include "shiftlab/fhc_vector.hpp"
#include "shiftlab/obstruction.hpp"
#include "shiftlab/s5.hpp"
#include "shiftlab/s6.hpp"
#include "shiftlab/shift.hpp"

using namespace shiftlab;

namespace {

constexpr double kBeta0 = 4.55, kBeta0Tol = 0.05;
constexpr double kGrowthMin = 2.0;
constexpr double kFlatVariation = 0.10;
constexpr double kConfigTol = 5e-4;
constexpr double kResidualTol = 1e-12;
constexpr double kScanDensityMin = 0.3;
constexpr double kSeriesTol = 1e-9;
constexpr double kShiftRelTol = 1e-9;
constexpr double kCase1Seconds = 10.0, kCase3Seconds = 60.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Line {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

bool report(int id, const char* title, const std::function<Line()>& body) {
  Line l;
  try {
    l = body();
  } catch (const std::exception& e) {
    l.ok = false;
    l.detail = std::string("exception: ") + e.what();
  }
  std::printf("[%s] %d %s%s%s\n", l.ok ? "PASS" : "FAIL", id, title, l.detail.empty() ? "" : ": ",
              l.detail.c_str());
  std::fflush(stdout);
  return l.ok;
}

Line difference_sets() {
  Line l;
  const Window w{-1'000'000, 1'000'000};
  struct Case {
    std::string name;
    IntSet a;
    Index period;
    std::optional<double> delta;
  };
  std::vector<Case> cases;
  cases.push_back({"2Z", make_ap(2, 0, w), 2, 0.5});
  cases.push_back({"3Z", make_ap(3, 0, w), 3, 1.0 / 3.0});
  cases.push_back({"2Z+(5Z+1)", make_ap(2, 0, w) | make_ap(5, 1, w), 10, 0.6});
  std::mt19937_64 rng(20240607);
  std::bernoulli_distribution coin(0.3);
  for (int s = 0; s < 2; ++s) {
    const IntSet r = IntSet::from_predicate(w, [&](Index) { return coin(rng); });
    cases.push_back({"random+7Z#" + std::to_string(s), r | make_ap(7, 0, w), 7, std::nullopt});
  }
  const Window kr{-100, 100};
  int n = 0;
  for (const auto& c : cases) {
    for (double eps : {0.25, 0.5}) {
      const auto t0 = Clock::now();
      DiffSetOptions opts;
      opts.delta = c.delta;
      const DiffSetReport r = syndetic_return_set(c.a, eps, kr, opts);
      const double secs = seconds_since(t0);
      const std::string tag = c.name + " eps=" + std::to_string(eps);
      if (r.F.empty()) l.fail(tag + " F empty");
      if (!r.max_gap || *r.max_gap > 2 * c.period) l.fail(tag + " gap too large");
      if (!r.bound_holds) l.fail(tag + " #R above bound");
      if (!r.covers) l.fail(tag + " F+R does not cover");
      if (secs > kCase1Seconds) l.fail(tag + " took " + std::to_string(secs) + " s");
      ++n;
    }
  }
  if (l.ok) l.detail = std::to_string(n) + " cases";
  return l;
}

Line return_averages() {
  Line l;
  const Index H = 10'000;
  const IntSet a = make_ap(2, 0, Window{-2 * H, 2 * H});
  AlphaProfile harmonic{1, {}};
  for (Index k = 1; k <= 2 * H; ++k) harmonic.values.push_back(1.0 / double(k));
  const std::vector<Index> cps{100, 1000, H};
  const ReturnAverage h = weighted_return_average(a, harmonic, cps);
  double beta0 = -1.0;
  for (const auto& [n, b] : h.beta) {
    if (n == 0) beta0 = b;
  }
  if (std::abs(beta0 - kBeta0) > kBeta0Tol) l.fail("beta_0 = " + std::to_string(beta0));
  if (h.growth < kGrowthMin) l.fail("growth " + std::to_string(h.growth));

  AlphaProfile geo{1, {}};
  for (Index k = 1; k <= 60; ++k) geo.values.push_back(std::ldexp(1.0, -int(k)));
  const ReturnAverage g = weighted_return_average(a, geo, cps);
  double lo = 1e300, hi = 0.0;
  for (const auto& [n, v] : g.averages) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double variation = (hi - lo) / hi;
  if (variation >= kFlatVariation) l.fail("geometric variation " + std::to_string(variation));
  char buf[160];
  std::snprintf(buf, sizeof buf, "beta_0=%.4f growth=%.3f geometric variation=%.4f", beta0, h.growth, variation);
  if (l.ok) l.detail = buf;
  return l;
}

Line block_construction() {
  Line l;
  const auto t0 = Clock::now();
  const S5State st = build_s5(6);
  if (st.a_at(1) != 1 || st.b_at(1) != 4) l.fail("a1/b1");
  const S5Step& s11 = st.steps.at(0);
  if (s11.N != 8 || st.E_at(1).blocks().front() != Block{8, 8, 1}) l.fail("N11/E1");
  if (st.a_at(2) != 12 || st.b_at(2) != 24) l.fail("a2/b2");
  const S5Step& s12 = st.steps.at(1);
  if (s12.p != 1 || s12.r != 2 || s12.M != 38 || s12.N != 72) l.fail("M12/N12");
  for (const auto& r : check_s5_invariants(st)) {
    if (r.verdict != Verdict::holds) l.fail(r.id + " " + to_string(r.verdict));
  }
  const WeightSeq w = build_s5_weight(st);
  for (const auto& r : check_s5_weight(st, w)) {
    if (r.verdict != Verdict::holds) l.fail(r.id + " " + to_string(r.verdict));
  }
  double prev = 1e300;
  for (int p = 1; p <= 5; ++p) {
    const ConditionReport r = lower_density_obstruction(w, st, p);
    if (r.verdict != Verdict::holds) l.fail("obstruction p=" + std::to_string(p));
    const double ceiling = obstruction_ceiling(st, p);
    double tail = std::numbers::pi * std::numbers::pi / 6.0;
    for (int q = 1; q <= p; ++q) tail -= 1.0 / double(q * q);
    if (!(ceiling < prev)) l.fail("ceiling not decreasing at p=" + std::to_string(p));
    if (!(ceiling < tail + 1.0 / st.depth)) l.fail("ceiling above bound at p=" + std::to_string(p));
    prev = ceiling;
  }
  const double secs = seconds_since(t0);
  if (secs > kCase3Seconds) l.fail("took " + std::to_string(secs) + " s");
  if (l.ok) l.detail = "depth 6, N12=72, " + std::to_string(int(secs)) + " s";
  return l;
}

Line interval_construction() {
  Line l;
  const S6Config cfg = make_s6_config({60, 1}, {1, 100}, 3, 100'000'000'000);
  const auto checks = check_s6_config(cfg);
  const double want[] = {1.176, 1.083, 0.0782, 0.578};
  for (int i = 0; i < 4; ++i) {
    const double v = checks[std::size_t(i)].quantities["value"].get<double>();
    if (checks[std::size_t(i)].verdict != Verdict::holds || std::abs(v - want[i]) > kConfigTol) {
      l.fail(checks[std::size_t(i)].id + " = " + std::to_string(v));
    }
  }
  if (checks[4].verdict != Verdict::holds) l.fail("interval algebra");
  const WeightSeq w = build_s6_weight(cfg);
  if (check_s6_weight(cfg, w).verdict != Verdict::holds) l.fail("weight outside [1/2, 2]");

  const IntSet A = residual_set(cfg, 10'000'000);
  double residual = 0.0;
  A.for_each([&](Index k) { residual += std::abs(w.log2_cum(-k)); });
  if (residual >= kResidualTol) l.fail("residual log-sum " + std::to_string(residual));

  const FhcFamily fam{build_s6_sets(cfg), geometric_targets(3, 1.0), 2.0};
  for (const auto& r : verify_bilateral_conditions(w, fam, 3)) {
    if (r.verdict != Verdict::holds) l.fail("condition " + r.id + " " + to_string(r.verdict));
  }

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Index> idx(-1000, 1000);
  std::uniform_int_distribution<int> len(1, 5);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  double worst = 1.0;
  for (int t = 0; t < 10; ++t) {
    std::vector<std::pair<Index, double>> e;
    const int m = len(rng);
    for (int i = 0; i < m; ++i) e.emplace_back(idx(rng) + i * 2001, val(rng) + (val(rng) > 0 ? 1e-3 : -1e-3));
    const SparseVec x = SparseVec::from_entries(e);
    double top = 0.0;
    for (const auto& [k, v] : x.entries()) top = std::max(top, std::abs(v));
    const double c = top * (1.0 - 1e-9);
    const ConditionReport r = distributional_unbounded_scan(w, x, std::span<const double>(&c, 1), 1'000'000);
    const double lower = r.quantities["parts"][0]["quantities"]["lower_est"].get<double>();
    worst = std::min(worst, lower);
  }
  if (worst < kScanDensityMin) l.fail("large-norm lower density " + std::to_string(worst));
  char buf[160];
  std::snprintf(buf, sizeof buf, "budget=%.4f, residual members=%lld, min scan density=%.3f",
                checks[3].quantities["value"].get<double>(), static_cast<long long>(A.size()), worst);
  if (l.ok) l.detail = buf;
  return l;
}

Line fhc_vector() {
  Line l;
  const S6Config cfg = make_s6_config({60, 1}, {1, 100}, 5, 10'000'000);
  const WeightSeq w = build_s6_weight(cfg);
  const FhcFamily fam{build_s6_sets(cfg), geometric_targets(5, 1.0), 2.0};
  const FhcVectorPlan plan = plan_fhc_vector(w, fam, 5);
  const LogSparseVec x = build_fhc_vector(w, plan);
  for (int p = 1; p <= 5; ++p) {
    for (Index n : plan.F[std::size_t(p - 1)]) {
      for (Index s = -p; s <= p; ++s) {
        if (x[n + s].log2_abs() > -p) l.fail("coefficient above 2^-p at " + std::to_string(n + s));
      }
    }
  }
  const ConditionReport r = verify_fhc_visits(w, x, plan, 10'000'000);
  if (r.verdict != Verdict::holds) l.fail("visit errors: " + r.note);
  std::string levels;
  for (int p = 1; p <= 5; ++p) {
    const auto i = std::size_t(p - 1);
    levels += (p > 1 ? ", " : "") + std::to_string(p) + "<-E" + std::to_string(plan.source[i]) + ":" +
              std::to_string(plan.F[i].size());
  }
  const bool vacuous = x.empty() && r.quantities["parts"][0]["quantities"]["visits"].get<Index>() == 0;
  if (l.ok) {
    l.detail = (vacuous ? "vacuous in window, " : "") + std::to_string(x.size()) + " coefficients; level<-family:|F| " +
               levels;
  }
  return l;
}

Line series_and_witnesses() {
  Line l;
  const WeightSeq w2 = WeightSeq::constant(2.0, Domain::unilateral, Window{0, 100'000});
  const WeightSeq w1 = WeightSeq::constant(1.0, Domain::unilateral, Window{0, 100'000});
  const ConditionReport s = lp_series_test(w2, 1.0, 30);
  const double sum = s.quantities["parts"][0]["quantities"]["partial_sum"].get<double>();
  if (std::abs(sum - 1.0) > kSeriesTol) l.fail("partial sum " + std::to_string(sum));

  const IntSet A = make_ap(2, 0, Window{0, 20'000});
  const ConditionReport v = necessary_condition_witness(w1, A, 1.0);
  if (v.verdict != Verdict::violated) {
    l.fail("w=1 not violated");
  } else {
    const Index n = v.witness["n"].get<Index>(), m_end = v.witness["m_end"].get<Index>();
    double re = 0.0;
    for (Index m = n + 1; m <= m_end; ++m) {
      if (A.contains(m)) re += std::exp2(-w1.log2_cum(m - n));
    }
    if (!(re > 1.0)) l.fail("witness does not re-check");
  }
  if (necessary_condition_witness(w2, A, 1.0).verdict == Verdict::violated) l.fail("w=2 violated");
  if (l.ok) l.detail = "sum(30)=" + std::to_string(sum);
  return l;
}

Line shift_powers() {
  Line l;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lw(-1.0, 1.0), val(-1.0, 1.0);
  std::uniform_int_distribution<Index> idx(-200, 200);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const bool bilateral = t % 2 == 0;
    std::vector<double> l2(bilateral ? 801 : 400);
    for (double& v : l2) v = lw(rng);
    const WeightSeq w = WeightSeq::from_log2(bilateral ? Domain::bilateral : Domain::unilateral,
                                             bilateral ? -400 : 1, l2);
    std::vector<std::pair<Index, double>> e;
    for (int i = 0; i < 6; ++i) {
      const Index k = bilateral ? idx(rng) : idx(rng) + 200;
      if (std::none_of(e.begin(), e.end(), [&](const auto& p) { return p.first == k; })) e.emplace_back(k, val(rng));
    }
    const SparseVec x = SparseVec::from_entries(e);
    const SparseVec fast = apply_power(w, x, 50);
    SparseVec slow = x;
    for (int i = 0; i < 50; ++i) slow = apply_once(w, slow);
    if (fast.size() != slow.size()) l.fail("support mismatch in trial " + std::to_string(t));
    for (const auto& [k, v] : slow.entries()) {
      const double rel = std::abs(fast[k] - v) / std::max(std::abs(v), 1e-300);
      worst = std::max(worst, rel);
    }
  }
  if (worst > kShiftRelTol) l.fail("relative error " + std::to_string(worst));
  char buf[64];
  std::snprintf(buf, sizeof buf, "max relative error %.2e", worst);
  if (l.ok) l.detail = buf;
  return l;
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report(1, "difference sets", difference_sets);
  ok &= report(2, "weighted return averages", return_averages);
  ok &= report(3, "block construction and obstruction", block_construction);
  ok &= report(4, "interval construction", interval_construction);
  ok &= report(5, "explicit FHC vector", fhc_vector);
  ok &= report(6, "series and witnesses", series_and_witnesses);
  ok &= report(7, "closed-form shift powers", shift_powers);
  return ok ? 0 : 1;
}
