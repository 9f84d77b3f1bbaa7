#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "shiftlab/diffset.hpp"

using namespace shiftlab;

namespace {

std::vector<bool> pattern_of(std::initializer_list<int> members, int period) {
  std::vector<bool> p(std::size_t(period), false);
  for (int m : members) p[std::size_t(m)] = true;
  return p;
}

IntSet periodic(const std::vector<bool>& p, Window w) {
  const auto P = Index(p.size());
  return IntSet::from_predicate(w, [&](Index x) { return bool(p[std::size_t(((x % P) + P) % P)]); });
}

}  // namespace

TEST_CASE("greedy separated sets on periodic sets match the exact-correlation oracle") {
  const Window w{-20'000, 20'000};
  struct Case {
    std::vector<bool> pattern;
    double epsilon;
    std::vector<Index> expected;
  };
  const std::vector<Case> cases{
      {pattern_of({0}, 3), 0.5, {0, 1, -1}},
      {pattern_of({0}, 1), 0.5, {0}},
      {pattern_of({0}, 2), 0.5, {0, 1}},
  };
  for (const auto& c : cases) {
    const IntSet a = periodic(c.pattern, w);
    DiffSetOptions opts;
    opts.delta = oracle::periodic_delta_k(c.pattern, 0);
    const GreedyResult g = greedy_separated_set(a, c.epsilon, Window{-30, 30}, opts);
    CHECK(g.R == c.expected);
    CHECK(g.R == oracle::periodic_greedy(c.pattern, c.epsilon, 30));
    CHECK(g.bound_holds);
    CHECK(g.covers);
  }
  const IntSet a3 = periodic(pattern_of({0}, 3), w);
  DiffSetOptions o3;
  o3.delta = 1.0 / 3.0;
  CHECK(greedy_separated_set(a3, 0.5, Window{-30, 30}, o3).bound == doctest::Approx(5.0));
}

TEST_CASE("greedy bound on unions of progressions with exact delta") {
  const Window w{-30'000, 30'000};
  const std::vector<std::vector<bool>> patterns{
      pattern_of({0, 2, 4, 6, 8, 1}, 10),  // 2Z ∪ (5Z+1)
      pattern_of({0, 3}, 6),
      pattern_of({1, 2, 4}, 7),
      pattern_of({0, 1, 5, 9, 10}, 12),
  };
  for (const auto& p : patterns) {
    for (double eps : {0.1, 0.25, 0.5, 0.9}) {
      DiffSetOptions opts;
      opts.delta = oracle::periodic_delta_k(p, 0);
      const GreedyResult g = greedy_separated_set(periodic(p, w), eps, Window{-40, 40}, opts);
      CHECK(g.R == oracle::periodic_greedy(p, eps, 40));
      CHECK(double(g.R.size()) <= g.bound + 1e-12);
      CHECK(g.covers);
    }
  }
}

TEST_CASE("correlation densities match exact periodic values") {
  const auto p = pattern_of({0, 2, 4, 6, 8, 1}, 10);
  const IntSet a = periodic(p, Window{-100'000, 100'000});
  const CorrelationTable t(a, 25);
  for (Index k = -25; k <= 25; ++k) CHECK(t.delta_k(k) == doctest::Approx(oracle::periodic_delta_k(p, k)).epsilon(1e-3));
  CHECK(t.delta() == doctest::Approx(0.6).epsilon(1e-3));
}

TEST_CASE("correlation set symmetry") {
  std::mt19937_64 rng(9);
  std::bernoulli_distribution coin(0.4);
  const Window w{-400, 400};
  const IntSet a = IntSet::from_predicate(w, [&](Index) { return coin(rng); });
  for (Index k : {1, 5, -7, 33}) {
    const IntSet bk = correlation_set(a, k);
    const IntSet other = shift_set(correlation_set(a, -k), k);
    const Index m = 2 * std::abs(k);
    for (Index x = w.lo + m; x <= w.hi - m; ++x) REQUIRE(bk.contains(x) == other.contains(x));
  }
}

TEST_CASE("return sets grow with epsilon and cover the range") {
  std::mt19937_64 rng(10);
  std::bernoulli_distribution coin(0.3);
  const Window w{-50'000, 50'000};
  const IntSet a = IntSet::from_predicate(w, [&](Index) { return coin(rng); }) | make_ap(7, 0, w);
  const DiffSetReport lo = syndetic_return_set(a, 0.2, Window{-60, 60});
  const DiffSetReport hi = syndetic_return_set(a, 0.6, Window{-60, 60});
  for (Index k = -60; k <= 60; ++k) {
    if (lo.F.contains(k)) REQUIRE(hi.F.contains(k));
  }
  CHECK(hi.covers);
  CHECK(lo.max_gap.has_value());
  CHECK(*lo.max_gap <= 14);
  CHECK(lo.F.contains(0));
  CHECK(lo.F.contains(7));
}

TEST_CASE("syndetic return set on 3Z") {
  const IntSet a = make_ap(3, 0, Window{-30'000, 30'000});
  DiffSetOptions opts;
  opts.delta = 1.0 / 3.0;
  const DiffSetReport r = syndetic_return_set(a, 0.5, Window{-30, 30}, opts);
  CHECK(r.F.members() == make_ap(3, 0, Window{-30, 30}).members());
  CHECK(r.max_gap == 3);
  CHECK(r.R == std::vector<Index>{0, 1, -1});
  CHECK(r.covers);
}

TEST_CASE("degenerate inputs") {
  CHECK_THROWS_AS(syndetic_return_set(IntSet(Window{-10, 10}), 0.5, Window{-2, 2}), DegenerateInputError);
  CHECK_THROWS_AS(syndetic_return_set(make_ap(2, 0, Window{-100, 100}), 1.5, Window{-2, 2}), ArgumentError);
}

TEST_CASE("weighted return averages: harmonic oracle, zero and summable profiles") {
  const Index H = 10'000;
  const IntSet a = make_ap(2, 0, Window{-2 * H, 2 * H});
  AlphaProfile harmonic{1, {}};
  for (Index k = 1; k <= 2 * H; ++k) harmonic.values.push_back(1.0 / double(k));
  const std::vector<Index> cps{100, 1000, H};
  const ReturnAverage r = weighted_return_average(a, harmonic, cps);
  double ref = 0.0;
  for (Index m = 2; m <= H; m += 2) ref += 1.0 / double(m);
  for (const auto& [n, b] : r.beta) {
    if (n == 0) CHECK(b == doctest::Approx(ref).epsilon(1e-9));
  }
  CHECK(ref == doctest::Approx(0.5 * (std::log(double(H / 2)) + 0.5772156649)).epsilon(1e-3));
  CHECK(r.growth >= 2.0);

  const ReturnAverage z = weighted_return_average(a, AlphaProfile{1, std::vector<double>(50, 0.0)}, cps);
  for (const auto& [n, v] : z.averages) CHECK(v == 0.0);

  AlphaProfile geo{1, {}};
  for (int k = 1; k <= 60; ++k) geo.values.push_back(std::ldexp(1.0, -k));
  const ReturnAverage g = weighted_return_average(a, geo, cps);
  CHECK(g.averages.front().second == doctest::Approx(g.averages.back().second).epsilon(0.01));
}

TEST_CASE("return averages reject profiles failing both ratio conditions") {
  const IntSet a = make_ap(2, 0, Window{-1000, 1000});
  const std::vector<Index> cps{10, 100};
  CHECK_THROWS_AS(weighted_return_average(a, AlphaProfile{1, {1.0, 0.0, 1.0, 0.0, 1.0}}, cps), PreconditionError);
}
