#pragma once
// Independent brute-force references for the unit tests. Nothing here calls
// into the library beyond reading plain data out of its types.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <vector>

#include "shiftlab/progression_set.hpp"
#include "shiftlab/s5.hpp"
#include "shiftlab/weights.hpp"

namespace oracle {

using shiftlab::Index;

inline Index count_prefix(const std::set<Index>& a, Index n, bool bilateral) {
  Index c = 0;
  for (Index x : a) c += (bilateral ? (x >= -n && x <= n) : (x >= 0 && x <= n)) ? 1 : 0;
  return c;
}

/// Exact density of A ∩ (A - k) for a set given by its pattern on one period.
inline double periodic_delta_k(const std::vector<bool>& pattern, Index k) {
  const auto P = static_cast<Index>(pattern.size());
  Index c = 0;
  for (Index x = 0; x < P; ++x) {
    if (pattern[std::size_t(x)] && pattern[std::size_t((((x + k) % P) + P) % P)]) ++c;
  }
  return double(c) / double(P);
}

/// Greedy separated set over exact periodic correlations, order 0, 1, -1, 2, -2, ...
inline std::vector<Index> periodic_greedy(const std::vector<bool>& pattern, double epsilon, Index K) {
  const double delta = periodic_delta_k(pattern, 0);
  const double thr = (1.0 - epsilon) * delta * delta;
  std::vector<Index> R;
  for (Index m = 0; m <= K; ++m) {
    for (Index k : {m, -m}) {
      if (m == 0 && k != 0) continue;
      if (m == 0 && !R.empty()) continue;
      bool ok = true;
      for (Index l : R) ok = ok && periodic_delta_k(pattern, k - l) <= thr;
      if (ok) R.push_back(k);
    }
  }
  return R;
}

struct S5Oracle {
  std::vector<Index> a, b;
  struct Step {
    int p, r;
    Index M, N;
  };
  std::vector<Step> steps;
};

/// Minimal-choice induction written directly from the recursive definition.
inline S5Oracle s5_construction(int depth) {
  auto cnt = [](Index M, Index N, Index b) -> Index {
    const Index lo = std::max(M, b);
    return N < lo ? 0 : N / b - (lo - 1) / b;
  };
  S5Oracle o;
  o.a = {1};
  o.b = {4};
  o.steps.push_back({1, 1, 8, 8});
  std::vector<std::vector<std::pair<Index, Index>>> E{{{8, 8}}};  // per p: (first, last)
  for (int r = 1; r < depth; ++r) {
    Index mx = 0, emax = 0;
    for (std::size_t p = 0; p < E.size(); ++p) {
      for (auto [f, l] : E[p]) {
        mx = std::max<Index>(mx, l + Index(p) + 1);
        emax = std::max(emax, l);
      }
    }
    const Index a = std::max<Index>(o.b.back() + 2 * r + 1, mx + r + 2);
    const Index b = std::max<Index>((r + 1) * a, Index(r + 1) * (r + 1) * (2 * r + 3) + 1);
    o.a.push_back(a);
    o.b.push_back(b);
    E.resize(std::size_t(r + 1));
    for (int p = 1; p <= r + 1; ++p) {
      const Index M = b + 3 * (r + 1) + emax;
      const Index bp = o.b[std::size_t(p - 1)];
      Index N = M;
      while (cnt(M, N, bp) * 2 * bp < N) ++N;
      o.steps.push_back({p, r + 1, M, N});
      E[std::size_t(p - 1)].push_back({M, N});
      emax = N;
    }
  }
  return o;
}

/// log2 of w_1⋯w_n for n = 0..hi, accumulated one weight at a time from the
/// factor weights w^0 and w^p and combined by the max rule.
inline std::vector<double> s5_products(const shiftlab::S5State& st, Index hi) {
  const int R = st.depth + 1;
  std::vector<double> out(std::size_t(hi + 1), 0.0);
  std::vector<double> c(std::size_t(R + 1), 0.0);
  for (Index n = 1; n <= hi; ++n) {
    bool flat = false, renorm = false;
    for (int r = 1; r <= R; ++r) {
      const Index lo = std::max<Index>(1, st.a_at(r) - r);
      if (n >= lo && n <= st.b_at(r) + r) flat = true;
      if (n == st.a_at(r) - r) renorm = true;
    }
    c[0] = renorm ? 0.0 : c[0] + (flat ? 0.0 : 1.0);
    for (int p = 1; p <= R; ++p) {
      const Index bp = st.b_at(p);
      double step = 0.0;
      const Index up = n + p - 1;  // n in [b_p k - (p-1), b_p k] for some k >= 1
      if (up / bp >= 1 && up % bp <= p - 1) step = 1.0;
      const Index down = n - p - 1;  // n = b_p k + p + 1
      if (down >= bp && down % bp == 0) step = -p;
      c[std::size_t(p)] += step;
    }
    out[std::size_t(n)] = *std::max_element(c.begin(), c.end());
  }
  return out;
}

inline double brute_min(const shiftlab::WeightSeq& w, Index lo, Index hi) {
  double m = std::numeric_limits<double>::infinity();
  for (Index n = lo; n <= hi; ++n) m = std::min(m, w.log2_cum(n));
  return m;
}

/// Smallest product over pairs (n, m) with m != n, as check_pair_products defines it.
inline double brute_pair_min(const shiftlab::WeightSeq& w, const shiftlab::ProgressionSet& X,
                             const shiftlab::ProgressionSet& Y, Index tmax, bool negative) {
  double m = std::numeric_limits<double>::infinity();
  X.for_each([&](Index n) {
    Y.for_each([&](Index k) {
      if (k > n) {
        for (Index t = 0; t <= tmax; ++t) m = std::min(m, w.log2_cum(k - n + t));
      } else if (k < n && negative) {
        m = std::min(m, w.log2_cum(k - n));
      }
    });
  });
  return m;
}

inline bool brute_difference_hit(const shiftlab::Block& X, const shiftlab::Block& Y, Index dlo, Index dhi) {
  for (Index x = X.first; x <= X.last; x += X.step) {
    for (Index y = Y.first; y <= Y.last; y += Y.step) {
      if (y - x >= dlo && y - x <= dhi) return true;
    }
  }
  return false;
}

}  // namespace oracle
