#include "shiftlab/obstruction.hpp"

#include <algorithm>

#include "shiftlab/parallel.hpp"

namespace shiftlab {

namespace {

// n in [bk - c, bk + q] for some k >= 1.
bool in_family(Index b, Index c, Index q, Index n) {
  const Index k = (n + c) / b;
  return k >= 1 && n <= b * k + q;
}

// #{1 <= n <= x : n in [bk - c, bk + q], k >= 1}; intervals are disjoint (b > c + q + 1).
Index family_prefix(Index b, Index c, Index q, Index x) {
  if (x < 1) return 0;
  const Index K = (x + c) / b;
  if (K < 1) return 0;
  const Index width = c + q + 1;
  return (K - 1) * width + std::min(x, b * K + q) - (b * K - c) + 1;
}

// Points of [lo, hi] in ∪_{q=p+1..Q} [b_q k - (q-p-1), b_q k + q].
Index flat_count(const S5State& st, int p, Index lo, Index hi) {
  if (lo > hi) return 0;
  const int Q = st.depth + 1;
  if (p + 1 > Q) return 0;
  const Index b1 = st.b_at(p + 1);
  Index total = family_prefix(b1, 0, p + 1, hi) - family_prefix(b1, 0, p + 1, lo - 1);
  for (int q = p + 2; q <= Q; ++q) {
    const Index b = st.b_at(q), c = q - p - 1;
    for (Index k = std::max<Index>(1, (lo - q + b - 1) / b); b * k - c <= hi; ++k) {
      const Index from = std::max(lo, b * k - c), to = std::min(hi, b * k + q);
      for (Index n = from; n <= to; ++n) {
        bool covered = false;
        for (int r = p + 1; r < q && !covered; ++r) covered = in_family(st.b_at(r), r - p - 1, r, n);
        if (!covered) ++total;
      }
    }
  }
  return total;
}

}  // namespace

Index count_large_products(const S5State& st, const WeightSeq& w, int p, Index x) {
  if (x > w.cum_window().hi) throw WindowError("count limit beyond the weight window");
  Index total = 0;
  for (int r = 1; r <= st.depth + 1; ++r) {
    const Index flo = std::max<Index>(1, st.a_at(r) - r), fhi = st.b_at(r) + r;
    if (flo > x) break;
    total += flat_count(st, p, flo, std::min(fhi, x));
    // gap after the flat block: L⁰(n) = n - fhi exceeds p past its first p points
    const Index glo = fhi + 1;
    const Index ghi = std::min(x, r <= st.depth ? st.a_at(r + 1) - (r + 1) - 1 : x);
    if (glo > ghi) continue;
    for (Index n = glo; n <= std::min(ghi, fhi + p); ++n) total += w.log2_cum(n) > p ? 1 : 0;
    total += std::max<Index>(0, ghi - (fhi + p));
  }
  return total;
}

double obstruction_ceiling(const S5State& st, int p) {
  double s = double(st.a_at(st.depth)) / double(st.b_at(st.depth));
  for (int q = p + 1; q <= st.depth + 1; ++q) s += (2.0 * q + 1) / double(st.b_at(q));
  return s;
}

ConditionReport lower_density_obstruction(const WeightSeq& w, const S5State& st, int p, Index scan_cap) {
  if (p < 1) throw ArgumentError("p must be >= 1");
  ConditionReport rep = ConditionReport::holds("lower-density-obstruction");
  auto rows = nlohmann::ordered_json::array();
  for (int r = 1; r <= st.depth; ++r) {
    const Index br = st.b_at(r);
    const Index count = count_large_products(st, w, p, br);
    double sum = 0.0;
    for (int q = p + 1; q <= st.depth + 1; ++q) sum += (2.0 * q + 1) / double(st.b_at(q));
    const double bound = double(st.a_at(r)) + double(br) * sum;
    rows.push_back({{"r", r}, {"b_r", br}, {"count", count}, {"bound", bound}});
    if (double(count) > bound && rep.verdict == Verdict::holds) {
      rep = ConditionReport::violated("lower-density-obstruction", {{"p", p}, {"r", r}, {"count", count}},
                                      "#F_p(b_r) above a_r + b_r Σ(2q+1)/b_q");
    }
  }
  // exhaustive cross-check of the structured count
  const Index x = std::min(st.b_at(st.depth), scan_cap);
  const Index chunks = 64;
  std::vector<Index> partial(chunks, 0);
  parallel_for(0, chunks, [&](Index c) {
    const Index lo = 1 + x * c / chunks, hi = x * (c + 1) / chunks;
    Index k = 0;
    for (Index n = lo; n <= hi; ++n) k += w.log2_cum(n) > p ? 1 : 0;
    partial[static_cast<std::size_t>(c)] = k;
  });
  Index scanned = 0;
  for (Index k : partial) scanned += k;
  const Index structured = count_large_products(st, w, p, x);
  if (scanned != structured) {
    throw InvariantFailure("structured count " + std::to_string(structured) + " differs from scan " +
                           std::to_string(scanned) + " up to " + std::to_string(x));
  }
  rep.quantities["p"] = p;
  rep.quantities["rows"] = std::move(rows);
  rep.quantities["ceiling"] = obstruction_ceiling(st, p);
  rep.quantities["scan_limit"] = x;
  rep.quantities["scan_count"] = scanned;
  return rep;
}

}  // namespace shiftlab
