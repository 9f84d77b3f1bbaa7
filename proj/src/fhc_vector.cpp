#include "shiftlab/fhc_vector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shiftlab/shift.hpp"

namespace shiftlab {

namespace {

std::vector<Index> margin_offsets(int L, bool bilateral) {
  std::vector<Index> out{0};
  for (Index s = 1; s <= L; ++s) {
    out.push_back(s);
    if (bilateral) out.push_back(-s);
  }
  return out;
}

Index margin_lo(int p, bool bilateral) { return bilateral ? -p : 0; }

}  // namespace

SparseVec dense_family_vector(int p, double rho, bool bilateral) {
  if (p < 1) throw ArgumentError("dense family index must be >= 1");
  if (!(rho >= 1.0)) throw ArgumentError("rho must be >= 1");
  int level = 0;
  Index j = 0;
  for (int d = 1, seen = 0; level == 0; ++d) {
    for (int L = 1; L <= d; ++L) {
      if (++seen == p) {
        level = L;
        j = d - L;
        break;
      }
    }
  }
  const double grid = std::ldexp(1.0, -level);
  const auto m = static_cast<Index>(std::floor(std::pow(rho, level) / grid + 1e-9));
  const Index radix = 2 * m + 1;
  std::vector<std::pair<Index, double>> entries;
  for (Index s : margin_offsets(level, bilateral)) {
    const Index digit = j % radix;
    j /= radix;
    if (digit == 0) continue;
    const Index mag = (digit + 1) / 2;
    entries.emplace_back(s, (digit % 2 == 1 ? 1.0 : -1.0) * double(mag) * grid);
  }
  return SparseVec::from_entries(std::move(entries));
}

FhcVectorPlan plan_fhc_vector(const WeightSeq& w, const FhcFamily& fam, int pmax, Index max_members) {
  if (pmax < 1) throw ArgumentError("pmax must be >= 1");
  FhcVectorPlan plan;
  plan.pmax = pmax;
  plan.rho = fam.rho;
  plan.bilateral = w.bilateral();
  const Window c = w.cum_window();
  const double log2_rho = std::log2(fam.rho);
  int next = 1;
  for (int p = 1; p <= pmax; ++p) {
    double needed = 4.0 * p * log2_rho;
    if (!plan.bilateral) {
      double low = 0.0;
      for (Index t = 1; t <= std::min<Index>(p, c.hi); ++t) low = std::min(low, w.log2_weight(t));
      needed -= 2.0 * p * low;
    }
    int q = std::max(next, p);
    while (q <= fam.pmax() && fam.log2_M_at(q) < needed) ++q;
    const int src = q <= fam.pmax() ? q : 0;
    if (src) next = q + 1;
    plan.source.push_back(src);
    plan.log2_M_needed.push_back(needed);

    std::vector<Index> F;
    if (src) {
      const ProgressionSet& E = fam.E_at(src);
      if (E.size() > max_members) {
        throw ResourceError("E_" + std::to_string(src) + " has " + std::to_string(E.size()) + " members", p - 1);
      }
      const double floor_log2 = 4.0 * p * log2_rho;
      Index pos = 0;
      E.for_each([&](Index n) {
        if (n + p > c.hi || n + margin_lo(p, plan.bilateral) < c.lo) return;
        if (w.log2_cum(n) <= floor_log2) return;
        if (pos++ % (2 * p + 1) == 0) F.push_back(n);
      });
    }
    plan.F.push_back(std::move(F));
    plan.y.push_back(dense_family_vector(p, fam.rho, plan.bilateral));
  }
  return plan;
}

LogSparseVec build_fhc_vector(const WeightSeq& w, const FhcVectorPlan& plan) {
  std::vector<std::pair<Index, int>> defined;  // coordinate, p
  std::vector<std::pair<Index, LogReal>> entries;
  for (int p = 1; p <= plan.pmax; ++p) {
    const SparseVec& y = plan.y[static_cast<std::size_t>(p - 1)];
    for (Index n : plan.F[static_cast<std::size_t>(p - 1)]) {
      for (Index s = margin_lo(p, plan.bilateral); s <= p; ++s) {
        defined.emplace_back(n + s, p);
        const double ys = y[s];
        if (ys == 0.0) continue;
        const double l = std::log2(std::abs(ys)) - (w.log2_cum(n + s) - w.log2_cum(s));
        entries.emplace_back(n + s, LogReal::from_log2(ys > 0 ? 1 : -1, l));
      }
    }
  }
  std::sort(defined.begin(), defined.end());
  for (std::size_t i = 1; i < defined.size(); ++i) {
    if (defined[i].first == defined[i - 1].first) {
      throw InvariantFailure("coordinate " + std::to_string(defined[i].first) + " defined for p=" +
                             std::to_string(defined[i - 1].second) + " and p=" + std::to_string(defined[i].second));
    }
  }
  return LogSparseVec::from_entries(std::move(entries));
}

ConditionReport verify_fhc_visits(const WeightSeq& w, const LogSparseVec& x, const FhcVectorPlan& plan, Index N) {
  std::vector<ConditionReport> parts;
  double prev_err = std::numeric_limits<double>::infinity();
  auto profile = nlohmann::ordered_json::array();
  for (int p = 1; p <= plan.pmax; ++p) {
    const std::string id = "visits[p=" + std::to_string(p) + "]";
    const LogSparseVec y = convert<LogReal>(plan.y[static_cast<std::size_t>(p - 1)]);
    double worst = -std::numeric_limits<double>::infinity();  // log2 of the error
    Index worst_n = -1, visits = 0;
    for (Index n : plan.F[static_cast<std::size_t>(p - 1)]) {
      if (n > N) break;
      ++visits;
      const LogSparseVec diff = apply_power(w, x, n) - y;
      const double e = log2_norm(diff);
      if (e > worst) {
        worst = e;
        worst_n = n;
      }
    }
    const double err = std::exp2(worst);
    const double bound = std::pow(plan.rho, -3.0 * p);
    ConditionReport r = ConditionReport::holds(id);
    if (visits > 0) {
      const bool ok = plan.bilateral ? err <= bound : err <= prev_err;
      if (!ok) {
        r = ConditionReport::violated(id, {{"p", p}, {"n", worst_n}, {"error", err}},
                                      plan.bilateral ? "visit error above rho^{-3p}" : "visit errors increase in p");
      }
      prev_err = err;
    } else {
      r.note = plan.source.empty() || plan.source[static_cast<std::size_t>(p - 1)] ? "no member of F_p in range"
                                                                             : "no family with large enough M";
    }
    if (p <= static_cast<int>(plan.source.size())) r.quantities["source_family"] = plan.source[static_cast<std::size_t>(p - 1)];
    r.quantities["visits"] = visits;
    r.quantities["max_error"] = visits > 0 ? err : 0.0;
    if (plan.bilateral) r.quantities["bound"] = bound;
    profile.push_back(visits > 0 ? nlohmann::ordered_json(err) : nlohmann::ordered_json(nullptr));
    parts.push_back(std::move(r));
  }
  ConditionReport out = merge("fhc-visits", parts);
  out.quantities["N"] = N;
  out.quantities["error_profile"] = profile;
  return out;
}

}  // namespace shiftlab
