#include "shiftlab/weights.hpp"

#include <cmath>
#include <limits>

namespace shiftlab {

namespace {

constexpr Index kScanLimit = Index{1} << 26;

class ConstantWeightModel : public WeightModel {
 public:
  ConstantWeightModel(double w, Domain domain, Window cum_window)
      : l2_(std::log2(w)), w_(w), domain_(domain), window_(cum_window) {}
  Domain domain() const override { return domain_; }
  Window cum_window() const override { return window_; }
  double log2_cum(Index n) const override { return l2_ * static_cast<double>(n); }
  double min_log2_cum(Index lo, Index hi) const override { return std::min(log2_cum(lo), log2_cum(hi)); }
  std::pair<double, double> log2_weight_bounds() const override { return {l2_, l2_}; }
  std::string generator() const override {
    std::string s = std::to_string(w_);
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
    return "constant:" + s;
  }

 private:
  double l2_;
  double w_;
  Domain domain_;
  Window window_;
};

}  // namespace

double WeightModel::min_log2_cum(Index lo, Index hi) const {
  if (hi - lo >= kScanLimit) return -std::numeric_limits<double>::infinity();
  double m = std::numeric_limits<double>::infinity();
  for (Index n = lo; n <= hi; ++n) m = std::min(m, log2_cum(n));
  return m;
}

double WeightModel::min_log2_cum_lattice(Index, Index, Index dlo, Index dhi, Index tmax) const {
  return min_log2_cum(dlo, dhi + tmax);
}

std::pair<double, double> WeightModel::log2_weight_bounds() const {
  const Window c = cum_window();
  if (c.size() > kScanLimit) {
    throw ResourceError("weight window " + to_string(c) + " too wide for a bound scan", 0);
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Index j = c.lo + 1; j <= c.hi; ++j) {
    const double l = log2_cum(j) - log2_cum(j - 1);
    lo = std::min(lo, l);
    hi = std::max(hi, l);
  }
  return {lo, hi};
}

double DenseWeightModel::min_log2_cum(Index lo, Index hi) const {
  return cum_.segment(lo - cum_lo_, hi - lo + 1).minCoeff();
}

WeightSeq WeightSeq::from_log2(Domain domain, Index first, std::span<const double> log2w) {
  const auto n = static_cast<Index>(log2w.size());
  for (double l : log2w) {
    if (!std::isfinite(l)) throw ArgumentError("weights must be positive and finite");
  }
  if (domain == Domain::unilateral) {
    if (first != 1) throw ArgumentError("unilateral weights start at index 1");
    Eigen::VectorXd cum(n + 1);
    cum[0] = 0.0;
    for (Index j = 1; j <= n; ++j) cum[j] = cum[j - 1] + log2w[static_cast<std::size_t>(j - 1)];
    return WeightSeq(std::make_shared<DenseWeightModel>(domain, 0, std::move(cum)));
  }
  const Index last = first + n - 1;
  if (first > 0 || last < 0) {
    throw ArgumentError("bilateral weights must cover index 0, got [" + std::to_string(first) + "," +
                        std::to_string(last) + "]");
  }
  // cum index i <-> n = first - 1 + i
  Eigen::VectorXd cum(n + 1);
  const Index zero = 1 - first;
  cum[zero] = 0.0;
  for (Index i = zero + 1; i <= n; ++i) cum[i] = cum[i - 1] + log2w[static_cast<std::size_t>(i - 1)];
  for (Index i = zero - 1; i >= 0; --i) cum[i] = cum[i + 1] - log2w[static_cast<std::size_t>(i)];
  return WeightSeq(std::make_shared<DenseWeightModel>(domain, first - 1, std::move(cum)));
}

WeightSeq WeightSeq::constant(double w, Domain domain, Window cum_window) {
  if (!(w > 0.0) || !std::isfinite(w)) throw ArgumentError("constant weight must be positive");
  if (domain == Domain::unilateral && cum_window.lo != 0) throw ArgumentError("unilateral products start at 0");
  if (domain == Domain::bilateral && (cum_window.lo >= 0 || cum_window.hi < 0)) {
    throw ArgumentError("bilateral product window must straddle 0");
  }
  return WeightSeq(std::make_shared<ConstantWeightModel>(w, domain, cum_window));
}

PartialProducts partial_products(const WeightSeq& w) {
  const Window c = w.cum_window();
  PartialProducts pp;
  const double ln2 = std::log(2.0);
  pp.log_pos.resize(c.hi + 1);
  for (Index n = 0; n <= c.hi; ++n) pp.log_pos[n] = w.log2_cum(n) * ln2;
  if (w.bilateral()) {
    pp.log_neg.resize(-c.lo);
    for (Index k = 1; k <= -c.lo; ++k) pp.log_neg[k - 1] = -w.log2_cum(-k) * ln2;
  }
  return pp;
}

}  // namespace shiftlab
